//! Width-generic entry points for exhaustive testing at small widths.
//!
//! Patterns live in the low `nbits` of a `u32`. These run the same code as
//! [`Posit32`](crate::Posit32); they are not a stable API.

use crate::arith;
use crate::config::PositConfig;
use crate::counters::OpCounters;
use crate::decode::{decode_bits, Decoded};
use crate::unpacked::UnpackedReal;

pub fn decode(cfg: PositConfig, bits: u32) -> Decoded {
    decode_bits(cfg, bits, &mut ())
}

pub fn decode_counted(cfg: PositConfig, bits: u32, ctr: &mut OpCounters) -> Decoded {
    decode_bits(cfg, bits, ctr)
}

pub fn unpack(cfg: PositConfig, bits: u32) -> UnpackedReal {
    UnpackedReal::from_decoded(decode(cfg, bits))
}

pub fn encode(cfg: PositConfig, x: UnpackedReal) -> u32 {
    x.encode_with(cfg, &mut ())
}

pub fn add(cfg: PositConfig, a: u32, b: u32) -> u32 {
    arith::add_bits(cfg, a, b, &mut ())
}

pub fn sub(cfg: PositConfig, a: u32, b: u32) -> u32 {
    arith::sub_bits(cfg, a, b, &mut ())
}

pub fn mul(cfg: PositConfig, a: u32, b: u32) -> u32 {
    arith::mul_bits(cfg, a, b, &mut ())
}

pub fn div(cfg: PositConfig, a: u32, b: u32) -> u32 {
    arith::div_bits(cfg, a, b, &mut ())
}

pub fn sqrt(cfg: PositConfig, a: u32) -> u32 {
    arith::sqrt_bits(cfg, a, &mut ())
}

pub fn neg(cfg: PositConfig, a: u32) -> u32 {
    arith::neg_bits(cfg, a)
}

/// Sign-extended pattern; integer order equals value order.
pub fn signed(cfg: PositConfig, a: u32) -> i32 {
    arith::signed(cfg, a)
}

pub fn from_f64(cfg: PositConfig, x: f64) -> u32 {
    arith::from_f64_bits(cfg, x, &mut ())
}

pub fn to_f64(cfg: PositConfig, a: u32) -> f64 {
    arith::to_f64_bits(cfg, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_every_small_pattern() {
        for nbits in [8u32, 16] {
            for es in 0..=2 {
                let cfg = PositConfig::instrumented(nbits, es).unwrap();
                for bits in 0..(1u32 << nbits) {
                    assert_eq!(encode(cfg, unpack(cfg, bits)), bits, "({nbits},{es}) {bits:#x}");
                    assert_eq!(from_f64(cfg, to_f64(cfg, bits)), bits);
                }
            }
        }
    }

    #[test]
    fn small_width_order() {
        let cfg = PositConfig::instrumented(8, 2).unwrap();
        let mut prev = f64::NEG_INFINITY;
        // Ascending signed order, skipping NaR (-128).
        for s in -127i32..=127 {
            let v = to_f64(cfg, s as u32 & 0xFF);
            assert!(v > prev, "{s}");
            prev = v;
        }
    }
}
