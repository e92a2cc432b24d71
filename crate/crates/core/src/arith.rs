//! Pattern-level arithmetic, generic over the format so the small
//! instrumentation widths run through exactly the same code.

use crate::config::PositConfig;
use crate::counters::Counter;
use crate::decode::{decode_bits, Decoded, DecodedPosit};
use crate::unpacked::encode;

#[inline(always)]
fn finite_parts(d: &DecodedPosit) -> (bool, i32, u64) {
    (d.negative, d.scale(), d.significand())
}

#[inline]
pub(crate) fn neg_bits(cfg: PositConfig, a: u32) -> u32 {
    a.wrapping_neg() & cfg.mask()
}

#[inline]
pub(crate) fn add_bits<C: Counter>(cfg: PositConfig, a: u32, b: u32, ctr: &mut C) -> u32 {
    let da = decode_bits(cfg, a, ctr);
    let db = decode_bits(cfg, b, ctr);
    ctr.step(2);
    let (x, y) = match (da, db) {
        (Decoded::NaR, _) | (_, Decoded::NaR) => return cfg.nar(),
        (Decoded::Zero, _) => return b & cfg.mask(),
        (_, Decoded::Zero) => return a & cfg.mask(),
        (Decoded::Finite(x), Decoded::Finite(y)) => (finite_parts(&x), finite_parts(&y)),
    };
    // Order by magnitude so the larger operand sets sign and alignment.
    let (big, small) = if (x.1, x.2) >= (y.1, y.2) { (x, y) } else { (y, x) };
    let (neg, scale, sig_big) = big;
    // Hidden bit at 125 leaves two bits of carry room.
    let hi = (sig_big as u128) << 62;
    let lo_full = (small.2 as u128) << 62;
    let d = (scale - small.1) as u32;
    let lo = if d == 0 {
        lo_full
    } else if d >= 126 {
        1 // jammed sticky
    } else {
        let kept = lo_full >> d;
        let lost = lo_full & ((1u128 << d) - 1) != 0;
        kept | lost as u128
    };
    ctr.shift(d.min(126));
    let sum = if neg == small.0 { hi + lo } else { hi - lo };
    if sum == 0 {
        return 0;
    }
    let lz = sum.leading_zeros();
    ctr.shift(lz.abs_diff(2));
    let norm = sum << lz;
    let sig = (norm >> 64) as u64;
    let sticky = norm as u64 != 0;
    encode(cfg, neg, scale + 2 - lz as i32, sig, sticky, ctr)
}

#[inline]
pub(crate) fn sub_bits<C: Counter>(cfg: PositConfig, a: u32, b: u32, ctr: &mut C) -> u32 {
    add_bits(cfg, a, neg_bits(cfg, b), ctr)
}

#[inline]
pub(crate) fn mul_bits<C: Counter>(cfg: PositConfig, a: u32, b: u32, ctr: &mut C) -> u32 {
    let da = decode_bits(cfg, a, ctr);
    let db = decode_bits(cfg, b, ctr);
    ctr.step(2);
    let (x, y) = match (da, db) {
        (Decoded::NaR, _) | (_, Decoded::NaR) => return cfg.nar(),
        (Decoded::Zero, _) | (_, Decoded::Zero) => return 0,
        (Decoded::Finite(x), Decoded::Finite(y)) => (finite_parts(&x), finite_parts(&y)),
    };
    let prod = (x.2 as u128) * (y.2 as u128);
    let lz = prod.leading_zeros();
    ctr.shift(lz);
    let norm = prod << lz;
    let sig = (norm >> 64) as u64;
    let sticky = norm as u64 != 0;
    encode(cfg, x.0 != y.0, x.1 + y.1 + 1 - lz as i32, sig, sticky, ctr)
}

#[inline]
pub(crate) fn div_bits<C: Counter>(cfg: PositConfig, a: u32, b: u32, ctr: &mut C) -> u32 {
    let da = decode_bits(cfg, a, ctr);
    let db = decode_bits(cfg, b, ctr);
    ctr.step(4);
    let (x, y) = match (da, db) {
        (Decoded::NaR, _) | (_, Decoded::NaR) | (_, Decoded::Zero) => return cfg.nar(),
        (Decoded::Zero, _) => return 0,
        (Decoded::Finite(x), Decoded::Finite(y)) => (finite_parts(&x), finite_parts(&y)),
    };
    let num = (x.2 as u128) << 64;
    let den = y.2 as u128;
    let q = num / den;
    let rem = num % den != 0;
    // q lies in (2^63, 2^65).
    let (sig, sticky, scale) = if q >> 64 != 0 {
        ctr.shift(1);
        ((q >> 1) as u64, rem || q & 1 != 0, x.1 - y.1)
    } else {
        (q as u64, rem, x.1 - y.1 - 1)
    };
    encode(cfg, x.0 != y.0, scale, sig, sticky, ctr)
}

#[inline]
pub(crate) fn sqrt_bits<C: Counter>(cfg: PositConfig, a: u32, ctr: &mut C) -> u32 {
    let da = decode_bits(cfg, a, ctr);
    ctr.step(3);
    let (neg, scale, sig) = match da {
        Decoded::NaR => return cfg.nar(),
        Decoded::Zero => return 0,
        Decoded::Finite(x) => finite_parts(&x),
    };
    if neg {
        return cfg.nar();
    }
    // radicand * 2^-126 * 2^even_scale, radicand in [2^126, 2^128).
    let (radicand, half) = if scale & 1 == 0 {
        ((sig as u128) << 63, scale >> 1)
    } else {
        ((sig as u128) << 64, (scale - 1) >> 1)
    };
    let root = radicand.isqrt();
    let sticky = root * root != radicand;
    encode(cfg, false, half, root as u64, sticky, ctr)
}

/// Total order of the patterns as signed integers (NaR lowest).
#[inline]
pub(crate) fn signed(cfg: PositConfig, a: u32) -> i32 {
    let sh = 32 - cfg.nbits;
    ((a << sh) as i32) >> sh
}

pub(crate) fn from_f64_bits<C: Counter>(cfg: PositConfig, x: f64, ctr: &mut C) -> u32 {
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exp = ((bits >> 52) & 0x7FF) as i32;
    let mant = bits & ((1u64 << 52) - 1);
    if exp == 0x7FF {
        return cfg.nar();
    }
    let (scale, sig) = if exp == 0 {
        if mant == 0 {
            return 0;
        }
        let lz = mant.leading_zeros();
        (63 - lz as i32 - 1074, mant << lz)
    } else {
        (exp - 1023, (mant | (1u64 << 52)) << 11)
    };
    encode(cfg, negative, scale, sig, false, ctr)
}

/// Exact conversion: every posit up to 32 bits fits in binary64.
pub(crate) fn to_f64_bits(cfg: PositConfig, a: u32) -> f64 {
    match decode_bits(cfg, a, &mut ()) {
        Decoded::Zero => 0.0,
        Decoded::NaR => f64::NAN,
        Decoded::Finite(d) => {
            let exp = (d.scale() + 1023) as u64;
            let mant = if d.fs == 0 { 0 } else { (d.frac as u64) << (52 - d.fs) };
            f64::from_bits(((d.negative as u64) << 63) | (exp << 52) | mant)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C: PositConfig = PositConfig::P32;

    fn f(x: f64) -> u32 {
        from_f64_bits(C, x, &mut ())
    }

    fn v(a: u32) -> f64 {
        to_f64_bits(C, a)
    }

    #[test]
    fn small_exact_sums() {
        assert_eq!(add_bits(C, f(1.0), f(1.0), &mut ()), 0x4800_0000);
        assert_eq!(v(add_bits(C, f(3.0), f(-5.0), &mut ())), -2.0);
        assert_eq!(add_bits(C, f(3.0), f(-3.0), &mut ()), 0);
        assert_eq!(v(sub_bits(C, f(0.5), f(0.25), &mut ())), 0.25);
        assert_eq!(v(add_bits(C, f(1e6), f(1.0), &mut ())), 1_000_001.0);
    }

    #[test]
    fn far_apart_operands_keep_the_larger() {
        let big = f(1.0);
        let tiny = 1u32; // minpos
        assert_eq!(add_bits(C, big, tiny, &mut ()), big);
        assert_eq!(add_bits(C, big, neg_bits(C, tiny), &mut ()), big);
        // 1.0 - tiny just below one: rounds back to 1.0, not to the predecessor.
        assert_eq!(sub_bits(C, big, tiny, &mut ()), big);
    }

    #[test]
    fn products_and_quotients() {
        assert_eq!(v(mul_bits(C, f(3.0), f(-7.0), &mut ())), -21.0);
        assert_eq!(mul_bits(C, f(2f64.powi(61)), f(2f64.powi(61)), &mut ()), 0x7FFF_FFFF);
        assert_eq!(v(div_bits(C, f(21.0), f(7.0), &mut ())), 3.0);
        assert_eq!(div_bits(C, f(1.0), 0, &mut ()), 0x8000_0000);
        assert_eq!(div_bits(C, 0, f(3.0), &mut ()), 0);
        assert_eq!(v(sqrt_bits(C, f(4.0), &mut ())), 2.0);
        assert_eq!(v(sqrt_bits(C, f(0.25), &mut ())), 0.5);
        assert_eq!(sqrt_bits(C, f(-1.0), &mut ()), 0x8000_0000);
    }

    #[test]
    fn conversions() {
        assert_eq!(f(1.0), 0x4000_0000);
        assert_eq!(f(f64::INFINITY), 0x8000_0000);
        assert_eq!(f(f64::NAN), 0x8000_0000);
        assert_eq!(f(0.0), 0);
        assert_eq!(f(-0.0), 0);
        assert_eq!(f(5e-324), 1);
        assert_eq!(f(-1e300), 0x8000_0001);
        assert_eq!(v(0x4000_0000), 1.0);
        assert!(v(0x8000_0000).is_nan());
        assert_eq!(v(0x7FFF_FFFF), 2f64.powi(120));
    }

    #[test]
    fn two_to_minus_27() {
        // 2^-27 = 16^-7 * 2^1: regime of 7 zeros.
        let p = f(7.450580596923828e-9);
        let Decoded::Finite(d) = decode_bits(C, p, &mut ()) else {
            panic!()
        };
        assert_eq!((d.k, d.e, d.frac), (-7, 1, 0));
        assert_eq!(p, 0x00A0_0000); // 0 | 0000000 1 | 01 | 0...
    }

    #[test]
    fn sign_extension_order() {
        let cfg = PositConfig::instrumented(8, 1).unwrap();
        assert_eq!(signed(cfg, 0x80), -128);
        assert_eq!(signed(cfg, 0xFF), -1);
        assert_eq!(signed(cfg, 0x7F), 127);
    }
}
