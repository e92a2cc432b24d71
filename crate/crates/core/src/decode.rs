use crate::config::PositConfig;
use crate::counters::Counter;

/// Field-level view of a nonzero, non-NaR posit.
///
/// The encoded value is `sign * useed^k * 2^e * (1 + frac / 2^fs)`. Negative
/// patterns are two's-complement negated before the fields are read, so the
/// fields always describe the magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodedPosit {
    pub negative: bool,
    /// Regime value.
    pub k: i32,
    /// Exponent field, with bits cut off at the word end read as zero.
    pub e: u32,
    /// Fraction bits as an integer (the low `fs` bits are meaningful).
    pub frac: u32,
    /// Number of fraction bits.
    pub fs: u32,
    /// Regime run length `m`.
    pub run: u32,
    pub(crate) es: u32,
}

impl DecodedPosit {
    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Power-of-two scale `k * 2^es + e`.
    pub fn scale(&self) -> i32 {
        (self.k << self.es) + self.e as i32
    }

    /// Significand with the hidden bit at bit 63.
    pub(crate) fn significand(&self) -> u64 {
        let frac = if self.fs == 0 {
            0
        } else {
            (self.frac as u64) << (63 - self.fs)
        };
        (1u64 << 63) | frac
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decoded {
    Zero,
    NaR,
    Finite(DecodedPosit),
}

/// Splits a pattern (held in the low `nbits` of `bits`) into its fields.
///
/// The regime run is found with a leading-ones/zeros count, but the run
/// length is reported to the counter as the iteration count a bit-serial
/// scan would need.
#[inline]
pub(crate) fn decode_bits<C: Counter>(cfg: PositConfig, bits: u32, ctr: &mut C) -> Decoded {
    let n = cfg.nbits;
    let es = cfg.es;
    let bits = bits & cfg.mask();
    if bits == 0 {
        return Decoded::Zero;
    }
    if bits == cfg.nar() {
        return Decoded::NaR;
    }
    let negative = bits & cfg.nar() != 0;
    let mag = if negative {
        bits.wrapping_neg() & cfg.mask()
    } else {
        bits
    };
    // Body after the sign, left-aligned; n - 1 meaningful bits.
    let body = (mag as u64) << (65 - n);
    let avail = n - 1;
    let ones = body >> 63 == 1;
    let run = if ones {
        body.leading_ones()
    } else {
        body.leading_zeros()
    }
    .min(avail);
    ctr.regime(run);
    ctr.step(1);
    let k = if ones { run as i32 - 1 } else { -(run as i32) };
    let term = u32::from(run < avail);
    let rem = avail - run - term;
    let es_used = es.min(rem);
    let fs = rem - es_used;
    // Bits after the regime and its terminator, left-aligned.
    let rest = body << (run + term);
    let e = if es_used == 0 {
        0
    } else {
        ((rest >> (64 - es_used)) as u32) << (es - es_used)
    };
    let frac = if fs == 0 {
        0
    } else {
        ((rest << es_used) >> (64 - fs)) as u32
    };
    Decoded::Finite(DecodedPosit {
        negative,
        k,
        e,
        frac,
        fs,
        run,
        es,
    })
}
