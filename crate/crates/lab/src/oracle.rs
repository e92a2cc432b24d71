//! Reference rounding from exact values.
//!
//! Nothing here calls into `posit_core`: patterns are read bit by bit, the
//! exact result of each operation is formed with big integers, and the
//! rounding decision compares it against the neighbouring posits and the
//! midpoint between them. The midpoint of consecutive `n`-bit patterns `p`
//! and `p + 1` is the `(n+1)`-bit posit `2p + 1`, which is what
//! "round to nearest, ties to even on the encoding" means for posits.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Format {
    pub nbits: u32,
    pub es: u32,
}

impl Format {
    pub const P32: Format = Format { nbits: 32, es: 2 };

    fn mask(&self) -> u64 {
        (1u64 << self.nbits) - 1
    }

    pub fn nar(&self) -> u64 {
        1u64 << (self.nbits - 1)
    }

    pub fn maxpos(&self) -> u64 {
        self.nar() - 1
    }

    fn widened(&self) -> Format {
        Format {
            nbits: self.nbits + 1,
            es: self.es,
        }
    }
}

/// Value of a pattern: `(-1)^neg * mant * 2^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternValue {
    Zero,
    NaR,
    Finite { neg: bool, mant: u64, exp: i64 },
}

/// Reads a pattern one bit at a time.
pub fn pattern_value(fmt: Format, bits: u64) -> PatternValue {
    let n = fmt.nbits;
    let bits = bits & fmt.mask();
    if bits == 0 {
        return PatternValue::Zero;
    }
    if bits == fmt.nar() {
        return PatternValue::NaR;
    }
    let neg = bits & fmt.nar() != 0;
    let mag = if neg { ((1u64 << n) - bits) & fmt.mask() } else { bits };
    let bit = |i: i64| (mag >> i) & 1;

    let mut i = n as i64 - 2;
    let first = bit(i);
    let mut run = 0i64;
    while i >= 0 && bit(i) == first {
        run += 1;
        i -= 1;
    }
    if i >= 0 {
        i -= 1;
    }
    let k = if first == 1 { run - 1 } else { -run };
    let mut e = 0i64;
    for _ in 0..fmt.es {
        e <<= 1;
        if i >= 0 {
            e |= bit(i) as i64;
            i -= 1;
        }
    }
    let mut frac = 0u64;
    let mut fs = 0i64;
    while i >= 0 {
        frac = (frac << 1) | bit(i);
        fs += 1;
        i -= 1;
    }
    PatternValue::Finite {
        neg,
        mant: (1u64 << fs) | frac,
        exp: k * (1i64 << fmt.es) + e - fs,
    }
}

pub fn pattern_f64(fmt: Format, bits: u64) -> f64 {
    match pattern_value(fmt, bits) {
        PatternValue::Zero => 0.0,
        PatternValue::NaR => f64::NAN,
        PatternValue::Finite { neg, mant, exp } => {
            let v = mant as f64 * 2f64.powi(exp as i32);
            if neg {
                -v
            } else {
                v
            }
        }
    }
}

/// Positive exact magnitude of an operation result.
#[derive(Debug, Clone)]
pub enum Magnitude {
    /// `mant * 2^exp`
    Dyadic { mant: BigUint, exp: i64 },
    /// `num / den * 2^exp`
    Ratio { num: BigUint, den: BigUint, exp: i64 },
    /// `sqrt(mant * 2^exp)`
    Sqrt { mant: BigUint, exp: i64 },
}

/// Compares `a * 2^ea` with `b * 2^eb`.
fn cmp_scaled(a: &BigUint, ea: i64, b: &BigUint, eb: i64) -> Ordering {
    if ea >= eb {
        (a << (ea - eb) as usize).cmp(b)
    } else {
        a.cmp(&(b << (eb - ea) as usize))
    }
}

impl Magnitude {
    /// Compares this magnitude with `m * 2^e` (m > 0).
    pub fn cmp_dyadic(&self, m: u64, e: i64) -> Ordering {
        match self {
            Magnitude::Dyadic { mant, exp } => cmp_scaled(mant, *exp, &BigUint::from(m), e),
            Magnitude::Ratio { num, den, exp } => cmp_scaled(num, *exp, &(BigUint::from(m) * den), e),
            Magnitude::Sqrt { mant, exp } => {
                let sq = BigUint::from(m as u128 * m as u128);
                cmp_scaled(mant, *exp, &sq, 2 * e)
            }
        }
    }

    pub fn approx(&self) -> f64 {
        fn scaled(x: &BigUint, exp: i64) -> f64 {
            // Keep the top 64 bits so to_f64 never overflows.
            let bits = x.bits() as i64;
            let drop = (bits - 64).max(0);
            let top = (x >> drop as usize).to_f64().unwrap_or(f64::MAX);
            top * 2f64.powi((exp + drop) as i32)
        }
        match self {
            Magnitude::Dyadic { mant, exp } => scaled(mant, *exp),
            Magnitude::Ratio { num, den, exp } => scaled(num, *exp) / scaled(den, 0),
            Magnitude::Sqrt { mant, exp } => scaled(mant, *exp).sqrt(),
        }
    }

    fn cmp_pattern(&self, fmt: Format, bits: u64) -> Ordering {
        match pattern_value(fmt, bits) {
            PatternValue::Finite { neg: false, mant, exp } => self.cmp_dyadic(mant, exp),
            other => panic!("expected a positive pattern, got {other:?}"),
        }
    }
}

/// Rounds a positive exact magnitude to the format: nearest, ties to the
/// even pattern, clamped to [minpos, maxpos].
pub fn round_magnitude(fmt: Format, v: &Magnitude) -> u64 {
    let maxpos = fmt.maxpos();
    if v.cmp_pattern(fmt, maxpos) != Ordering::Less {
        return maxpos;
    }
    if v.cmp_pattern(fmt, 1) != Ordering::Greater {
        return 1;
    }
    // Approximate bracket by bisection on binary64 values, then fix up
    // exactly: afterwards value(lo) <= v < value(lo + 1).
    let approx = v.approx();
    let (mut lo, mut hi) = (1u64, maxpos);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pattern_f64(fmt, mid) <= approx {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    while lo > 1 && v.cmp_pattern(fmt, lo) == Ordering::Less {
        lo -= 1;
    }
    while lo + 1 < maxpos && v.cmp_pattern(fmt, lo + 1) != Ordering::Less {
        lo += 1;
    }
    match v.cmp_pattern(fmt, lo) {
        Ordering::Equal => return lo,
        Ordering::Less => unreachable!("bracket fix-up failed"),
        Ordering::Greater => {}
    }
    match v.cmp_pattern(fmt.widened(), 2 * lo + 1) {
        Ordering::Less => lo,
        Ordering::Greater => lo + 1,
        Ordering::Equal => {
            if lo & 1 == 0 {
                lo
            } else {
                lo + 1
            }
        }
    }
}

fn signed_result(fmt: Format, neg: bool, v: &Magnitude) -> u64 {
    let mag = round_magnitude(fmt, v);
    if neg {
        ((1u64 << fmt.nbits) - mag) & fmt.mask()
    } else {
        mag
    }
}

fn big_shifted(m: u64, shift: i64) -> BigUint {
    BigUint::from(m) << shift as usize
}

pub fn add(fmt: Format, a: u64, b: u64) -> u64 {
    use PatternValue::*;
    match (pattern_value(fmt, a), pattern_value(fmt, b)) {
        (NaR, _) | (_, NaR) => fmt.nar(),
        (Zero, _) => b & fmt.mask(),
        (_, Zero) => a & fmt.mask(),
        (
            Finite {
                neg: na,
                mant: ma,
                exp: ea,
            },
            Finite {
                neg: nb,
                mant: mb,
                exp: eb,
            },
        ) => {
            let e = ea.min(eb);
            let x = big_shifted(ma, ea - e);
            let y = big_shifted(mb, eb - e);
            let (neg, mant) = if na == nb {
                (na, x + y)
            } else {
                match x.cmp(&y) {
                    Ordering::Equal => return 0,
                    Ordering::Greater => (na, x - y),
                    Ordering::Less => (nb, y - x),
                }
            };
            signed_result(fmt, neg, &Magnitude::Dyadic { mant, exp: e })
        }
    }
}

pub fn mul(fmt: Format, a: u64, b: u64) -> u64 {
    use PatternValue::*;
    match (pattern_value(fmt, a), pattern_value(fmt, b)) {
        (NaR, _) | (_, NaR) => fmt.nar(),
        (Zero, _) | (_, Zero) => 0,
        (
            Finite {
                neg: na,
                mant: ma,
                exp: ea,
            },
            Finite {
                neg: nb,
                mant: mb,
                exp: eb,
            },
        ) => {
            let mant = BigUint::from(ma) * BigUint::from(mb);
            signed_result(fmt, na != nb, &Magnitude::Dyadic { mant, exp: ea + eb })
        }
    }
}

pub fn div(fmt: Format, a: u64, b: u64) -> u64 {
    use PatternValue::*;
    match (pattern_value(fmt, a), pattern_value(fmt, b)) {
        (NaR, _) | (_, NaR) | (_, Zero) => fmt.nar(),
        (Zero, _) => 0,
        (
            Finite {
                neg: na,
                mant: ma,
                exp: ea,
            },
            Finite {
                neg: nb,
                mant: mb,
                exp: eb,
            },
        ) => {
            let v = Magnitude::Ratio {
                num: BigUint::from(ma),
                den: BigUint::from(mb),
                exp: ea - eb,
            };
            signed_result(fmt, na != nb, &v)
        }
    }
}

pub fn sqrt(fmt: Format, a: u64) -> u64 {
    match pattern_value(fmt, a) {
        PatternValue::NaR | PatternValue::Finite { neg: true, .. } => fmt.nar(),
        PatternValue::Zero => 0,
        PatternValue::Finite { neg: false, mant, exp } => {
            // Make the exponent even so the square root splits cleanly.
            let (mant, exp) = if exp % 2 == 0 {
                (mant, exp)
            } else {
                (mant << 1, exp - 1)
            };
            signed_result(
                fmt,
                false,
                &Magnitude::Sqrt {
                    mant: BigUint::from(mant),
                    exp,
                },
            )
        }
    }
}

/// Rounds a finite binary64 value (NaN/inf map to NaR).
pub fn from_f64(fmt: Format, x: f64) -> u64 {
    if !x.is_finite() {
        return fmt.nar();
    }
    if x == 0.0 {
        return 0;
    }
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7FF) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1 << 52), raw_exp - 1075)
    };
    let v = Magnitude::Dyadic {
        mant: BigUint::from(mant),
        exp,
    };
    signed_result(fmt, x < 0.0, &v)
}

/// Exact rational value of a pattern as (numerator sign, num, den) for
/// callers that want to print or check it.
pub fn pattern_ratio(fmt: Format, bits: u64) -> Option<(bool, BigUint, BigUint)> {
    match pattern_value(fmt, bits) {
        PatternValue::Zero => Some((false, BigUint::zero(), BigUint::one())),
        PatternValue::NaR => None,
        PatternValue::Finite { neg, mant, exp } => {
            if exp >= 0 {
                Some((neg, BigUint::from(mant) << exp as usize, BigUint::one()))
            } else {
                Some((neg, BigUint::from(mant), BigUint::one() << (-exp) as usize))
            }
        }
    }
}
