use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::arith;
use crate::config::PositConfig;
use crate::counters::OpCounters;
use crate::decode::{decode_bits, Decoded};
use crate::unpacked::UnpackedReal;

const CFG: PositConfig = PositConfig::P32;

/// A Posit(32,2) value stored as its bit pattern.
///
/// `0x0000_0000` is zero and `0x8000_0000` is NaR. Ordering is the
/// two's-complement order of the patterns, which puts NaR below every
/// real value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct Posit32(u32);

#[allow(clippy::should_implement_trait)]
impl Posit32 {
    pub const ZERO: Posit32 = Posit32(0);
    pub const ONE: Posit32 = Posit32(0x4000_0000);
    pub const MINUS_ONE: Posit32 = Posit32(0xC000_0000);
    pub const NAR: Posit32 = Posit32(0x8000_0000);
    /// 2^120
    pub const MAXPOS: Posit32 = Posit32(0x7FFF_FFFF);
    /// 2^-120
    pub const MINPOS: Posit32 = Posit32(0x0000_0001);

    #[inline]
    pub const fn from_bits(bits: u32) -> Posit32 {
        Posit32(bits)
    }

    #[inline]
    pub const fn to_bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_nar(self) -> bool {
        self.0 == 0x8000_0000
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_negative(self) -> bool {
        (self.0 as i32) < 0 && !self.is_nar()
    }

    pub fn decode(self) -> Decoded {
        decode_bits(CFG, self.0, &mut ())
    }

    pub fn decode_counted(self, ctr: &mut OpCounters) -> Decoded {
        decode_bits(CFG, self.0, ctr)
    }

    pub fn unpack(self) -> UnpackedReal {
        UnpackedReal::from_decoded(self.decode())
    }

    #[inline]
    pub fn neg(self) -> Posit32 {
        Posit32(self.0.wrapping_neg())
    }

    #[inline]
    pub fn abs(self) -> Posit32 {
        if (self.0 as i32) < 0 {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn add(self, rhs: Posit32) -> Posit32 {
        Posit32(arith::add_bits(CFG, self.0, rhs.0, &mut ()))
    }

    #[inline]
    pub fn sub(self, rhs: Posit32) -> Posit32 {
        Posit32(arith::sub_bits(CFG, self.0, rhs.0, &mut ()))
    }

    #[inline]
    pub fn mul(self, rhs: Posit32) -> Posit32 {
        Posit32(arith::mul_bits(CFG, self.0, rhs.0, &mut ()))
    }

    #[inline]
    pub fn div(self, rhs: Posit32) -> Posit32 {
        Posit32(arith::div_bits(CFG, self.0, rhs.0, &mut ()))
    }

    #[inline]
    pub fn sqrt(self) -> Posit32 {
        Posit32(arith::sqrt_bits(CFG, self.0, &mut ()))
    }

    pub fn add_counted(self, rhs: Posit32, ctr: &mut OpCounters) -> Posit32 {
        Posit32(arith::add_bits(CFG, self.0, rhs.0, ctr))
    }

    pub fn sub_counted(self, rhs: Posit32, ctr: &mut OpCounters) -> Posit32 {
        Posit32(arith::sub_bits(CFG, self.0, rhs.0, ctr))
    }

    pub fn mul_counted(self, rhs: Posit32, ctr: &mut OpCounters) -> Posit32 {
        Posit32(arith::mul_bits(CFG, self.0, rhs.0, ctr))
    }

    pub fn div_counted(self, rhs: Posit32, ctr: &mut OpCounters) -> Posit32 {
        Posit32(arith::div_bits(CFG, self.0, rhs.0, ctr))
    }

    pub fn sqrt_counted(self, ctr: &mut OpCounters) -> Posit32 {
        Posit32(arith::sqrt_bits(CFG, self.0, ctr))
    }

    /// NaN and infinities map to NaR; everything else is rounded once.
    pub fn from_f64(x: f64) -> Posit32 {
        Posit32(arith::from_f64_bits(CFG, x, &mut ()))
    }

    pub fn from_f32(x: f32) -> Posit32 {
        Posit32::from_f64(x as f64)
    }

    /// Exact; NaR becomes NaN.
    pub fn to_f64(self) -> f64 {
        arith::to_f64_bits(CFG, self.0)
    }

    /// Rounded once (the binary64 intermediate is exact).
    pub fn to_f32(self) -> f32 {
        self.to_f64() as f32
    }

    /// Fraction ulp `2^(scale - fs)` of this value; NaN for zero and NaR.
    pub fn eps_at(self) -> f64 {
        match self.decode() {
            Decoded::Finite(d) => {
                let exp = d.scale() - d.fs as i32;
                f64::from_bits(((exp + 1023) as u64) << 52)
            }
            _ => f64::NAN,
        }
    }
}

impl Ord for Posit32 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0 as i32).cmp(&(other.0 as i32))
    }
}

impl PartialOrd for Posit32 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Posit32 {
            type Output = Posit32;
            #[inline]
            fn $m(self, rhs: Posit32) -> Posit32 {
                Posit32::$m(self, rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Posit32 {
    type Output = Posit32;
    #[inline]
    fn neg(self) -> Posit32 {
        Posit32::neg(self)
    }
}

impl From<f64> for Posit32 {
    fn from(x: f64) -> Self {
        Posit32::from_f64(x)
    }
}

impl From<f32> for Posit32 {
    fn from(x: f32) -> Self {
        Posit32::from_f32(x)
    }
}

impl From<Posit32> for f64 {
    fn from(p: Posit32) -> f64 {
        p.to_f64()
    }
}

impl fmt::Debug for Posit32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nar() {
            write!(f, "Posit32(NaR)")
        } else {
            write!(f, "Posit32({:#010x} = {:e})", self.0, self.to_f64())
        }
    }
}

impl fmt::Display for Posit32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nar() {
            f.write_str("NaR")
        } else {
            fmt::Display::fmt(&self.to_f64(), f)
        }
    }
}

impl fmt::LowerHex for Posit32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl fmt::UpperHex for Posit32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::UpperHex::fmt(&self.0, f)
    }
}
