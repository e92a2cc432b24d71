use core::fmt::Debug;

use crate::Posit32;

/// Element arithmetic used by the generic routines. Each method is a single
/// rounded operation in the element's own format.
pub trait Scalar: Copy + PartialEq + Debug + Send + Sync + 'static {
    const ZERO: Self;
    const ONE: Self;

    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn div(self, rhs: Self) -> Self;
    fn sqrt(self) -> Self;
    fn neg(self) -> Self;

    /// NaR for posits, NaN for IEEE formats.
    fn is_nar(self) -> bool;
    fn is_zero(self) -> bool;
    /// Strictly greater than zero (false for NaR/NaN).
    fn is_positive(self) -> bool;
    /// `|self| > |other|`, used for pivot selection.
    fn magnitude_gt(self, other: Self) -> bool;
}

impl Scalar for Posit32 {
    const ZERO: Self = Posit32::ZERO;
    const ONE: Self = Posit32::ONE;

    #[inline(always)]
    fn add(self, rhs: Self) -> Self {
        Posit32::add(self, rhs)
    }
    #[inline(always)]
    fn sub(self, rhs: Self) -> Self {
        Posit32::sub(self, rhs)
    }
    #[inline(always)]
    fn mul(self, rhs: Self) -> Self {
        Posit32::mul(self, rhs)
    }
    #[inline(always)]
    fn div(self, rhs: Self) -> Self {
        Posit32::div(self, rhs)
    }
    #[inline(always)]
    fn sqrt(self) -> Self {
        Posit32::sqrt(self)
    }
    #[inline(always)]
    fn neg(self) -> Self {
        Posit32::neg(self)
    }
    fn is_nar(self) -> bool {
        Posit32::is_nar(self)
    }
    fn is_zero(self) -> bool {
        Posit32::is_zero(self)
    }
    fn is_positive(self) -> bool {
        (self.to_bits() as i32) > 0
    }
    // Pattern order of the absolute values; no decoding needed.
    fn magnitude_gt(self, other: Self) -> bool {
        self.abs() > other.abs()
    }
}

macro_rules! ieee_scalar {
    ($t:ty, $sqrt:path) => {
        impl Scalar for $t {
            const ZERO: Self = 0.0;
            const ONE: Self = 1.0;

            #[inline(always)]
            fn add(self, rhs: Self) -> Self {
                self + rhs
            }
            #[inline(always)]
            fn sub(self, rhs: Self) -> Self {
                self - rhs
            }
            #[inline(always)]
            fn mul(self, rhs: Self) -> Self {
                self * rhs
            }
            #[inline(always)]
            fn div(self, rhs: Self) -> Self {
                self / rhs
            }
            #[inline(always)]
            fn sqrt(self) -> Self {
                $sqrt(self)
            }
            #[inline(always)]
            fn neg(self) -> Self {
                -self
            }
            fn is_nar(self) -> bool {
                self.is_nan()
            }
            fn is_zero(self) -> bool {
                self == 0.0
            }
            fn is_positive(self) -> bool {
                self > 0.0
            }
            fn magnitude_gt(self, other: Self) -> bool {
                self.abs() > other.abs()
            }
        }
    };
}

ieee_scalar!(f32, libm::sqrtf);
ieee_scalar!(f64, libm::sqrt);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn posit_sign_tests() {
        assert!(Scalar::is_positive(Posit32::MINPOS));
        assert!(!Scalar::is_positive(Posit32::ZERO));
        assert!(!Scalar::is_positive(Posit32::NAR));
        assert!(!Scalar::is_positive(Posit32::MINUS_ONE));
    }

    #[test]
    fn magnitude() {
        let a = Posit32::from_f64(-3.0);
        let b = Posit32::from_f64(2.0);
        assert!(a.magnitude_gt(b));
        assert!(!b.magnitude_gt(a));
        assert!(!a.magnitude_gt(a));
        assert!((-3.0f32).magnitude_gt(2.0));
    }

    #[test]
    fn ieee_sqrt_is_correctly_rounded() {
        assert_eq!(Scalar::sqrt(2.0f32).to_bits(), 0x3FB5_04F3);
        assert_eq!(Scalar::sqrt(9.0f64), 3.0);
    }
}
