/// Shape of a posit format: total width and exponent field width.
///
/// Only [`PositConfig::P32`] is part of the product surface. Smaller widths
/// exist so the same decode/encode paths can be checked exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PositConfig {
    pub(crate) nbits: u32,
    pub(crate) es: u32,
    pub(crate) ties_away: bool,
}

impl PositConfig {
    /// Posit(32,2).
    pub const P32: PositConfig = PositConfig {
        nbits: 32,
        es: 2,
        ties_away: false,
    };

    pub const fn nbits(&self) -> u32 {
        self.nbits
    }

    pub const fn es(&self) -> u32 {
        self.es
    }

    /// Regime base `2^(2^es)`.
    pub const fn useed(&self) -> u64 {
        1u64 << (1u32 << self.es)
    }

    /// Width/es pair used by the exhaustive test instrumentation.
    /// Accepts `nbits` in {8, 16, 32} and `es` in {0, 1, 2}.
    #[doc(hidden)]
    pub const fn instrumented(nbits: u32, es: u32) -> Option<PositConfig> {
        match (nbits, es) {
            (8 | 16 | 32, 0..=2) => Some(PositConfig {
                nbits,
                es,
                ties_away: false,
            }),
            _ => None,
        }
    }

    /// Deliberately broken variant (ties round away from zero) used to check
    /// that the self-test suites are sensitive to the tie rule.
    #[doc(hidden)]
    pub const fn with_ties_away(self) -> PositConfig {
        PositConfig {
            ties_away: true,
            ..self
        }
    }

    #[inline(always)]
    pub(crate) const fn mask(&self) -> u32 {
        if self.nbits == 32 {
            u32::MAX
        } else {
            (1u32 << self.nbits) - 1
        }
    }

    #[inline(always)]
    pub(crate) const fn nar(&self) -> u32 {
        1u32 << (self.nbits - 1)
    }

    #[inline(always)]
    pub(crate) const fn maxpos(&self) -> u32 {
        self.nar() - 1
    }

    /// Largest scale (power of two) of any finite value: `(nbits - 2) * 2^es`.
    #[inline(always)]
    pub(crate) const fn max_scale(&self) -> i32 {
        ((self.nbits - 2) << self.es) as i32
    }
}

impl Default for PositConfig {
    fn default() -> Self {
        PositConfig::P32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p32_parameters() {
        let c = PositConfig::P32;
        assert_eq!((c.nbits(), c.es(), c.useed()), (32, 2, 16));
        assert_eq!(c.max_scale(), 120);
        assert_eq!(c.nar(), 0x8000_0000);
        assert_eq!(c.maxpos(), 0x7FFF_FFFF);
    }

    #[test]
    fn instrumentation_widths() {
        assert!(PositConfig::instrumented(8, 0).is_some());
        assert!(PositConfig::instrumented(16, 2).is_some());
        assert!(PositConfig::instrumented(12, 1).is_none());
        assert!(PositConfig::instrumented(8, 3).is_none());
        assert_eq!(PositConfig::instrumented(8, 1).unwrap().mask(), 0xFF);
    }
}
