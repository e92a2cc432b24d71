use crate::config::PositConfig;
use crate::counters::Counter;
use crate::decode::Decoded;
use crate::posit::Posit32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealClass {
    Zero,
    NaR,
    Finite,
}

/// Sign-magnitude working format shared by every arithmetic operation.
///
/// For `Finite` values the represented real is
/// `(-1)^negative * 2^scale * sig / 2^63`, with bit 63 of `sig` set.
/// `sticky` records that nonzero bits below `sig` were discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnpackedReal {
    pub class: RealClass,
    pub negative: bool,
    pub scale: i32,
    pub sig: u64,
    pub sticky: bool,
}

impl UnpackedReal {
    pub const ZERO: UnpackedReal = UnpackedReal {
        class: RealClass::Zero,
        negative: false,
        scale: 0,
        sig: 0,
        sticky: false,
    };

    pub const NAR: UnpackedReal = UnpackedReal {
        class: RealClass::NaR,
        ..UnpackedReal::ZERO
    };

    /// Finite value `(-1)^negative * 2^scale * sig / 2^63`; `sig` is
    /// normalised here, so any nonzero `sig` is accepted.
    pub fn finite(negative: bool, scale: i32, sig: u64, sticky: bool) -> UnpackedReal {
        if sig == 0 {
            return UnpackedReal::ZERO;
        }
        let lz = sig.leading_zeros();
        UnpackedReal {
            class: RealClass::Finite,
            negative,
            scale: scale - lz as i32,
            sig: sig << lz,
            sticky,
        }
    }

    pub(crate) fn from_decoded(d: Decoded) -> UnpackedReal {
        match d {
            Decoded::Zero => UnpackedReal::ZERO,
            Decoded::NaR => UnpackedReal::NAR,
            Decoded::Finite(d) => UnpackedReal {
                class: RealClass::Finite,
                negative: d.negative,
                scale: d.scale(),
                sig: d.significand(),
                sticky: false,
            },
        }
    }

    /// Rounds to the nearest Posit(32,2), ties to even pattern, saturating
    /// at ±maxpos and ±minpos.
    pub fn encode_round(self) -> Posit32 {
        Posit32::from_bits(self.encode_with(PositConfig::P32, &mut ()))
    }

    pub(crate) fn encode_with<C: Counter>(self, cfg: PositConfig, ctr: &mut C) -> u32 {
        match self.class {
            RealClass::Zero => 0,
            RealClass::NaR => cfg.nar(),
            RealClass::Finite => encode(cfg, self.negative, self.scale, self.sig, self.sticky, ctr),
        }
    }
}

/// Builds the posit bit string for a finite value and rounds it to
/// `nbits - 1` body bits (round to nearest, ties to even pattern).
///
/// `sig` must have bit 63 set. The string is laid out as
/// regime | exponent | 63 fraction bits in a `u128`; everything below the
/// kept body plus `sticky` decides the rounding.
#[inline]
pub(crate) fn encode<C: Counter>(
    cfg: PositConfig,
    negative: bool,
    scale: i32,
    sig: u64,
    sticky: bool,
    ctr: &mut C,
) -> u32 {
    debug_assert!(sig >> 63 == 1);
    let n = cfg.nbits;
    let es = cfg.es;
    let keep = n - 1;
    let max_scale = cfg.max_scale();
    ctr.step(1);

    let body = if scale >= max_scale {
        ctr.shift(keep);
        cfg.maxpos()
    } else if scale < -max_scale {
        ctr.shift(keep);
        1
    } else {
        let k = scale >> es;
        let e = (scale & ((1 << es) - 1)) as u128;
        let (regime, reg_len) = if k >= 0 {
            ((((1u128 << (k + 1)) - 1) << 1), (k + 2) as u32)
        } else {
            (1u128, (1 - k) as u32)
        };
        ctr.shift(reg_len);
        let acc = (((regime << es) | e) << 63) | (sig & !(1u64 << 63)) as u128;
        let total = reg_len + es + 63;
        let drop = total - keep;
        let mut body = (acc >> drop) as u32;
        let round = (acc >> (drop - 1)) & 1 == 1;
        let below = acc & ((1u128 << (drop - 1)) - 1) != 0 || sticky;
        if round && (cfg.ties_away || below || body & 1 == 1) {
            body += 1;
        }
        body
    };

    if negative {
        body.wrapping_neg() & cfg.mask()
    } else {
        body
    }
}
