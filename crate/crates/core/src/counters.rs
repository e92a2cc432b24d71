use core::ops::AddAssign;

/// Deterministic instruction-proxy counts for posit operations.
///
/// `regime_iters` is the number of iterations a bit-serial regime scan would
/// take while decoding; `norm_shifts` counts single-bit shift steps spent
/// renormalising and emitting the regime on encode. `total_steps` adds a
/// fixed per-operation cost on top of both.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounters {
    pub regime_iters: u64,
    pub norm_shifts: u64,
    pub total_steps: u64,
}

impl OpCounters {
    pub const fn new() -> Self {
        OpCounters {
            regime_iters: 0,
            norm_shifts: 0,
            total_steps: 0,
        }
    }

    pub fn merge(&mut self, other: &OpCounters) {
        *self += *other;
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: OpCounters) {
        self.regime_iters += rhs.regime_iters;
        self.norm_shifts += rhs.norm_shifts;
        self.total_steps += rhs.total_steps;
    }
}

/// Sink for counter events. `()` discards everything and compiles away.
pub(crate) trait Counter {
    fn regime(&mut self, run: u32);
    fn shift(&mut self, n: u32);
    fn step(&mut self, n: u32);
}

impl Counter for () {
    #[inline(always)]
    fn regime(&mut self, _: u32) {}
    #[inline(always)]
    fn shift(&mut self, _: u32) {}
    #[inline(always)]
    fn step(&mut self, _: u32) {}
}

impl Counter for OpCounters {
    #[inline]
    fn regime(&mut self, run: u32) {
        self.regime_iters += run as u64;
        self.total_steps += run as u64;
    }

    #[inline]
    fn shift(&mut self, n: u32) {
        self.norm_shifts += n as u64;
        self.total_steps += n as u64;
    }

    #[inline]
    fn step(&mut self, n: u32) {
        self.total_steps += n as u64;
    }
}
