//! Conformance suites run by `posit-lab selftest` and the acceptance tests.
//!
//! Each suite compares an arithmetic [`Target`] against the independent
//! reference in [`crate::oracle`]. The target can be switched to a
//! ties-away rounding mutant to show that the suites detect a wrong tie rule.

use std::time::Instant;

use posit_core::instrument;
use posit_core::{Posit32, PositConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::microbench::{Op, RangeSpec};
use crate::oracle::{self, Format};
use crate::rng::Rng;

const MAX_REPORTED: usize = 16;
const CHUNK: u64 = 1 << 16;

/// Arithmetic under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Target {
    pub ties_away: bool,
}

impl Target {
    pub const LIBRARY: Target = Target { ties_away: false };
    pub const TIES_AWAY_MUTANT: Target = Target { ties_away: true };

    pub fn config(&self, nbits: u32, es: u32) -> PositConfig {
        let cfg = PositConfig::instrumented(nbits, es).expect("supported width");
        if self.ties_away {
            cfg.with_ties_away()
        } else {
            cfg
        }
    }

    fn apply(&self, cfg: PositConfig, op: Op, a: u32, b: u32) -> u32 {
        match op {
            Op::Add => instrument::add(cfg, a, b),
            Op::Mul => instrument::mul(cfg, a, b),
            Op::Div => instrument::div(cfg, a, b),
            Op::Sqrt => instrument::sqrt(cfg, a),
        }
    }
}

fn reference(fmt: Format, op: Op, a: u32, b: u32) -> u32 {
    let (a, b) = (a as u64, b as u64);
    (match op {
        Op::Add => oracle::add(fmt, a, b),
        Op::Mul => oracle::mul(fmt, a, b),
        Op::Div => oracle::div(fmt, a, b),
        Op::Sqrt => oracle::sqrt(fmt, a),
    }) as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub a: String,
    pub b: String,
    pub got: String,
    pub want: String,
}

impl Failure {
    fn new(check: &str, a: u32, b: Option<u32>, got: u32, want: u32) -> Failure {
        Failure {
            check: check.to_string(),
            a: format!("{a:#010x}"),
            b: b.map(|b| format!("{b:#010x}")).unwrap_or_default(),
            got: format!("{got:#010x}"),
            want: format!("{want:#010x}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: u64,
    pub mismatches: u64,
    pub failures: Vec<Failure>,
    pub seconds: f64,
}

impl SuiteReport {
    fn named(name: impl Into<String>) -> SuiteReport {
        SuiteReport {
            name: name.into(),
            ..SuiteReport::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.checked > 0
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.checked += 1;
        if !ok {
            self.mismatches += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(failure());
            }
        }
    }

    fn merge(mut self, other: SuiteReport) -> SuiteReport {
        self.checked += other.checked;
        self.mismatches += other.mismatches;
        let room = MAX_REPORTED.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }
}

/// Runs `f` over chunk indices `0..chunks` in parallel and merges the
/// partial reports in index order.
fn chunked(name: &str, chunks: u64, f: impl Fn(u64, &mut SuiteReport) + Sync) -> SuiteReport {
    let start = Instant::now();
    let parts: Vec<SuiteReport> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = SuiteReport::named(name);
            f(c, &mut r);
            r
        })
        .collect();
    let mut report = parts.into_iter().fold(SuiteReport::named(name), SuiteReport::merge);
    report.seconds = start.elapsed().as_secs_f64();
    report
}

fn chunk_rng(seed: u64, chunk: u64) -> Rng {
    Rng::new(seed ^ chunk.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `encode(unpack(p)) == p` for every pattern of the width.
pub fn roundtrip_exhaustive(target: Target, nbits: u32, es: u32) -> SuiteReport {
    let cfg = target.config(nbits, es);
    let total = 1u64 << nbits;
    let chunks = total.div_ceil(CHUNK);
    chunked(&format!("roundtrip-exhaustive-{nbits}-{es}"), chunks, |c, r| {
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(total);
        for p in lo..hi {
            let p = p as u32;
            let got = instrument::encode(cfg, instrument::unpack(cfg, p));
            r.record(got == p, || Failure::new("roundtrip", p, None, got, p));
        }
    })
}

/// Round-trip on random 32-bit patterns, including through binary64.
pub fn roundtrip_sampled(target: Target, count: u64, seed: u64) -> SuiteReport {
    let cfg = target.config(32, 2);
    chunked("roundtrip-sampled-32", count.div_ceil(CHUNK), |c, r| {
        let mut rng = chunk_rng(seed, c);
        for _ in 0..CHUNK.min(count - c * CHUNK) {
            let p = rng.next_u64() as u32;
            let got = instrument::encode(cfg, instrument::unpack(cfg, p));
            r.record(got == p, || Failure::new("roundtrip", p, None, got, p));
            let via = instrument::from_f64(cfg, instrument::to_f64(cfg, p));
            r.record(via == p, || Failure::new("roundtrip-f64", p, None, via, p));
        }
    })
}

/// Signed-integer order of patterns agrees with the order of their values.
pub fn ordering_sampled(target: Target, count: u64, seed: u64) -> SuiteReport {
    let cfg = target.config(32, 2);
    let nar = 0x8000_0000u32;
    chunked("ordering-32", count.div_ceil(CHUNK), |c, r| {
        let mut rng = chunk_rng(seed, c);
        for _ in 0..CHUNK.min(count - c * CHUNK) {
            let a = rng.next_u64() as u32;
            let b = rng.next_u64() as u32;
            if a == nar || b == nar {
                continue;
            }
            let by_bits = instrument::signed(cfg, a).cmp(&instrument::signed(cfg, b));
            let by_value = instrument::to_f64(cfg, a).total_cmp(&instrument::to_f64(cfg, b));
            r.record(by_bits == by_value, || {
                Failure::new("order", a, Some(b), by_bits as u32, by_value as u32)
            });
        }
    })
}

/// Conversion from binary64 against the reference, over values spanning the
/// whole posit range and beyond.
pub fn from_f64_sampled(target: Target, count: u64, seed: u64) -> SuiteReport {
    let cfg = target.config(32, 2);
    chunked("from-f64-32", count.div_ceil(CHUNK), |c, r| {
        let mut rng = chunk_rng(seed, c);
        for _ in 0..CHUNK.min(count - c * CHUNK) {
            let mag = rng.log_uniform(1e-40, 1e40);
            let x = if rng.next_u64() & 1 == 1 { -mag } else { mag };
            let got = instrument::from_f64(cfg, x);
            let want = oracle::from_f64(Format::P32, x) as u32;
            r.record(got == want, || {
                Failure::new("from_f64", (x as f32).to_bits(), None, got, want)
            });
        }
    })
}

/// Operand pair `i` of the sampled oracle suite. Pairs cycle through all
/// 25 combinations of the five built-in ranges with random signs; every
/// sixth pair is a near-cancellation (`b` close to `-a`).
pub fn sampled_operands(rng: &mut Rng, ranges: &[RangeSpec], i: u64) -> (u32, u32) {
    let draw = |rng: &mut Rng, r: &RangeSpec| {
        let p = Posit32::from_f64(rng.log_uniform(r.a, r.b));
        if rng.next_u64() & 1 == 1 {
            p.neg()
        } else {
            p
        }
    };
    let n = ranges.len() as u64;
    let ra = &ranges[(i % n) as usize];
    let rb = &ranges[((i / n) % n) as usize];
    let a = draw(rng, ra);
    if i % 6 == 5 {
        let delta = rng.below(9) as i32 - 4;
        let b = Posit32::from_bits(a.to_bits().wrapping_add(delta as u32)).neg();
        let b = if b.is_nar() { Posit32::ONE } else { b };
        return (a.to_bits(), b.to_bits());
    }
    (a.to_bits(), draw(rng, rb).to_bits())
}

/// `op` on `count` sampled Posit(32,2) operand pairs against the reference.
pub fn oracle_sampled(target: Target, op: Op, count: u64, seed: u64) -> SuiteReport {
    let cfg = target.config(32, 2);
    let ranges = RangeSpec::builtin();
    chunked(&format!("oracle-{op}-32"), count.div_ceil(CHUNK), |c, r| {
        let mut rng = chunk_rng(seed ^ op as u64, c);
        for j in 0..CHUNK.min(count - c * CHUNK) {
            let (a, b) = sampled_operands(&mut rng, &ranges, c * CHUNK + j);
            let a = if op == Op::Sqrt { a & 0x7FFF_FFFF } else { a };
            let got = target.apply(cfg, op, a, b);
            let want = reference(Format::P32, op, a, b);
            r.record(got == want, || Failure::new(op.name(), a, Some(b), got, want));
        }
    })
}

/// Every operand pair of a small width against the reference.
pub fn oracle_exhaustive(target: Target, op: Op, nbits: u32, es: u32) -> SuiteReport {
    let cfg = target.config(nbits, es);
    let fmt = Format { nbits, es };
    let n = 1u64 << nbits;
    let rows = if op == Op::Sqrt { 1 } else { n };
    chunked(&format!("oracle-exhaustive-{op}-{nbits}-{es}"), rows, |a, r| {
        for b in 0..n {
            let (x, y) = if op == Op::Sqrt {
                (b as u32, 0)
            } else {
                (a as u32, b as u32)
            };
            let got = target.apply(cfg, op, x, y);
            let want = reference(fmt, op, x, y);
            r.record(got == want, || Failure::new(op.name(), x, Some(y), got, want));
        }
    })
}

/// Random operand pairs at a small width against the reference.
pub fn oracle_sampled_width(target: Target, op: Op, nbits: u32, es: u32, count: u64, seed: u64) -> SuiteReport {
    let cfg = target.config(nbits, es);
    let fmt = Format { nbits, es };
    let mask = ((1u64 << nbits) - 1) as u32;
    chunked(&format!("oracle-{op}-{nbits}-{es}"), count.div_ceil(CHUNK), |c, r| {
        let mut rng = chunk_rng(seed ^ op as u64, c);
        for _ in 0..CHUNK.min(count - c * CHUNK) {
            let a = rng.next_u64() as u32 & mask;
            let b = rng.next_u64() as u32 & mask;
            let got = target.apply(cfg, op, a, b);
            let want = reference(fmt, op, a, b);
            r.record(got == want, || Failure::new(op.name(), a, Some(b), got, want));
        }
    })
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SelftestReport {
    pub suites: Vec<SuiteReport>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn failed_suites(&self) -> impl Iterator<Item = &SuiteReport> {
        self.suites.iter().filter(|s| !s.passed())
    }
}

/// Sample sizes for the default (short) run.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub roundtrip: u64,
    pub ordering: u64,
    pub conversion: u64,
    pub arithmetic: u64,
    pub sqrt: u64,
    pub width16: u64,
}

impl Budget {
    pub const DEFAULT: Budget = Budget {
        roundtrip: 1 << 22,
        ordering: 1 << 22,
        conversion: 1 << 17,
        arithmetic: 1 << 18,
        sqrt: 1 << 17,
        width16: 1 << 18,
    };
}

/// The selftest suites in a fixed order. `long` adds the exhaustive 2^32
/// round-trip. `progress` is called after each suite.
pub fn run_selftest(
    target: Target,
    long: bool,
    budget: Budget,
    seed: u64,
    mut progress: impl FnMut(&SuiteReport),
) -> SelftestReport {
    let mut suites = Vec::new();
    let mut push = |s: SuiteReport| {
        progress(&s);
        suites.push(s);
    };
    for nbits in [8, 16] {
        for es in 0..=2 {
            push(roundtrip_exhaustive(target, nbits, es));
        }
    }
    if long {
        push(roundtrip_exhaustive(target, 32, 2));
    }
    push(roundtrip_sampled(target, budget.roundtrip, seed));
    push(ordering_sampled(target, budget.ordering, seed));
    push(from_f64_sampled(target, budget.conversion, seed));
    for es in 0..=2 {
        for op in Op::ALL {
            push(oracle_exhaustive(target, op, 8, es));
        }
    }
    for op in Op::ALL {
        push(oracle_sampled_width(target, op, 16, 2, budget.width16, seed));
    }
    for op in Op::ALL {
        let count = if op == Op::Sqrt { budget.sqrt } else { budget.arithmetic };
        push(oracle_sampled(target, op, count, seed));
    }
    SelftestReport { suites }
}
