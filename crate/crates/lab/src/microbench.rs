//! Operand-range cost profile using the deterministic operation counters.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use posit_core::{OpCounters, Posit32};

use crate::error::{LabError, Result};
use crate::rng::Rng;

pub const MIN_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Add,
    Mul,
    Div,
    Sqrt,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Add, Op::Mul, Op::Div, Op::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Op::Add => "add",
            Op::Mul => "mul",
            Op::Div => "div",
            Op::Sqrt => "sqrt",
        }
    }

    pub fn apply(self, a: Posit32, b: Posit32) -> Posit32 {
        match self {
            Op::Add => a + b,
            Op::Mul => a * b,
            Op::Div => a / b,
            Op::Sqrt => a.sqrt(),
        }
    }

    pub fn apply_counted(self, a: Posit32, b: Posit32, ctr: &mut OpCounters) -> Posit32 {
        match self {
            Op::Add => a.add_counted(b, ctr),
            Op::Mul => a.mul_counted(b, ctr),
            Op::Div => a.div_counted(b, ctr),
            Op::Sqrt => a.sqrt_counted(ctr),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Op {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Op> {
        match s.trim().to_ascii_lowercase().as_str() {
            "add" => Ok(Op::Add),
            "mul" => Ok(Op::Mul),
            "div" => Ok(Op::Div),
            "sqrt" => Ok(Op::Sqrt),
            other => Err(LabError::Config(format!(
                "unknown op '{other}' (expected add, mul, div or sqrt)"
            ))),
        }
    }
}

/// Half-open operand interval `[a, b)` with a label.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeSpec {
    pub label: String,
    pub a: f64,
    pub b: f64,
}

impl RangeSpec {
    pub fn new(label: impl Into<String>, a: f64, b: f64) -> Result<RangeSpec> {
        if !(a > 0.0 && a < b && b.is_finite()) {
            return Err(LabError::Config(format!("range needs 0 < a < b, got [{a}, {b})")));
        }
        Ok(RangeSpec {
            label: label.into(),
            a,
            b,
        })
    }

    /// The five built-in ranges I0..I4.
    pub fn builtin() -> Vec<RangeSpec> {
        [
            ("I0", 1.0, 2.0),
            ("I1", 1e-38, 1e-30),
            ("I2", 1e30, 1e38),
            ("I3", 1e-15, 1e-14),
            ("I4", 1e14, 1e15),
        ]
        .into_iter()
        .map(|(l, a, b)| RangeSpec { label: l.into(), a, b })
        .collect()
    }

    pub fn by_label(label: &str) -> Result<RangeSpec> {
        let want = label.trim().to_ascii_uppercase();
        RangeSpec::builtin()
            .into_iter()
            .find(|r| r.label == want)
            .ok_or_else(|| LabError::Config(format!("unknown range '{label}' (expected I0..I4)")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MicrobenchSummary {
    pub op: Op,
    pub range: String,
    pub samples: usize,
    pub mean_regime_iters: f64,
    pub mean_norm_shifts: f64,
    pub mean_total_steps: f64,
    pub wall_ns_per_op: f64,
}

/// Draws positive operands log-uniformly from the range and profiles `op`.
/// The counter means are deterministic; wall time comes from a separate
/// uncounted pass over the same operands.
pub fn range_microbench(spec: &RangeSpec, op: Op, samples: usize, rng: &mut Rng) -> Result<MicrobenchSummary> {
    if samples < MIN_SAMPLES {
        return Err(LabError::Config(format!(
            "at least {MIN_SAMPLES} samples are required, got {samples}"
        )));
    }
    let operands: Vec<(Posit32, Posit32)> = (0..samples)
        .map(|_| {
            let a = Posit32::from_f64(rng.log_uniform(spec.a, spec.b));
            let b = Posit32::from_f64(rng.log_uniform(spec.a, spec.b));
            (a, b)
        })
        .collect();
    Ok(profile(op, &spec.label, &operands))
}

/// Profiles `op` over explicit operand pairs (`b` ignored for sqrt).
pub fn profile(op: Op, label: &str, operands: &[(Posit32, Posit32)]) -> MicrobenchSummary {
    let mut ctr = OpCounters::new();
    for &(a, b) in operands {
        std::hint::black_box(op.apply_counted(a, b, &mut ctr));
    }
    let start = Instant::now();
    for &(a, b) in operands {
        std::hint::black_box(op.apply(std::hint::black_box(a), b));
    }
    let wall = start.elapsed().as_nanos() as f64;
    let n = operands.len().max(1) as f64;
    MicrobenchSummary {
        op,
        range: label.to_string(),
        samples: operands.len(),
        mean_regime_iters: ctr.regime_iters as f64 / n,
        mean_norm_shifts: ctr.norm_shifts as f64 / n,
        mean_total_steps: ctr.total_steps as f64 / n,
        wall_ns_per_op: wall / n,
    }
}
