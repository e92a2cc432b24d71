//! Experiment harness for `posit-core`: seeded matrix generation, the
//! posit vs binary32 backward-error comparison, operand-range cost profiles,
//! kernel benchmarks, an analytic systolic-array model, an exact reference
//! for rounding, and the CSV/JSON/PMAT1 file formats used by the CLI.

pub mod bench;
pub mod error;
pub mod experiment;
pub mod matfile;
pub mod microbench;
pub mod model;
pub mod oracle;
pub mod output;
pub mod parallel;
pub mod rng;
pub mod selftest;

pub use error::{LabError, Result};
