//! Analytic systolic-array throughput model.

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SystolicParams {
    pub n_rows: u32,
    pub n_cols: u32,
    pub pe_latency: u32,
    pub fmax_mhz: f64,
    pub n: u64,
    pub k: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SystolicPrediction {
    pub n_pe: u64,
    /// `2 * n_PE * f_MHz * 1e-3`
    pub peak_gflops: f64,
    /// Cycles before the first result leaves the array: `n_rows * pe_latency`.
    pub fill_cycles: u64,
    /// `K / (K + fill_cycles)` per pass.
    pub predicted_utilization: f64,
    pub predicted_gflops: f64,
}

pub fn systolic_model(p: &SystolicParams) -> Result<SystolicPrediction> {
    if p.n_rows == 0
        || p.n_cols == 0
        || p.pe_latency == 0
        || p.n == 0
        || p.k == 0
        || p.fmax_mhz.is_nan()
        || p.fmax_mhz <= 0.0
    {
        return Err(LabError::Config(
            "systolic model parameters must all be positive".into(),
        ));
    }
    let n_pe = p.n_rows as u64 * p.n_cols as u64;
    let peak_gflops = 2.0 * n_pe as f64 * p.fmax_mhz * 1e-3;
    let fill_cycles = p.n_rows as u64 * p.pe_latency as u64;
    let predicted_utilization = p.k as f64 / (p.k as f64 + fill_cycles as f64);
    Ok(SystolicPrediction {
        n_pe,
        peak_gflops,
        fill_cycles,
        predicted_utilization,
        predicted_gflops: peak_gflops * predicted_utilization,
    })
}
