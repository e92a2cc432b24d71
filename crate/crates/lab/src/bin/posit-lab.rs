//! Command-line front end for the posit experiment harness.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use posit_core::linalg::DEFAULT_BLOCK;
use posit_lab::bench::{self, BenchRecord, Kernel};
use posit_lab::experiment::{run_error_experiment, Algo, ErrorRecord, ExperimentConfig};
use posit_lab::microbench::{range_microbench, Op, RangeSpec, MIN_SAMPLES};
use posit_lab::model::{systolic_model, SystolicParams};
use posit_lab::output::{self, Metadata, OutDir};
use posit_lab::parallel::Threaded;
use posit_lab::rng::Rng;
use posit_lab::selftest::{run_selftest, Budget, Target};
use posit_lab::LabError;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "posit-lab",
    version,
    about = "Posit(32,2) arithmetic selftest, benchmarks and accuracy sweeps",
    after_help = "Environment:\n  POSIT_LAB_OUT      output directory (overridden by --out)\n  POSIT_LAB_THREADS  worker threads (overridden by --threads)\n\nExit codes: 0 success, 1 test or assertion failure, 2 usage error."
)]
struct Cli {
    /// Directory for CSV and JSON output.
    #[arg(long, global = true, env = "POSIT_LAB_OUT", default_value = "posit-lab-out")]
    out: PathBuf,

    /// Worker threads; defaults to the available parallelism. 1 runs serially.
    #[arg(long, global = true, env = "POSIT_LAB_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Round-trip, ordering and reference-rounding suites.
    Selftest(SelftestArgs),
    /// Backward-error comparison of posit and binary32 solves (errors.csv).
    ErrorSweep(SweepArgs),
    /// Kernel timings with exact operation counts (bench.csv).
    Bench(BenchArgs),
    /// Operand-range cost profile from the operation counters (microbench.csv).
    Microbench(MicrobenchArgs),
    /// Print the analytic systolic-array throughput model.
    Model(ModelArgs),
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Also run the exhaustive round-trip over all 2^32 patterns.
    #[arg(long)]
    long: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Run the suites against a ties-away rounding mutant (should fail).
    #[arg(long, hide = true)]
    mutant_ties_away: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Algorithms: cholesky, lu (comma list).
    #[arg(long, default_value = "cholesky,lu")]
    algo: String,
    /// Matrix sizes (comma list, a..b ranges allowed).
    #[arg(long, default_value = "256")]
    n: String,
    /// Standard deviations (comma list, scientific notation allowed).
    #[arg(long, default_value = "1e-2,1,1e2,1e4,1e6")]
    sigma: String,
    /// Seeds (comma list, a..b ranges allowed).
    #[arg(long, default_value = "1..5")]
    seeds: String,
    #[arg(long, default_value_t = DEFAULT_BLOCK)]
    block: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Kernels: square, trailing, potrf, getrf (comma list).
    #[arg(long, default_value = "square")]
    mode: String,
    #[arg(long, default_value = "256")]
    n: String,
    /// Inner dimension for the trailing update.
    #[arg(long, default_value = "32")]
    k: String,
    #[arg(long, default_value = "1e-2,1,1e6")]
    sigma: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BLOCK)]
    block: usize,
}

#[derive(Args, Debug)]
struct MicrobenchArgs {
    /// Operations: add, mul, div, sqrt (comma list).
    #[arg(long, default_value = "add,mul,div,sqrt")]
    op: String,
    /// Ranges I0..I4 (comma list).
    #[arg(long, default_value = "I0,I1,I2,I3,I4")]
    range: String,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, default_value_t = 16)]
    rows: u32,
    #[arg(long, default_value_t = 16)]
    cols: u32,
    /// Cycles for one multiply-add in a processing element.
    #[arg(long, default_value_t = 11)]
    latency: u32,
    #[arg(long, default_value_t = 429.92)]
    fmax_mhz: f64,
    #[arg(long, default_value_t = 8000)]
    n: u64,
    /// Inner dimensions to evaluate (comma list).
    #[arg(long, default_value = "32,64,128,256,512,1024,8000")]
    k: String,
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Failure {
        match e {
            LabError::Config(_) | LabError::Io { .. } => Failure::Usage(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

fn usage(msg: impl Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn parse_items<T: FromStr>(flag: &str, s: &str) -> Result<Vec<T>, Failure>
where
    T::Err: Display,
{
    let items: Vec<T> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|e| usage(format!("--{flag}: '{t}': {e}"))))
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(usage(format!("--{flag}: empty list")));
    }
    Ok(items)
}

/// Comma list of integers where each item may be an inclusive `a..b` range.
fn parse_int_list(flag: &str, s: &str) -> Result<Vec<u64>, Failure> {
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let num = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| usage(format!("--{flag}: '{t}': {e}")))
        };
        match t.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
                if a > b {
                    return Err(usage(format!("--{flag}: empty range '{t}'")));
                }
                out.extend(a..=b);
            }
            None => out.push(num(t)?),
        }
    }
    if out.is_empty() {
        return Err(usage(format!("--{flag}: empty list")));
    }
    Ok(out)
}

fn parse_sizes(flag: &str, s: &str, min: u64) -> Result<Vec<usize>, Failure> {
    let v = parse_int_list(flag, s)?;
    if let Some(bad) = v.iter().find(|&&x| x < min) {
        return Err(usage(format!("--{flag}: {bad} is below the minimum {min}")));
    }
    Ok(v.into_iter().map(|x| x as usize).collect())
}

fn parse_sigmas(s: &str) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = parse_items("sigma", s)?;
    if let Some(bad) = v.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(usage(format!("--sigma: {bad} is not a positive finite value")));
    }
    Ok(v)
}

fn check_block(block: usize) -> Result<(), Failure> {
    if block == 0 {
        return Err(usage("--block must be positive"));
    }
    Ok(())
}

fn write_csv(
    out: &OutDir,
    name: &str,
    f: impl FnOnce(&mut std::fs::File) -> posit_lab::Result<()>,
) -> Result<PathBuf, Failure> {
    let (path, mut file) = out.create(name)?;
    f(&mut file).map_err(|e| Failure::Run(e.to_string()))?;
    Ok(path)
}

fn cmd_selftest(args: &SelftestArgs) -> Result<(), Failure> {
    let target = if args.mutant_ties_away {
        Target::TIES_AWAY_MUTANT
    } else {
        Target::LIBRARY
    };
    let report = run_selftest(target, args.long, Budget::DEFAULT, args.seed, |s| {
        let status = if s.passed() { "ok" } else { "FAIL" };
        println!(
            "{status:4} {:32} checked {:>12} mismatches {:>8} ({:.2}s)",
            s.name, s.checked, s.mismatches, s.seconds
        );
    });
    if args.long {
        let exhaustive = report.suites.iter().find(|s| s.name == "roundtrip-exhaustive-32-2");
        if let Some(s) = exhaustive {
            println!("exhaustive round-trip patterns: {}", s.checked);
        }
    }
    if report.passed() {
        println!("selftest passed ({} suites)", report.suites.len());
        Ok(())
    } else {
        let failed: Vec<_> = report.failed_suites().collect();
        println!("{}", serde_json::json!({ "failed": failed }));
        Err(Failure::Run(format!("{} suite(s) failed", failed.len())))
    }
}

fn cmd_error_sweep(args: &SweepArgs, out: &OutDir) -> Result<(), Failure> {
    let algos: Vec<Algo> = parse_items("algo", &args.algo)?;
    let ns = parse_sizes("n", &args.n, 2)?;
    let sigmas = parse_sigmas(&args.sigma)?;
    let seeds = parse_int_list("seeds", &args.seeds)?;
    check_block(args.block)?;

    let mut configs = Vec::new();
    for &algo in &algos {
        for &n in &ns {
            for &sigma in &sigmas {
                let cfg = ExperimentConfig {
                    algo,
                    n,
                    sigma,
                    seeds: seeds.clone(),
                    block: args.block,
                };
                cfg.validate()?;
                configs.push(cfg);
            }
        }
    }

    let mut records: Vec<ErrorRecord> = Vec::new();
    for cfg in &configs {
        let rows = run_error_experiment(cfg)?;
        for r in &rows {
            println!(
                "{} N={} sigma={:e} seed={} e_posit={:.3e} e_binary32={:.3e} digits={:.3} info={}/{}",
                r.algo, r.n, r.sigma, r.seed, r.e_posit, r.e_binary32, r.digits, r.info_posit, r.info_binary32
            );
        }
        records.extend(rows);
    }
    let path = write_csv(out, "errors.csv", |f| output::write_errors(f, &records))?;
    let mut meta = Metadata::new("error-sweep", args.block, seeds);
    meta.extra = serde_json::json!({
        "algos": algos.iter().map(|a| a.name()).collect::<Vec<_>>(),
        "n": ns,
        "sigma": sigmas,
        "x_sol": "all components 1/sqrt(N)",
    });
    out.write_metadata("errors.json", &meta)?;
    println!("wrote {} ({} rows)", path.display(), records.len());
    Ok(())
}

fn cmd_bench(args: &BenchArgs, out: &OutDir, threads: usize) -> Result<(), Failure> {
    let kernels: Vec<Kernel> = parse_items("mode", &args.mode)?;
    let ns = parse_sizes("n", &args.n, 1)?;
    let ks = parse_sizes("k", &args.k, 1)?;
    let sigmas = parse_sigmas(&args.sigma)?;
    check_block(args.block)?;
    let backend = Threaded::new(args.block, threads);

    let mut records: Vec<BenchRecord> = Vec::new();
    let mut profile = Vec::new();
    for &kernel in &kernels {
        let k_list: Vec<usize> = if kernel == Kernel::GemmTrailing {
            ks.clone()
        } else {
            vec![0]
        };
        for &n in &ns {
            for &k in &k_list {
                for &sigma in &sigmas {
                    let mut rng = Rng::new(args.seed);
                    let r = match kernel {
                        Kernel::GemmSquare | Kernel::GemmTrailing => {
                            bench::gemm_bench(kernel, n, k, sigma, &mut rng, &backend)?
                        }
                        _ => bench::factor_bench(kernel, n, sigma, &mut rng, args.block, &backend)?,
                    };
                    println!(
                        "{} N={} K={} sigma={:e} ops={:e} seconds={:.4} gflops={:.5}",
                        r.kernel, r.n, r.k, r.sigma, r.ops, r.seconds, r.gflops
                    );
                    records.push(r);
                }
            }
        }
    }

    // Counter profile on a small GEMM for each sigma.
    for &sigma in &sigmas {
        let (flops, c) = bench::gemm_step_profile(Kernel::GemmSquare, 32, 32, sigma, args.seed)?;
        let per = |v: u64| v as f64 / flops as f64;
        println!(
            "gemm step profile sigma={:e}: regime_iters/op={:.3} norm_shifts/op={:.3} total_steps/op={:.3}",
            sigma,
            per(c.regime_iters),
            per(c.norm_shifts),
            per(c.total_steps)
        );
        profile.push(serde_json::json!({
            "sigma": sigma,
            "n": 32,
            "ops": flops,
            "mean_regime_iters": per(c.regime_iters),
            "mean_norm_shifts": per(c.norm_shifts),
            "mean_total_steps": per(c.total_steps),
        }));
    }

    let path = write_csv(out, "bench.csv", |f| output::write_bench(f, &records))?;
    let mut meta = Metadata::new("bench", args.block, vec![args.seed]);
    meta.extra = serde_json::json!({ "threads": threads, "gemm_step_profile": profile });
    out.write_metadata("bench.json", &meta)?;
    println!("wrote {} ({} rows)", path.display(), records.len());
    Ok(())
}

fn cmd_microbench(args: &MicrobenchArgs, out: &OutDir) -> Result<(), Failure> {
    let ops: Vec<Op> = parse_items("op", &args.op)?;
    let ranges = args
        .range
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(RangeSpec::by_label)
        .collect::<Result<Vec<_>, _>>()?;
    if ranges.is_empty() {
        return Err(usage("--range: empty list"));
    }
    if args.samples < MIN_SAMPLES {
        return Err(usage(format!("--samples must be at least {MIN_SAMPLES}")));
    }
    let mut rows = Vec::new();
    for &op in &ops {
        for spec in &ranges {
            let mut rng = Rng::new(args.seed);
            let s = range_microbench(spec, op, args.samples, &mut rng)?;
            println!(
                "{} {} samples={} regime_iters={:.3} norm_shifts={:.3} total_steps={:.3} wall_ns={:.2}",
                s.op, s.range, s.samples, s.mean_regime_iters, s.mean_norm_shifts, s.mean_total_steps, s.wall_ns_per_op
            );
            rows.push(s);
        }
    }
    let path = write_csv(out, "microbench.csv", |f| output::write_microbench(f, &rows))?;
    let mut meta = Metadata::new("microbench", 0, vec![args.seed]);
    meta.extra = serde_json::json!({
        "ranges": ranges.iter().map(|r| serde_json::json!({"label": r.label, "a": r.a, "b": r.b})).collect::<Vec<_>>(),
        "operands": "log-uniform on [a, b), positive",
    });
    out.write_metadata("microbench.json", &meta)?;
    println!("wrote {} ({} rows)", path.display(), rows.len());
    Ok(())
}

fn cmd_model(args: &ModelArgs) -> Result<(), Failure> {
    let ks = parse_int_list("k", &args.k)?;
    println!(
        "array {}x{}  pe_latency {} cycles  fmax {} MHz  N {}",
        args.rows, args.cols, args.latency, args.fmax_mhz, args.n
    );
    let mut header = false;
    for k in ks {
        let p = SystolicParams {
            n_rows: args.rows,
            n_cols: args.cols,
            pe_latency: args.latency,
            fmax_mhz: args.fmax_mhz,
            n: args.n,
            k,
        };
        let r = systolic_model(&p)?;
        if !header {
            println!(
                "n_pe {}  peak {:.1} Gflops  fill latency {} cycles",
                r.n_pe, r.peak_gflops, r.fill_cycles
            );
            println!("{:>8} {:>12} {:>12}", "K", "utilization", "Gflops");
            header = true;
        }
        println!(
            "{:>8} {:>12.4} {:>12.2}",
            k, r.predicted_utilization, r.predicted_gflops
        );
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = match cli.threads {
        Some(0) => return Err(usage("--threads must be positive")),
        Some(t) => t,
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Run(e.to_string()))?;

    match &cli.command {
        Command::Selftest(a) => cmd_selftest(a),
        Command::Model(a) => cmd_model(a),
        Command::ErrorSweep(a) => {
            let out = OutDir::prepare(&cli.out)?;
            cmd_error_sweep(a, &out)
        }
        Command::Bench(a) => {
            let out = OutDir::prepare(&cli.out)?;
            cmd_bench(a, &out, threads)
        }
        Command::Microbench(a) => {
            let out = OutDir::prepare(&cli.out)?;
            cmd_microbench(a, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
