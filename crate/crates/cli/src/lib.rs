//! Command-line front end for the `mincw` search.
//!
//! Three subcommands: `search` runs the BP + OSD search, `calibrate` suggests
//! a BP iteration count, and `oracle` computes the exact minimum distance of a
//! small code. Reports go to standard output, diagnostics and progress to
//! standard error.

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};
use clap::{Parser, Subcommand, ValueEnum};

use mincw::bp::{calibrate_im, BpConfig};
use mincw::gf2::rank;
use mincw::oracle::{exhaustive_min_weight, DEFAULT_MAX_DIM};
use mincw::osd::{run_search_with, Progress, RunOptions, SearchConfig};
use mincw::{alist, Error, ParityCheckMatrix};

use report::{
    trials_csv, CalibrateEcho, CalibrationSummary, CodeInfo, OracleSummary, Run, RunManifest,
    SearchEcho, SearchSummary,
};

pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_MISSING_FILE: i32 = 2;
pub const EXIT_BAD_ALIST: i32 = 3;
pub const EXIT_USAGE: i32 = 4;
pub const EXIT_TOO_LARGE: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "mincw",
    version,
    about = "Minimum-weight codeword search for LDPC codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Estimate the minimum distance and its minimum-weight codewords.
    Search(SearchArgs),
    /// Suggest a BP iteration count from posterior saturation.
    Calibrate(CalibrateArgs),
    /// Exact minimum distance by exhaustive enumeration (small codes only).
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
pub struct SearchArgs {
    /// Parity-check matrix in alist format.
    #[arg(long)]
    pub alist: PathBuf,
    /// AWGN noise standard deviation.
    #[arg(long)]
    pub sigma: f64,
    /// BP iterations per trial.
    #[arg(long, default_value_t = 5)]
    pub iters: usize,
    /// Number of all-zero transmissions.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// OSD reprocessing order.
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    /// Discount applied to earlier BP iterations in the reliability sum.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on stored minimum-weight codewords.
    #[arg(long, default_value_t = 1024)]
    pub keep_top: usize,
    /// Also XOR every pair among the T lightest patterns of each trial.
    #[arg(long, value_name = "T")]
    pub all_pairs_top: Option<usize>,
    #[arg(long, default_value_t = 50.0)]
    pub llr_clip: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Print a progress line to stderr every N trials; 0 disables it.
    #[arg(long, default_value_t = 0)]
    pub progress_every: usize,
    /// Worker threads; 0 uses every available core, 1 is the sequential path.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(clap::Args, Debug)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub alist: PathBuf,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest iteration count examined.
    #[arg(long, default_value_t = 100)]
    pub horizon: usize,
    #[arg(long, default_value_t = 50.0)]
    pub llr_clip: f64,
}

#[derive(clap::Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub alist: PathBuf,
    /// Largest code dimension enumerated.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn from_core(err: Error) -> Self {
        let code = match err {
            Error::InvalidConfig(_) => EXIT_USAGE,
            Error::DimensionTooLarge { .. } => EXIT_TOO_LARGE,
            Error::Parse { .. } | Error::Integrity(_) => EXIT_BAD_ALIST,
            _ => EXIT_RUNTIME,
        };
        Self::new(code, err.to_string())
    }
}

pub fn load_code(path: &Path) -> Result<ParityCheckMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Failure::new(
            EXIT_MISSING_FILE,
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    alist::parse_alist(&text)
        .map_err(|e| Failure::new(EXIT_BAD_ALIST, format!("{}: {e}", path.display())))
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

fn code_info(h: &ParityCheckMatrix) -> CodeInfo {
    CodeInfo {
        n: h.cols(),
        m: h.rows(),
        rank: rank(h.matrix()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn tool_version() -> String {
    format!("mincw {}", env!("CARGO_PKG_VERSION"))
}

fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let h = load_code(&args.alist)?;
    let started_at = now();
    let cfg = SearchConfig {
        order_p: args.order,
        l_c: args.trials,
        channel: mincw::channel::ChannelConfig {
            sigma: args.sigma,
            seed: args.seed,
        },
        bp: BpConfig {
            max_iterations: args.iters,
            llr_clip: args.llr_clip,
            early_stop_on_zero_syndrome: true,
        },
        alpha: args.alpha,
        keep_top: args.keep_top,
        report_every: args.progress_every,
        all_pairs_top: args.all_pairs_top,
    };
    cfg.validate()
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let threads = match args.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        t => t,
    };
    let progress = |p: &Progress| {
        let best = p.best_weight.map_or("none".to_string(), |w| w.to_string());
        eprintln!(
            "progress: {}/{} trials, best weight {best}, {} codewords",
            p.trials_done, p.trials_total, p.multiplicity
        );
    };
    let opts = RunOptions {
        threads,
        progress: (args.progress_every > 0).then_some(&progress as &(dyn Fn(&Progress) + Sync)),
    };
    let report = run_search_with(&h, &cfg, opts).map_err(Failure::from_core)?;
    let text = match args.format {
        Format::Csv => trials_csv(&report.trials),
        Format::Json => to_json(&RunManifest {
            tool_version: tool_version(),
            code_path: args.alist.display().to_string(),
            code: code_info(&h),
            started_at,
            finished_at: now(),
            run: Run::Search {
                config: SearchEcho {
                    search: cfg,
                    threads,
                },
                result: SearchSummary::from(&report),
            },
        }),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::new(EXIT_RUNTIME, e.to_string()))
}

fn cmd_calibrate(args: &CalibrateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let h = load_code(&args.alist)?;
    let started_at = now();
    let bp = BpConfig {
        max_iterations: args.horizon,
        llr_clip: args.llr_clip,
        early_stop_on_zero_syndrome: false,
    };
    bp.validate()
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let report =
        calibrate_im(&h, args.sigma, &bp, args.trials, args.seed).map_err(Failure::from_core)?;
    if report.no_saturation {
        eprintln!(
            "warning: no trial saturated within {} iterations; recommending the horizon",
            args.horizon
        );
    } else if report.low_confidence {
        eprintln!("warning: only one trial saturated; the recommendation is low confidence");
    }
    let manifest = RunManifest {
        tool_version: tool_version(),
        code_path: args.alist.display().to_string(),
        code: code_info(&h),
        started_at,
        finished_at: now(),
        run: Run::Calibrate {
            config: CalibrateEcho {
                sigma: args.sigma,
                trials: args.trials,
                seed: args.seed,
                horizon: args.horizon,
                llr_clip: args.llr_clip,
            },
            result: CalibrationSummary::from(&report),
        },
    };
    out.write_all(to_json(&manifest).as_bytes())
        .map_err(|e| Failure::new(EXIT_RUNTIME, e.to_string()))
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let h = load_code(&args.alist)?;
    let slice = exhaustive_min_weight(&h, args.max_dim).map_err(Failure::from_core)?;
    let dimension = h.cols() - rank(h.matrix());
    out.write_all(to_json(&OracleSummary::new(&slice, dimension)).as_bytes())
        .map_err(|e| Failure::new(EXIT_RUNTIME, e.to_string()))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Search(a) => cmd_search(a, out),
        Command::Calibrate(a) => cmd_calibrate(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
