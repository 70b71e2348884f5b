//! The `blochdim` command line.
//!
//! ```text
//! blochdim bloch-coverage [--n-states 200] [--mixed-fraction 0.5]
//! blochdim saturation     [--valences 4,6,8,10] [--trials 100] [--graph kind=star,k=6]
//! blochdim invariant-dim  [--k-max 10 | --k K] [--tol 1e-8]
//! blochdim sun-scan       [--n-max 6] [--samples 10] [--tol 1e-7]
//! blochdim covering-check [--samples 1000]
//! blochdim killing-form   [--n 2]
//! blochdim verify
//! blochdim version
//! ```
//!
//! Every experiment command also takes `--seed` (default 42), `--out-dir`
//! (default `out`) and `--format csv|json` (default `csv`), writes one file
//! per table plus `meta.json` into the output directory, and exits with
//! 0 on success, 1 when a checked property fails, 2 on usage or I/O errors.
//!
//! `--graph` accepts `kind=star,k=K`, `kind=path,n=N`, `kind=cycle,n=N` or
//! `kind=complete,n=N`; when given, `saturation` measures every vertex of
//! that graph and writes `graph_saturation` instead of the star sweep.

mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use crate::experiments::{
    build_identifier, check_record, run_bloch_coverage, run_covering_check, run_graph_saturation, run_invariant_dim,
    run_killing_form, run_property_suite, run_saturation, run_sun_scan, ExperimentRecord, DEFAULT_MIXED_FRACTION,
    DEFAULT_N_STATES, DEFAULT_TRIALS,
};
use crate::graph::GraphSpec;
use crate::invariant::{DEFAULT_KERNEL_TOL, K_MAX};
use crate::linalg::RngSeed;
use crate::sun::DEFAULT_TANGENT_TOL;
use crate::{Error, Result};

pub use output::{format_float, serialize_record, serialize_table, table_to_csv, write_record, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "blochdim", version, about = "Bloch projection, adjoint covering and dimensional saturation checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Master seed for every random stream.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
    /// Table format: csv or json.
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bloch vectors of random pure and mixed qubit states.
    BlochCoverage {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of rows.
        #[arg(long, default_value_t = DEFAULT_N_STATES)]
        n_states: usize,
        /// Fraction of rows that are two-state mixtures.
        #[arg(long, default_value_t = DEFAULT_MIXED_FRACTION)]
        mixed_fraction: f64,
    },
    /// Ambient vs. counterfactual dimension at star-graph centres.
    Saturation {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated star valences.
        #[arg(long, value_delimiter = ',', default_value = "4,6,8,10")]
        valences: Vec<usize>,
        /// Random assignments per valence (or per graph).
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Measure every vertex of this graph instead of a star sweep.
        #[arg(long, value_parser = parse_graph)]
        graph: Option<GraphSpec>,
    },
    /// SU(2)-invariant subspace dimensions of (C^2)^k.
    InvariantDim {
        #[command(flatten)]
        common: CommonArgs,
        /// Scan k = 1..=k-max.
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        /// A single valence; overrides --k-max.
        #[arg(long)]
        k: Option<usize>,
        /// Relative singular-value cut for the kernel.
        #[arg(long, default_value_t = DEFAULT_KERNEL_TOL)]
        tol: f64,
    },
    /// Generator counts and pure-state image dimensions for SU(N).
    SunScan {
        #[command(flatten)]
        common: CommonArgs,
        /// Scan N = 2..=n-max.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Random pure states per N.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Relative singular-value cut for the tangent rank.
        #[arg(long, default_value_t = DEFAULT_TANGENT_TOL)]
        tol: f64,
    },
    /// SO(3) membership, 2:1 covering, homomorphism and equivariance residuals.
    CoveringCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Random SU(2) pairs.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Killing form on the normalized su(n) basis.
    KillingForm {
        #[command(flatten)]
        common: CommonArgs,
        /// Matrix size of su(n).
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Run the full property suite.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the build identifier.
    Version,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_graph(s: &str) -> std::result::Result<GraphSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_PROPERTY_FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs a parsed command; `Ok(false)` means a checked property failed.
pub fn execute(command: Command) -> Result<bool> {
    let (common, config, record) = match command {
        Command::Version => {
            println!("{}", build_identifier());
            return Ok(true);
        }
        Command::BlochCoverage { common, n_states, mixed_fraction } => {
            let record = run_bloch_coverage(n_states, mixed_fraction, RngSeed(common.seed))?;
            let config = vec![("n_states", n_states.to_string()), ("mixed_fraction", mixed_fraction.to_string())];
            (common, config, record)
        }
        Command::Saturation { common, valences, trials, graph } => {
            let list = valences.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let mut config = vec![("valences", list), ("trials", trials.to_string())];
            let record = match graph {
                Some(spec) => {
                    config.push(("graph", spec.to_string()));
                    run_graph_saturation(spec, trials, RngSeed(common.seed))?
                }
                None => run_saturation(&valences, trials, RngSeed(common.seed))?,
            };
            (common, config, record)
        }
        Command::InvariantDim { common, k_max, k, tol } => {
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (1..=k_max).collect(),
            };
            if ks.is_empty() || ks.iter().any(|&k| k == 0 || k > K_MAX) {
                return Err(Error::InvalidParameter(format!("valences must lie in 1..={K_MAX}")));
            }
            let config = vec![
                ("k_max", k_max.to_string()),
                ("k", k.map_or_else(|| "none".to_owned(), |k| k.to_string())),
                ("tol", tol.to_string()),
            ];
            (common, config, run_invariant_dim(&ks, tol)?)
        }
        Command::SunScan { common, n_max, samples, tol } => {
            let record = run_sun_scan(n_max, samples, tol, RngSeed(common.seed))?;
            let config = vec![("n_max", n_max.to_string()), ("samples", samples.to_string()), ("tol", tol.to_string())];
            (common, config, record)
        }
        Command::CoveringCheck { common, samples } => {
            let record = run_covering_check(samples, RngSeed(common.seed))?;
            (common, vec![("samples", samples.to_string())], record)
        }
        Command::KillingForm { common, n } => (common, vec![("n", n.to_string())], run_killing_form(n)?),
        Command::Verify { common } => {
            let record = run_property_suite(RngSeed(common.seed));
            (common, Vec::new(), record)
        }
    };
    let outputs = write_record(&record, &common.out_dir, common.format)?;
    write_meta(&record, &common, &config, &outputs)?;
    let ok = check_record(&record);
    if !ok {
        eprintln!("{}: one or more checked properties failed", record.experiment);
    }
    Ok(ok)
}

#[derive(serde::Serialize)]
struct Meta<'a> {
    command: &'a str,
    config: serde_json::Map<String, serde_json::Value>,
    build: String,
    timestamp_unix: u64,
    parameters: serde_json::Map<String, serde_json::Value>,
    metadata: serde_json::Map<String, serde_json::Value>,
    outputs: Vec<String>,
}

fn write_meta(record: &ExperimentRecord, common: &CommonArgs, config: &[(&str, String)], outputs: &[PathBuf]) -> Result<()> {
    let mut cfg = serde_json::Map::new();
    cfg.insert("seed".into(), common.seed.into());
    cfg.insert("out_dir".into(), common.out_dir.display().to_string().into());
    cfg.insert("format".into(), common.format.to_string().into());
    for (k, v) in config {
        cfg.insert((*k).to_owned(), v.clone().into());
    }
    let pairs = |v: &[(String, String)]| v.iter().map(|(k, v)| (k.clone(), v.clone().into())).collect();
    let meta = Meta {
        command: &record.experiment,
        config: cfg,
        build: build_identifier(),
        timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        parameters: pairs(&record.parameters),
        metadata: pairs(&record.metadata),
        outputs: outputs.iter().filter_map(|p| file_name(p)).collect(),
    };
    let mut bytes = serde_json::to_vec_pretty(&meta)?;
    bytes.push(b'\n');
    std::fs::write(common.out_dir.join("meta.json"), bytes)?;
    Ok(())
}

fn file_name(p: &Path) -> Option<String> {
    p.file_name().map(|n| n.to_string_lossy().into_owned())
}
