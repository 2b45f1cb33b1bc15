//! `ptprob`: command-line access to the probability-and-truth-function
//! toolkit. One subcommand per capability; every command reads flat files
//! (JSON/CSV), validates fully, and prints a single deterministic report.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical failure.

mod commands;
mod fixtures;
mod load;
mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use commands::{FamilyArg, LearnOpts, ReasonOpts, SyllogismKindArg};
use load::{load_json, CliError, CliResult};
use render::{LogBase, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "ptprob",
    version,
    about = "Statistical and logical probability: semantic information, truth-function \
             learning, confirmation measures, rate-distortion, and syllogistic reasoning"
)]
struct Cli {
    /// Run the bundled reference fixtures (smoke test) and exit.
    #[arg(long)]
    fixtures: bool,

    #[command(flatten)]
    globals: GlobalArgs,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct GlobalArgs {
    /// Unit for information quantities (default bits).
    #[arg(long, global = true, value_enum)]
    log_base: Option<LogBase>,

    /// Tolerance for report-level agreement flags (default 1e-9).
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Output format (default table).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Seed recorded for randomized sweeps. Every current command is
    /// deterministic, so the seed does not change any result.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// JSON config file; defaults to the path in $PTPROB_CONFIG when set.
    /// Explicit flags override config-file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

/// On-disk run configuration; any subset of the fields may appear.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    log_base: Option<LogBase>,
    tolerance: Option<f64>,
    output_format: Option<OutputFormat>,
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Semantic information of truth functions against a prior, optionally
    /// with a sampling channel for the full mutual-information report.
    Info {
        /// Distribution JSON file: {"universe": [...], "mass": [...]}.
        #[arg(long)]
        prior: PathBuf,
        /// Truth file: one truth function or {"labels": [...], "truths": [...]}.
        #[arg(long)]
        truth: PathBuf,
        /// Channel JSON file: {"universe": [...], "labels": [...], "rows": [[...]]}.
        #[arg(long)]
        channel: Option<PathBuf>,
    },
    /// Learn per-label truth functions from a labelled sample CSV
    /// (header x_id,label with an optional count column).
    Learn {
        /// Sample CSV file (header x_id,label or x_id,label,count).
        #[arg(long)]
        sample: PathBuf,
        /// Universe JSON file; omitted, the universe is the distinct sample
        /// ids in first-appearance order (no coordinates).
        #[arg(long)]
        universe: Option<PathBuf>,
        /// Parametric family to fit; omitted, the induced tabulated truth
        /// function is reported instead.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Parameter box lo1,hi1,lo2,hi2 for (slope,threshold) or
        /// (center,sigma); defaults derive from the coordinate range.
        #[arg(long)]
        bounds: Option<String>,
        /// Comma-separated labels to learn (default: all observed labels).
        #[arg(long)]
        labels: Option<String>,
        /// Grid resolution per axis for the coarse search stage.
        #[arg(long)]
        grid: Option<usize>,
        /// Replace the empirical prior with the uniform distribution.
        #[arg(long)]
        uniform_prior: bool,
        /// Refine with projected gradient ascent instead of golden-section.
        #[arg(long)]
        gradient: bool,
    },
    /// Confirmation measures and symmetry residuals for a 2x2 table.
    Confirm {
        /// Positive examples supporting the rule (e1 with h1).
        #[arg(long)]
        a: Option<u64>,
        /// Counterexamples (e1 with h0).
        #[arg(long)]
        b: Option<u64>,
        /// Missed positives (e0 with h1).
        #[arg(long)]
        c: Option<u64>,
        /// Irrelevant negatives (e0 with h0).
        #[arg(long)]
        d: Option<u64>,
        /// 2x2 counts CSV (a,b / c,d) instead of the four flags.
        #[arg(long)]
        counts: Option<PathBuf>,
        /// Fail (exit 2) when any measure is undefined instead of emitting
        /// a partial report.
        #[arg(long)]
        strict: bool,
    },
    /// Sensitivity of confirmation measures to one more positive example
    /// versus one more irrelevant negative example.
    Raven {
        /// Positive examples supporting the rule (e1 with h1).
        #[arg(long)]
        a: Option<u64>,
        /// Counterexamples (e1 with h0).
        #[arg(long)]
        b: Option<u64>,
        /// Missed positives (e0 with h1).
        #[arg(long)]
        c: Option<u64>,
        /// Irrelevant negatives (e0 with h0).
        #[arg(long)]
        d: Option<u64>,
        /// 2x2 counts CSV (a,b / c,d) instead of the four flags.
        #[arg(long)]
        counts: Option<PathBuf>,
        /// Comma-separated measures: f, b, c, lr (default all).
        #[arg(long)]
        measures: Option<String>,
    },
    /// Rate-distortion curve points for a source and distortion matrix.
    Rate {
        /// Source distribution JSON file: {"universe": [...], "mass": [...]}.
        #[arg(long)]
        prior: PathBuf,
        /// Distortion matrix JSON: [[...], ...] (sources x reproductions).
        #[arg(long)]
        distortion: PathBuf,
        /// Comma-separated nonpositive curve parameters, nonincreasing
        /// from 0 downward, e.g. "0,-1,-2,-4".
        #[arg(long)]
        s_grid: String,
    },
    /// Entropy-information relation of a local-equilibrium system.
    Thermo {
        /// System JSON: {"k": .., "energies": [...], "multiplicities": [...],
        /// "areas": [{"temperature": .., "particles": ..}, ...]}.
        #[arg(long)]
        system: PathBuf,
    },
    /// Conclude a fuzzy syllogism from a confirmation degree.
    Reason {
        /// Syllogism JSON: {"kind": "channel"|"prediction", "degree": ..,
        /// "hypothesis_prior": {...}} (prior required for kind=channel).
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Syllogism kind when no spec file is given.
        #[arg(long, value_enum)]
        kind: Option<SyllogismKindArg>,
        /// Confirmation degree of the major premise, in [-1, 1].
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<f64>,
        /// Hypothesis prior as p0,p1 (channel syllogisms only).
        #[arg(long)]
        hypothesis_prior: Option<String>,
    },
    /// Evaluate a compound label expression (AND/OR/NOT with optional
    /// :pos/:ind/:neg mode suffixes) over atomic truth functions.
    Fuzzy {
        /// Compound expression, e.g. "NOT (young OR adult:neg)".
        #[arg(long)]
        expression: String,
        /// Atomic truths: {"labels": [...], "truths": [...]}.
        #[arg(long)]
        atomics: PathBuf,
    },
}

fn resolve_config(globals: &GlobalArgs) -> CliResult<RunConfig> {
    let path = globals.config.clone().or_else(|| {
        std::env::var_os("PTPROB_CONFIG")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    });
    let file: FileConfig = match &path {
        Some(p) => load_json(p, "config")?,
        None => FileConfig::default(),
    };
    let tolerance = globals.tolerance.or(file.tolerance).unwrap_or(1e-9);
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(CliError::Input(format!(
            "tolerance must be positive and finite, got {tolerance}"
        )));
    }
    Ok(RunConfig {
        log_base: globals.log_base.or(file.log_base).unwrap_or(LogBase::Bits),
        tolerance,
        format: globals.format.or(file.output_format).unwrap_or(OutputFormat::Table),
        seed: globals.seed.or(file.seed).unwrap_or(0),
    })
}

fn run(cli: Cli) -> CliResult<String> {
    let cfg = resolve_config(&cli.globals)?;
    if cli.fixtures {
        let (report, all_pass) = fixtures::run_all();
        if all_pass {
            return Ok(report);
        }
        // The report itself is the product; print it before failing.
        print!("{report}");
        return Err(CliError::Numerical("one or more fixtures failed".into()));
    }
    let command = cli.command.ok_or_else(|| {
        CliError::Input("a subcommand (or --fixtures) is required; see --help".into())
    })?;
    match command {
        Command::Info { prior, truth, channel } => {
            commands::cmd_info(&prior, &truth, channel.as_deref(), &cfg)
        }
        Command::Learn {
            sample,
            universe,
            family,
            bounds,
            labels,
            grid,
            uniform_prior,
            gradient,
        } => commands::cmd_learn(
            &LearnOpts {
                sample: &sample,
                universe: universe.as_deref(),
                family,
                bounds: bounds.as_deref(),
                labels: labels.as_deref(),
                grid,
                uniform_prior,
                gradient,
            },
            &cfg,
        ),
        Command::Confirm { a, b, c, d, counts, strict } => {
            let counts = commands::resolve_counts(a, b, c, d, counts.as_deref())?;
            commands::cmd_confirm(counts, strict, &cfg)
        }
        Command::Raven { a, b, c, d, counts, measures } => {
            let counts = commands::resolve_counts(a, b, c, d, counts.as_deref())?;
            let measures = commands::parse_measures(measures.as_deref())?;
            commands::cmd_raven(counts, &measures, &cfg)
        }
        Command::Rate { prior, distortion, s_grid } => {
            commands::cmd_rate(&prior, &distortion, &s_grid, &cfg)
        }
        Command::Thermo { system } => commands::cmd_thermo(&system, &cfg),
        Command::Reason { spec, kind, degree, hypothesis_prior } => commands::cmd_reason(
            &ReasonOpts {
                spec: spec.as_deref(),
                kind,
                degree,
                hypothesis_prior: hypothesis_prior.as_deref(),
            },
            &cfg,
        ),
        Command::Fuzzy { expression, atomics } => {
            commands::cmd_fuzzy(&expression, &atomics, &cfg)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => print!("{output}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
