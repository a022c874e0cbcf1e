use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use multiclaw::harness::{
    self, bound_table, bound_table_csv, fit_exponent, read_csv, render_bound_table, render_fit,
    render_sha3_table, render_sweep_table, run_sweep, sha3_table, Algorithm, HarnessError, Suite,
    SweepConfig,
};

/// Query-model benchmarks for quantum multiclaw and multicollision finding.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact query exponents of mclaw and hsx for l = 2..=l-max.
    BoundTable {
        #[arg(long, default_value_t = 8)]
        l_max: u32,
        /// Emit CSV instead of an aligned table.
        #[arg(long)]
        csv: bool,
    },
    /// log2 of the query budget for l-collisions of SHA3-512, l = 2..=5.
    Sha3Table,
    /// Runs trials over a list of range sizes and writes one CSV row per size.
    Sweep {
        /// JSON file with the sweep fields; flags given here override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_parser = parse_algorithm)]
        algo: Option<Algorithm>,
        #[arg(long)]
        l: Option<u32>,
        /// Comma-separated range sizes, e.g. 1024,4096 or 2^10,2^12.
        #[arg(long, value_delimiter = ',', value_parser = parse_size)]
        n: Option<Vec<u32>>,
        #[arg(long)]
        c_n: Option<f64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fits the query exponent of a sweep CSV.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Runs a validation suite: grover, bbht, lemmas, claws or all.
    Validate {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also write the checks as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: HarnessError| e.to_string())
}

fn parse_size(s: &str) -> Result<u32, String> {
    match s.trim().split_once('^') {
        Some(("2", e)) => e
            .parse::<u32>()
            .ok()
            .and_then(|e| 1u32.checked_shl(e))
            .ok_or_else(|| format!("bad exponent in {s:?}")),
        _ => s.trim().parse().map_err(|e| format!("{s:?}: {e}")),
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep_config(
    config: Option<PathBuf>,
    algo: Option<Algorithm>,
    l: Option<u32>,
    n: Option<Vec<u32>>,
    c_n: Option<f64>,
    k: Option<u32>,
    trials: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> Result<SweepConfig, HarnessError> {
    let mut cfg = match config {
        Some(path) => SweepConfig::from_json_file(&path)?,
        None => {
            let missing = |flag: &str| HarnessError::InvalidConfig(format!("--{flag} is required without --config"));
            SweepConfig {
                algorithm: algo.ok_or_else(|| missing("algo"))?,
                l: l.ok_or_else(|| missing("l"))?,
                n: n.clone().ok_or_else(|| missing("n"))?,
                c_n: 1.0,
                k: 4,
                trials: trials.ok_or_else(|| missing("trials"))?,
                seed: seed.ok_or_else(|| missing("seed"))?,
                out: None,
            }
        }
    };
    if let Some(a) = algo {
        cfg.algorithm = a;
    }
    if let Some(l) = l {
        cfg.l = l;
    }
    if let Some(n) = n {
        cfg.n = n;
    }
    if let Some(c) = c_n {
        cfg.c_n = c;
    }
    if let Some(k) = k {
        cfg.k = k;
    }
    if let Some(t) = trials {
        cfg.trials = t;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if out.is_some() {
        cfg.out = out;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::BoundTable { l_max, csv } => {
            let rows = bound_table(l_max)?;
            if csv {
                print!("{}", bound_table_csv(&rows));
            } else {
                print!("{}", render_bound_table(&rows));
            }
            Ok(true)
        }
        Command::Sha3Table => {
            print!("{}", render_sha3_table(&sha3_table()));
            Ok(true)
        }
        Command::Sweep {
            config,
            algo,
            l,
            n,
            c_n,
            k,
            trials,
            seed,
            out,
        } => {
            let cfg = sweep_config(config, algo, l, n, c_n, k, trials, seed, out)?;
            let records = run_sweep(&cfg)?;
            print!("{}", render_sweep_table(&records));
            if cfg.out.is_none() {
                harness::write_csv(std::io::stdout().lock(), &records)?;
            }
            let valid = records
                .iter()
                .all(|r| r.invalid_solutions == 0 && r.limit_violations == 0);
            if !valid {
                eprintln!("some runs returned unverified solutions or exceeded Qlimit");
            }
            Ok(valid)
        }
        Command::Fit { input } => {
            let records = read_csv(File::open(&input)?)?;
            let fit = fit_exponent(&records)?;
            print!("{}", render_fit(&fit));
            Ok(fit.within_tolerance)
        }
        Command::Validate { suite, out } => {
            let report = if suite == "all" {
                harness::validate_all()?
            } else {
                harness::validate(suite.parse::<Suite>()?)?
            };
            print!("{}", report.render());
            if let Some(path) = out {
                report.write_csv(File::create(path)?)?;
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
