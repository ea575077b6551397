mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use numrad::bounds::{BoundContext, Catalog, EvalConfig};
use numrad::harness::{example_matrix, find_witnesses_in, run_suite, Family, TrialConfig};
use numrad::io::parse_matrix;
use numrad::radius::RadiusConfig;
use numrad::search::ScanConfig;
use numrad::Error;

const SEED_ENV: &str = "RADIUS_BOUNDS_SEED";

/// Exit status: success.
const EXIT_OK: u8 = 0;
/// Exit status: bad arguments, unreadable or malformed input.
const EXIT_USAGE: u8 = 1;
/// Exit status: a verified inequality failed or an expected value was not reproduced.
const EXIT_VIOLATION: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "numrad", version, about = "Numerical radius bounds: evaluate, verify, reproduce")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Matrix file in the {"n", "re", "im"} JSON format.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Trials per (family, dim) for `verify`.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,

    /// Run seed; the RADIUS_BOUNDS_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Dimensions as a comma list (`2,3,5`) or an inclusive range (`2-8`).
    #[arg(long, global = true)]
    dims: Option<String>,

    /// Matrix family, comma list of families, or `all`.
    #[arg(long, global = true)]
    family: Option<String>,

    /// Relative tolerance for every inequality check.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Grid points for the scan over the exponent v.
    #[arg(long = "v-grid", global = true, default_value_t = 65)]
    v_grid: usize,

    /// Grid points for the angle sweep of the numerical radius.
    #[arg(long = "theta-grid", global = true, default_value_t = 1024)]
    theta_grid: usize,

    /// Draw budget for `witness`.
    #[arg(long, global = true, default_value_t = 1000)]
    budget: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Evaluate every bound and chain for the matrix given by --input.
    Bounds,
    /// Run the randomized chain suite over generated matrices.
    Verify,
    /// Reproduce the built-in 3x3 example.
    Example,
    /// Search for matrices separating the two norm-based upper bounds.
    Witness,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::WitnessNotFound { .. } => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Bounds => cmd_bounds(cli),
        Command::Verify => cmd_verify(cli),
        Command::Example => cmd_example(cli),
        Command::Witness => cmd_witness(cli),
    }
}

fn eval_config(cli: &Cli) -> Result<EvalConfig, Failure> {
    let cfg = EvalConfig {
        radius: RadiusConfig { theta_grid: cli.theta_grid, ..RadiusConfig::default() },
        v_scan: ScanConfig { grid: cli.v_grid, ..EvalConfig::default().v_scan },
        tol_rel: cli.tol,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn seed(cli: &Cli) -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(s) => {
            s.trim().parse().map_err(|_| usage(format!("{SEED_ENV} must be an unsigned 64-bit integer, got `{s}`")))
        }
        Err(_) => Ok(cli.seed),
    }
}

fn parse_dims(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || usage(format!("invalid --dims `{s}`: expected e.g. `2,3,5` or `2-8`"));
    if let Some((lo, hi)) = s.split_once('-') {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(|d| d.trim().parse().map_err(|_| bad())).collect()
}

fn parse_families(s: &str) -> Result<Vec<Family>, Failure> {
    if s.trim() == "all" {
        return Ok(Family::ALL.to_vec());
    }
    s.split(',').map(|f| f.trim().parse::<Family>().map_err(Failure::from)).collect()
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_bounds(cli: &Cli) -> Result<u8, Failure> {
    let path = cli.input.as_ref().ok_or_else(|| usage("`bounds` requires --input PATH"))?;
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let a = parse_matrix(&text)?;
    let cfg = eval_config(cli)?;
    let report = BoundContext::new(&a, &cfg)?.report(&Catalog::standard())?;
    let rendered = match cli.format {
        Format::Json => render::json(&report),
        Format::Csv => render::bounds_csv(&report)?,
        Format::Table => render::bounds_table(&report),
    };
    emit(cli, &rendered)?;
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_verify(cli: &Cli) -> Result<u8, Failure> {
    let defaults = TrialConfig::default();
    let cfg = TrialConfig {
        families: cli.family.as_deref().map(parse_families).transpose()?.unwrap_or(defaults.families),
        dims: cli.dims.as_deref().map(parse_dims).transpose()?.unwrap_or(defaults.dims),
        trials: cli.trials,
        seed: seed(cli)?,
        tol_rel: cli.tol,
        v_grid: cli.v_grid,
        theta_grid: cli.theta_grid,
    };
    let report = run_suite(&cfg)?;
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
        Format::Table => render::suite_table(&report),
    };
    emit(cli, &rendered)?;
    if cli.out.is_some() {
        eprintln!("{}", render::suite_status(&report));
    }
    Ok(if !report.summary.all_chains_hold {
        EXIT_VIOLATION
    } else if !report.summary.failures.is_empty() {
        EXIT_USAGE
    } else {
        EXIT_OK
    })
}

fn cmd_example(cli: &Cli) -> Result<u8, Failure> {
    let cfg = eval_config(cli)?;
    let outcome = render::ExampleOutcome::compute(&example_matrix(), &cfg)?;
    let rendered = match cli.format {
        Format::Json => render::json(&outcome),
        Format::Csv => render::example_csv(&outcome)?,
        Format::Table => render::example_table(&outcome),
    };
    emit(cli, &rendered)?;
    Ok(if outcome.pass { EXIT_OK } else { EXIT_VIOLATION })
}

fn cmd_witness(cli: &Cli) -> Result<u8, Failure> {
    let families = cli.family.as_deref().map(parse_families).transpose()?.unwrap_or_else(|| Family::ALL.to_vec());
    let dims = cli.dims.as_deref().map(parse_dims).transpose()?.unwrap_or_else(|| vec![2, 3, 4, 5, 6]);
    let pair = find_witnesses_in(&families, &dims, cli.budget, seed(cli)?)?;
    let rendered = match cli.format {
        Format::Json => render::json(&pair),
        Format::Csv => render::witness_csv(&pair)?,
        Format::Table => render::witness_table(&pair),
    };
    emit(cli, &rendered)?;
    Ok(EXIT_OK)
}
