use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bdivisor_cli::commands::{
    cmd_dim, cmd_residue, cmd_surface, cmd_theta_check, cmd_toric, cmd_tower, cmd_verify_all,
    cmd_zeta, CommandOutput,
};
use bdivisor_cli::config::{ConfigError, Format, RunConfig};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "bdivisor",
    version,
    about = "Exact intersection theory and limit checks for a blow-up tower over an elliptic surface"
)]
struct Cli {
    /// Level N of the elliptic surface (N >= 3).
    #[arg(long, global = true, default_value_t = 4)]
    level: u32,

    /// Blow-up tower depth for the depth table.
    #[arg(long, global = true, default_value_t = 6)]
    depth: u32,

    /// Window size for partial sums and tail bounds.
    #[arg(long, global = true, default_value_t = 300)]
    window: u32,

    /// Index ell values for the dimension table (repeatable).
    #[arg(long, global = true)]
    ell: Vec<u32>,

    /// Numeric tolerance for floating-point checks.
    #[arg(long, global = true, default_value = "1e-9")]
    tol: String,

    /// Decimal digits for rendered rational approximations (>= 30).
    #[arg(long, global = true, default_value_t = 50)]
    precision: u32,

    /// RNG seed for randomized sweeps and Monte Carlo.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Level invariants and the base intersection table.
    Surface,
    /// Recursion vs. lattice, depth table, and the windowed limit.
    Tower,
    /// Tornheim window sums against their exact limits.
    Zeta,
    /// Cusp-form dimension table and Hilbert-Samuel gaps.
    Dim,
    /// Theta oddness, lattice zeros, and metric invariance.
    ThetaCheck,
    /// Boundary residue quadrature and exact bookkeeping.
    Residue,
    /// Singular-volume polytope, three ways.
    Toric,
    /// All ten acceptance criteria.
    VerifyAll,
}

fn build_config(cli: &Cli) -> Result<RunConfig, ConfigError> {
    let tol: f64 = cli
        .tol
        .parse()
        .map_err(|_| ConfigError(format!("tolerance '{}' is not a number", cli.tol)))?;
    let cfg = RunConfig {
        level: cli.level,
        depth: cli.depth,
        window: cli.window,
        ell: cli.ell.clone(),
        tol,
        tol_str: cli.tol.clone(),
        precision: cli.precision,
        seed: cli.seed,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<CommandOutput, ConfigError> {
    let cfg = build_config(cli)?;
    match cli.command {
        Command::Surface => cmd_surface(&cfg),
        Command::Tower => cmd_tower(&cfg),
        Command::Zeta => cmd_zeta(&cfg),
        Command::Dim => cmd_dim(&cfg),
        Command::ThetaCheck => cmd_theta_check(&cfg),
        Command::Residue => cmd_residue(&cfg),
        Command::Toric => cmd_toric(&cfg),
        Command::VerifyAll => cmd_verify_all(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(&output.json).expect("serializable document");
            s.push('\n');
            s
        }
        FormatArg::Csv => output.csv.clone(),
    };
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &rendered) {
            eprintln!("cannot write {path}: {e}");
            return ExitCode::from(2);
        }
    } else {
        print!("{rendered}");
    }
    if output.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
