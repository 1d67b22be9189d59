use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use arl_core::experiment::{
    csv_bytes, load_config_file, run_sweep_with, run_validation, ConfigError, CsvError,
    ExperimentConfig, ValidationOptions,
};
use arl_core::{
    crb_closed_form, crb_numeric, fim_slepian_bangs, solve_arl, ArlError, ExecutionMode,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "arl",
    version,
    about = "Angular resolution limit of a far-field and a near-field source on a uniform linear array"
)]
struct Cli {
    /// Experiment configuration (`key = value` lines); built-in defaults if omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides `scenario.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress warnings on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Evaluate independent items one at a time instead of in parallel.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the 1/σ² sweep and write the CSV.
    Sweep {
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the FIM and the closed-form and numeric CRBs.
    Crb {
        #[arg(long, default_value_t = 1.0)]
        sigma2: f64,
    },
    /// Print the resolution limit from every route.
    Arl {
        #[arg(long, default_value_t = 1e-12)]
        sigma2: f64,
    },
    /// Run the oracle checks; exits 1 if any fails.
    Validate,
}

enum Failure {
    Config(ConfigError),
    Numeric(ArlError),
    Io(String),
    Validation,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => Failure::Io(e.to_string()),
            other => Failure::Config(other),
        }
    }
}

impl From<ArlError> for Failure {
    fn from(e: ArlError) -> Self {
        Failure::Numeric(e)
    }
}

impl From<CsvError> for Failure {
    fn from(e: CsvError) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn load(cli: &Cli) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => load_config_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.scenario.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn warn(cli: &Cli, warnings: &[String]) {
    if !cli.quiet {
        for w in warnings {
            eprintln!("warning: {w}");
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = load(cli)?;
    let mode = if cli.sequential {
        ExecutionMode::Sequential
    } else {
        ExecutionMode::Parallel
    };
    let mut stdout = std::io::stdout().lock();
    match &cli.command {
        Command::Sweep { out } => {
            warn(cli, &cfg.setup(1.0 / cfg.sweep.inv_sigma2_start)?.warnings);
            let records = run_sweep_with(&cfg, mode, None)?;
            let bytes = csv_bytes(&records)?;
            match out {
                Some(path) => std::fs::write(path, bytes)
                    .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?,
                None => stdout.write_all(&bytes)?,
            }
            let failed = records.iter().filter(|r| r.status != "ok").count();
            if failed > 0 && !cli.quiet {
                eprintln!(
                    "warning: {failed} of {} sweep points report errors",
                    records.len()
                );
            }
        }
        Command::Crb { sigma2 } => {
            let setup = cfg.setup(*sigma2)?;
            warn(cli, &setup.warnings);
            let sc = &setup.scenario;
            let e = sc.electrical;
            writeln!(stdout, "omega1 = {:e}", e.omega1)?;
            writeln!(stdout, "omega2 = {:e}", e.omega2())?;
            writeln!(stdout, "delta  = {:e}", e.delta)?;
            writeln!(stdout, "phi    = {:e}", e.phi)?;
            writeln!(stdout, "range  = {:e} m", setup.physical.range)?;
            writeln!(stdout, "sigma2 = {:e}", sc.sigma2())?;
            let fim = fim_slepian_bangs(sc);
            writeln!(stdout, "FIM (omega1, omega2, phi):")?;
            for i in 0..3 {
                let row = fim.entries.row(i);
                writeln!(stdout, "  {:>24e} {:>24e} {:>24e}", row[0], row[1], row[2])?;
            }
            let numeric = crb_numeric(&fim)?;
            let closed = crb_closed_form(sc)?;
            writeln!(
                stdout,
                "{:<14} {:>24} {:>24}",
                "bound", "closed form", "inverted FIM"
            )?;
            for (name, a, b) in [
                ("crb_omega1", closed.crb_omega1, numeric.crb_omega1),
                ("crb_omega2", closed.crb_omega2, numeric.crb_omega2),
                ("crb_cross", closed.crb_cross, numeric.crb_cross_12),
                ("crb_delta", closed.crb_delta, numeric.crb_delta()),
            ] {
                writeln!(stdout, "{name:<14} {a:>24e} {b:>24e}")?;
            }
            writeln!(
                stdout,
                "{:<14} {:>24} {:>24e}",
                "crb_phi", "-", numeric.crb_phi
            )?;
            writeln!(stdout, "rcond = {:e}", numeric.rcond)?;
        }
        Command::Arl { sigma2 } => {
            let setup = cfg.setup(*sigma2)?;
            warn(cli, &setup.warnings);
            let r = solve_arl(&setup.scenario, &cfg.smith_options())?;
            writeln!(stdout, "sigma2        = {:e}", sigma2)?;
            writeln!(stdout, "arl_closed    = {:e}", r.arl_closed)?;
            writeln!(stdout, "selected_root = {:e}", r.selected_root)?;
            writeln!(stdout, "arl_low_noise = {:e}", r.arl_low_noise)?;
            writeln!(stdout, "arl_numeric   = {:e}", r.arl_numeric)?;
            writeln!(stdout, "discriminant  = {:e}", r.discriminant)?;
            writeln!(stdout, "branch        = {:?}", r.selected_branch)?;
        }
        Command::Validate => {
            let report = run_validation(
                &cfg,
                &ValidationOptions {
                    mode,
                    g_perturbation: None,
                },
            );
            writeln!(stdout, "{report}")?;
            if !report.all_passed() {
                return Err(Failure::Validation);
            }
        }
    }
    stdout.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: config: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
        Err(Failure::Validation) => {
            eprintln!("error: validation failed");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
