use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nlcs::config::{ConfigError, RunConfig};
use nlcs::output::SweepRun;
use nlcs::report::Report;
use nlcs::validation::run_validation;

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "nlcs", version, about = "Squeezing and antibunching of even/odd nonlinear coherent states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample F, G, variances and g2 on a time grid and write CSV or JSON.
    Sweep(RunArgs),
    /// Summarise squeezing intervals, intelligent times and g2 behaviour.
    Report(RunArgs),
    /// Run the oracle-equivalence and invariant checks.
    Validate {
        /// Override the Lamb-Dicke parameter of every trapped-ion draw.
        #[arg(long)]
        eta: Option<f64>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// key = value file applied before the flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// even, odd or nlcs
    #[arg(long)]
    state: Option<String>,
    /// real number or "re,im"
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    kappa: Option<String>,
    /// trapped-ion or identity
    #[arg(long)]
    nonlinearity: Option<String>,
    #[arg(long)]
    tmax: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    /// auto or a fixed order
    #[arg(long)]
    truncation: Option<String>,
    /// output path, "-" for standard output
    #[arg(long)]
    out: Option<String>,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// intelligent-time tolerance
    #[arg(long)]
    tol: Option<String>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        let flags = [
            ("state", &self.state),
            ("alpha", &self.alpha),
            ("eta", &self.eta),
            ("kappa", &self.kappa),
            ("nonlinearity", &self.nonlinearity),
            ("tmax", &self.tmax),
            ("steps", &self.steps),
            ("truncation", &self.truncation),
            ("out", &self.out),
            ("format", &self.format),
            ("tol", &self.tol),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn open_output(cfg: &RunConfig) -> io::Result<Box<dyn Write>> {
    Ok(match &cfg.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn compute(args: &RunArgs) -> Result<SweepRun, ExitCode> {
    let cfg = args.resolve().map_err(|e| {
        eprintln!("config error: {e}");
        ExitCode::from(EXIT_CONFIG)
    })?;
    SweepRun::compute(&cfg).map_err(|e| {
        eprintln!("numerical failure: {e}");
        ExitCode::from(EXIT_NUMERIC)
    })
}

fn io_failure(e: io::Error) -> ExitCode {
    eprintln!("write failed: {e}");
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => compute(&args).and_then(|run| {
            let mut out = open_output(&run.config).map_err(io_failure)?;
            run.write(&mut out).and_then(|_| out.flush()).map_err(io_failure)
        }),
        Command::Report(args) => compute(&args).and_then(|run| {
            let mut out = open_output(&run.config).map_err(io_failure)?;
            write!(out, "{}", Report::new(&run))
                .and_then(|_| out.flush())
                .map_err(io_failure)
        }),
        Command::Validate { eta } => match run_validation(eta) {
            Ok(checks) => {
                for c in &checks {
                    println!("{c}");
                }
                let failed = checks.iter().filter(|c| !c.passed).count();
                println!("{} checks, {failed} failed", checks.len());
                if failed == 0 {
                    Ok(())
                } else {
                    Err(ExitCode::FAILURE)
                }
            }
            Err(e) => {
                eprintln!("numerical failure: {e}");
                Err(ExitCode::from(EXIT_NUMERIC))
            }
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
