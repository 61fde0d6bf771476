use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qfdiv_cli::experiments::{self, RateVerdict, SamplingMode};
use qfdiv_cli::{inspect, statefile, verify, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(name = "qfdiv", version, about = "Maximal quantum f-divergences: verification suites and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Matrix dimension for sampled states.
    #[arg(long, global = true, default_value_t = 4)]
    dim: usize,
    /// Number of Monte Carlo samples.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Relaxation rate for the decoherence curves.
    #[arg(long, global = true, default_value_t = 0.1)]
    lambda: f64,
    /// Initial chi2 values for the decoherence curves (repeatable).
    #[arg(long = "chi0", global = true)]
    chi0: Vec<f64>,
    #[arg(long, global = true, default_value_t = 1e-8)]
    quad_tol: f64,
    /// Output directory for CSV and SVG files.
    #[arg(long, global = true, env = "QFDIV_OUT", default_value = qfdiv_cli::config::DEFAULT_OUT_DIR)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Run every property suite and write verify.csv.
    Verify,
    /// Decoherence bound curves (fig1.csv, fig1.svg).
    Fig1,
    /// Reverse-Pinsker vs Audenaert-Eisert scatter (fig2.csv, fig2.svg).
    Fig2,
    /// Fraction of random pairs with |rho - sigma| <= rho + sigma.
    ConditionRate {
        /// Sample commuting (diagonal) pairs instead of Hilbert-Schmidt states.
        #[arg(long)]
        commuting: bool,
    },
    /// Witness distributions and residuals for two state files.
    Witness {
        rho: PathBuf,
        sigma: PathBuf,
        /// Generator: kl, chi2 or tv.
        #[arg(long = "f", default_value = "kl")]
        f: String,
    },
    /// All bounds for two state files.
    CompareBounds { rho: PathBuf, sigma: PathBuf },
}

impl Cli {
    fn config(&self) -> ExperimentConfig {
        let defaults = ExperimentConfig::default();
        ExperimentConfig {
            dim: self.dim,
            samples: self.samples,
            seed: self.seed,
            lambda: self.lambda,
            chi2_0_list: if self.chi0.is_empty() {
                defaults.chi2_0_list
            } else {
                self.chi0.clone()
            },
            quad_tol: self.quad_tol,
            out_dir: self.out.clone(),
            ..defaults
        }
    }
}

/// `Ok(true)` when every assertion held.
fn run(cli: &Cli) -> Result<bool, CliError> {
    let config = cli.config();
    match &cli.command {
        Command::Verify => {
            let report = verify::cmd_verify(&config)?;
            print!("{}", report.text());
            Ok(report.passed())
        }
        Command::Fig1 => {
            let out = experiments::cmd_fig1(&config)?;
            let violations = out.cap_violations();
            println!("fig1: {} rows, {violations} rows with improved > min(temme, 2)", out.rows.len());
            Ok(violations == 0)
        }
        Command::Fig2 => {
            let out = experiments::cmd_fig2(&config)?;
            let (vb, va) = out.bound_violations();
            println!(
                "fig2: {} rows, {} rejected draws, {} below diagonal, {} above",
                out.rows.len(),
                out.rejections,
                out.below_diagonal(),
                out.above_diagonal()
            );
            println!("fig2: relent above reverse-Pinsker bound: {vb}, above Audenaert-Eisert: {va}");
            Ok(vb == 0 && va == 0)
        }
        Command::ConditionRate { commuting } => {
            let mode = if *commuting {
                SamplingMode::Commuting
            } else {
                SamplingMode::HilbertSchmidt
            };
            let r = experiments::cmd_condition_rate(&config, mode)?;
            println!(
                "condition-rate: dim={} mode={} satisfied {}/{} = {:.4}",
                r.dim,
                mode.name(),
                r.satisfied,
                r.samples,
                r.rate()
            );
            Ok(match r.verdict() {
                RateVerdict::Pass | RateVerdict::Unchecked => true,
                RateVerdict::Warn => {
                    eprintln!(
                        "warning: rate {:.4} is at or below the {} reference",
                        r.rate(),
                        experiments::CONDITION_RATE_TARGET
                    );
                    true
                }
                RateVerdict::Fail => {
                    eprintln!(
                        "condition-rate: FAIL (expected > {})",
                        experiments::CONDITION_RATE_TARGET
                    );
                    false
                }
            })
        }
        Command::Witness { rho, sigma, f } => {
            let rho = statefile::parse_state_file(rho)?;
            let sigma = statefile::parse_state_file(sigma)?;
            let (text, ok) = inspect::witness_report(&rho, &sigma, f)?;
            print!("{text}");
            Ok(ok)
        }
        Command::CompareBounds { rho, sigma } => {
            let rho = statefile::parse_state_file(rho)?;
            let sigma = statefile::parse_state_file(sigma)?;
            let (text, ok) = inspect::compare_bounds(&rho, &sigma)?;
            print!("{text}");
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
