use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use core_linalg::NormKind;

use svcert::error::CliError;
use svcert::pipeline::{run_bound, run_sintheta, BoundArgs, SinThetaArgs};
use svcert::report::{to_json, Report, VerifyJson};
use svcert::suites::{run_suite, SuiteParams};

/// Certified perturbation bounds for singular subspaces: solve for the
/// rotation pair that re-block-diagonalizes a perturbed matrix, evaluate
/// every bound certificate, and cross-check against brute-force oracles.
#[derive(Parser)]
#[command(name = "svcert", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Spectral,
    Frobenius,
    Nuclear,
}

impl From<NormArg> for NormKind {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Spectral => NormKind::Spectral,
            NormArg::Frobenius => NormKind::Frobenius,
            NormArg::Nuclear => NormKind::Nuclear,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    Blockdiag,
    Max,
}

#[derive(Subcommand)]
enum Command {
    /// Full bound pipeline on a decomposed matrix and a perturbation.
    Bound(BoundCli),
    /// Run seeded property suites and report pass counts and worst slack.
    Verify(VerifyCli),
    /// Sin-theta certificate for a competing singular triple of G.
    Sintheta(SinThetaCli),
}

#[derive(Args)]
struct BoundCli {
    /// Matrix file for G
    #[arg(long)]
    g: PathBuf,
    /// Matrix file for the perturbation E
    #[arg(long)]
    e: PathBuf,
    /// Split index (1 <= r < min(m, n))
    #[arg(long)]
    r: usize,
    /// Matrix file for U (defaults to the SVD of G)
    #[arg(long)]
    u: Option<PathBuf>,
    /// Matrix file for V (defaults to the SVD of G)
    #[arg(long)]
    v: Option<PathBuf>,
    #[arg(long, value_enum)]
    norm: NormArg,
    #[arg(long, value_enum, default_value = "blockdiag")]
    pairing: PairingArg,
    /// Attempt the rotation solve even when the smallness condition fails
    #[arg(long)]
    force: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyCli {
    /// One of: sylvester, perturb, sintheta, all
    #[arg(long)]
    suite: String,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    max_dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SinThetaCli {
    #[arg(long)]
    g: PathBuf,
    #[arg(long)]
    u1t: PathBuf,
    #[arg(long)]
    v1t: PathBuf,
    #[arg(long)]
    g1t: PathBuf,
    #[arg(long, value_enum)]
    norm: NormArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match cli.command {
        Command::Bound(args) => {
            let out = args.out.clone();
            let bound_args = BoundArgs {
                g: args.g,
                e: args.e,
                r: args.r,
                u: args.u,
                v: args.v,
                norm: args.norm.into(),
                max_pairing: matches!(args.pairing, PairingArg::Max),
                force: args.force,
            };
            (run_bound(&bound_args), out)
        }
        Command::Verify(args) => (run_verify(&args), args.out),
        Command::Sintheta(args) => {
            let out = args.out.clone();
            let st_args = SinThetaArgs {
                g: args.g,
                u1t: args.u1t,
                v1t: args.v1t,
                g1t: args.g1t,
                norm: args.norm.into(),
            };
            (run_sintheta(&st_args), out)
        }
    };

    match result {
        Ok(report) => {
            let text = to_json(&report);
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                println!("{text}");
            }
            // Exit 1 when any certificate or property failed.
            let certificates_ok = report.bounds.iter().all(|b| b.satisfied)
                && report.sintheta.as_ref().is_none_or(|s| s.satisfied)
                && report.verify.as_ref().is_none_or(|v| v.all_passed);
            if certificates_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let obj = serde_json::json!({
                "error": { "kind": err.kind(), "message": err.to_string() }
            });
            println!("{obj}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run_verify(args: &VerifyCli) -> Result<Report, CliError> {
    let inputs = serde_json::json!({
        "suite": args.suite,
        "trials": args.trials,
        "seed": args.seed,
        "max_dim": args.max_dim,
    });
    let mut report = Report::new("verify", inputs);
    let started = Instant::now();
    let params = SuiteParams { trials: args.trials, seed: args.seed, max_dim: args.max_dim };
    let properties = run_suite(&args.suite, &params)?;
    let all_passed = properties.iter().all(|p| p.fail == 0);
    report.verify = Some(VerifyJson {
        suite: args.suite.clone(),
        trials: args.trials,
        seed: args.seed,
        max_dim: args.max_dim,
        properties,
        all_passed,
    });
    report
        .timings
        .insert("suite".into(), started.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}
