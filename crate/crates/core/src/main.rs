use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use superosp::error::Error;
use superosp::instance::{Instance, InstanceSpec};
use superosp::par::Execution;
use superosp::report::{self, Envelope};

/// Exact verification of E_∞ Lie superalgebras and their derivation
/// algebras.
///
/// Exit status: 0 when every check passes, 1 when a check fails or the
/// instance is mathematically invalid, 2 on parse or usage errors.
#[derive(Parser)]
#[command(name = "superosp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    report: Format,

    /// Ignore the size guardrail.
    #[arg(long, global = true)]
    force: bool,

    /// Seed for the sampled checks.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,

    /// Largest ℚ-dimension of L processed without --force.
    #[arg(long, env = "SUPEROSP_MAX_DIM", default_value_t = 40, global = true)]
    max_dim: usize,

    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Table and form validation, E_∞ construction and its identities.
    Verify { spec: PathBuf },
    /// Derivation algebra, S/T spaces, D_M and the structure theorem checks.
    Derive { spec: PathBuf },
    /// Jordan superalgebra and module axioms, Der_* restriction maps.
    Jordan { spec: PathBuf },
    /// Dimensions only.
    Dims { spec: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Serialize)]
struct Failure {
    stage: &'static str,
    error: String,
}

fn emit<T: Serialize>(format: Format, env: &Envelope<T>) {
    let text = match format {
        Format::Json => format!("{}\n", report::to_json(env)),
        Format::Text => {
            let verdict = if env.pass { "PASS" } else { "FAIL" };
            let name = env.instance.as_deref().unwrap_or("-");
            format!(
                "{} {name}: {verdict}\n{}",
                env.command,
                report::to_text(env)
            )
        }
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn is_invalid_input(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidForm { .. }
            | Error::InvalidTable(_)
            | Error::InvalidSubalgebra(_)
            | Error::BlockShape(_)
            | Error::NonHomogeneous
            | Error::InvalidPair(_)
    )
}

fn run(cli: &Cli) -> Result<ExitCode, (ExitCode, Error)> {
    let (name, path) = match &cli.command {
        Command::Verify { spec } => ("verify", spec),
        Command::Derive { spec } => ("derive", spec),
        Command::Jordan { spec } => ("jordan", spec),
        Command::Dims { spec } => ("dims", spec),
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::best()
    };
    let spec = InstanceSpec::from_path(path).map_err(|e| (ExitCode::from(2), e))?;
    let instance_name = spec.name.clone();
    let fail = |stage: &'static str, e: Error| {
        let code = if is_invalid_input(&e) { 1 } else { 2 };
        let env = Envelope {
            instance: instance_name.clone(),
            command: name,
            pass: false,
            body: Failure {
                stage,
                error: e.to_string(),
            },
        };
        emit(cli.report, &env);
        ExitCode::from(code)
    };
    let inst: Instance = match spec.build(exec) {
        Ok(i) => i,
        Err(e) => return Ok(fail("build", e)),
    };
    let dim = inst.einfty.dim();
    if !cli.force && dim > cli.max_dim {
        return Err((
            ExitCode::from(2),
            Error::SizeLimit {
                dim,
                max: cli.max_dim,
            },
        ));
    }
    macro_rules! finish {
        ($res:expr) => {
            match $res {
                Ok((body, pass)) => {
                    emit(
                        cli.report,
                        &Envelope {
                            instance: instance_name.clone(),
                            command: name,
                            pass,
                            body,
                        },
                    );
                    Ok(ExitCode::from(if pass { 0 } else { 1 }))
                }
                Err(e) => Ok(fail(name, e)),
            }
        };
    }
    match cli.command {
        Command::Verify { .. } => finish!(report::run_verify(&inst, cli.seed, exec)),
        Command::Derive { .. } => finish!(report::run_derive(&inst, cli.seed, exec)),
        Command::Jordan { .. } => {
            finish!(report::run_jordan(&inst, cli.seed, exec).map(|(r, p)| (Keyed { jordan: r }, p)))
        }
        Command::Dims { .. } => finish!(report::run_dims(&inst, exec)),
    }
}

#[derive(Serialize)]
struct Keyed<T: Serialize> {
    jordan: T,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err((code, e)) => {
            eprintln!("superosp: {e}");
            code
        }
    }
}
