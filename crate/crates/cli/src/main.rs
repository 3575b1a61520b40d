mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{Report, Settings, DEFAULT_LADDER_DEPTH, FALLBACK_SEARCH_BOUND};
use tamecurve::curve::{Bimodule, DEFAULT_MAX_DEGREE};
use tamecurve::spec::{CurveSpec, OutputFormat};
use tamecurve::Error;

#[derive(Parser)]
#[command(name = "tamecurve", version, about = "Parameter curves of tame bimodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the curve is commutative and describe k(X).
    Classify(Common),
    /// Points of the curve over a finite field up to a degree bound.
    Points(Common),
    /// Presentation of the orbit algebra R, its Hilbert function and centre.
    Algebra(Common),
    /// The ghost group Aut₀(R) modulo scalars.
    Ghosts(Common),
    /// Check the preprojective ladder: morphisms, relations, exactness, Hom dimensions.
    LadderVerify {
        #[command(flatten)]
        common: Common,
        /// Deepest level n to check.
        #[arg(long)]
        depth: Option<usize>,
        /// Write the matrices of Pₙ, Xₙ, Yₙ, Zₙ as JSON to this file.
        #[arg(long, value_name = "PATH")]
        dump_matrices: Option<PathBuf>,
    },
    /// Compare τ⁻ with the shift σ_x on Hom(L, L(1)).
    ArTranslate(Common),
    /// The function field k(X) and its centre.
    FunctionField(Common),
}

#[derive(Args)]
struct Common {
    /// Curve specification (JSON).
    spec: PathBuf,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
    #[arg(long, env = "TAMECURVE_MAX_DEGREE")]
    max_degree: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Points(_) => "points",
            Command::Algebra(_) => "algebra",
            Command::Ghosts(_) => "ghosts",
            Command::LadderVerify { .. } => "ladder-verify",
            Command::ArTranslate(_) => "ar-translate",
            Command::FunctionField(_) => "function-field",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Classify(c)
            | Command::Points(c)
            | Command::Algebra(c)
            | Command::Ghosts(c)
            | Command::ArTranslate(c)
            | Command::FunctionField(c) => c,
            Command::LadderVerify { common, .. } => common,
        }
    }
}

fn load(path: &Path) -> Result<(CurveSpec, Bimodule), Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let spec = CurveSpec::from_json(&text)?;
    let bimodule = spec.bimodule()?;
    Ok((spec, bimodule))
}

fn run(command: &Command, spec: &CurveSpec, bimodule: &Bimodule) -> Result<Report, Error> {
    let common = command.common();
    let (depth, dump) = match command {
        Command::LadderVerify { depth, dump_matrices, .. } => (*depth, dump_matrices.clone()),
        _ => (None, None),
    };
    let settings = Settings {
        max_degree: common.max_degree.or(spec.options.max_degree).unwrap_or(DEFAULT_MAX_DEGREE),
        seed: common.seed,
        search_bound: spec.options.search_bound.unwrap_or(FALLBACK_SEARCH_BOUND),
        ladder_depth: depth.or(spec.options.ladder_depth).unwrap_or(DEFAULT_LADDER_DEPTH),
        dump_matrices: dump,
    };
    match command {
        Command::Classify(_) => commands::classify(bimodule, &settings),
        Command::Points(_) => commands::points(bimodule, &settings),
        Command::Algebra(_) => commands::algebra(bimodule, &settings),
        Command::Ghosts(_) => commands::ghosts(bimodule, &settings),
        Command::LadderVerify { .. } => commands::ladder_verify(bimodule, &settings),
        Command::ArTranslate(_) => commands::ar_translate(bimodule),
        Command::FunctionField(_) => commands::function_field(bimodule),
    }
}

/// Print to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn emit_error(json_out: bool, command: &str, spec: Option<&str>, err: &Error) {
    if json_out {
        let v = json!({
            "command": command,
            "spec": spec,
            "ok": false,
            "error": { "kind": err.kind(), "message": err.to_string() },
        });
        emit(&serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        eprintln!("error: {err}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = &cli.command;
    let common = command.common();
    let (spec, bimodule) = match load(&common.spec) {
        Ok(loaded) => loaded,
        Err(err) => {
            emit_error(common.json, command.name(), None, &err);
            return ExitCode::from(2);
        }
    };
    let json_out = common.json || spec.options.format == Some(OutputFormat::Json);
    let name = spec.name.as_deref();
    match run(command, &spec, &bimodule) {
        Ok(report) => {
            if json_out {
                let v = json!({ "command": command.name(), "spec": name, "ok": report.passed, "result": report.result });
                emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                emit(&report.text);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            emit_error(json_out, command.name(), name, &err);
            ExitCode::from(1)
        }
    }
}
