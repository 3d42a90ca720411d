//! `llg`: command-line front end for llg-core.

mod error;
mod input;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use llg_core::io::{self, ConstantsFile, JetFile};
use llg_core::verify::{self, Suite};
use llg_core::{char_classes, deformation, library, lie_algebra, parallelism};

use error::CliError;

#[derive(Parser)]
#[command(name = "llg", version, about = "Exact calculus, cohomology and deformations of local Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Connection, torsion, curvatures, local-Lie verdict and identity suite.
    Analyze {
        /// Frame or connection JSON file, or a built-in example name.
        input: Option<String>,
        #[arg(long)]
        example: Option<String>,
        /// Point as comma-separated rationals (default: origin).
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Deformation cohomology of a Lie algebra with adjoint coefficients.
    Cohomology {
        /// Constants file, frame/connection file (localized at --point), or example name.
        input: Option<String>,
        #[arg(long)]
        example: Option<String>,
        /// Point as comma-separated rationals (default: origin).
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Highest degree (default: the dimension).
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Torsion powers, their closedness and exactness, and trace images.
    Classes {
        input: Option<String>,
        #[arg(long)]
        example: Option<String>,
        /// Point as comma-separated rationals (default: origin).
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Gauge deformation of a local Lie group by a jet in t.
    Deform {
        /// Base frame or connection (file or example); optional with a jet example.
        base: Option<String>,
        /// Jet file or jet example name.
        jet: Option<String>,
        /// Jet example; its base is used when no base is given.
        #[arg(long)]
        example: Option<String>,
        /// Point as comma-separated rationals (default: origin).
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Truncate or zero-pad the jet to this order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Seeded property suites; exits nonzero on any failure.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["identities", "complexes", "classes", "deformations", "all"])]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Lists the built-in examples, or prints one as a JSON input file.
    Examples {
        name: Option<String>,
        #[arg(long)]
        example: Option<String>,
    },
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Json => out(&format!("{}\n", io::to_json(report))),
        Format::Text => out(&text(report)),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Analyze { input, example, point } => {
            let arg = input::pick(input.as_deref(), example.as_deref(), "frame or connection")?;
            let (c, frame) = input::geometry(arg)?;
            let p = input::parse_point(point.as_deref(), c.dim())?;
            let report = parallelism::analyze(&c, frame.as_ref(), &p)?;
            emit(format, &report, render::analysis);
        }
        Command::Cohomology {
            input,
            example,
            point,
            max_degree,
        } => {
            let arg = input::pick(input.as_deref(), example.as_deref(), "structure constants")?;
            let g = input::constants(arg, point.as_deref())?;
            let report = lie_algebra::cohomology(&g, max_degree.unwrap_or(g.dim()))?;
            emit(format, &report, render::cohomology);
        }
        Command::Classes { input, example, point } => {
            let arg = input::pick(input.as_deref(), example.as_deref(), "frame or connection")?;
            let (c, _) = input::geometry(arg)?;
            let p = input::parse_point(point.as_deref(), c.dim())?;
            let report = char_classes::classes_report(&c, &p)?;
            emit(format, &report, render::classes);
        }
        Command::Deform {
            base,
            jet,
            example,
            point,
            order,
        } => {
            let (base, jet_arg) = match (base, jet, example) {
                (b, None, Some(e)) => (b, e),
                (Some(b), Some(j), None) => (Some(b), j),
                (None, None, None) => return Err(CliError::Usage("missing jet: pass BASE JET or --example NAME".into())),
                _ => return Err(CliError::Usage("pass BASE JET, or --example JET with an optional BASE".into())),
            };
            let (j, default_base) = input::jet(&jet_arg)?;
            let base = base
                .or_else(|| default_base.map(str::to_string))
                .ok_or_else(|| CliError::Usage("a jet file needs a base frame or connection".into()))?;
            let (c, frame) = input::geometry(&base)?;
            let j = input::with_order(j, order)?;
            let p = input::parse_point(point.as_deref(), c.dim())?;
            let report = deformation::deformation_report(&j, &c, frame.as_ref(), &p)?;
            emit(format, &report, render::deformation);
        }
        Command::Verify { suite, seed } => {
            let report = verify::run(Suite::parse(&suite)?, seed);
            emit(format, &report, render::verify);
            if !report.passed {
                return Err(CliError::ChecksFailed);
            }
        }
        Command::Examples { name, example } => match name.or(example) {
            None => emit(format, &library::catalog(), |l| render::examples(l)),
            Some(name) => out(&format!("{}\n", example_file(&name)?)),
        },
    }
    Ok(())
}

/// The JSON input file of a built-in example.
fn example_file(name: &str) -> Result<String, CliError> {
    if let Ok(g) = library::geometry(name) {
        return Ok(io::to_json(&g));
    }
    if let Ok((j, _)) = library::jet(name) {
        return Ok(io::to_json::<JetFile>(&j));
    }
    if let Ok(g) = library::algebra(name) {
        return Ok(io::to_json(&ConstantsFile::from_constants(&g)));
    }
    Err(CliError::Usage(format!("unknown example `{name}` (see `llg examples`)")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::ChecksFailed) => ExitCode::from(error::EXIT_FAILED_CHECKS),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
