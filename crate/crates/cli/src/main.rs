use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qss::commands::{self, SpectralOptions};
use qss::{CliError, Project};

/// Exact stability checks for semi-simplicial actions of finite groups.
#[derive(Debug, Parser)]
#[command(name = "qss", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every complex, group, action and cross-reference in a project.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Acyclicity and transitivity degrees of one action.
    Analyze {
        file: PathBuf,
        action: String,
        #[arg(long)]
        json: bool,
    },
    /// Verdict grid and r(q) for a profile or a family.
    Stability {
        file: PathBuf,
        name: String,
        #[arg(long, default_value_t = 6)]
        qmax: usize,
        #[arg(long)]
        json: bool,
    },
    /// Spectral sequence pages of an action or a double complex.
    Spectral {
        file: PathBuf,
        name: String,
        #[arg(long)]
        max_p: Option<usize>,
        #[arg(long)]
        max_q: Option<usize>,
        /// Number of pages to print.
        #[arg(long)]
        pages: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// ℓ¹ bounds and identity of a contracting homotopy.
    HomotopyCheck {
        file: PathBuf,
        /// A homotopy name, or a complex name with --cone.
        name: String,
        /// Use the coning homotopy at this vertex.
        #[arg(long)]
        cone: Option<usize>,
        #[arg(long)]
        up_to: Option<i64>,
        #[arg(long)]
        json: bool,
    },
}

fn emit<T: Serialize>(json: bool, report: &T, human: impl FnOnce(&T) -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("reports serialize"));
    } else {
        print!("{}", human(report));
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Validate { file, json } => {
            let r = commands::validate(&Project::load(&file)?);
            emit(json, &r, |r| r.render());
            Ok(status(r.passed))
        }
        Command::Analyze { file, action, json } => {
            let r = commands::analyze(&Project::load(&file)?, &action)?;
            emit(json, &r, |r| r.render());
            Ok(ExitCode::SUCCESS)
        }
        Command::Stability { file, name, qmax, json } => {
            let r = commands::stability(&Project::load(&file)?, &name, qmax)?;
            emit(json, &r, |r| r.render());
            Ok(status(r.passed))
        }
        Command::Spectral { file, name, max_p, max_q, pages, json } => {
            let opts = SpectralOptions { max_p, max_q, pages };
            let r = commands::spectral(&Project::load(&file)?, &name, opts)?;
            emit(json, &r, |r| r.render());
            Ok(status(r.passed()))
        }
        Command::HomotopyCheck { file, name, cone, up_to, json } => {
            let r = commands::homotopy_check(&Project::load(&file)?, &name, cone, up_to)?;
            emit(json, &r, |r| r.render());
            Ok(status(r.homotopy.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
