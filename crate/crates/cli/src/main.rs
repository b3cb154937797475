mod args;
mod bundle;
mod commands;
mod error;
mod render;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command};
use error::{CliError, CliResult};

fn run(command: &Command) -> CliResult<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match command {
        Command::Cohomology(a) => ok(commands::cohomology(a)?),
        Command::Charclasses(a) => ok(commands::charclasses(a)?),
        Command::Structures(a) => ok(commands::structures(a)?),
        Command::Transport(a) => ok(bundle::run(a)?),
        Command::Verify(a) => verify::run(a),
    }
}

fn emit(v: &Value, as_json: bool) {
    let text =
        if as_json { format!("{}\n", serde_json::to_string(v).expect("reports serialize")) } else { render::render(v) };
    // a closed pipe is the reader's choice, not an error of ours
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((report, true)) => {
            emit(&report, cli.json);
            ExitCode::SUCCESS
        }
        Ok((report, false)) => {
            emit(&report, cli.json);
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let hypotheses = match &e {
                CliError::Hypotheses { report: Some(h), .. } => Some(h.clone()),
                _ => None,
            };
            if cli.json {
                let mut v = json!({"error": {"code": e.code(), "kind": e.kind(), "message": e.to_string()}});
                if let Some(h) = hypotheses {
                    v["hypotheses"] = h;
                }
                emit(&v, true);
            } else if let Some(h) = hypotheses {
                emit(&json!({"hypotheses": h}), false);
            }
            ExitCode::from(e.code())
        }
    }
}
