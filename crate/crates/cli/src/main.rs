use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use klein33::selftest;
use klein33_cli::{error_response, is_ok, render, Failure, Options};
use serde_json::Value;

/// Exact line geometry of P³ over newline-delimited JSON.
#[derive(Parser)]
#[command(name = "klein33", version)]
struct Cli {
    /// Refuse floating-point fallbacks (`--exact=false` allows them).
    #[arg(long, global = true, action = ArgAction::Set, default_value_t = true,
          num_args = 0..=1, default_missing_value = "true")]
    exact: bool,
    /// Seed for randomized choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Pretty-print responses.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single command.
    Run {
        command: String,
        /// Payload file, or `-` for stdin. Defaults to an empty payload.
        #[arg(long)]
        payload: Option<String>,
    },
    /// Run newline-delimited requests from a file (`-` for stdin).
    Batch { file: String },
    /// Run the acceptance suite.
    Selftest,
}

fn read_payload(source: Option<&str>) -> Result<Value, Failure> {
    let text = match source {
        None => return Ok(Value::Object(Default::default())),
        Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::new("E_IO", format!("cannot read stdin: {e}")))?;
            s
        }
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::new("E_IO", format!("cannot read {path}: {e}")))?,
    };
    serde_json::from_str(&text)
        .map_err(|e| Failure::new("E_PARSE", format!("invalid payload JSON: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = Options {
        exact: cli.exact,
        seed: cli.seed.unwrap_or(0),
        ..Options::default()
    };
    let mut out = std::io::stdout().lock();
    let mut all_ok = true;
    match cli.command {
        Command::Run { command, payload } => {
            let response = match read_payload(payload.as_deref()) {
                Ok(p) => klein33_cli::run_command(&command, &p, &options),
                Err(f) => error_response(&f),
            };
            all_ok = is_ok(&response);
            let _ = writeln!(out, "{}", render(&response, cli.pretty));
        }
        Command::Batch { file } => match klein33_cli::batch_file(&file, &options) {
            Ok(responses) => {
                for r in &responses {
                    all_ok &= is_ok(r);
                    let _ = writeln!(out, "{}", render(r, cli.pretty));
                }
            }
            Err(f) => {
                all_ok = false;
                let _ = writeln!(out, "{}", render(&error_response(&f), cli.pretty));
            }
        },
        Command::Selftest => {
            let seed = cli.seed.unwrap_or(selftest::DEFAULT_SEED);
            let outcomes = selftest::run_all(seed);
            for o in &outcomes {
                all_ok &= o.passed;
                let _ = writeln!(out, "{}", o.line());
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let _ = writeln!(out, "{passed}/{} criteria passed", outcomes.len());
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
