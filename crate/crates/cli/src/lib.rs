//! Request/response layer of the `klein33` command-line tool.
//!
//! A request is `{"command": ..., "payload": {...}, "options": {...}}`; the
//! response is `{"status": "ok", "result": ..., "diagnostics": [...]}` or
//! `{"status": "error", "error": {"code", "message"}, "diagnostics": [...]}`.

pub mod commands;
pub mod json;

use std::io::BufRead;

use rayon::prelude::*;
use serde_json::{json, Value};

pub use commands::COMMANDS;

/// Error response body. Kernel errors keep their own codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: String,
    pub message: String,
}

impl Failure {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        Failure {
            code: code.into(),
            message: message.into(),
        }
    }

    pub fn schema(message: impl Into<String>) -> Self {
        Self::new("E_SCHEMA", message)
    }
}

impl From<klein33::Error> for Failure {
    fn from(e: klein33::Error) -> Self {
        Failure::new(e.code(), e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Refuse floating-point fallbacks.
    pub exact: bool,
    pub seed: u64,
    /// Default line count for `regulus-sample`.
    pub samples: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            exact: true,
            seed: 0,
            samples: 8,
        }
    }
}

impl Options {
    /// Request-level options override these defaults field by field.
    fn merged(&self, v: Option<&Value>) -> Result<Options, Failure> {
        let mut out = self.clone();
        let Some(v) = v else { return Ok(out) };
        let map = v
            .as_object()
            .ok_or_else(|| Failure::schema("options must be a JSON object"))?;
        for (k, x) in map {
            match k.as_str() {
                "exact" => {
                    out.exact = x
                        .as_bool()
                        .ok_or_else(|| Failure::schema("options.exact must be a boolean"))?
                }
                "seed" => {
                    out.seed = x.as_u64().ok_or_else(|| {
                        Failure::schema("options.seed must be a non-negative integer")
                    })?
                }
                "samples" => {
                    out.samples = x.as_u64().ok_or_else(|| {
                        Failure::schema("options.samples must be a non-negative integer")
                    })? as usize
                }
                other => return Err(Failure::schema(format!("unknown option {other:?}"))),
            }
        }
        Ok(out)
    }
}

fn ok(result: Value, diagnostics: Vec<String>) -> Value {
    json!({ "status": "ok", "result": result, "diagnostics": diagnostics })
}

pub fn error_response(f: &Failure) -> Value {
    json!({
        "status": "error",
        "error": { "code": f.code, "message": f.message },
        "diagnostics": Vec::<String>::new(),
    })
}

pub fn is_ok(response: &Value) -> bool {
    response["status"] == "ok"
}

/// Runs one command with an already parsed payload.
pub fn run_command(command: &str, payload: &Value, options: &Options) -> Value {
    let mut diagnostics = Vec::new();
    match commands::dispatch(command, payload, options, &mut diagnostics) {
        Ok(result) => ok(result, diagnostics),
        Err(f) => error_response(&f),
    }
}

/// Runs a request object.
pub fn run(request: &Value, defaults: &Options) -> Value {
    let parsed = (|| {
        let map = request
            .as_object()
            .ok_or_else(|| Failure::schema("request must be a JSON object"))?;
        if let Some(k) = map
            .keys()
            .find(|k| !matches!(k.as_str(), "command" | "payload" | "options"))
        {
            return Err(Failure::schema(format!("unknown request field {k:?}")));
        }
        let command = map
            .get("command")
            .and_then(Value::as_str)
            .ok_or_else(|| Failure::schema("request needs a string \"command\""))?;
        let options = defaults.merged(map.get("options"))?;
        Ok((command, options))
    })();
    match parsed {
        Ok((command, options)) => {
            let empty = json!({});
            run_command(command, request.get("payload").unwrap_or(&empty), &options)
        }
        Err(f) => error_response(&f),
    }
}

/// Runs one line of newline-delimited input.
pub fn run_line(line: &str, defaults: &Options) -> Value {
    match serde_json::from_str::<Value>(line) {
        Ok(request) => run(&request, defaults),
        Err(e) => error_response(&Failure::new("E_PARSE", format!("invalid JSON: {e}"))),
    }
}

/// One response per non-blank input line, in input order. Lines are
/// processed in parallel.
pub fn batch<R: BufRead>(input: R, defaults: &Options) -> Result<Vec<Value>, Failure> {
    let lines: Vec<String> = input
        .lines()
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::new("E_IO", format!("cannot read input: {e}")))?;
    Ok(lines
        .par_iter()
        .filter(|l| !l.trim().is_empty())
        .map(|l| run_line(l, defaults))
        .collect())
}

pub fn batch_file(path: &str, defaults: &Options) -> Result<Vec<Value>, Failure> {
    if path == "-" {
        return batch(std::io::stdin().lock(), defaults);
    }
    let file = std::fs::File::open(path)
        .map_err(|e| Failure::new("E_IO", format!("cannot open {path}: {e}")))?;
    batch(std::io::BufReader::new(file), defaults)
}

pub fn render(response: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(response).expect("serializable")
    } else {
        response.to_string()
    }
}
