//! Library side of `biextctl`: input loading, the subcommands and the self-test.
//!
//! Every command returns a [`Report`]: a JSON object with a verdict. Field
//! elements are printed as decimal strings, complex numbers as `[re, im]`
//! pairs of decimal strings, so equal inputs and seeds give identical bytes.

pub mod commands;
pub mod selftest;

use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed JSON, unknown fields, invalid curves or structures, failed preconditions.
    #[error("input error: {0}")]
    Input(String),
}

impl CliError {
    pub fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Weil pairing of two torsion points, compared with the Miller-loop oracle.
    Weil,
    /// Weil reciprocity f(div g) = g(div f).
    Reciprocity,
    /// Tame symbols and their product over all places.
    Tame,
    /// Poincaré biextension of a complex torus: axioms, Weil pairing or height.
    Torus,
    /// Massey-product reading of the Weil pairing on a differential graded toy algebra.
    Massey,
    /// Runs every acceptance criterion and prints a pass/fail table.
    Selftest,
}

/// Everything a run needs besides the input text.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<String>,
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub format: Format,
}

/// The output of a command and whether its checks agreed.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub body: Value,
    pub ok: bool,
    /// Replaces the generic text rendering when present.
    pub text: Option<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_DISAGREEMENT
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.body).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone().unwrap_or_else(|| render_text(&self.body)),
        }
    }
}

fn render_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::String(s) => writeln!(out, "{k}: {s}"),
                    Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                        writeln!(out, "{k}:").unwrap();
                        for item in items {
                            writeln!(out, "  {}", serde_json::to_string(item).expect("json")).unwrap();
                        }
                        Ok(())
                    }
                    other => writeln!(out, "{k}: {other}"),
                }
                .unwrap();
            }
        }
        other => writeln!(out, "{other}").unwrap(),
    }
    out
}

/// `--input` is either a path or inline JSON (anything starting with `{`).
pub fn load_input<T: DeserializeOwned>(input: Option<&str>) -> Result<T, CliError> {
    let text = match input {
        None => return Err(CliError::Input("this command needs --input".into())),
        Some(s) if s.trim_start().starts_with('{') => s.to_string(),
        Some(path) => std::fs::read_to_string(Path::new(path))
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(CliError::input)
}

/// Runs one command.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    if let Some(t) = cfg.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Input(format!("tolerance must be positive, got {t}")));
        }
    }
    let input = cfg.input.as_deref();
    match cfg.command {
        Command::Weil => commands::weil(load_input(input)?, cfg.seed),
        Command::Reciprocity => commands::reciprocity(load_input(input)?),
        Command::Tame => commands::tame(load_input(input)?),
        Command::Torus => commands::torus(load_input(input)?, cfg.seed, cfg.tolerance),
        Command::Massey => {
            let spec = match input {
                None => commands::MasseyInput::default(),
                Some(_) => load_input(input)?,
            };
            commands::massey(spec, cfg.seed)
        }
        Command::Selftest => Ok(selftest::report(&selftest::run_all(cfg.seed))),
    }
}
