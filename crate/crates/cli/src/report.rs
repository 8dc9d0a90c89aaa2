//! Run reports on stdout, structured errors on stderr.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::time::Instant;
use wkern::codec::ParseError;

/// Exit statuses besides success.
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INVALID: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub body: Value,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, kind: "usage", body: json!({ "message": message.into() }) }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, kind: "invalid_input", body: json!({ "message": message.into() }) }
    }

    pub fn parse(path: &Path, e: &ParseError) -> Self {
        CliError {
            code: EXIT_INVALID,
            kind: "parse",
            body: json!({
                "path": path.display().to_string(),
                "line": e.line,
                "column": e.column,
                "field": e.field,
                "message": e.message,
            }),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        CliError { code: EXIT_FAILED, kind: "failed", body: json!({ "message": message.into() }) }
    }

    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("error".into(), Value::from(self.kind));
        if let Value::Object(body) = &self.body {
            m.extend(body.clone());
        }
        Value::Object(m).to_string()
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Collects what a run read and produced. Everything except `elapsed_ms` is
/// a function of the command line and the input bytes.
pub struct RunReport {
    command: Vec<String>,
    seed: Option<u64>,
    inputs: Vec<Value>,
    fields: Map<String, Value>,
    certificates: Vec<String>,
    outputs: Vec<Value>,
    started: Instant,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            seed: None,
            inputs: Vec::new(),
            fields: Map::new(),
            certificates: Vec::new(),
            outputs: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push(json!({ "path": path.display().to_string(), "sha256": sha256_hex(bytes) }));
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    /// Writes `text` to `path` and records its digest.
    pub fn write_output(&mut self, path: &Path, text: &str) -> CliResult<()> {
        write_file(path, text)?;
        self.outputs.push(json!({ "path": path.display().to_string(), "sha256": sha256_hex(text.as_bytes()) }));
        Ok(())
    }

    pub fn write_certificate(&mut self, path: &Path, text: &str) -> CliResult<()> {
        self.write_output(path, text)?;
        self.certificates.push(path.display().to_string());
        Ok(())
    }

    pub fn finish(self) -> String {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), Value::Array(self.inputs));
        if let Some(s) = self.seed {
            m.insert("seed".into(), json!(s));
        }
        m.extend(self.fields);
        if !self.outputs.is_empty() {
            m.insert("outputs".into(), Value::Array(self.outputs));
        }
        if !self.certificates.is_empty() {
            m.insert("certificates".into(), json!(self.certificates));
        }
        m.insert("elapsed_ms".into(), json!(self.started.elapsed().as_millis() as u64));
        serde_json::to_string_pretty(&Value::Object(m)).expect("report serializes") + "\n"
    }
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::failed(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::failed(format!("{}: {e}", path.display())))
}

pub fn read_file(path: &PathBuf) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}
