//! Structured run reports and exit codes.

use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

/// What a command produced: human-readable text, machine-readable outputs,
/// and named verification flags.
#[derive(Default)]
pub struct Outcome {
    pub text: String,
    pub outputs: Map<String, Value>,
    pub checks: Vec<(String, bool)>,
}

impl Outcome {
    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn output(&mut self, key: &str, value: Value) {
        self.outputs.insert(key.to_string(), value);
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.to_string(), ok));
    }

    pub fn verified(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Inputs of a run: the command line and the digests of files read.
#[derive(Default)]
pub struct Inputs {
    pub args: Vec<String>,
    pub files: Vec<(String, String)>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> std::io::Result<String> {
        let text = std::fs::read_to_string(path)?;
        self.files.push((path.display().to_string(), sha256_hex(text.as_bytes())));
        Ok(text)
    }

    fn to_json(&self) -> Value {
        let joined = self.args.join("\u{1f}");
        json!({
            "args": self.args,
            "files": self.files.iter().map(|(p, h)| json!({"path": p, "sha256": h})).collect::<Vec<_>>(),
            "digest": sha256_hex(joined.as_bytes()),
        })
    }
}

pub fn report(command: &str, inputs: &Inputs, outcome: &Outcome, elapsed_ms: u128) -> Value {
    let checks: Map<String, Value> = outcome.checks.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect();
    json!({
        "command": command,
        "inputs": inputs.to_json(),
        "outputs": Value::Object(outcome.outputs.clone()),
        "checks": checks,
        "verified": outcome.verified(),
        "elapsed_ms": elapsed_ms,
    })
}
