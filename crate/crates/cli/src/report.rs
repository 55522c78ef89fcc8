//! The job report written next to every command's output.

use std::fs;
use std::io::{self, Write};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One named property checked by a job.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, passed: bool, cases: usize) -> Self {
        Check { name: name.to_string(), passed, cases, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Everything needed to reproduce a job: the canonical command line, the
/// parsed inputs, the outputs and whether they were certified. Apart from
/// `timing`, rerunning `command` reproduces the report byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobReport {
    pub command: Vec<String>,
    pub inputs: Value,
    pub outputs: Value,
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    pub tool_version: String,
    pub timing: Timing,
}

impl JobReport {
    pub fn new(command: Vec<String>, inputs: Value, outputs: Value, certified: bool, elapsed: Duration) -> Self {
        JobReport {
            command,
            inputs,
            outputs,
            certified,
            checks: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timing: Timing { elapsed_ms: elapsed.as_secs_f64() * 1e3 },
        }
    }

    pub fn with_checks(mut self, checks: Vec<Check>) -> Self {
        self.checks = checks;
        self
    }

    /// The report without its timing, for reproducibility comparisons.
    pub fn comparable(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("report is an object").remove("timing");
        v
    }

    pub fn exit_code(&self) -> i32 {
        if self.certified {
            0
        } else {
            1
        }
    }
}

/// Pretty JSON to a file, or to standard output for `-`.
pub fn write_json(path: &str, value: &impl Serialize) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    if path == "-" {
        io::stdout().lock().write_all(text.as_bytes())
    } else {
        fs::write(path, text)
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> io::Result<String> {
    if path == "-" {
        io::read_to_string(io::stdin())
    } else {
        fs::read_to_string(path)
    }
}
