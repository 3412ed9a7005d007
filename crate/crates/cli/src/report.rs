use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// What a command hands back before formatting.
pub struct Finished {
    pub system: Option<String>,
    pub passed: bool,
    pub text: String,
    pub result: Value,
}

impl Finished {
    pub fn new(system: Option<String>, passed: bool, text: String, result: impl Serialize) -> Self {
        Self {
            system,
            passed,
            text,
            result: serde_json::to_value(result).expect("report payloads serialize"),
        }
    }
}

/// The JSON envelope written with `--format json`.
#[derive(Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
    pub result: Value,
}

impl RunReport {
    pub fn new(command: Vec<String>, done: Finished, seconds: Option<f64>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            system: done.system,
            status: if done.passed { "pass" } else { "fail" },
            seconds,
            result: done.result,
        }
    }
}

/// Failures that end the process.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
}

impl From<weylfan::Error> for CliError {
    fn from(e: weylfan::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
