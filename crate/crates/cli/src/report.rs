//! Requests, reports and the errors that map to process exit codes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Mult,
    TangentCone,
    Invariants,
    Corank,
    Hilbert,
    Theta,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Mult => "mult",
            Command::TangentCone => "tangent-cone",
            Command::Invariants => "invariants",
            Command::Corank => "corank",
            Command::Hilbert => "hilbert",
            Command::Theta => "theta",
            Command::Verify => "verify",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "mult" => Command::Mult,
            "tangent-cone" => Command::TangentCone,
            "invariants" => Command::Invariants,
            "corank" => Command::Corank,
            "hilbert" => Command::Hilbert,
            "theta" => Command::Theta,
            "verify" => Command::Verify,
            other => return Err(CliError::UnknownCommand(other.to_string())),
        })
    }
}

/// A command with its parameters as strings, as typed on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub params: BTreeMap<String, String>,
}

impl Request {
    pub fn new(command: Command) -> Self {
        Self { command, params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn natural(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.params.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| CliError::InvalidParameter(format!("--{key} expects a natural number, got {v:?}"))),
        }
    }

    pub fn required(&self, key: &str) -> Result<u64, CliError> {
        self.natural(key)?.ok_or_else(|| CliError::MissingParameter(key.to_string()))
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Compares a closed form with its oracle; a failure outside `verify`
    /// is an internal inconsistency rather than a failed property.
    #[serde(skip)]
    pub consistency: bool,
}

impl Check {
    pub fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self { name: name.to_string(), status, detail: detail.into(), consistency: false }
    }

    pub fn consistency(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self { consistency: true, ..Self::new(name, ok, detail) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub checks: Vec<Check>,
    pub version: String,
}

impl Report {
    /// 0 when every check passed, 4 on a formula/oracle disagreement outside
    /// `verify`, 1 on any other failure.
    pub fn exit_code(&self) -> u8 {
        let failed: Vec<&Check> = self.checks.iter().filter(|c| !c.passed()).collect();
        if failed.is_empty() {
            0
        } else if self.command != Command::Verify.name() && failed.iter().any(|c| c.consistency) {
            4
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    UnknownCommand(String),
    MissingParameter(String),
    InvalidParameter(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::UnknownCommand(_) => 2,
            CliError::MissingParameter(_) | CliError::InvalidParameter(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::UnknownCommand(_) => "unknown_command",
            CliError::MissingParameter(_) => "missing_parameter",
            CliError::InvalidParameter(_) => "invalid_parameter",
            CliError::Internal(_) => "internal_error",
        }
    }

    /// Single-line JSON for standard error.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() })
            .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::UnknownCommand(c) if c.is_empty() => write!(f, "no command given"),
            CliError::UnknownCommand(c) => write!(f, "unknown command {c:?}"),
            CliError::MissingParameter(p) => write!(f, "missing parameter --{p}"),
            CliError::InvalidParameter(m) => write!(f, "{m}"),
            CliError::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<modloc_core::Error> for CliError {
    fn from(e: modloc_core::Error) -> Self {
        use modloc_core::Error as E;
        match e {
            E::Internal(_) | E::Inconsistent | E::Underdetermined(_) => CliError::Internal(e.to_string()),
            other => CliError::InvalidParameter(other.to_string()),
        }
    }
}
