//! Failure modes of a run and their exit codes.

use serde_json::{json, Value};
use tame_core::{DomainError, ParseError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// The input could not be read or decoded.
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Io(String),
    /// The input is well formed but violates a precondition of the library.
    #[error(transparent)]
    Domain(#[from] DomainError),
    /// A domain failure detected by the front end itself.
    #[error("{kind}: {message}")]
    Rejected { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) | CliError::Rejected { .. } => 2,
            _ => 1,
        }
    }

    /// The structured payload written for domain errors.
    pub fn payload(&self) -> Option<Value> {
        let (kind, message) = match self {
            CliError::Domain(e) => {
                let debug = format!("{e:?}");
                let kind = debug.split(['(', ' ', '{']).next().unwrap_or("DomainError").to_string();
                (kind, e.to_string())
            }
            CliError::Rejected { kind, message } => (kind.to_string(), message.clone()),
            _ => return None,
        };
        Some(json!({ "error": { "kind": kind, "message": message } }))
    }
}

pub fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_errors_carry_their_variant_name() {
        let e = CliError::from(DomainError::NotResonant("x".into()));
        assert_eq!(e.exit_code(), 2);
        assert_eq!(e.payload().unwrap()["error"]["kind"], "NotResonant");
        assert_eq!(CliError::from(DomainError::NotOrthogonal).payload().unwrap()["error"]["kind"], "NotOrthogonal");
        assert_eq!(malformed("bad").exit_code(), 1);
        assert!(malformed("bad").payload().is_none());
    }
}
