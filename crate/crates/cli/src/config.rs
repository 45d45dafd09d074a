//! Job configuration: defaults, an optional JSON file, then flags.

use std::path::PathBuf;

use serde::Deserialize;
use tame_core::tame::Budget;

use crate::error::{malformed, CliError};
use crate::{FieldArg, Format, GlobalArgs};

/// Default explored ball radius.
pub const DEFAULT_DEPTH: usize = 2;
/// Default elementary moves: all monomials in `x1, x3` of degree at most two.
pub const DEFAULT_SAMPLE_P: [&str; 5] = ["x1", "x3", "x1^2", "x1*x3", "x3^2"];

/// Entries accepted in a configuration file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    budget_depth: Option<usize>,
    budget_support: Option<usize>,
    depth: Option<usize>,
    /// Polynomials written as strings.
    sample_p: Option<Vec<String>>,
    field: Option<FieldArg>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

/// The resolved settings of one run.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub budget: Budget,
    pub depth: Option<usize>,
    /// Polynomial strings or the contents of `--sample-p`.
    pub sample_p: SampleP,
    pub field: FieldArg,
    pub format: Format,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub enum SampleP {
    Default,
    Strings(Vec<String>),
    /// A JSON document read from a file.
    Json(String),
}

impl JobConfig {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<FileConfig>(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let default = Budget::default();
        let budget = Budget {
            depth: args.budget_depth.or(file.budget_depth).unwrap_or(default.depth),
            support: args.budget_support.or(file.budget_support).unwrap_or(default.support),
        };
        if budget.depth == 0 || budget.support == 0 {
            return Err(malformed("budgets must be positive"));
        }
        let sample_p = match (&args.sample_p, file.sample_p) {
            (Some(path), _) => {
                SampleP::Json(std::fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?)
            }
            (None, Some(list)) => SampleP::Strings(list),
            (None, None) => SampleP::Default,
        };
        Ok(JobConfig {
            budget,
            depth: args.depth.or(file.depth),
            sample_p,
            field: args.field.or(file.field).unwrap_or(FieldArg::Q),
            format: args.format.or(file.format).unwrap_or(Format::Json),
            out: args.out.clone().or(file.out),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_entries_are_rejected() {
        assert!(serde_json::from_str::<FileConfig>(r#"{"depth": 2}"#).is_ok());
        assert!(serde_json::from_str::<FileConfig>(r#"{"detph": 2}"#).is_err());
        assert!(serde_json::from_str::<FileConfig>(r#"{"field": "qi", "format": "dot"}"#).is_ok());
    }

    #[test]
    fn flags_override_defaults() {
        let args = GlobalArgs { budget_depth: Some(2), field: Some(FieldArg::Qi), ..GlobalArgs::default() };
        let cfg = JobConfig::resolve(&args).unwrap();
        assert_eq!(cfg.budget, Budget { depth: 2, support: 64 });
        assert_eq!(cfg.field, FieldArg::Qi);
        assert_eq!(cfg.format, Format::Json);
        let zero = GlobalArgs { budget_support: Some(0), ..GlobalArgs::default() };
        assert!(JobConfig::resolve(&zero).is_err());
    }
}
