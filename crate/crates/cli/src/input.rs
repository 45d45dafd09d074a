//! Reading payloads and decoding automorphisms, words and scalars.

use std::io::Read;

use serde_json::Value;
use tame_core::io::{components_from_json, parse_json, poly_from_json, word_from_json};
use tame_core::orth::{is_orthogonal, OrthVerdict};
use tame_core::tame::{Factor, TameAuto, TameWord};
use tame_core::{DomainError, Field, Poly};

use crate::config::{SampleP, DEFAULT_SAMPLE_P};
use crate::error::{malformed, CliError};

/// The JSON text of `arg`: standard input for `-`, the argument itself when
/// it looks like JSON, a file path otherwise.
pub fn read_payload(arg: &str) -> Result<Value, CliError> {
    let trimmed = arg.trim_start();
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| malformed(format!("standard input: {e}")))?;
        s
    } else if trimmed.starts_with(['{', '[', '"']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| malformed(format!("{arg}: {e}")))?
    };
    Ok(parse_json(&text)?)
}

/// A word whose matrix factors are checked to be orthogonal.
pub fn word<F: Field>(v: &Value) -> Result<TameWord<F>, CliError> {
    let w = word_from_json(v)?;
    for f in &w.factors {
        if let Factor::Orth(m) = f {
            if is_orthogonal(m) == OrthVerdict::No {
                return Err(DomainError::NotOrthogonal.into());
            }
        }
    }
    Ok(w)
}

/// An automorphism given as `{"components": [...]}` or `{"word": [...]}`.
pub fn auto<F: Field>(v: &Value) -> Result<TameAuto<F>, CliError> {
    if v.get("word").is_some() {
        Ok(word::<F>(v)?.evaluate())
    } else {
        Ok(TameAuto::new(components_from_json(v)?)?)
    }
}

pub fn array(v: &Value, what: &str) -> Result<Vec<Value>, CliError> {
    v.as_array().cloned().ok_or_else(|| malformed(format!("expected a JSON array of {what}")))
}

pub fn field_value<F: Field>(v: &Value, key: &str) -> Result<F, CliError> {
    let c = v.get(key).ok_or_else(|| malformed(format!("missing entry `{key}`")))?;
    let parts: Vec<String> = match c {
        Value::String(s) => vec![s.clone()],
        Value::Number(n) => vec![n.to_string()],
        Value::Array(a) => a.iter().map(|p| p.as_str().map(str::to_string)).collect::<Option<_>>().ok_or_else(|| malformed(format!("`{key}` parts must be strings")))?,
        _ => return Err(malformed(format!("`{key}` must be a coefficient string"))),
    };
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    Ok(F::from_strings(&refs)?)
}

pub fn poly_entry<F: Field>(v: &Value, key: &str) -> Result<Poly<F>, CliError> {
    Ok(poly_from_json(v.get(key).ok_or_else(|| malformed(format!("missing entry `{key}`")))?)?)
}

/// The elementary moves of an exploration.
pub fn sample_p<F: Field>(spec: &SampleP) -> Result<Vec<Poly<F>>, CliError> {
    let polys: Vec<Poly<F>> = match spec {
        SampleP::Default => DEFAULT_SAMPLE_P.iter().map(|s| Poly::parse(s)).collect::<Result<_, _>>()?,
        SampleP::Strings(list) => list.iter().map(|s| Poly::parse(s)).collect::<Result<_, _>>()?,
        SampleP::Json(text) => {
            let v = parse_json(text)?;
            array(&v, "polynomials")?.iter().map(poly_from_json).collect::<Result<_, _>>()?
        }
    };
    if let Some(bad) = polys.iter().find(|p| !p.uses_only(&[1, 3])) {
        return Err(DomainError::WrongVariables(bad.to_string(), "x1, x3".into()).into());
    }
    Ok(polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;
    use tame_core::Q;

    #[test]
    fn inline_payloads_are_parsed() {
        assert_eq!(read_payload(r#"{"a": "2"}"#).unwrap(), json!({"a": "2"}));
        assert!(matches!(read_payload("/nonexistent/file.json"), Err(CliError::Malformed(_))));
    }

    #[test]
    fn automorphisms_from_words_and_components() {
        let id = auto::<Q>(&json!({"components": ["x1", "x2", "x3", "x4"]})).unwrap();
        assert_eq!(id, TameAuto::identity());
        assert_eq!(auto::<Q>(&json!({"word": []})).unwrap(), id);
        let bad = auto::<Q>(&json!({"components": ["x1", "x2", "x3", "2*x4"]}));
        assert!(matches!(bad, Err(CliError::Domain(DomainError::QuadricViolated(_)))));
        let skew = json!({"word": [{"orth": [["2","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}]});
        assert!(matches!(word::<Q>(&skew), Err(CliError::Domain(DomainError::NotOrthogonal))));
    }

    #[test]
    fn scalars_and_sample_sets() {
        assert_eq!(field_value::<Q>(&json!({"a": "1/2"}), "a").unwrap(), Q::new(1, 2));
        assert_eq!(field_value::<Q>(&json!({"a": 3}), "a").unwrap(), Q::from_i64(3));
        assert_eq!(sample_p::<Q>(&SampleP::Default).unwrap().len(), 5);
        assert!(sample_p::<Q>(&SampleP::Strings(vec!["x2".into()])).is_err());
    }
}
