//! Structured JSON encoding of polynomials, matrices, automorphisms, words
//! and reduction traces.
//!
//! A polynomial is an array of terms `[[i,j,k,l], "num/den"]`; over `Q(i)`
//! a term carries two coefficient strings, real then imaginary part. Terms
//! are written in descending division order, so output is deterministic.
//! For convenience the decoders also accept a polynomial written as a plain
//! string such as `"x1^2*x3 - 3/2*x4"`.

use serde_json::{json, Value};

use crate::error::ParseError;
use crate::field::Field;
use crate::orth::Mat4;
use crate::poly::{Exponent4, Poly, WeightVec};
use crate::tame::{
    ElementaryAuto, Factor, Family, FamilyReport, Level0Outcome, MultiLayerOutcome, NoReductionReport,
    ReductionTrace, TameAuto, TameWord, Verdict,
};

fn shape(msg: impl Into<String>) -> ParseError {
    ParseError::Shape(msg.into())
}

/// Parse a JSON document.
pub fn parse_json(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))
}

fn coeff_to_json<F: Field>(c: &F) -> Value {
    let parts = c.to_strings();
    if parts.len() == 1 {
        Value::String(parts[0].clone())
    } else {
        Value::Array(parts.into_iter().map(Value::String).collect())
    }
}

fn coeff_from_json<F: Field>(v: &Value) -> Result<F, ParseError> {
    match v {
        Value::String(s) => F::from_strings(&[s]),
        Value::Number(n) => F::from_strings(&[&n.to_string()]),
        Value::Array(parts) => {
            let strs: Vec<&str> = parts
                .iter()
                .map(|p| p.as_str().ok_or_else(|| shape("coefficient parts must be strings")))
                .collect::<Result<_, _>>()?;
            F::from_strings(&strs)
        }
        _ => Err(shape("coefficient must be a string")),
    }
}

pub fn poly_to_json<F: Field>(p: &Poly<F>) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| {
                let mut term = vec![json!(e.0)];
                term.extend(c.to_strings().into_iter().map(Value::String));
                Value::Array(term)
            })
            .collect(),
    )
}

pub fn poly_from_json<F: Field>(v: &Value) -> Result<Poly<F>, ParseError> {
    if let Value::String(s) = v {
        return Poly::parse(s);
    }
    let terms = v.as_array().ok_or_else(|| shape("polynomial must be an array of terms"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let t = t.as_array().ok_or_else(|| shape("term must be an array"))?;
        if t.len() < 2 {
            return Err(shape("term must be [[i,j,k,l], coefficient...]"));
        }
        let exps = t[0].as_array().filter(|e| e.len() == 4).ok_or_else(|| shape("exponent must have 4 entries"))?;
        let mut e = [0u32; 4];
        for (slot, x) in e.iter_mut().zip(exps) {
            *slot = x
                .as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| shape("exponents must be non-negative integers"))?;
        }
        let parts: Vec<&str> = t[1..]
            .iter()
            .map(|p| p.as_str().ok_or_else(|| shape("coefficient parts must be strings")))
            .collect::<Result<_, _>>()?;
        out.push((Exponent4(e), F::from_strings(&parts)?));
    }
    Ok(Poly::from_terms(out))
}

pub fn weight_to_json(w: &WeightVec) -> Value {
    match w.finite() {
        Some(v) => json!(v),
        None => json!("-inf"),
    }
}

pub fn mat4_to_json<F: Field>(m: &Mat4<F>) -> Value {
    Value::Array(m.0.iter().map(|row| Value::Array(row.iter().map(coeff_to_json).collect())).collect())
}

pub fn mat4_from_json<F: Field>(v: &Value) -> Result<Mat4<F>, ParseError> {
    let rows = v.as_array().filter(|r| r.len() == 4).ok_or_else(|| shape("matrix must have 4 rows"))?;
    let mut m = Mat4::identity();
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 4).ok_or_else(|| shape("matrix rows must have 4 entries"))?;
        for (j, c) in row.iter().enumerate() {
            m.0[i][j] = coeff_from_json(c)?;
        }
    }
    Ok(m)
}

pub fn components_to_json<F: Field>(c: &[Poly<F>; 4]) -> Value {
    json!({ "components": c.iter().map(poly_to_json).collect::<Vec<_>>() })
}

/// Decode `{"components": [...]}` without checking the quadric invariant.
pub fn components_from_json<F: Field>(v: &Value) -> Result<[Poly<F>; 4], ParseError> {
    let comps = v
        .get("components")
        .and_then(Value::as_array)
        .filter(|c| c.len() == 4)
        .ok_or_else(|| shape("expected {\"components\": [p1, p2, p3, p4]}"))?;
    Ok([
        poly_from_json(&comps[0])?,
        poly_from_json(&comps[1])?,
        poly_from_json(&comps[2])?,
        poly_from_json(&comps[3])?,
    ])
}

pub fn auto_to_json<F: Field>(f: &TameAuto<F>) -> Value {
    components_to_json(f.components())
}

pub fn elem_to_json<F: Field>(e: &ElementaryAuto<F>) -> Value {
    json!({ "family": e.family.name(), "P": poly_to_json(&e.p) })
}

pub fn factor_to_json<F: Field>(f: &Factor<F>) -> Value {
    match f {
        Factor::Elem(e) => json!({ "elem": elem_to_json(e) }),
        Factor::Orth(m) => json!({ "orth": mat4_to_json(m) }),
    }
}

pub fn word_to_json<F: Field>(w: &TameWord<F>) -> Value {
    json!({ "word": w.factors.iter().map(factor_to_json).collect::<Vec<_>>() })
}

fn elem_from_json<F: Field>(v: &Value) -> Result<ElementaryAuto<F>, ParseError> {
    let fam = v.get("family").and_then(Value::as_str).ok_or_else(|| shape("elementary factor needs a family"))?;
    let family = Family::parse(fam).ok_or_else(|| shape(format!("unknown family `{fam}`")))?;
    let p = poly_from_json(v.get("P").ok_or_else(|| shape("elementary factor needs P"))?)?;
    ElementaryAuto::new(family, p).map_err(|e| shape(e.to_string()))
}

/// Decode a word. Orthogonality of matrix factors is checked by the caller.
pub fn word_from_json<F: Field>(v: &Value) -> Result<TameWord<F>, ParseError> {
    let items = v.get("word").and_then(Value::as_array).ok_or_else(|| shape("expected {\"word\": [...]}"))?;
    let mut factors = Vec::with_capacity(items.len());
    for item in items {
        if let Some(e) = item.get("elem") {
            factors.push(Factor::Elem(elem_from_json(e)?));
        } else if let Some(m) = item.get("orth") {
            factors.push(Factor::Orth(mat4_from_json(m)?));
        } else {
            return Err(shape("word factors are {\"elem\": ...} or {\"orth\": ...}"));
        }
    }
    Ok(TameWord::new(factors))
}

fn level0_name(o: &Level0Outcome) -> &'static str {
    match o {
        Level0Outcome::NoDegreeSolution => "no_degree_solution",
        Level0Outcome::Inconsistent => "inconsistent",
        Level0Outcome::NoDrop => "no_drop",
    }
}

fn multilayer_to_json(o: &MultiLayerOutcome) -> Value {
    match o {
        MultiLayerOutcome::NotNeeded => json!("not_needed"),
        MultiLayerOutcome::Skipped => json!("skipped"),
        MultiLayerOutcome::PrunedByParachute { w } => json!({ "pruned_by_parachute": weight_to_json(w) }),
        MultiLayerOutcome::Exhausted { levels, unknowns } => {
            json!({ "exhausted": { "levels": levels, "unknowns": unknowns } })
        }
    }
}

pub fn family_report_to_json<F: Field>(r: &FamilyReport<F>) -> Value {
    json!({
        "family": r.family.name(),
        "roles": [r.roles.0, r.roles.1, r.roles.2],
        "equation": r.equation(),
        "degree_solutions": r.degree_solutions.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "level0": level0_name(&r.level0),
        "dependent_leading_parts": r.relation.as_ref().map(|h| json!({
            "s1": h.s1, "s2": h.s2, "lambda": coeff_to_json(&h.lambda)
        })),
        "multilayer": multilayer_to_json(&r.multilayer),
        "definitive": r.definitive(),
    })
}

pub fn no_reduction_to_json<F: Field>(r: &NoReductionReport<F>) -> Value {
    json!({
        "degree": weight_to_json(&r.degree),
        "definitive": r.definitive,
        "budget": { "depth": r.budget.depth, "support": r.budget.support },
        "families": r.families.iter().map(family_report_to_json).collect::<Vec<_>>(),
    })
}

pub fn trace_to_json<F: Field>(t: &ReductionTrace<F>) -> Value {
    let verdict = match &t.verdict {
        Verdict::Linear(m) => json!({ "linear": mat4_to_json(m) }),
        Verdict::NoReductionFound(r) => json!({ "no_reduction_found": no_reduction_to_json(r) }),
    };
    json!({
        "start": auto_to_json(&t.start),
        "start_degree": weight_to_json(&t.start_degree),
        "steps": t.steps.iter().map(|s| json!({
            "orth": s.orth.as_ref().map(mat4_to_json),
            "elem": elem_to_json(&s.elem),
            "degree": weight_to_json(&s.degree),
        })).collect::<Vec<_>>(),
        "verdict": verdict,
        "certified_word": t.certified_word().map(|w| word_to_json(&w)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Qi, Q};

    #[test]
    fn polynomial_round_trip() {
        let p = Poly::<Q>::parse("x1^2*x3 - 3/2*x4 + 7").unwrap();
        let v = poly_to_json(&p);
        assert_eq!(v.to_string(), r#"[[[2,0,1,0],"1"],[[0,0,0,1],"-3/2"],[[0,0,0,0],"7"]]"#);
        assert_eq!(poly_from_json::<Q>(&v).unwrap(), p);
        assert_eq!(poly_from_json::<Q>(&json!("x1^2*x3 - 3/2*x4 + 7")).unwrap(), p);
    }

    #[test]
    fn gaussian_coefficients_round_trip() {
        let p = Poly::<Qi>::parse("(1/2 + i)*x2 - i").unwrap();
        let v = poly_to_json(&p);
        assert_eq!(v.to_string(), r#"[[[0,1,0,0],"1/2","1"],[[0,0,0,0],"0","-1"]]"#);
        assert_eq!(poly_from_json::<Qi>(&v).unwrap(), p);
    }

    #[test]
    fn words_round_trip() {
        let w = TameWord::<Q>::new(vec![
            Factor::Orth(Mat4::tau()),
            Factor::Elem(ElementaryAuto::new(Family::E12, Poly::parse("x3*x4 - 2").unwrap()).unwrap()),
        ]);
        let v = word_to_json(&w);
        assert_eq!(word_from_json::<Q>(&v).unwrap(), w);
    }

    #[test]
    fn malformed_payloads_are_rejected() {
        assert!(poly_from_json::<Q>(&json!([[[1, 0, 0], "1"]])).is_err());
        assert!(poly_from_json::<Q>(&json!([[[1, 0, 0, 0], "1/0"]])).is_err());
        assert!(components_from_json::<Q>(&json!({"components": []})).is_err());
        assert!(word_from_json::<Q>(&json!({"word": [{"elem": {"family": "E99", "P": []}}]})).is_err());
    }
}
