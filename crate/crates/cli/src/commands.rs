//! The subcommands. Each returns a [`Report`] holding its JSON rendering,
//! a plain-text summary and, where meaningful, a DOT rendering.

use std::fmt::Write;

use serde_json::{json, Value};
use tame_core::complex::{
    classify_isometry, explore as explore_ball, grid_4x4, link_girth_ok, search_grid, square_intersection_ok, to_dot,
    to_json, Exploration, ExploreConfig, GridCentre, IsometryClass, SubComplex,
};
use tame_core::grouplab::{
    diagonalize_triangular, gen_hyperelliptic, gen_parabolic, linearize as linearize_group, resonant,
    FiniteSubgroup, Triangular, TriangularGroup,
};
use tame_core::io::{auto_to_json, mat4_to_json, poly_to_json, trace_to_json, word_to_json};
use tame_core::sampling::{Sampler, WordShape};
use tame_core::tame::{is_tame, quotient_degree_gaps, reduce as reduce_auto, reduce_batch, TameAuto, TameVerdict, TameWord, Verdict};
use tame_core::{fixtures, DomainError, ExecMode, Field, Poly};

use crate::config::{JobConfig, DEFAULT_DEPTH};
use crate::error::{malformed, CliError};
use crate::input::{array, auto, field_value, poly_entry, read_payload, sample_p, word};
use crate::{Centre, Format};

/// Bound on the size of groups generated by `linearize`.
const GROUP_LIMIT: usize = 256;
/// Chain horizon of `classify` when `--depth` is absent.
const DEFAULT_HORIZON: usize = 3;

/// The output of one subcommand.
pub struct Report {
    pub json: Value,
    pub pretty: String,
    pub dot: Option<String>,
}

impl Report {
    fn new(json: Value, pretty: String) -> Self {
        Report { json, pretty, dot: None }
    }

    pub fn render(self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(&self.json).expect("JSON values serialize"))),
            Format::Pretty => Ok(self.pretty),
            Format::Dot => self.dot.ok_or_else(|| malformed("DOT output is only available for `explore` and `grid`")),
        }
    }
}

fn auto_text<F: Field>(f: &TameAuto<F>) -> String {
    let c = f.components();
    format!("({}, {}, {}, {})", c[0], c[1], c[2], c[3])
}

fn trace_text<F: Field>(t: &tame_core::tame::ReductionTrace<F>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "start degree {}", t.start_degree);
    for (i, step) in t.steps.iter().enumerate() {
        let _ = writeln!(s, "step {}: {}({}) -> degree {}", i + 1, step.elem.family.name(), step.elem.p, step.degree);
    }
    match &t.verdict {
        Verdict::Linear(_) => s.push_str("verdict: linear\n"),
        Verdict::NoReductionFound(r) => {
            let _ = writeln!(s, "verdict: no reduction found at degree {} (definitive: {})", r.degree, r.definitive);
            for fam in &r.families {
                let _ = writeln!(s, "  {}: {}", fam.family.name(), fam.equation());
            }
        }
    }
    s
}

pub fn reduce<F: Field>(input: &str, batch: bool, sequential: bool, cfg: &JobConfig) -> Result<Report, CliError> {
    let v = read_payload(input)?;
    if !batch {
        let f = auto::<F>(&v)?;
        let t = reduce_auto(&f, &cfg.budget);
        return Ok(Report::new(trace_to_json(&t), trace_text(&t)));
    }
    let autos = array(&v, "automorphisms")?.iter().map(auto::<F>).collect::<Result<Vec<_>, _>>()?;
    let mode = if sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let traces = reduce_batch(&autos, &cfg.budget, mode);
    let mut pretty = String::new();
    for (i, t) in traces.iter().enumerate() {
        let _ = writeln!(pretty, "# input {i}");
        pretty.push_str(&trace_text(t));
    }
    Ok(Report::new(Value::Array(traces.iter().map(trace_to_json).collect()), pretty))
}

pub fn verify<F: Field>(input: &str, cfg: &JobConfig) -> Result<Report, CliError> {
    let v = read_payload(input)?;
    let comps = tame_core::io::components_from_json::<F>(&v)?;
    match is_tame(&comps, &cfg.budget) {
        TameVerdict::Tame { word, trace } => Ok(Report::new(
            json!({ "verdict": "tame", "word": word_to_json(&word), "trace": trace_to_json(&trace) }),
            format!("tame, word of length {}\n{}", word.len(), trace_text(&trace)),
        )),
        TameVerdict::NotTameWithinBudget(trace) => {
            let equations: Vec<String> = match &trace.verdict {
                Verdict::NoReductionFound(r) => r.families.iter().map(|f| format!("{}: {}", f.family.name(), f.equation())).collect(),
                Verdict::Linear(_) => Vec::new(),
            };
            Ok(Report::new(
                json!({ "verdict": "not_tame_within_budget", "failed_equations": equations, "trace": trace_to_json(&trace) }),
                format!("not tame within budget\n{}", trace_text(&trace)),
            ))
        }
        TameVerdict::NotAutomorphismOfQuadric(r) => Err(DomainError::QuadricViolated(r.to_string()).into()),
    }
}

pub fn compose<F: Field>(input: &str) -> Result<Report, CliError> {
    let v = read_payload(input)?;
    let items = array(&v, "automorphisms")?;
    if items.is_empty() {
        return Err(DomainError::EmptyInput("nothing to compose".into()).into());
    }
    let autos = items.iter().map(auto::<F>).collect::<Result<Vec<_>, _>>()?;
    let h = autos.iter().fold(TameAuto::identity(), |acc, f| acc.compose(f));
    Ok(Report::new(
        json!({ "composition": auto_to_json(&h), "is_identity": h == TameAuto::identity() }),
        format!("{}\n", auto_text(&h)),
    ))
}

pub fn invert<F: Field>(input: &str, cfg: &JobConfig) -> Result<Report, CliError> {
    let v = read_payload(input)?;
    let w = if v.get("word").is_some() {
        word::<F>(&v)?
    } else {
        let f = auto::<F>(&v)?;
        let t = reduce_auto(&f, &cfg.budget);
        t.certified_word().ok_or_else(|| CliError::Rejected {
            kind: "NotTameWithinBudget",
            message: "no reduction to a linear map was found".into(),
        })?
    };
    let inv = w.invert();
    let h = inv.evaluate();
    Ok(Report::new(json!({ "word": word_to_json(&inv), "inverse": auto_to_json(&h) }), format!("{}\n", auto_text(&h))))
}

fn generators<F: Field>(input: Option<&str>) -> Result<Vec<TameWord<F>>, CliError> {
    match input {
        None => Ok(Vec::new()),
        Some(arg) => {
            let v = read_payload(arg)?;
            let items = v.get("generators").cloned().unwrap_or(v);
            array(&items, "generator words")?.iter().map(word::<F>).collect()
        }
    }
}

fn explored<F: Field>(input: Option<&str>, cfg: &JobConfig) -> Result<Exploration<F>, CliError> {
    let depth = cfg.depth.unwrap_or(DEFAULT_DEPTH);
    let config = ExploreConfig::new(depth, sample_p::<F>(&cfg.sample_p)?)
        .with_generators(generators(input)?)
        .with_mode(ExecMode::Sequential);
    Ok(explore_ball(&config))
}

fn complex_summary<F: Field>(s: &SubComplex<F>) -> Value {
    let by_type = |k: u8| s.vertices().iter().filter(|v| v.kind() == k).count();
    json!({
        "vertices": { "type1": by_type(1), "type2": by_type(2), "type3": by_type(3) },
        "edges": s.edges().len(),
        "squares": s.squares().len(),
    })
}

pub fn explore<F: Field>(input: Option<&str>, cfg: &JobConfig) -> Result<Report, CliError> {
    let e = explored::<F>(input, cfg)?;
    let s = &e.complex;
    let girth_ok = (0..s.vertices().len()).all(|v| link_girth_ok(v, s).ok());
    let intersection = square_intersection_ok(s);
    let summary = complex_summary(s);
    let (vertices, edges, squares) = s.counts();
    let pretty = format!(
        "{} group elements, {vertices} vertices, {edges} edges, {squares} squares\nlink girth >= 4: {girth_ok}\nsquare intersections: {}\n",
        e.elements.len(),
        intersection.ok(),
    );
    Ok(Report {
        json: json!({
            "elements": e.elements.len(),
            "summary": summary,
            "link_girth_ok": girth_ok,
            "square_intersection_ok": intersection.ok(),
            "complex": to_json(s),
        }),
        pretty,
        dot: Some(to_dot(s)),
    })
}

fn class_json<F: Field>(c: &IsometryClass<F>) -> Value {
    match c {
        IsometryClass::Elliptic { fixed } => json!({ "class": "elliptic", "fixed": fixed.to_string() }),
        IsometryClass::Hyperbolic { start, length, distances } => {
            json!({ "class": "hyperbolic", "start": start.to_string(), "length": length, "distances": distances })
        }
        IsometryClass::Undetermined => json!({ "class": "undetermined" }),
    }
}

pub fn classify<F: Field>(input: &str, cfg: &JobConfig) -> Result<Report, CliError> {
    let w = word::<F>(&read_payload(input)?)?;
    let r = classify_isometry(&w, cfg.depth.unwrap_or(DEFAULT_HORIZON));
    let mut j = class_json(&r.class);
    j["chain"] = json!({ "powers": r.powers, "vertices": r.vertices, "edges": r.edges });
    Ok(Report::new(j, format!("{}\n", r.class)))
}

pub fn grid<F: Field>(input: Option<&str>, search: Option<usize>, centre: Centre, cfg: &JobConfig) -> Result<Report, CliError> {
    if let Some(size) = search {
        if size < 2 || size % 2 != 0 {
            return Err(malformed("grid size must be an even number at least 2"));
        }
        let e = explored::<F>(input, cfg)?;
        let centre = match centre {
            Centre::T1 => GridCentre::Type1,
            Centre::T3 => GridCentre::Type3,
        };
        let r = search_grid(&e.complex, size, centre, ExecMode::Sequential);
        let found: Vec<Value> = r
            .found
            .iter()
            .map(|g| Value::Array(g.map.iter().map(|(p, v)| json!([p.0, p.1, e.complex.vertex(*v).to_string()])).collect()))
            .collect();
        return Ok(Report::new(
            json!({ "size": size, "centre": format!("{centre:?}"), "centres": r.centres, "found": found, "summary": complex_summary(&e.complex) }),
            format!("{}x{} grids around {} type-{} centres: {} found\n", size, size, r.centres, if matches!(centre, GridCentre::Type1) { 1 } else { 3 }, r.found.len()),
        ));
    }
    let v = read_payload(input.ok_or_else(|| malformed("`grid` needs {\"N\", \"S\", \"E\", \"W\"} or --search"))?)?;
    let [n, s, e, w] = ["N", "S", "E", "W"].map(|k| poly_entry::<F>(&v, k));
    let g = grid_4x4(&n?, &s?, &e?, &w?)?;
    let positions: Vec<Value> =
        g.positions.iter().map(|(p, id)| json!([p.0, p.1, g.complex.vertex(*id).to_string()])).collect();
    Ok(Report {
        json: json!({ "degenerate": g.degenerate, "summary": complex_summary(&g.complex), "positions": positions, "complex": to_json(&g.complex) }),
        pretty: format!("4x4 grid: (vertices, edges, squares) = {:?}, degenerate: {}\n", g.complex.counts(), g.degenerate),
        dot: Some(to_dot(&g.complex)),
    })
}

pub fn linearize<F: Field>(input: &str) -> Result<Report, CliError> {
    let v = read_payload(input)?;
    if let Some(tri) = v.get("triangular") {
        let gens = array(tri, "triangular maps")?
            .iter()
            .map(|t| {
                let c = array(t, "three polynomials")?;
                if c.len() != 3 {
                    return Err(malformed("a triangular map has three components"));
                }
                let p = |i: usize| tame_core::io::poly_from_json::<F>(&c[i]);
                Ok(Triangular::new([p(0)?, p(1)?, p(2)?])?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let group = TriangularGroup::generate(&gens, GROUP_LIMIT)?;
        let d = diagonalize_triangular(&group)?;
        let polys = |t: &Triangular<F>| t.components().iter().map(poly_to_json).collect::<Vec<_>>();
        let diagonals: Vec<Value> = d.diagonals.iter().map(|a| Value::Array(a.iter().map(|c| json!(c.to_strings())).collect())).collect();
        return Ok(Report::new(
            json!({ "order": group.order(), "conjugator": polys(&d.conjugator), "conjugator_inverse": polys(&d.conjugator_inverse), "diagonals": diagonals }),
            format!("triangular group of order {} diagonalized\n", group.order()),
        ));
    }
    let gens_v = v.get("generators").ok_or_else(|| malformed("expected {\"generators\": [...]} or {\"triangular\": [...]}"))?;
    let gens = array(gens_v, "generator words")?.iter().map(word::<F>).collect::<Result<Vec<_>, _>>()?;
    let group = FiniteSubgroup::generate(&gens, GROUP_LIMIT)?;
    let (case, lin) = linearize_group(&group)?;
    Ok(Report::new(
        json!({
            "order": group.order(),
            "case": format!("{case:?}"),
            "conjugator": auto_to_json(&lin.conjugator),
            "conjugator_inverse": auto_to_json(&lin.conjugator_inverse),
            "images": lin.images.iter().map(mat4_to_json).collect::<Vec<_>>(),
        }),
        format!("group of order {} ({case:?}) conjugated by {}\n", group.order(), auto_text(&lin.conjugator)),
    ))
}

pub fn resonance<F: Field>(input: &str) -> Result<Report, CliError> {
    let v = read_payload(input)?;
    let (a, b) = (field_value::<F>(&v, "a")?, field_value::<F>(&v, "b")?);
    let Some(w) = resonant(&a, &b) else {
        return Ok(Report::new(json!({ "resonant": false }), format!("{a} and {b} are not resonant\n")));
    };
    let mut j = json!({ "resonant": true, "p": w.p, "q": w.q });
    let mut pretty = format!("{w}\n");
    match gen_hyperelliptic(&a, &b) {
        Ok(h) => {
            j["hyperelliptic"] = json!({
                "f": word_to_json(&h.f),
                "P": poly_to_json(&h.p),
                "tau_conjugated": h.tau_conjugated,
                "hyperbolic": word_to_json(&h.hyperbolic),
                "intertwines": h.intertwines,
                "commutes": h.commutes,
                "isometry": class_json(&h.isometry.class),
            });
            let _ = writeln!(pretty, "witness P = {}, commutes: {}, {}", h.p, h.commutes, h.isometry.class);
        }
        Err(e) => {
            j["hyperelliptic"] = json!({ "error": e.to_string() });
            let _ = writeln!(pretty, "no hyperelliptic witness: {e}");
        }
    }
    Ok(Report::new(j, pretty))
}

/// Words `g_r ∘ … ∘ g_1` of hyperbolic generators with `a = b = 1`.
fn henon_word<F: Field>(r: usize) -> TameWord<F> {
    let params: Vec<(F, F, Poly<F>)> = (0..r).map(|i| (F::one(), F::one(), fixtures::hyperbolic_sample_p(i))).collect();
    tame_core::grouplab::gen_henon(&params).expect("the sample polynomials have degree at least two")
}

pub fn examples<F: Field>(name: Option<&str>) -> Result<Report, CliError> {
    let mut all: Vec<(&str, Value)> = vec![
        ("example-g", auto_to_json(&fixtures::example_g::<F>())),
        ("example-g-inverse", auto_to_json(&fixtures::example_g_inverse::<F>())),
        ("anick", tame_core::io::components_to_json(&fixtures::anick::<F>())),
        ("quadratic-non-tame", tame_core::io::components_to_json(&fixtures::quadratic_non_tame::<F>())),
        ("henon-1", word_to_json(&henon_word::<F>(1))),
        ("henon-2", word_to_json(&henon_word::<F>(2))),
        ("henon-3", word_to_json(&henon_word::<F>(3))),
        ("parabolic-1", word_to_json(&gen_parabolic::<F>(1)?.phi)),
    ];
    let h = gen_hyperelliptic(&F::from_i64(2), &F::from_i64(2).inv().expect("nonzero"))?;
    all.push(("hyperelliptic", word_to_json(&h.f)));
    all.push(("hyperelliptic-witness", word_to_json(&h.hyperbolic)));
    match name {
        Some(n) => {
            let (_, v) = all
                .into_iter()
                .find(|(k, _)| *k == n)
                .ok_or_else(|| malformed(format!("unknown example `{n}`")))?;
            Ok(Report::new(v.clone(), format!("{v}\n")))
        }
        None => {
            let pretty = all.iter().map(|(k, _)| format!("{k}\n")).collect();
            let map: serde_json::Map<String, Value> = all.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            Ok(Report::new(Value::Object(map), pretty))
        }
    }
}

pub fn degree_report<F: Field>(count: usize, seed: u64) -> Result<Report, CliError> {
    let mut sampler = Sampler::new(seed);
    let shape = WordShape::default();
    let mut rows = Vec::new();
    let (mut components, mut equal) = (0usize, 0usize);
    for _ in 0..count {
        let (w, f) = sampler.word::<F>(&shape);
        let gaps = quotient_degree_gaps(&f);
        let same: Vec<bool> = gaps.iter().map(|(d, dbar)| d == dbar).collect();
        components += 4;
        equal += same.iter().filter(|&&s| s).count();
        rows.push(json!({
            "length": w.len(),
            "deg": gaps.iter().map(|(d, _)| d.to_string()).collect::<Vec<_>>(),
            "deg_bar": gaps.iter().map(|(_, d)| d.to_string()).collect::<Vec<_>>(),
            "equal": same,
        }));
    }
    let label = "experimental evidence only";
    Ok(Report::new(
        json!({ "label": label, "seed": seed, "words": count, "components": components, "equal": equal, "samples": rows }),
        format!("{label}: deg p = deg p-bar for {equal} of {components} components of {count} sampled words (seed {seed})\n"),
    ))
}
