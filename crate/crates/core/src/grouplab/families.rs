//! Generators for the example families: products of hyperbolic generators,
//! the worked example `g`, hyperelliptic elements with commuting hyperbolic
//! witnesses, and the conjugated groups `Δ_n` of a parabolic subgroup.

use crate::complex::{chain_distance, classify_isometry, IsometryReport};
use crate::error::DomainError;
use crate::field::Field;
use crate::fixtures;
use crate::orth::Mat4;
use crate::poly::{Exponent4, Poly};
use crate::tame::{ElementaryAuto, Factor, Family, TameAuto, TameWord};

use super::resonance::{resonant, resonant_poly, ResonanceWitness};

/// Chain horizon used when classifying witnesses.
const WITNESS_HORIZON: usize = 3;

/// `g_r ∘ … ∘ g_1` for the hyperbolic generators
/// `g_i = (b_i⁻¹ x2, a_i x1 + a_i x2 P_i, -a_i⁻¹ x4, -b_i x3 - b_i x4 P_i)`,
/// `P_i ∈ C[x2, x4]` of degree at least two; `params[0]` gives `g_1`.
pub fn gen_henon<F: Field>(params: &[(F, F, Poly<F>)]) -> Result<TameWord<F>, DomainError> {
    if params.is_empty() {
        return Err(DomainError::EmptyInput("at least one generator is required".into()));
    }
    let mut word = TameWord::empty();
    for (a, b, p) in params {
        word = fixtures::hyperbolic_generator(a, b, p)?.then_after(&word);
    }
    Ok(word)
}

/// The worked example `g` and its inverse.
pub fn gen_example_g<F: Field>() -> (TameAuto<F>, TameAuto<F>) {
    (fixtures::example_g(), fixtures::example_g_inverse())
}

/// `(a x1, b⁻¹ x2, b x3, a⁻¹ x4)`.
pub fn diagonal_element<F: Field>(a: &F, b: &F) -> Result<Mat4<F>, DomainError> {
    let (ai, bi) = match (a.inv(), b.inv()) {
        (Some(ai), Some(bi)) => (ai, bi),
        _ => return Err(DomainError::NotResonant("parameters must be nonzero".into())),
    };
    Ok(Mat4::diag([a.clone(), bi, b.clone(), ai]))
}

/// A hyperelliptic element with a commuting hyperbolic witness.
#[derive(Clone, Debug)]
pub struct HyperellipticWitness<F: Field> {
    /// `f = (a x1, b⁻¹ x2, b x3, a⁻¹ x4)`.
    pub f: TameWord<F>,
    pub resonance: ResonanceWitness,
    /// Polynomial in `x2, x4`, resonant in `b` and `a` (or in `b⁻¹` and `a`
    /// when the witness is conjugated by `τ`).
    pub p: Poly<F>,
    /// Whether the construction ran on `τ f τ` and the witness was
    /// conjugated back by `τ`.
    pub tau_conjugated: bool,
    pub g: TameWord<F>,
    pub g_tilde: TameWord<F>,
    /// The hyperbolic element `g̃ ∘ g` (conjugated by `τ` if needed).
    pub hyperbolic: TameWord<F>,
    /// `g ∘ f' = f̃' ∘ g` for the diagonal map `f'` the construction ran on.
    pub intertwines: bool,
    /// `f ∘ h = h ∘ f` for the hyperbolic witness `h`.
    pub commutes: bool,
    pub isometry: IsometryReport<F>,
}

/// A monomial `x2^i x4^j` of degree at least two with `b^(i+1) a^(j+1) = 1`.
fn resonant_monomial<F: Field>(a: &F, b: &F, bound: u32) -> Option<Poly<F>> {
    (2..=bound).flat_map(|d| (0..=d).map(move |i| (i, d - i))).find_map(|(i, j)| {
        let r = Poly::monomial(Exponent4([i, j, 0, 0]), F::one());
        resonant_poly(&r, b, a).then(|| Poly::monomial(Exponent4([0, i, 0, j]), F::one()))
    })
}

/// Build `f = (a x1, b⁻¹ x2, b x3, a⁻¹ x4)` for resonant `a`, `b` with the
/// hyperbolic element `h = g̃ ∘ g` commuting with it, where
/// `g = (-x2, -x1 - x2 P, x4, x3 + x4 P)`, `g̃ = σ g σ` and `P` is a
/// resonant monomial. When no such `P` exists for `(a, b)` the construction
/// runs on `τ f τ = (a x1, b x2, b⁻¹ x3, a⁻¹ x4)` and conjugates back.
pub fn gen_hyperelliptic<F: Field>(a: &F, b: &F) -> Result<HyperellipticWitness<F>, DomainError> {
    let resonance = resonant(a, b).ok_or_else(|| DomainError::NotResonant(format!("no relation a^p b^q = 1 for a = {a}, b = {b}")))?;
    let f = TameWord::single(Factor::Orth(diagonal_element(a, b)?));
    let bound = 2 * (resonance.p.unsigned_abs() + resonance.q.unsigned_abs()) as u32 + 2;
    let b_inv = b.inv().expect("nonzero");
    let (p, tau_conjugated, work_b) = match resonant_monomial(a, b, bound) {
        Some(p) => (p, false, b.clone()),
        None => {
            let p = resonant_monomial(a, &b_inv, bound)
                .ok_or_else(|| DomainError::NotResonant(format!("no resonant monomial of degree at most {bound}")))?;
            (p, true, b_inv.clone())
        }
    };
    let g = fixtures::g_of(&p)?;
    let g_tilde = fixtures::g_tilde_of(&p)?;
    let f_work = diagonal_element(a, &work_b)?;
    let f_tilde = fixtures::sigma().compose(&f_work.inverse().expect("diagonal")).compose(&fixtures::sigma());
    let g_auto = g.evaluate();
    let lhs = g_auto.compose(&TameAuto::from_linear(&f_work)?);
    let rhs = TameAuto::from_linear(&f_tilde)?.compose(&g_auto);
    let intertwines = lhs == rhs;
    let mut hyperbolic = g_tilde.then_after(&g);
    if tau_conjugated {
        let tau = TameWord::single(Factor::Orth(Mat4::tau()));
        hyperbolic = tau.then_after(&hyperbolic).then_after(&tau);
    }
    let h = hyperbolic.evaluate();
    let f_auto = f.evaluate();
    let commutes = f_auto.compose(&h) == h.compose(&f_auto);
    let isometry = classify_isometry(&hyperbolic, WITNESS_HORIZON);
    Ok(HyperellipticWitness { f, resonance, p, tau_conjugated, g, g_tilde, hyperbolic, intertwines, commutes, isometry })
}

/// Order of a root of unity, searched up to `limit`.
fn root_order<F: Field>(a: &F, limit: i64) -> Option<i64> {
    (1..=limit).find(|&k| a.pow(k).is_some_and(|x| x.is_one()))
}

/// A hyperelliptic elementary element with its hyperbolic companion.
#[derive(Clone, Debug)]
pub struct ElementaryHyperelliptic<F: Field> {
    /// `f = (a⁻¹ x1, b x2 + b x1 P, b⁻¹ x3, a x4 + a x3 P)`.
    pub f: TameWord<F>,
    /// `m, n ≥ 2` with `a^m = b` and `b^n = a`.
    pub exponents: (u32, u32),
    pub g1: TameWord<F>,
    pub g2: TameWord<F>,
    /// `g = g1 ∘ g2`.
    pub g: TameWord<F>,
    /// The components `(f1, f3)` and `(g1, g3)` only involve `x1, x3`, and
    /// the induced maps of the `(x1, x3)` plane commute.
    pub plane_commutes: bool,
    /// Whether `f` and `g` commute as automorphisms of the quadric.
    pub commutes: bool,
    pub isometry: IsometryReport<F>,
}

/// `(x3, -x4, x1 + x3^m, -x2 - x4 x3^(m-1))` as `L ∘ E12(x3^(m-1))` with
/// `L = (x3, -x4, x1, -x2)`.
fn plane_henon<F: Field>(m: u32) -> TameWord<F> {
    let l = Mat4::from_i64([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]]);
    let e = ElementaryAuto::new(Family::E12, Poly::x(3).pow(m - 1)).expect("x3 is a variable of E12");
    TameWord::new(vec![Factor::Orth(l), Factor::Elem(e)])
}

/// For roots of unity `a`, `b` of the same order and `P ∈ C[x1, x3]`:
/// the elementary element `f` and the product `g = g1 ∘ g2` of two plane
/// Hénon-type maps whose actions on the `(x1, x3)` plane commute with `f`.
pub fn gen_hyperelliptic_elementary<F: Field>(a: &F, b: &F, p: &Poly<F>) -> Result<ElementaryHyperelliptic<F>, DomainError> {
    const ORDER_LIMIT: i64 = 24;
    let missing = |x: &F| DomainError::MissingRootOfUnity(format!("{x} is not a root of unity of order at most {ORDER_LIMIT}"));
    let oa = root_order(a, ORDER_LIMIT).ok_or_else(|| missing(a))?;
    let ob = root_order(b, ORDER_LIMIT).ok_or_else(|| missing(b))?;
    if oa != ob {
        return Err(DomainError::NotResonant(format!("orders {oa} and {ob} differ")));
    }
    let power_to = |x: &F, y: &F| (2..=oa + 1).find(|&k| x.pow(k).as_ref() == Some(y)).map(|k| k as u32);
    let (m, n) = match (power_to(a, b), power_to(b, a)) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(DomainError::NotResonant(format!("{a} and {b} generate different groups"))),
    };
    let d = Mat4::diag([a.inv().expect("root of unity"), b.clone(), b.inv().expect("root of unity"), a.clone()]);
    let e = ElementaryAuto::new(Family::E24, p.clone())?;
    let f = TameWord::new(vec![Factor::Orth(d), Factor::Elem(e)]);
    let (g1, g2) = (plane_henon(m), plane_henon(n));
    let g = g1.then_after(&g2);
    let (fa, ga) = (f.evaluate(), g.evaluate());
    let (fg, gf) = (fa.compose(&ga), ga.compose(&fa));
    let plane = |h: &TameAuto<F>| [1, 3].iter().all(|&i| h.f(i).uses_only(&[1, 3]));
    let plane_commutes = plane(&fa) && plane(&ga) && fg.f(1) == gf.f(1) && fg.f(3) == gf.f(3);
    let commutes = fg == gf;
    let isometry = classify_isometry(&g, WITNESS_HORIZON);
    Ok(ElementaryHyperelliptic { f, exponents: (m, n), g1, g2, g, plane_commutes, commutes, isometry })
}

/// One commutation test of the parabolic family.
#[derive(Clone, Debug)]
pub struct CommutationCheck<F: Field> {
    /// `h = (a x1, b⁻¹ x2, b x3, a⁻¹ x4) ∈ H_j`.
    pub j: u32,
    pub a: F,
    pub b: F,
    /// Tested against `g̃_k ∘ g_k`.
    pub k: u32,
    pub commutes: bool,
}

/// The conjugated group `Δ_n = φ_n⁻¹ H_n φ_n` on a finite sample of `H_n`.
#[derive(Clone, Debug)]
pub struct ParabolicFamily<F: Field> {
    pub n: u32,
    /// `φ_n = g̃_n ∘ g_n ∘ … ∘ g̃_1 ∘ g_1` with `P_k = (x2 x4)^(2^k - 1)`.
    pub phi: TameWord<F>,
    /// Parameters `(a, b)` of the sampled elements of `H_n`.
    pub sample: Vec<(F, F)>,
    /// `φ_n⁻¹ ∘ h ∘ φ_n` for every sampled `h`.
    pub generators: Vec<TameWord<F>>,
    pub checks: Vec<CommutationCheck<F>>,
    /// Distance from `[id]` to `φ_n·[id]` along the chain of big squares of
    /// the prefixes of `φ_n`.
    pub drift: Option<usize>,
}

impl<F: Field> ParabolicFamily<F> {
    pub fn all_commute(&self) -> bool {
        self.checks.iter().all(|c| c.commutes)
    }
}

/// The roots of unity of the field among `±1, ±i`.
fn small_roots<F: Field>() -> Vec<F> {
    let mut out = vec![F::one(), F::one().neg()];
    if let Some(i) = F::imaginary_unit() {
        out.extend([i.clone(), i.neg()]);
    }
    out
}

/// Sampled `H_j`: pairs `(a, b)` of small roots of unity with
/// `(a b)^(2^j) = 1`.
fn h_sample<F: Field>(j: u32) -> Vec<(F, F)> {
    let roots = small_roots::<F>();
    let mut out = Vec::new();
    for a in &roots {
        for b in &roots {
            if a.mul(b).pow(1 << j).is_some_and(|x| x.is_one()) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// `g̃_k ∘ g_k` with `P_k = (x2 x4)^(2^k - 1)`.
pub fn parabolic_step<F: Field>(k: u32) -> TameWord<F> {
    let p = fixtures::parabolic_p(k);
    let g = fixtures::g_of(&p).expect("P_k lies in C[x2, x4]");
    let gt = fixtures::g_tilde_of(&p).expect("P_k lies in C[x2, x4]");
    gt.then_after(&g)
}

/// Build `Δ_n` on the sample of `H_n` whose parameters are among `±1, ±i`,
/// and check that every sampled `h ∈ H_j` commutes with `g̃_k ∘ g_k` for
/// `j < k ≤ n`.
///
/// Elements of `H_n ∖ H_(n-1)` need a primitive `2^n`-th root of unity, so
/// `n ≥ 2` requires `Q(i)` and `n ≥ 3` is out of reach of both fields.
pub fn gen_parabolic<F: Field>(n: u32) -> Result<ParabolicFamily<F>, DomainError> {
    let sample = h_sample::<F>(n);
    if n >= 1 && sample.len() == h_sample::<F>(n - 1).len() {
        return Err(DomainError::MissingRootOfUnity(format!("H_{n} needs a primitive {}-th root of unity", 1u64 << n)));
    }
    let steps: Vec<TameWord<F>> = (1..=n).map(parabolic_step).collect();
    let phi = steps.iter().fold(TameWord::empty(), |acc, s| s.then_after(&acc));
    let phi_inv = phi.invert();
    let generators = sample
        .iter()
        .map(|(a, b)| {
            let h = TameWord::single(Factor::Orth(diagonal_element(a, b).expect("roots of unity are nonzero")));
            phi_inv.then_after(&h).then_after(&phi)
        })
        .collect();
    let mut checks = Vec::new();
    for k in 1..=n {
        let s = steps[k as usize - 1].evaluate();
        for j in 0..k {
            for (a, b) in h_sample::<F>(j) {
                let h = TameAuto::from_linear(&diagonal_element(&a, &b)?)?;
                let commutes = h.compose(&s) == s.compose(&h);
                checks.push(CommutationCheck { j, a, b, k, commutes });
            }
        }
    }
    let drift = chain_distance(&phi);
    Ok(ParabolicFamily { n, phi, sample, generators, checks, drift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::IsometryClass;
    use crate::field::{Qi, Q};

    fn p<F: Field>(s: &str) -> Poly<F> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn henon_words_have_length_two_r() {
        let one = Q::one();
        let w = gen_henon(&[(one.clone(), one.clone(), p("x2^2"))]).unwrap();
        let r = classify_isometry(&w, 3);
        assert_eq!(r.class.skeleton_length(), Some(2));
        let two = gen_henon(&[(one.clone(), one.clone(), p("x2^2")), (Q::from_i64(2), one.clone(), p("x4^2 + x2"))]).unwrap();
        assert_eq!(two.len(), 4);
        assert_eq!(classify_isometry(&two, 3).class.skeleton_length(), Some(4));
        assert!(matches!(gen_henon(&[(one.clone(), one, p("3"))]), Err(DomainError::DegreeTooLow(0, 2))));
        assert!(gen_henon::<Q>(&[]).is_err());
    }

    #[test]
    fn example_g_pair_cancels() {
        let (g, gi) = gen_example_g::<Q>();
        assert_eq!(g.compose(&gi), TameAuto::identity());
    }

    #[test]
    fn resonant_diagonal_maps_are_hyperelliptic() {
        let w = gen_hyperelliptic(&Q::from_i64(2), &Q::new(1, 2)).unwrap();
        assert_eq!(w.resonance, ResonanceWitness { p: 1, q: 1 });
        assert_eq!(w.p, p("x2*x4"));
        assert!(!w.tau_conjugated);
        assert!(w.intertwines && w.commutes);
        assert!(matches!(w.isometry.class, IsometryClass::Hyperbolic { .. }));
    }

    #[test]
    fn tau_conjugation_handles_opposite_signs() {
        let w = gen_hyperelliptic(&Q::from_i64(2), &Q::from_i64(2)).unwrap();
        assert!(w.tau_conjugated);
        assert!(w.intertwines && w.commutes);
    }

    #[test]
    fn non_resonant_pairs_are_rejected() {
        let err = gen_hyperelliptic(&Q::from_i64(2), &Q::from_i64(3)).unwrap_err();
        assert!(matches!(err, DomainError::NotResonant(_)));
    }

    #[test]
    fn elementary_form_over_gaussian_rationals() {
        let i = Qi::i();
        let r = gen_hyperelliptic_elementary(&i, &i, &p("x1*x3")).unwrap();
        assert_eq!(r.exponents, (5, 5));
        assert!(r.plane_commutes);
        assert!(matches!(r.isometry.class, IsometryClass::Hyperbolic { .. }));
        let err = gen_hyperelliptic_elementary(&i, &Qi::from_i64(-1), &p("x1")).unwrap_err();
        assert!(matches!(err, DomainError::NotResonant(_)));
        let err = gen_hyperelliptic_elementary(&Qi::from_i64(2), &i, &p("x1")).unwrap_err();
        assert!(matches!(err, DomainError::MissingRootOfUnity(_)));
    }

    #[test]
    fn parabolic_family() {
        let zero = gen_parabolic::<Q>(0).unwrap();
        assert!(zero.phi.is_empty());
        assert_eq!(zero.drift, Some(0));
        assert_eq!(zero.sample.len(), 2);
        let one = gen_parabolic::<Q>(1).unwrap();
        assert_eq!(one.sample.len(), 4);
        assert!(one.all_commute());
        let two = gen_parabolic::<Qi>(2).unwrap();
        assert_eq!(two.sample.len(), 16);
        assert!(two.all_commute());
        assert_eq!((one.drift, two.drift), (Some(4), Some(8)));
        assert!(matches!(gen_parabolic::<Q>(2), Err(DomainError::MissingRootOfUnity(_))));
        assert!(matches!(gen_parabolic::<Qi>(3), Err(DomainError::MissingRootOfUnity(_))));
    }
}
