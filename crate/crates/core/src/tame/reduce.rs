//! The elementary-reduction engine: search for an elementary map lowering
//! the degree, iterate down to a linear map, and certify the result as a
//! word.

use crate::exec::ExecMode;
use crate::field::Field;
use crate::linalg;
use crate::orth::Mat4;
use crate::poly::{Exponent4, Poly, WeightVec};
use crate::tame::auto::{quadric_residual, ElementaryAuto, Factor, Family, TameAuto, TameWord};
use crate::tame::degree::{leading_relation, parachute, HRelation};

/// Bounds for the multi-layer search used when leading parts are dependent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Number of extra `H`-layers of generic degree allowed above `deg r`.
    pub depth: usize,
    /// Maximal number of unknown coefficients per linear solve.
    pub support: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { depth: 4, support: 64 }
    }
}

/// Why the exact-degree solve failed for one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Level0Outcome {
    /// No `(a, b)` satisfies `(a+1)*deg u + b*deg v = deg r`.
    NoDegreeSolution,
    /// Degree solutions exist but the leading parts cannot cancel `hom r`.
    Inconsistent,
    /// A solution exists but composing does not lower the automorphism degree.
    NoDrop,
}

/// Status of the multi-layer search for one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiLayerOutcome {
    /// `hom u` and `hom v` are independent: the exact-degree solve is exhaustive.
    NotNeeded,
    /// The parachute bound `n*(s1*deg u - ∇) < deg r` fails for every `n ≥ 1`.
    PrunedByParachute { w: WeightVec },
    /// All levels up to the budget were tried.
    Exhausted { levels: usize, unknowns: usize },
    /// The level-0 solve already succeeded.
    Skipped,
}

/// Per-family evidence collected when no reduction is found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport<F: Field> {
    pub family: Family,
    pub roles: (usize, usize, usize),
    pub dr: WeightVec,
    pub du: WeightVec,
    pub dv: WeightVec,
    pub degree_solutions: Vec<(u32, u32)>,
    pub level0: Level0Outcome,
    pub relation: Option<HRelation<F>>,
    pub multilayer: MultiLayerOutcome,
}

impl<F: Field> FamilyReport<F> {
    /// The degree equation as text, e.g. `(a+1)(2,1,1,0) + b(1,0,2,1) = (4,3,3,2)`.
    pub fn equation(&self) -> String {
        format!("(a+1){} + b{} = {}", self.du, self.dv, self.dr)
    }

    /// Whether this family provably admits no reduction.
    pub fn definitive(&self) -> bool {
        matches!(
            self.multilayer,
            MultiLayerOutcome::NotNeeded | MultiLayerOutcome::PrunedByParachute { .. }
        )
    }
}

/// Evidence that no elementary reduction was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoReductionReport<F: Field> {
    pub degree: WeightVec,
    pub families: Vec<FamilyReport<F>>,
    /// True when every family is excluded by an exhaustive argument rather
    /// than by budget exhaustion.
    pub definitive: bool,
    pub budget: Budget,
}

/// One certified step: an optional orthogonal map `u`, the elementary map
/// `e`, and the degree of `e ∘ u ∘ f`. The orthogonal part leaves the degree
/// unchanged, so the drop is carried by `e` alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step<F: Field> {
    pub orth: Option<Mat4<F>>,
    pub elem: ElementaryAuto<F>,
    pub degree: WeightVec,
}

/// How a reduction ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<F: Field> {
    Linear(Mat4<F>),
    NoReductionFound(NoReductionReport<F>),
}

/// The sequence of reductions applied to an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace<F: Field> {
    pub start: TameAuto<F>,
    pub start_degree: WeightVec,
    pub steps: Vec<Step<F>>,
    pub verdict: Verdict<F>,
}

impl<F: Field> ReductionTrace<F> {
    /// `u1⁻¹ ∘ e1⁻¹ ∘ … ∘ un⁻¹ ∘ en⁻¹ ∘ a`, which evaluates to the start when linear.
    pub fn certified_word(&self) -> Option<TameWord<F>> {
        let Verdict::Linear(a) = &self.verdict else {
            return None;
        };
        let mut factors: Vec<Factor<F>> = Vec::new();
        for s in &self.steps {
            if let Some(u) = &s.orth {
                factors.push(Factor::Orth(u.inverse().expect("orthogonal maps are invertible")));
            }
            factors.push(Factor::Elem(s.elem.inverse()));
        }
        factors.push(Factor::Orth(a.clone()));
        Some(TameWord::new(factors))
    }

    /// Degrees strictly decrease along the trace.
    pub fn strictly_decreasing(&self) -> bool {
        let mut prev = self.start_degree;
        for s in &self.steps {
            if s.degree >= prev {
                return false;
            }
            prev = s.degree;
        }
        true
    }

    /// Re-check the descent and, for a linear verdict, the word.
    pub fn verify(&self) -> bool {
        if !self.strictly_decreasing() {
            return false;
        }
        match self.certified_word() {
            Some(w) => w.evaluate() == self.start,
            None => true,
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.verdict, Verdict::Linear(_))
    }
}

/// Outcome of the tame-membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TameVerdict<F: Field> {
    Tame { word: TameWord<F>, trace: ReductionTrace<F> },
    NotTameWithinBudget(ReductionTrace<F>),
    /// `f1*f4 - f2*f3` differs from `q`; the payload is `f1*f4 - f2*f3`.
    NotAutomorphismOfQuadric(Poly<F>),
}

struct Candidate<F: Field> {
    ab: (u32, u32),
    ged: WeightVec,
    _marker: std::marker::PhantomData<F>,
}

fn p_from_solution<F: Field>(family: Family, ab: &[(u32, u32)], coeffs: &[F]) -> Poly<F> {
    let (va, vb) = family.roles().vars;
    Poly::from_terms(ab.iter().zip(coeffs).map(|(&(a, b), c)| {
        let mut e = [0u32; 4];
        e[va - 1] = a;
        e[vb - 1] = b;
        (Exponent4(e), c.clone())
    }))
}

/// All `(a, b)` with `(a+1)*du + b*dv = dr`.
fn degree_solutions(du: &WeightVec, dv: &WeightVec, dr: &WeightVec) -> Vec<(u32, u32)> {
    let (Some(su), Some(sv), Some(sr)) = (du.sum(), dv.sum(), dr.sum()) else {
        return Vec::new();
    };
    if su <= 0 || sv <= 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for a1 in 1..=(sr / su) {
        for b in 0..=((sr - a1 * su) / sv) {
            if du.scaled(a1) + dv.scaled(b) == *dr {
                out.push(((a1 - 1) as u32, b as u32));
            }
        }
    }
    out
}

struct FamilySearch<'a, F: Field> {
    f: &'a TameAuto<F>,
    family: Family,
    roles: (usize, usize, usize),
    degree: WeightVec,
}

impl<F: Field> FamilySearch<'_, F> {
    fn r(&self) -> &Poly<F> {
        self.f.f(self.roles.0)
    }
    fn u(&self) -> &Poly<F> {
        self.f.f(self.roles.1)
    }
    fn v(&self) -> &Poly<F> {
        self.f.f(self.roles.2)
    }

    fn accept(&self, p: Poly<F>) -> Result<ElementaryAuto<F>, Level0Outcome> {
        let e = ElementaryAuto { family: self.family, p };
        if e.apply_left(self.f).auto_degree() < self.degree {
            Ok(e)
        } else {
            Err(Level0Outcome::NoDrop)
        }
    }

    fn level0(&self, sols: &[(u32, u32)]) -> Result<ElementaryAuto<F>, Level0Outcome> {
        if sols.is_empty() {
            return Err(Level0Outcome::NoDegreeSolution);
        }
        let hr = self.r().leading_part().expect("components are nonzero").neg();
        let hu = self.u().leading_part().expect("components are nonzero");
        let hv = self.v().leading_part().expect("components are nonzero");
        let cols: Vec<Poly<F>> = sols.iter().map(|&(a, b)| &hu.pow(a + 1) * &hv.pow(b)).collect();
        let refs: Vec<&Poly<F>> = cols.iter().collect();
        let sol = linalg::express_in_span(&[&hr], &refs).ok_or(Level0Outcome::Inconsistent)?;
        self.accept(p_from_solution(self.family, sols, &sol[0]))
    }

    fn multilayer(&self, rel: &HRelation<F>, budget: &Budget) -> Result<ElementaryAuto<F>, MultiLayerOutcome> {
        let (du, dv) = (self.u().wdeg(), self.v().wdeg());
        let dr = self.r().wdeg();
        if let Ok(data) = parachute(self.u(), self.v()) {
            let w = rel.degree(&du).minus(&data.nabla);
            if w >= dr {
                return Err(MultiLayerOutcome::PrunedByParachute { w });
            }
        }
        let (su, sv, sr) = (du.sum().unwrap_or(1), dv.sum().unwrap_or(1), dr.sum().unwrap_or(0));
        let gap = rel.degree(&du).sum().unwrap_or(1).max(1);
        let mut upow: Vec<Poly<F>> = vec![Poly::one()];
        let mut vpow: Vec<Poly<F>> = vec![Poly::one()];
        let mut last_count = 0;
        let mut unknowns = 0;
        for m in 1..=budget.depth {
            let limit = sr + m as i64 * gap;
            let mut cands: Vec<Candidate<F>> = Vec::new();
            for a1 in 1..=(limit / su) {
                for b in 0..=((limit - a1 * su) / sv) {
                    let ged = du.scaled(a1) + dv.scaled(b);
                    if ged >= dr {
                        cands.push(Candidate { ab: ((a1 - 1) as u32, b as u32), ged, _marker: Default::default() });
                    }
                }
            }
            cands.sort_by(|x, y| x.ged.cmp(&y.ged).then(x.ab.cmp(&y.ab)));
            cands.truncate(budget.support);
            unknowns = cands.len();
            if cands.len() == last_count {
                continue;
            }
            last_count = cands.len();
            let polys: Vec<Poly<F>> = cands
                .iter()
                .map(|c| {
                    let (a, b) = c.ab;
                    while upow.len() <= a as usize + 1 {
                        let next = &upow[upow.len() - 1] * self.u();
                        upow.push(next);
                    }
                    while vpow.len() <= b as usize {
                        let next = &vpow[vpow.len() - 1] * self.v();
                        vpow.push(next);
                    }
                    let full = &upow[a as usize + 1] * &vpow[b as usize];
                    Poly::from_terms(full.terms_at_least(&dr))
                })
                .collect();
            let r_top = Poly::from_terms(self.r().terms_at_least(&dr)).neg();
            let mut refs: Vec<&Poly<F>> = polys.iter().collect();
            refs.retain(|p| !p.is_zero());
            if refs.is_empty() {
                continue;
            }
            let ab: Vec<(u32, u32)> = cands
                .iter()
                .zip(&polys)
                .filter(|(_, p)| !p.is_zero())
                .map(|(c, _)| c.ab)
                .collect();
            if let Some(sol) = linalg::express_in_span(&[&r_top], &refs) {
                if let Ok(e) = self.accept(p_from_solution(self.family, &ab, &sol[0])) {
                    return Ok(e);
                }
            }
        }
        Err(MultiLayerOutcome::Exhausted { levels: budget.depth, unknowns })
    }
}

/// The first exact-degree solution over the families, in priority order.
pub fn level0_reduction<F: Field>(f: &TameAuto<F>) -> Option<ElementaryAuto<F>> {
    let degree = f.auto_degree();
    Family::ALL.into_iter().find_map(|family| {
        let s = FamilySearch { f, family, roles: family.reduction_roles(), degree };
        let sols = degree_solutions(&s.u().wdeg(), &s.v().wdeg(), &s.r().wdeg());
        s.level0(&sols).ok()
    })
}

/// Search an elementary reduction, returning the evidence on failure.
pub fn search_reduction<F: Field>(
    f: &TameAuto<F>,
    budget: &Budget,
) -> Result<ElementaryAuto<F>, NoReductionReport<F>> {
    let degree = f.auto_degree();
    let mut reports: Vec<FamilyReport<F>> = Vec::new();
    for family in Family::ALL {
        let s = FamilySearch { f, family, roles: family.reduction_roles(), degree };
        let (du, dv, dr) = (s.u().wdeg(), s.v().wdeg(), s.r().wdeg());
        let sols = degree_solutions(&du, &dv, &dr);
        match s.level0(&sols) {
            Ok(e) => return Ok(e),
            Err(level0) => reports.push(FamilyReport {
                family,
                roles: s.roles,
                dr,
                du,
                dv,
                degree_solutions: sols,
                level0,
                relation: leading_relation(s.u(), s.v()),
                multilayer: MultiLayerOutcome::NotNeeded,
            }),
        }
    }
    for rep in reports.iter_mut() {
        let Some(rel) = rep.relation.clone() else {
            continue;
        };
        let s = FamilySearch { f, family: rep.family, roles: rep.roles, degree };
        match s.multilayer(&rel, budget) {
            Ok(e) => return Ok(e),
            Err(outcome) => rep.multilayer = outcome,
        }
    }
    let definitive = reports.iter().all(FamilyReport::definitive);
    Err(NoReductionReport { degree, families: reports, definitive, budget: *budget })
}

fn degree_sum<F: Field>(f: &TameAuto<F>) -> WeightVec {
    f.components().iter().fold(WeightVec::Finite([0; 4]), |acc, p| acc + p.wdeg())
}

/// Lower the sum of the component degrees by linear elementary maps
/// (constant `P`) as long as possible, returning the accumulated matrix
/// `u` and `u ∘ f`, or `None` when no such move applies.
///
/// Left composition by an orthogonal map keeps `deg f`, but it can make the
/// leading parts of several components coincide so that no single
/// elementary map lowers all of them at once.
pub fn normalize_left<F: Field>(f: &TameAuto<F>) -> Option<(Mat4<F>, TameAuto<F>)> {
    let mut cur = f.clone();
    let mut sum = degree_sum(&cur);
    let mut moved = TameAuto::identity();
    let mut any = false;
    'outer: loop {
        for family in Family::ALL {
            let (r, u, _) = family.reduction_roles();
            let (hr, hu) = match (cur.f(r).leading_part(), cur.f(u).leading_part()) {
                (Ok(hr), Ok(hu)) => (hr, hu),
                _ => continue,
            };
            if hr.wdeg() != hu.wdeg() {
                continue;
            }
            let lambda = hr.terms()[0].1.div(&hu.terms()[0].1).expect("leading coefficients are nonzero");
            if !(&hr - &hu.scale(&lambda)).is_zero() {
                continue;
            }
            let e = ElementaryAuto { family, p: Poly::constant(lambda.neg()) };
            let next = e.apply_left(&cur);
            let next_sum = degree_sum(&next);
            if next_sum < sum {
                moved = e.apply_left(&moved);
                cur = next;
                sum = next_sum;
                any = true;
                continue 'outer;
            }
        }
        break;
    }
    if !any {
        return None;
    }
    let u = moved.as_linear().expect("products of linear elementary maps are linear");
    Some((u, cur))
}

/// An elementary `e` with `deg(e ∘ f) < deg f`, if the search finds one.
pub fn find_elementary_reduction<F: Field>(f: &TameAuto<F>, budget: &Budget) -> Option<ElementaryAuto<F>> {
    if f.is_linear() {
        return None;
    }
    search_reduction(f, budget).ok()
}

/// Iterate elementary reductions down to a linear map.
pub fn reduce<F: Field>(f: &TameAuto<F>, budget: &Budget) -> ReductionTrace<F> {
    let start_degree = f.auto_degree();
    let mut cur = f.clone();
    let mut steps = Vec::new();
    loop {
        if let Some(a) = cur.as_linear() {
            return ReductionTrace { start: f.clone(), start_degree, steps, verdict: Verdict::Linear(a) };
        }
        let found = match level0_reduction(&cur) {
            Some(e) => Ok((None, e)),
            None => match normalize_left(&cur) {
                Some((u, g)) => match search_reduction(&g, budget) {
                    Ok(e) => Ok((Some(u), e)),
                    Err(_) => search_reduction(&cur, budget).map(|e| (None, e)),
                },
                None => search_reduction(&cur, budget).map(|e| (None, e)),
            },
        };
        match found {
            Ok((orth, e)) => {
                let base = match &orth {
                    Some(u) => Factor::Orth(u.clone()).apply_left(&cur),
                    None => cur,
                };
                cur = e.apply_left(&base);
                steps.push(Step { orth, elem: e, degree: cur.auto_degree() });
            }
            Err(report) => {
                return ReductionTrace {
                    start: f.clone(),
                    start_degree,
                    steps,
                    verdict: Verdict::NoReductionFound(report),
                }
            }
        }
    }
}

/// Reduce many inputs, in parallel when requested and available.
pub fn reduce_batch<F: Field>(inputs: &[TameAuto<F>], budget: &Budget, mode: ExecMode) -> Vec<ReductionTrace<F>> {
    mode.map(inputs, |f| reduce(f, budget))
}

/// Decide membership in the tame group within the budget.
pub fn is_tame<F: Field>(comps: &[Poly<F>; 4], budget: &Budget) -> TameVerdict<F> {
    let residual = quadric_residual(comps);
    if !residual.is_zero() {
        return TameVerdict::NotAutomorphismOfQuadric(&residual + &Poly::q());
    }
    let f = TameAuto::from_trusted(comps.clone());
    let trace = reduce(&f, budget);
    match trace.certified_word() {
        Some(word) if word.evaluate() == f => TameVerdict::Tame { word, trace },
        _ => TameVerdict::NotTameWithinBudget(trace),
    }
}

/// Compare `deg p` with the minimal degree of its class modulo `q - 1`
/// for every component.
pub fn quotient_degree_gaps<F: Field>(f: &TameAuto<F>) -> [(WeightVec, WeightVec); 4] {
    std::array::from_fn(|i| {
        let p = f.f(i + 1);
        (p.wdeg(), p.quotient_normal_form().wdeg())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn elementary_reduces_to_its_inverse() {
        let e = ElementaryAuto::new(Family::E24, p("x1^2")).unwrap();
        let found = find_elementary_reduction(&e.to_auto(), &Budget::default()).unwrap();
        assert_eq!(found, e.inverse());
    }

    #[test]
    fn identity_reduces_trivially() {
        let t = reduce(&TameAuto::<Q>::identity(), &Budget::default());
        assert!(t.steps.is_empty());
        assert_eq!(t.verdict, Verdict::Linear(Mat4::identity()));
    }

    #[test]
    fn degree_equation_solutions() {
        let d1 = WeightVec::LINEAR;
        let d3 = WeightVec::of_var(2);
        assert!(degree_solutions(&d1, &d3, &WeightVec::Finite([4, 3, 3, 2])).is_empty());
        assert_eq!(degree_solutions(&d1, &d3, &WeightVec::Finite([5, 2, 4, 1])), vec![(1, 1)]);
    }

    #[test]
    fn anick_is_rejected_definitively() {
        let q = Poly::<Q>::q();
        let comps = [p("x1"), &p("x2") + &(&p("x1") * &q), p("x3"), &p("x4") + &(&p("x3") * &q)];
        match is_tame(&comps, &Budget::default()) {
            TameVerdict::NotTameWithinBudget(t) => {
                let Verdict::NoReductionFound(r) = t.verdict else { panic!() };
                assert!(r.definitive);
                assert!(r.families.iter().all(|f| f.degree_solutions.is_empty()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_automorphism_is_flagged() {
        let comps = [p("x1"), p("x2"), p("x3"), p("x4 + 1")];
        assert_eq!(is_tame(&comps, &Budget::default()), TameVerdict::NotAutomorphismOfQuadric(p("x1*x4 - x2*x3 + x1")));
    }
}
