//! Degree calculus on pairs of components: leading-part relations, the
//! parachute, lower bounds and the component-drop equivalence.

use std::cmp::Ordering;

use num_integer::Integer;

use crate::error::DomainError;
use crate::field::Field;
use crate::poly::{jj_k, Poly, WeightVec};
use crate::tame::auto::{ElementaryAuto, TameAuto};

/// Relation `X^s1 - λ Y^s2` between two leading parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HRelation<F: Field> {
    pub s1: u32,
    pub s2: u32,
    pub lambda: F,
}

impl<F: Field> HRelation<F> {
    /// Generic degree of `H` given `d1 = deg f1`.
    pub fn degree(&self, d1: &WeightVec) -> WeightVec {
        d1.scaled(self.s1 as i64)
    }
}

/// Degrees, leading-part relation and parachute of a pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenericDegreeData<F: Field> {
    pub d1: WeightVec,
    pub d2: WeightVec,
    pub h: Option<HRelation<F>>,
    pub nabla: WeightVec,
}

/// Coprime `(s1, s2)` with `s1*d1 = s2*d2`, if the degrees are proportional.
pub fn proportional(d1: &WeightVec, d2: &WeightVec) -> Option<(u32, u32)> {
    let (a, b) = (d1.finite()?, d2.finite()?);
    let (sa, sb): (i64, i64) = (a.iter().sum(), b.iter().sum());
    if sa <= 0 || sb <= 0 {
        return None;
    }
    let g = sa.gcd(&sb);
    let (s1, s2) = (sb / g, sa / g);
    (0..4).all(|i| s1 * a[i] == s2 * b[i]).then_some((s1 as u32, s2 as u32))
}

/// The relation between `hom f1` and `hom f2`, when they are algebraically
/// dependent.
pub fn leading_relation<F: Field>(f1: &Poly<F>, f2: &Poly<F>) -> Option<HRelation<F>> {
    let (h1, h2) = (f1.leading_part().ok()?, f2.leading_part().ok()?);
    let (s1, s2) = proportional(&h1.wdeg(), &h2.wdeg())?;
    let a = h1.pow(s1);
    let b = h2.pow(s2);
    let lambda = a.leading_term()?.1.div(&b.leading_term()?.1)?;
    (a == b.scale(&lambda)).then_some(HRelation { s1, s2, lambda })
}

/// `Some((c, k))` when `hom p = c * (hom r)^k`.
pub fn hom_membership<F: Field>(p: &Poly<F>, r: &Poly<F>) -> Option<(F, u32)> {
    let (hp, hr) = (p.leading_part().ok()?, r.leading_part().ok()?);
    let (dp, dr) = (hp.wdeg().finite()?, hr.wdeg().finite()?);
    let (sp, sr): (i64, i64) = (dp.iter().sum(), dr.iter().sum());
    let k = if sr == 0 {
        if sp != 0 {
            return None;
        }
        0
    } else {
        if sp % sr != 0 {
            return None;
        }
        sp / sr
    };
    if (0..4).any(|i| dp[i] != k * dr[i]) {
        return None;
    }
    let pow = hr.pow(k as u32);
    let c = hp.leading_term()?.1.div(&pow.leading_term()?.1)?;
    (hp == pow.scale(&c)).then_some((c, k as u32))
}

/// The largest pseudo-Jacobian degree `max_k deg jj_k(f1, f2)`.
pub fn max_jj_degree<F: Field>(f1: &Poly<F>, f2: &Poly<F>) -> WeightVec {
    (1..=4).map(|k| jj_k(k, f1, f2).wdeg()).max().unwrap_or(WeightVec::MinusInfinity)
}

fn dependence_witness<F: Field>(f1: &Poly<F>, f2: &Poly<F>) -> String {
    let q = Poly::<F>::q();
    for (a, b, na, nb) in [(f1, f2, "f1", "f2"), (f2, f1, "f2", "f1")] {
        if let Some(h) = b.div_exact(a) {
            if let Some((c, k)) = hom_membership(&h, &q) {
                if h == q.pow(k).scale(&c) {
                    return format!(": {nb} = ({c})*q^{k}*{na}");
                }
            }
        }
    }
    String::new()
}

/// Degrees, relation and parachute `∇ = d1 + d2 - max_k deg jj_k(f1, f2)`.
pub fn parachute<F: Field>(f1: &Poly<F>, f2: &Poly<F>) -> Result<GenericDegreeData<F>, DomainError> {
    let top = max_jj_degree(f1, f2);
    if !top.is_finite() {
        return Err(DomainError::PseudoJacobiansVanish(dependence_witness(f1, f2)));
    }
    let (d1, d2) = (f1.wdeg(), f2.wdeg());
    Ok(GenericDegreeData {
        d1,
        d2,
        h: leading_relation(f1, f2),
        nabla: (d1 + d2).minus(&top),
    })
}

/// Hypotheses and conclusion of the lower bound for `f2 * R(f1, f2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LowerBoundReport {
    /// `R` involves `X`, so `R(f1, f2)` is not in `C[f2]`.
    pub r_not_in_c_f2: bool,
    /// `hom f1` is not a polynomial in `hom f2`.
    pub hom_f1_not_in_c_hom_f2: bool,
    pub lhs_degree: WeightVec,
    pub rhs_degree: WeightVec,
    /// `Some(deg(f2 R(f1,f2)) > deg f1)` when both hypotheses hold.
    pub holds: Option<bool>,
}

/// Evaluate the lower bound `deg(f2 R(f1,f2)) > deg f1`; `r` is written in
/// `x1, x2` standing for `X, Y`.
pub fn lower_bound_check<F: Field>(f1: &Poly<F>, f2: &Poly<F>, r: &Poly<F>) -> LowerBoundReport {
    let r_not_in_c_f2 = r.variables()[0];
    let hom_f1_not_in_c_hom_f2 = hom_membership(f1, f2).is_none();
    let g = [f1.clone(), f2.clone(), Poly::zero(), Poly::zero()];
    let value = f2 * &r.substitute(&g);
    let lhs_degree = value.wdeg();
    let rhs_degree = f1.wdeg();
    let holds = (r_not_in_c_f2 && hom_f1_not_in_c_hom_f2).then(|| lhs_degree > rhs_degree);
    LowerBoundReport { r_not_in_c_f2, hom_f1_not_in_c_hom_f2, lhs_degree, rhs_degree, holds }
}

/// Comparison of `deg(e ∘ f)` with `deg f` and of the two touched components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentDropReport {
    pub whole: Ordering,
    pub first: Ordering,
    pub second: Ordering,
}

impl ComponentDropReport {
    pub fn agree(&self) -> bool {
        self.whole == self.first && self.first == self.second
    }
}

/// Compare the degree changes of `e ∘ f` as a whole and in the two
/// components that `e` touches.
pub fn component_drop_equiv<F: Field>(f: &TameAuto<F>, e: &ElementaryAuto<F>) -> ComponentDropReport {
    let g = e.apply_left(f);
    let [(t1, _), (t2, _)] = e.family.roles().updates;
    ComponentDropReport {
        whole: g.auto_degree().cmp(&f.auto_degree()),
        first: g.f(t1).wdeg().cmp(&f.f(t1).wdeg()),
        second: g.f(t2).wdeg().cmp(&f.f(t2).wdeg()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::tame::auto::Family;

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn hom_membership_fixtures() {
        assert_eq!(hom_membership(&p("x2^3 + x1"), &p("x2")), Some((Q::one(), 3)));
        assert_eq!(hom_membership(&p("x1"), &p("x2")), None);
        let q = Poly::<Q>::q();
        let two_q2 = &q.pow(2).scale(&Q::from_i64(2)) + &p("x1");
        assert_eq!(hom_membership(&two_q2, &(&q + &p("x3"))), Some((Q::from_i64(2), 2)));
    }

    #[test]
    fn parachute_fixtures() {
        let data = parachute(&p("x1"), &p("x2")).unwrap();
        let top = max_jj_degree(&p("x1"), &p("x2"));
        assert_eq!(data.nabla, (WeightVec::of_var(0) + WeightVec::of_var(1)).minus(&top));
        assert!(data.h.is_none());
        let f1 = p("x1");
        let f2 = &Poly::q() * &f1;
        let err = parachute(&f1, &f2).unwrap_err();
        assert!(matches!(err, DomainError::PseudoJacobiansVanish(ref w) if w.contains("q^1")));
    }

    #[test]
    fn leading_relations() {
        let h = leading_relation(&p("x1^3 + x2"), &p("x1 + x3")).unwrap();
        assert_eq!((h.s1, h.s2, h.lambda), (1, 3, Q::one()));
        assert!(leading_relation(&p("x1"), &p("x3")).is_none());
    }

    #[test]
    fn lower_bound_fixture() {
        let r = lower_bound_check(&p("x1"), &p("x2"), &p("x1"));
        assert_eq!(r.holds, Some(true));
        assert_eq!(r.lhs_degree, WeightVec::Finite([3, 3, 1, 1]));
        let r = lower_bound_check(&p("x1"), &p("x2"), &p("x2^2"));
        assert_eq!(r.holds, None);
    }

    #[test]
    fn component_drop_fixtures() {
        let e = ElementaryAuto::new(Family::E13, p("x2*x4")).unwrap();
        let up = component_drop_equiv(&TameAuto::identity(), &e);
        assert!(up.agree() && up.whole == Ordering::Greater);
        let down = component_drop_equiv(&e.inverse().to_auto(), &e);
        assert!(down.agree() && down.whole == Ordering::Less);
    }
}
