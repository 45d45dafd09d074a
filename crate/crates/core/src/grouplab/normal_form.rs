//! Alternating factorizations in the stabilizer of `[x1]`, which is the
//! amalgamated product of
//!
//! * `K1`: `(a x1, b x2 + x1 P(x1), b⁻¹ x3 + x1 Q(x1), …)` and the same with
//!   `x2`, `x3` exchanged in the second and third components;
//! * `H2`: `(a x1, b x2 + x1 P(x1, x3), b⁻¹ x3 + x1 Q(x1), …)`;
//!
//! along their intersection. The fourth component is always forced by the
//! quadric, so only the first three are inspected.
//!
//! The factorization peels elementary maps off the left: an `E24` factor
//! (which lies in `H2`) subtracts `x1^s f3^k` from `f2`, and an `E34`
//! factor, written as `τ ∘ E24 ∘ τ`, subtracts `x1^s f2^k` from `f3`. Each
//! step cancels the leading term of the reduced component for a monomial
//! order that compares the degree in `x2, x3` first, then the degree in
//! `x1`. Adjacent factors lying in a common subgroup are then multiplied
//! together.

use std::fmt;

use crate::error::DomainError;
use crate::field::Field;
use crate::orth::Mat4;
use crate::poly::{Exponent4, Poly};
use crate::tame::{ElementaryAuto, Family, TameAuto};

fn coeff<F: Field>(p: &Poly<F>, var: usize) -> F {
    p.coeff(&Exponent4::var(var - 1))
}

/// `a` when `f1 = a x1`.
pub fn x1_scalar<F: Field>(f: &TameAuto<F>) -> Option<F> {
    let a = coeff(f.f(1), 1);
    (!a.is_zero() && *f.f(1) == Poly::x(1).scale(&a)).then_some(a)
}

/// Every term of `p` is divisible by `x1` and only uses `vars`.
fn x1_multiple<F: Field>(p: &Poly<F>, vars: &[usize]) -> bool {
    p.uses_only(vars) && p.terms().iter().all(|(e, _)| e.0[0] >= 1)
}

/// `f2 = b x_u + x1 P` with `P` in `p_vars`, and `f3 = b⁻¹ x_v + x1 Q(x1)`.
fn triangular_shape<F: Field>(f: &TameAuto<F>, u: usize, v: usize, p_vars: &[usize]) -> Option<F> {
    let b = coeff(f.f(2), u);
    let b_inv = b.inv()?;
    let ok = x1_multiple(&f.f(2).sub(&Poly::x(u).scale(&b)), p_vars)
        && x1_multiple(&f.f(3).sub(&Poly::x(v).scale(&b_inv)), &[1]);
    ok.then_some(b)
}

/// The scalar `b` of an element of `H2`.
pub fn in_h2<F: Field>(f: &TameAuto<F>) -> Option<F> {
    x1_scalar(f)?;
    triangular_shape(f, 2, 3, &[1, 3])
}

/// Membership in `K1`: `Some(false)` for the straight shape, `Some(true)`
/// for the shape with `x2` and `x3` exchanged.
pub fn in_k1<F: Field>(f: &TameAuto<F>) -> Option<bool> {
    x1_scalar(f)?;
    if triangular_shape(f, 2, 3, &[1]).is_some() {
        Some(false)
    } else if triangular_shape(f, 3, 2, &[1]).is_some() {
        Some(true)
    } else {
        None
    }
}

/// The subgroup a factor of an [`AmalgamWord`] is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmalgamFactor {
    K1,
    H2,
}

impl fmt::Display for AmalgamFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmalgamFactor::K1 => "K1",
            AmalgamFactor::H2 => "H2",
        })
    }
}

/// A word `w1 ∘ w2 ∘ … ∘ wk` with factors in `K1` or `H2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamWord<F: Field> {
    pub factors: Vec<(AmalgamFactor, TameAuto<F>)>,
}

impl<F: Field> AmalgamWord<F> {
    pub fn evaluate(&self) -> TameAuto<F> {
        self.factors.iter().fold(TameAuto::identity(), |acc, (_, f)| acc.compose(f))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Reduced shape: consecutive factors come from different subgroups and,
    /// unless the word has a single letter, no factor lies in `K1 ∩ H2`.
    pub fn is_alternating(&self) -> bool {
        let tags_ok = self.factors.windows(2).all(|w| w[0].0 != w[1].0);
        let members_ok = self.factors.iter().all(|(t, f)| match t {
            AmalgamFactor::K1 => in_k1(f).is_some() && (self.len() == 1 || in_h2(f).is_none()),
            AmalgamFactor::H2 => in_h2(f).is_some() && (self.len() == 1 || in_k1(f).is_none()),
        });
        tags_ok && members_ok
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tag {
    K1,
    H2,
    Both,
}

fn tag<F: Field>(f: &TameAuto<F>) -> Result<Tag, DomainError> {
    match (in_k1(f).is_some(), in_h2(f).is_some()) {
        (true, true) => Ok(Tag::Both),
        (true, false) => Ok(Tag::K1),
        (false, true) => Ok(Tag::H2),
        (false, false) => Err(DomainError::PeelingFailed(format!("factor {f} lies in neither K1 nor H2"))),
    }
}

/// Monomial order key: degree in `x2, x3`, then degree in `x1`, then `x2`.
fn key(e: &Exponent4) -> (u32, u32, u32) {
    (e.0[1] + e.0[2], e.0[0], e.0[1])
}

fn leading<F: Field>(p: &Poly<F>) -> Option<(Exponent4, F)> {
    p.terms().iter().max_by_key(|(e, _)| key(e)).cloned()
}

/// The elementary map cancelling the leading term of `f_target` against a
/// power of `f_other`, where `(target, other)` is `(2, 3)` for `E24` and
/// `(3, 2)` for `E34`.
fn reduction_step<F: Field>(g: &TameAuto<F>, a: &F, target: usize, other: usize) -> Option<ElementaryAuto<F>> {
    let (e, c) = leading(g.f(target))?;
    let (e_o, c_o) = leading(g.f(other))?;
    let (d, d_o) = (e.0[1] + e.0[2], e_o.0[1] + e_o.0[2]);
    let k = if d == 0 {
        0
    } else if d_o > 0 && d % d_o == 0 {
        d / d_o
    } else {
        return None;
    };
    if e.0[1] != k * e_o.0[1] || e.0[2] != k * e_o.0[2] || e.0[0] < k * e_o.0[0] + 1 {
        return None;
    }
    let s = e.0[0] - k * e_o.0[0];
    // (E ∘ g)_target = g_target + a x1 P(a x1, g_other); choose P so that
    // this subtracts (c / c_o^k) x1^s g_other^k.
    let scale = c.mul(&c_o.pow(-(k as i64))?).mul(&a.pow(-(s as i64))?).neg();
    let (family, var) = if target == 2 { (Family::E24, 2) } else { (Family::E34, 1) };
    let mut exps = [0u32; 4];
    exps[0] = s - 1;
    exps[var] = k;
    ElementaryAuto::new(family, Poly::monomial(Exponent4(exps), scale)).ok()
}

/// `E34(P(x1, x2)) = τ ∘ E24(P(x1, x3)) ∘ τ`.
fn e34_as_e24<F: Field>(e: &ElementaryAuto<F>) -> ElementaryAuto<F> {
    let swapped = e.p.substitute(&[Poly::x(1), Poly::x(3), Poly::x(2), Poly::x(4)]);
    ElementaryAuto::new(Family::E24, swapped).expect("P(x1, x3) is admissible for E24")
}

/// Factor `f ∈ Stab([x1])` as an alternating word in `K1` and `H2`.
pub fn stab_x1_normal_form<F: Field>(f: &TameAuto<F>) -> Result<AmalgamWord<F>, DomainError> {
    const MAX_STEPS: usize = 10_000;
    let a = x1_scalar(f).ok_or_else(|| DomainError::NotInSubgroup(format!("first component {} is not a multiple of x1", f.f(1))))?;
    let tau = TameAuto::from_linear(&Mat4::tau()).expect("τ is orthogonal");
    // f = left[0] ∘ left[1] ∘ … ∘ g throughout.
    let mut left: Vec<TameAuto<F>> = Vec::new();
    let mut g = f.clone();
    for _ in 0..MAX_STEPS {
        if in_h2(&g).is_some() || in_k1(&g).is_some() {
            left.push(g);
            return merge(left);
        }
        if let Some(e) = reduction_step(&g, &a, 2, 3) {
            g = e.apply_left(&g);
            left.push(e.inverse().to_auto());
        } else if let Some(e) = reduction_step(&g, &a, 3, 2) {
            g = e.apply_left(&g);
            left.extend([tau.clone(), e34_as_e24(&e.inverse()).to_auto(), tau.clone()]);
        } else {
            let tg = tau.compose(&g);
            if in_h2(&tg).is_some() {
                left.extend([tau, tg]);
                return merge(left);
            }
            return Err(DomainError::PeelingFailed(format!("no leading-term reduction applies to {g}")));
        }
    }
    Err(DomainError::PeelingFailed(format!("no normal form within {MAX_STEPS} steps")))
}

/// Multiply adjacent factors lying in a common subgroup until the word
/// alternates.
fn merge<F: Field>(factors: Vec<TameAuto<F>>) -> Result<AmalgamWord<F>, DomainError> {
    let mut items: Vec<(Tag, TameAuto<F>)> = factors
        .into_iter()
        .filter(|f| *f != TameAuto::identity())
        .map(|f| tag(&f).map(|t| (t, f)))
        .collect::<Result<_, _>>()?;
    'outer: loop {
        for i in 0..items.len().saturating_sub(1) {
            let (s, t) = (items[i].0, items[i + 1].0);
            if s == t || s == Tag::Both || t == Tag::Both {
                let product = items[i].1.compose(&items[i + 1].1);
                items.remove(i + 1);
                if product == TameAuto::identity() {
                    items.remove(i);
                } else {
                    items[i] = (tag(&product)?, product);
                }
                continue 'outer;
            }
        }
        break;
    }
    let factors = items
        .into_iter()
        .map(|(t, f)| (if t == Tag::K1 { AmalgamFactor::K1 } else { AmalgamFactor::H2 }, f))
        .collect();
    Ok(AmalgamWord { factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::tame::{Factor, TameWord};

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    fn e24(s: &str) -> TameAuto<Q> {
        ElementaryAuto::new(Family::E24, p(s)).unwrap().to_auto()
    }

    fn tau() -> TameAuto<Q> {
        TameAuto::from_linear(&Mat4::tau()).unwrap()
    }

    fn tags(w: &AmalgamWord<Q>) -> Vec<AmalgamFactor> {
        w.factors.iter().map(|(t, _)| *t).collect()
    }

    #[test]
    fn membership() {
        assert!(in_h2(&e24("x1*x3^2")).is_some());
        assert!(in_k1(&e24("x1*x3^2")).is_none());
        assert_eq!(in_k1(&tau()), Some(true));
        assert!(in_h2(&tau()).is_none());
        assert_eq!(in_k1(&e24("x1")), Some(false));
        assert!(in_h2(&TameAuto::<Q>::from_linear(&crate::fixtures::sigma()).unwrap()).is_none());
    }

    #[test]
    fn elements_of_the_factors_are_single_letters() {
        let h = e24("x1*x3^2 + x3");
        let w = stab_x1_normal_form(&h).unwrap();
        assert_eq!(tags(&w), [AmalgamFactor::H2]);
        let w = stab_x1_normal_form(&tau()).unwrap();
        assert_eq!(tags(&w), [AmalgamFactor::K1]);
    }

    #[test]
    fn conjugate_by_tau_gives_three_letters() {
        let f = tau().compose(&e24("x1*x3^2")).compose(&tau());
        let w = stab_x1_normal_form(&f).unwrap();
        assert_eq!(tags(&w), [AmalgamFactor::K1, AmalgamFactor::H2, AmalgamFactor::K1]);
        assert!(w.is_alternating());
        assert_eq!(w.evaluate(), f);
    }

    #[test]
    fn long_alternating_products_round_trip() {
        let d = Mat4::diag([Q::from_i64(2), Q::one(), Q::one(), Q::new(1, 2)]);
        let k = TameWord::new(vec![Factor::Orth(d), Factor::Orth(Mat4::tau())]).evaluate();
        let f = e24("x1*x3^2 - x3")
            .compose(&k)
            .compose(&e24("3*x3^3 + x1"))
            .compose(&tau())
            .compose(&e24("x1^2*x3"));
        let w = stab_x1_normal_form(&f).unwrap();
        assert_eq!(w.evaluate(), f);
        assert!(w.is_alternating());
        assert_eq!(w.len(), 5);
    }

    #[test]
    fn first_component_must_be_a_multiple_of_x1() {
        let err = stab_x1_normal_form(&TameAuto::<Q>::from_linear(&crate::fixtures::sigma()).unwrap()).unwrap_err();
        assert!(matches!(err, DomainError::NotInSubgroup(_)));
    }
}
