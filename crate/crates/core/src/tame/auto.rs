//! Quadric-preserving quadruples, elementary maps and words.

use std::fmt;

use crate::error::DomainError;
use crate::field::Field;
use crate::orth::{is_orthogonal, Mat4, OrthVerdict};
use crate::poly::{identity_components, Poly, WeightVec};

/// A polynomial map `(f1, f2, f3, f4)` with `f1*f4 - f2*f3 = q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TameAuto<F: Field> {
    comps: [Poly<F>; 4],
}

impl<F: Field> TameAuto<F> {
    /// Validate the quadric invariant.
    pub fn new(comps: [Poly<F>; 4]) -> Result<Self, DomainError> {
        let residual = quadric_residual(&comps);
        if !residual.is_zero() {
            return Err(DomainError::QuadricViolated(
                (&residual + &Poly::q()).to_string(),
            ));
        }
        Ok(TameAuto { comps })
    }

    /// Skip validation; callers guarantee the invariant by construction.
    pub(crate) fn from_trusted(comps: [Poly<F>; 4]) -> Self {
        debug_assert!(quadric_residual(&comps).is_zero());
        TameAuto { comps }
    }

    pub fn identity() -> Self {
        TameAuto { comps: identity_components() }
    }

    pub fn from_linear(m: &Mat4<F>) -> Result<Self, DomainError> {
        if is_orthogonal(m) == OrthVerdict::No {
            return Err(DomainError::NotOrthogonal);
        }
        Ok(TameAuto { comps: m.components() })
    }

    pub fn components(&self) -> &[Poly<F>; 4] {
        &self.comps
    }

    /// Component `f_i`, `i` in `1..=4`.
    pub fn f(&self, i: usize) -> &Poly<F> {
        &self.comps[i - 1]
    }

    pub fn into_components(self) -> [Poly<F>; 4] {
        self.comps
    }

    /// `self ∘ g`: substitute the components of `g` into those of `self`.
    pub fn compose(&self, g: &TameAuto<F>) -> TameAuto<F> {
        TameAuto::from_trusted(self.comps.clone().map(|c| c.substitute(&g.comps)))
    }

    /// Maximal weighted degree of the components.
    pub fn auto_degree(&self) -> WeightVec {
        self.comps.iter().map(Poly::wdeg).max().unwrap_or(WeightVec::MinusInfinity)
    }

    pub fn is_linear(&self) -> bool {
        self.comps.iter().all(Poly::is_linear_form)
    }

    /// The matrix of a linear automorphism.
    pub fn as_linear(&self) -> Option<Mat4<F>> {
        if !self.is_linear() {
            return None;
        }
        Mat4::from_components(&self.comps).ok()
    }

    /// Total number of stored terms, a rough size measure.
    pub fn term_count(&self) -> usize {
        self.comps.iter().map(Poly::len).sum()
    }
}

impl<F: Field> fmt::Display for TameAuto<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.comps;
        write!(f, "({}, {}, {}, {})", c[0], c[1], c[2], c[3])
    }
}

/// `f1*f4 - f2*f3 - q`.
pub fn quadric_residual<F: Field>(c: &[Poly<F>; 4]) -> Poly<F> {
    &(&(&c[0] * &c[3]) - &(&c[1] * &c[2])) - &Poly::q()
}

/// The four conjugates of the elementary group under the Klein group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    /// `(x1, x2 + x1 P(x1,x3), x3, x4 + x3 P(x1,x3))`.
    E24,
    /// `(x1 + x2 P(x2,x4), x2, x3 + x4 P(x2,x4), x4)`.
    E13,
    /// `(x1 + x3 P(x3,x4), x2 + x4 P(x3,x4), x3, x4)`.
    E12,
    /// `(x1, x2, x3 + x1 P(x1,x2), x4 + x2 P(x1,x2))`.
    E34,
}

/// How a family touches the components of `f` when composed on the left.
#[derive(Clone, Copy, Debug)]
pub struct FamilyRoles {
    /// Variables of `P`, 1-based.
    pub vars: (usize, usize),
    /// `(target, multiplier)`: `f_target += f_multiplier * P(...)`, twice.
    pub updates: [(usize, usize); 2],
}

impl Family {
    /// Search priority order.
    pub const ALL: [Family; 4] = [Family::E24, Family::E13, Family::E12, Family::E34];

    pub fn roles(self) -> FamilyRoles {
        match self {
            Family::E24 => FamilyRoles { vars: (1, 3), updates: [(2, 1), (4, 3)] },
            Family::E13 => FamilyRoles { vars: (2, 4), updates: [(1, 2), (3, 4)] },
            Family::E12 => FamilyRoles { vars: (3, 4), updates: [(1, 3), (2, 4)] },
            Family::E34 => FamilyRoles { vars: (1, 2), updates: [(3, 1), (4, 2)] },
        }
    }

    /// The indices `(r, u, v)`: the reduced component `r` is shifted by
    /// `u * P(u, v)`.
    pub fn reduction_roles(self) -> (usize, usize, usize) {
        let r = self.roles();
        (r.updates[0].0, r.vars.0, r.vars.1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::E24 => "E24",
            Family::E13 => "E13",
            Family::E12 => "E12",
            Family::E34 => "E34",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An elementary automorphism: a family tag and `P` in the family's two
/// variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementaryAuto<F: Field> {
    pub family: Family,
    pub p: Poly<F>,
}

fn var_list(vars: (usize, usize)) -> String {
    format!("x{}, x{}", vars.0, vars.1)
}

impl<F: Field> ElementaryAuto<F> {
    pub fn new(family: Family, p: Poly<F>) -> Result<Self, DomainError> {
        let (a, b) = family.roles().vars;
        if !p.uses_only(&[a, b]) {
            return Err(DomainError::WrongVariables(p.to_string(), var_list((a, b))));
        }
        Ok(ElementaryAuto { family, p })
    }

    /// Build from `P(X, Y)` written in `x1, x2`, mapping `x1` to the family's
    /// first variable and `x2` to its second.
    pub fn from_abstract(family: Family, p_xy: &Poly<F>) -> Result<Self, DomainError> {
        if !p_xy.uses_only(&[1, 2]) {
            return Err(DomainError::WrongVariables(p_xy.to_string(), var_list((1, 2))));
        }
        let (a, b) = family.roles().vars;
        let mut g: [Poly<F>; 4] = std::array::from_fn(|_| Poly::zero());
        g[0] = Poly::x(a);
        g[1] = Poly::x(b);
        Ok(ElementaryAuto { family, p: p_xy.substitute(&g) })
    }

    /// `P` rewritten in `x1, x2` (the inverse of [`ElementaryAuto::from_abstract`]).
    pub fn abstract_p(&self) -> Poly<F> {
        let (a, b) = self.family.roles().vars;
        let mut g: [Poly<F>; 4] = std::array::from_fn(|_| Poly::zero());
        g[a - 1] = Poly::x(1);
        g[b - 1] = Poly::x(2);
        self.p.substitute(&g)
    }

    pub fn inverse(&self) -> Self {
        ElementaryAuto { family: self.family, p: self.p.neg() }
    }

    /// `self ∘ f`, touching only two components.
    pub fn apply_left(&self, f: &TameAuto<F>) -> TameAuto<F> {
        let roles = self.family.roles();
        let mut g: [Poly<F>; 4] = std::array::from_fn(|_| Poly::zero());
        g[roles.vars.0 - 1] = f.f(roles.vars.0).clone();
        g[roles.vars.1 - 1] = f.f(roles.vars.1).clone();
        let pv = self.p.substitute(&g);
        let mut comps = f.components().clone();
        for (t, m) in roles.updates {
            comps[t - 1] = &comps[t - 1] + &(f.f(m) * &pv);
        }
        TameAuto::from_trusted(comps)
    }

    pub fn to_auto(&self) -> TameAuto<F> {
        self.apply_left(&TameAuto::identity())
    }
}

impl<F: Field> fmt::Display for ElementaryAuto<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.family, self.p)
    }
}

/// One letter of a [`TameWord`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Factor<F: Field> {
    Elem(ElementaryAuto<F>),
    Orth(Mat4<F>),
}

impl<F: Field> Factor<F> {
    pub fn inverse(&self) -> Self {
        match self {
            Factor::Elem(e) => Factor::Elem(e.inverse()),
            Factor::Orth(m) => Factor::Orth(m.inverse().expect("orthogonal matrices are invertible")),
        }
    }

    /// `self ∘ f`.
    pub fn apply_left(&self, f: &TameAuto<F>) -> TameAuto<F> {
        match self {
            Factor::Elem(e) => e.apply_left(f),
            Factor::Orth(m) => TameAuto::from_trusted(std::array::from_fn(|i| {
                (0..4).fold(Poly::zero(), |acc, j| &acc + &f.f(j + 1).scale(&m.0[i][j]))
            })),
        }
    }

    pub fn to_auto(&self) -> TameAuto<F> {
        self.apply_left(&TameAuto::identity())
    }
}

impl<F: Field> fmt::Display for Factor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Elem(e) => write!(f, "{e}"),
            Factor::Orth(m) => write!(f, "O{m}"),
        }
    }
}

/// A word `w1 ∘ w2 ∘ … ∘ wk`; the last factor acts first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TameWord<F: Field> {
    pub factors: Vec<Factor<F>>,
}

impl<F: Field> TameWord<F> {
    pub fn new(factors: Vec<Factor<F>>) -> Self {
        TameWord { factors }
    }

    pub fn empty() -> Self {
        TameWord { factors: Vec::new() }
    }

    pub fn single(f: Factor<F>) -> Self {
        TameWord { factors: vec![f] }
    }

    pub fn evaluate(&self) -> TameAuto<F> {
        self.factors
            .iter()
            .rev()
            .fold(TameAuto::identity(), |acc, fac| fac.apply_left(&acc))
    }

    pub fn invert(&self) -> Self {
        TameWord { factors: self.factors.iter().rev().map(Factor::inverse).collect() }
    }

    /// `self ∘ other` as words.
    pub fn then_after(&self, other: &TameWord<F>) -> TameWord<F> {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        TameWord { factors }
    }

    /// The word repeated `k` times.
    pub fn power(&self, k: usize) -> TameWord<F> {
        TameWord { factors: (0..k).flat_map(|_| self.factors.iter().cloned()).collect() }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl<F: Field> fmt::Display for TameWord<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ∘ "))
    }
}

/// The Klein four-group inside `O4`.
pub fn klein_group<F: Field>() -> [Mat4<F>; 4] {
    [
        Mat4::identity(),
        Mat4::from_i64([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]),
        Mat4::tau(),
        Mat4::from_i64([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn families_preserve_the_quadric() {
        for fam in Family::ALL {
            let (a, b) = fam.roles().vars;
            let pp = p(&format!("x{a}^2*x{b} - 3*x{b} + 1"));
            let e = ElementaryAuto::new(fam, pp).unwrap().to_auto();
            assert!(TameAuto::new(e.components().clone()).is_ok(), "{fam}");
        }
        assert!(ElementaryAuto::new(Family::E24, p("x2")).is_err());
    }

    #[test]
    fn same_family_composition_adds() {
        let e1 = ElementaryAuto::new(Family::E13, p("x2*x4")).unwrap();
        let e2 = ElementaryAuto::new(Family::E13, p("x4^3 - 1")).unwrap();
        let sum = ElementaryAuto::new(Family::E13, &e1.p + &e2.p).unwrap();
        assert_eq!(e1.to_auto().compose(&e2.to_auto()), sum.to_auto());
        assert_eq!(e1.to_auto().compose(&e1.inverse().to_auto()), TameAuto::identity());
    }

    #[test]
    fn tau_is_an_involution() {
        let t = TameAuto::<Q>::from_linear(&Mat4::tau()).unwrap();
        assert_eq!(t.compose(&t), TameAuto::identity());
    }

    #[test]
    fn words_evaluate_and_invert() {
        assert_eq!(TameWord::<Q>::empty().evaluate(), TameAuto::identity());
        let w = TameWord::new(vec![
            Factor::Elem(ElementaryAuto::new(Family::E24, p("x1^2 + x3")).unwrap()),
            Factor::Orth(Mat4::tau()),
            Factor::Elem(ElementaryAuto::new(Family::E34, p("x1*x2")).unwrap()),
        ]);
        let f = w.evaluate();
        let direct = w.factors[0].to_auto().compose(&w.factors[1].to_auto()).compose(&w.factors[2].to_auto());
        assert_eq!(f, direct);
        assert_eq!(w.invert().evaluate().compose(&f), TameAuto::identity());
    }

    #[test]
    fn abstract_p_round_trip() {
        for fam in Family::ALL {
            let e = ElementaryAuto::<Q>::from_abstract(fam, &p("x1^2*x2 + 2*x2")).unwrap();
            assert_eq!(e.abstract_p(), p("x1^2*x2 + 2*x2"));
        }
    }

    #[test]
    fn degrees_of_fixtures() {
        assert_eq!(TameAuto::<Q>::identity().auto_degree(), WeightVec::LINEAR);
        let e = ElementaryAuto::new(Family::E24, p("x1^2")).unwrap().to_auto();
        assert_eq!(e.auto_degree(), WeightVec::Finite([6, 3, 3, 0]));
        let bad = [p("x1"), p("x2"), p("x3"), p("x4 + 1")];
        assert!(matches!(TameAuto::new(bad), Err(DomainError::QuadricViolated(_))));
    }
}
