//! Finite groups of automorphisms, with closure verified on construction.

use std::collections::HashSet;
use std::hash::Hash;

use crate::error::DomainError;
use crate::field::Field;
use crate::poly::Poly;
use crate::tame::{TameAuto, TameWord};

/// A polynomial map of `C^4` given by its components.
pub type PolyMap<F> = [Poly<F>; 4];

/// `f ∘ g` for plain polynomial maps.
pub fn compose_maps<F: Field>(f: &PolyMap<F>, g: &PolyMap<F>) -> PolyMap<F> {
    std::array::from_fn(|i| f[i].substitute(g))
}

pub(crate) fn identity_map<F: Field>() -> PolyMap<F> {
    std::array::from_fn(|i| Poly::x(i + 1))
}

/// Check that a finite list is a group: distinct elements, contains the
/// identity, closed under composition. Closure under inverses follows,
/// since every element of a finite monoid of bijections has finite order.
fn verify_group<T: Clone + Eq + Hash>(
    elements: &[T],
    identity: &T,
    mul: impl Fn(&T, &T) -> T,
) -> Result<(), DomainError> {
    let set: HashSet<&T> = elements.iter().collect();
    if set.len() != elements.len() {
        return Err(DomainError::NotClosed("repeated element".into()));
    }
    if !set.contains(identity) {
        return Err(DomainError::NotClosed("identity missing".into()));
    }
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if !set.contains(&mul(a, b)) {
                return Err(DomainError::NotClosed(format!("product of elements {i} and {j} is missing")));
            }
        }
    }
    Ok(())
}

/// Breadth-first closure of `gens` under right multiplication by the
/// generators. Fails once more than `limit` elements appear.
fn close<T: Clone + Eq + Hash>(
    gens: &[T],
    identity: T,
    mul: impl Fn(&T, &T) -> T,
    limit: usize,
) -> Result<Vec<T>, DomainError> {
    let mut seen: HashSet<T> = HashSet::from([identity.clone()]);
    let mut out = vec![identity];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let p = mul(&out[i], g);
            if seen.insert(p.clone()) {
                if out.len() == limit {
                    return Err(DomainError::NotClosed(format!("more than {limit} elements generated")));
                }
                out.push(p);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// A finite subgroup of the tame group, each element kept both as a word
/// and as its evaluated quadruple.
#[derive(Clone, Debug)]
pub struct FiniteSubgroup<F: Field> {
    words: Vec<TameWord<F>>,
    elements: Vec<TameAuto<F>>,
}

#[derive(Clone, Debug)]
struct Tagged<F: Field>(TameWord<F>, TameAuto<F>);

impl<F: Field> PartialEq for Tagged<F> {
    fn eq(&self, other: &Self) -> bool {
        self.1 == other.1
    }
}

impl<F: Field> Eq for Tagged<F> {}

impl<F: Field> Hash for Tagged<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.1.hash(state)
    }
}

impl<F: Field> FiniteSubgroup<F> {
    /// Take the listed elements and verify that they form a group.
    pub fn new(words: Vec<TameWord<F>>) -> Result<Self, DomainError> {
        let elements: Vec<TameAuto<F>> = words.iter().map(TameWord::evaluate).collect();
        verify_group(&elements, &TameAuto::identity(), TameAuto::compose)?;
        Ok(FiniteSubgroup { words, elements })
    }

    /// The group generated by `gens`, failing beyond `limit` elements.
    pub fn generate(gens: &[TameWord<F>], limit: usize) -> Result<Self, DomainError> {
        let tagged: Vec<Tagged<F>> = gens.iter().map(|w| Tagged(w.clone(), w.evaluate())).collect();
        let id = Tagged(TameWord::empty(), TameAuto::identity());
        let all = close(&tagged, id, |a, b| Tagged(a.0.then_after(&b.0), a.1.compose(&b.1)), limit)?;
        let (words, elements) = all.into_iter().map(|t| (t.0, t.1)).unzip();
        Ok(FiniteSubgroup { words, elements })
    }

    pub fn words(&self) -> &[TameWord<F>] {
        &self.words
    }

    pub fn elements(&self) -> &[TameAuto<F>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A triangular automorphism of `C^3`: `f_i = a_i x_i + P_i(x_(i+1), …, x_3)`
/// with `a_i ≠ 0`. The variable `x4` is unused.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Triangular<F: Field> {
    comps: [Poly<F>; 3],
}

impl<F: Field> Triangular<F> {
    pub fn new(comps: [Poly<F>; 3]) -> Result<Self, DomainError> {
        for (i, f) in comps.iter().enumerate() {
            let a = f.coeff(&crate::poly::Exponent4::var(i));
            let rest = f.sub(&Poly::x(i + 1).scale(&a));
            let later: Vec<usize> = (i + 2..=3).collect();
            if a.is_zero() || !rest.uses_only(&later) {
                return Err(DomainError::NotInSubgroup(format!("component {} = {f} is not triangular", i + 1)));
            }
        }
        Ok(Triangular { comps })
    }

    pub fn identity() -> Self {
        Triangular { comps: std::array::from_fn(|i| Poly::x(i + 1)) }
    }

    pub fn diagonal(a: [F; 3]) -> Self {
        let mut it = a.into_iter();
        Triangular { comps: std::array::from_fn(|i| Poly::x(i + 1).scale(&it.next().expect("three entries"))) }
    }

    pub fn components(&self) -> &[Poly<F>; 3] {
        &self.comps
    }

    /// The diagonal coefficients `a_i`.
    pub fn diagonal_part(&self) -> [F; 3] {
        std::array::from_fn(|i| self.comps[i].coeff(&crate::poly::Exponent4::var(i)))
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.diagonal_part();
        (0..3).all(|i| self.comps[i] == Poly::x(i + 1).scale(&d[i]))
    }

    pub(crate) fn to_map(&self) -> PolyMap<F> {
        let [a, b, c] = self.comps.clone();
        [a, b, c, Poly::x(4)]
    }

    pub(crate) fn from_map(m: PolyMap<F>) -> Self {
        let [a, b, c, _] = m;
        Triangular { comps: [a, b, c] }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Triangular<F>) -> Triangular<F> {
        Triangular::from_map(compose_maps(&self.to_map(), &g.to_map()))
    }
}

/// A finite group of triangular automorphisms of `C^3`.
#[derive(Clone, Debug)]
pub struct TriangularGroup<F: Field> {
    elements: Vec<Triangular<F>>,
}

impl<F: Field> TriangularGroup<F> {
    pub fn new(elements: Vec<Triangular<F>>) -> Result<Self, DomainError> {
        verify_group(&elements, &Triangular::identity(), Triangular::compose)?;
        Ok(TriangularGroup { elements })
    }

    pub fn generate(gens: &[Triangular<F>], limit: usize) -> Result<Self, DomainError> {
        let elements = close(gens, Triangular::identity(), Triangular::compose, limit)?;
        Ok(TriangularGroup { elements })
    }

    pub fn elements(&self) -> &[Triangular<F>] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}
