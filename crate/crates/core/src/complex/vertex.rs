//! Canonical forms of the three vertex types and the group action on them.

use std::fmt;

use crate::error::DomainError;
use crate::field::Field;
use crate::linalg;
use crate::orth::{is_orthogonal, Mat4, OrthVerdict};
use crate::poly::Poly;
use crate::tame::{TameAuto, TameWord};

/// `[p] = C*·p`, stored with leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexT1<F: Field> {
    p: Poly<F>,
}

/// `[p, q] = GL2·(p, q)`, stored as the reduced echelon basis of the span.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexT2<F: Field> {
    basis: [Poly<F>; 2],
}

/// `[f] = O4·f`. There is no canonical representative; `key` is the
/// echelon basis of the span of the components, which is constant on the
/// orbit and serves as a hash bucket. Equality is [`vertex_eq_t3`].
#[derive(Clone, Debug)]
pub struct VertexT3<F: Field> {
    rep: TameAuto<F>,
    key: Vec<Poly<F>>,
}

/// A vertex of any type.
#[derive(Clone, Debug)]
pub enum Vertex<F: Field> {
    T1(VertexT1<F>),
    T2(VertexT2<F>),
    T3(VertexT3<F>),
}

/// Hashable data that agrees on equal vertices. For types 1 and 2 equal
/// keys also mean equal vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum VertexKey<F: Field> {
    T1(Poly<F>),
    T2([Poly<F>; 2]),
    T3(Vec<Poly<F>>),
}

pub fn canonical_t1<F: Field>(p: &Poly<F>) -> Result<VertexT1<F>, DomainError> {
    let (_, c) = p.leading_term().ok_or(DomainError::ZeroLeadingPart)?;
    let inv = c.inv().expect("leading coefficients are nonzero");
    Ok(VertexT1 { p: p.scale(&inv) })
}

pub fn canonical_t2<F: Field>(p: &Poly<F>, q: &Poly<F>) -> Result<VertexT2<F>, DomainError> {
    let basis = linalg::echelon_basis(&[p, q]);
    let [a, b]: [Poly<F>; 2] = basis.try_into().map_err(|_| DomainError::Dependent)?;
    Ok(VertexT2 { basis: [a, b] })
}

pub fn canonical_t3<F: Field>(f: &TameAuto<F>) -> VertexT3<F> {
    let c = f.components();
    VertexT3 { rep: f.clone(), key: linalg::echelon_basis(&[&c[0], &c[1], &c[2], &c[3]]) }
}

/// The matrix `M` with `g = M ∘ f`, when every `g_i` lies in the span of
/// the components of `f`.
pub fn linear_relation<F: Field>(f: &TameAuto<F>, g: &TameAuto<F>) -> Option<Mat4<F>> {
    let basis: Vec<&Poly<F>> = f.components().iter().collect();
    let targets: Vec<&Poly<F>> = g.components().iter().collect();
    let rows = linalg::express_in_span(&targets, &basis)?;
    let mut m = Mat4::identity();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, c) in row.into_iter().enumerate() {
            m.0[i][j] = c;
        }
    }
    Some(m)
}

/// `[f] = [g]`: some orthogonal `M` satisfies `g = M ∘ f`.
pub fn vertex_eq_t3<F: Field>(f: &TameAuto<F>, g: &TameAuto<F>) -> bool {
    linear_relation(f, g).is_some_and(|m| is_orthogonal(&m) != OrthVerdict::No)
}

impl<F: Field> VertexT1<F> {
    pub fn poly(&self) -> &Poly<F> {
        &self.p
    }
}

impl<F: Field> VertexT2<F> {
    pub fn basis(&self) -> &[Poly<F>; 2] {
        &self.basis
    }
}

impl<F: Field> VertexT3<F> {
    pub fn rep(&self) -> &TameAuto<F> {
        &self.rep
    }

    pub fn key(&self) -> &[Poly<F>] {
        &self.key
    }
}

impl<F: Field> PartialEq for VertexT3<F> {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && vertex_eq_t3(&self.rep, &other.rep)
    }
}

impl<F: Field> Eq for VertexT3<F> {}

impl<F: Field> PartialEq for Vertex<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Vertex::T1(a), Vertex::T1(b)) => a == b,
            (Vertex::T2(a), Vertex::T2(b)) => a == b,
            (Vertex::T3(a), Vertex::T3(b)) => a == b,
            _ => false,
        }
    }
}

impl<F: Field> Eq for Vertex<F> {}

impl<F: Field> Vertex<F> {
    /// 1, 2 or 3.
    pub fn kind(&self) -> u8 {
        match self {
            Vertex::T1(_) => 1,
            Vertex::T2(_) => 2,
            Vertex::T3(_) => 3,
        }
    }

    pub fn key(&self) -> VertexKey<F> {
        match self {
            Vertex::T1(v) => VertexKey::T1(v.p.clone()),
            Vertex::T2(v) => VertexKey::T2(v.basis.clone()),
            Vertex::T3(v) => VertexKey::T3(v.key.clone()),
        }
    }

    pub fn t1(p: &Poly<F>) -> Result<Self, DomainError> {
        canonical_t1(p).map(Vertex::T1)
    }

    pub fn t2(p: &Poly<F>, q: &Poly<F>) -> Result<Self, DomainError> {
        canonical_t2(p, q).map(Vertex::T2)
    }

    pub fn t3(f: &TameAuto<F>) -> Self {
        Vertex::T3(canonical_t3(f))
    }

    /// `g·v` where `g_inv` is the inverse of `g`: every polynomial `p` of the
    /// vertex becomes `p ∘ g⁻¹`.
    pub fn pushed_by_inverse(&self, g_inv: &TameAuto<F>) -> Self {
        let sub = |p: &Poly<F>| p.substitute(g_inv.components());
        match self {
            Vertex::T1(v) => Vertex::t1(&sub(&v.p)).expect("automorphisms keep polynomials nonzero"),
            Vertex::T2(v) => {
                Vertex::t2(&sub(&v.basis[0]), &sub(&v.basis[1])).expect("automorphisms keep pairs independent")
            }
            Vertex::T3(v) => Vertex::t3(&v.rep.compose(g_inv)),
        }
    }
}

/// `w·v`: compose every polynomial of `v` with the inverse of `w`.
pub fn act<F: Field>(w: &TameWord<F>, v: &Vertex<F>) -> Vertex<F> {
    v.pushed_by_inverse(&w.invert().evaluate())
}

impl<F: Field> fmt::Display for Vertex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::T1(v) => write!(f, "[{}]", v.p),
            Vertex::T2(v) => write!(f, "[{}, {}]", v.basis[0], v.basis[1]),
            Vertex::T3(v) => {
                let c = v.rep.components();
                write!(f, "[{} {} / {} {}]", c[0], c[1], c[2], c[3])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures;
    use crate::tame::{ElementaryAuto, Factor, Family};

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn type_one_and_two_canonical_forms() {
        assert_eq!(canonical_t1(&p("3*x1")).unwrap().poly(), &p("x1"));
        assert_eq!(canonical_t1(&p("-2*x1^2 + x3")).unwrap(), canonical_t1(&p("x1^2 - 1/2*x3")).unwrap());
        assert!(canonical_t1(&Poly::<Q>::zero()).is_err());
        assert_eq!(canonical_t2(&p("x1 + x2"), &p("x2")).unwrap().basis(), &[p("x1"), p("x2")]);
        let (f1, f2) = (p("x1^2 + x3"), p("x2*x4 - 1"));
        let mixed = canonical_t2(&f2.scale(&Q::from_i64(2)), &(&f1 - &f2)).unwrap();
        assert_eq!(mixed, canonical_t2(&f1, &f2).unwrap());
        assert!(canonical_t2(&f1, &f1.scale(&Q::from_i64(3))).is_err());
    }

    #[test]
    fn type_three_equality() {
        let id = TameAuto::<Q>::identity();
        let tau = TameAuto::from_linear(&Mat4::tau()).unwrap();
        assert!(vertex_eq_t3(&id, &id));
        assert!(vertex_eq_t3(&id, &tau));
        let e = ElementaryAuto::new(Family::E24, p("x1")).unwrap().to_auto();
        assert!(!vertex_eq_t3(&id, &e));
        // A diagonal orthogonal rescaling.
        let stretched = TameAuto::new([p("2*x1"), p("x2"), p("x3"), p("1/2*x4")]).unwrap();
        assert!(vertex_eq_t3(&id, &stretched));
    }

    #[test]
    fn example_g_moves_x1_to_x4() {
        let g = fixtures::example_g::<Q>();
        let w = crate::tame::reduce(&g, &Default::default()).certified_word().unwrap();
        assert_eq!(act(&w, &Vertex::t1(&p("x1")).unwrap()), Vertex::t1(&p("x4")).unwrap());
        let id = TameWord::<Q>::empty();
        let v = Vertex::t2(&p("x1"), &p("x2 + x1^2")).unwrap();
        assert_eq!(act(&id, &v), v);
        assert_eq!(act(&w, &act(&w.invert(), &v)), v);
        let tau = TameWord::single(Factor::Orth(Mat4::<Q>::tau()));
        assert_eq!(act(&tau, &Vertex::t3(&TameAuto::identity())), Vertex::t3(&TameAuto::identity()));
    }
}
