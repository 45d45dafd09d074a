//! Conjugating finite groups to linear ones by averaging.
//!
//! Let `G = M ⋊ L` be a group of polynomial maps with `L` linear and `M`
//! closed under averages, and let `φ: G → L` be the projection. For a finite
//! `Γ ⊂ G` the mean `m` of the maps `φ(g)⁻¹ ∘ g`, `g ∈ Γ`, lies in `M` and
//! satisfies `m ∘ f = φ(f) ∘ m` for every `f ∈ Γ`, so `m Γ m⁻¹ = φ(Γ)`.
//!
//! Three instances are provided: the stabilizer of `[x1, x3]`
//! (`E24 ⋊ GL2`), the two factors `K1`, `H2` of the stabilizer of `[x1]`,
//! and triangular automorphisms of `C^3`.

use crate::error::DomainError;
use crate::field::Field;
use crate::orth::Mat4;
use crate::poly::{Exponent4, Poly};
use crate::tame::{ElementaryAuto, Family, TameAuto};

use super::group::{compose_maps, identity_map, FiniteSubgroup, PolyMap, Triangular, TriangularGroup};
use super::normal_form::{in_h2, in_k1};

/// A conjugator `m` with the linear images `m ∘ f ∘ m⁻¹`.
#[derive(Clone, Debug)]
pub struct Linearization<F: Field> {
    pub conjugator: TameAuto<F>,
    pub conjugator_inverse: TameAuto<F>,
    /// `m ∘ f ∘ m⁻¹` for every element `f`, in the order of the group.
    pub images: Vec<Mat4<F>>,
}

/// Which vertex of the standard square the group was found to fix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerCase {
    /// `[id]`: the group is already linear.
    Identity,
    /// `[x1, x3]`.
    X1X3,
    /// `[x1]`, with the group inside `K1`.
    X1InK1,
    /// `[x1]`, with the group inside `H2`.
    X1InH2,
}

/// Average `φ(g)⁻¹ ∘ g` over the group and check `m ∘ f = φ(f) ∘ m`.
fn mean_trick<F: Field>(
    elements: &[PolyMap<F>],
    phi: impl Fn(&PolyMap<F>) -> Result<Mat4<F>, DomainError>,
) -> Result<(PolyMap<F>, Vec<Mat4<F>>), DomainError> {
    let mut sum: PolyMap<F> = std::array::from_fn(|_| Poly::zero());
    let mut linear = Vec::with_capacity(elements.len());
    for g in elements {
        let l = phi(g)?;
        let li = l.inverse().ok_or_else(|| DomainError::NotInSubgroup("singular linear part".into()))?;
        let u = compose_maps(&li.components(), g);
        for (s, c) in sum.iter_mut().zip(u.iter()) {
            *s = s.add(c);
        }
        linear.push(l);
    }
    let n_inv = F::from_i64(elements.len() as i64).inv().expect("groups are nonempty");
    let m = sum.map(|p| p.scale(&n_inv));
    for (f, l) in elements.iter().zip(&linear) {
        if compose_maps(&m, f) != compose_maps(&l.components(), &m) {
            return Err(DomainError::NotInSubgroup("the averaged map does not intertwine the group".into()));
        }
    }
    Ok((m, linear))
}

/// Inverse of a unipotent triangular map: `m_v - x_v` only involves the
/// variables listed after `v` in `order`.
fn unipotent_inverse<F: Field>(m: &PolyMap<F>, order: [usize; 4]) -> Result<PolyMap<F>, DomainError> {
    let mut inv = identity_map();
    for &v in order.iter().rev() {
        let shift = m[v - 1].sub(&Poly::x(v));
        inv[v - 1] = Poly::x(v).sub(&shift.substitute(&inv));
    }
    if compose_maps(m, &inv) != identity_map() {
        return Err(DomainError::NotInSubgroup("averaged map is not unipotent triangular".into()));
    }
    Ok(inv)
}

fn coeff<F: Field>(p: &Poly<F>, var: usize) -> F {
    p.coeff(&Exponent4::var(var - 1))
}

/// The orthogonal map acting by `A` on `(x1, x3)`; the `(x2, x4)` block
/// is then forced by the quadric.
pub fn gl2_element<F: Field>(a: &[[F; 2]; 2]) -> Option<Mat4<F>> {
    let [[a11, a12], [a21, a22]] = a;
    let det_inv = a11.mul(a22).sub(&a12.mul(a21)).inv()?;
    // (p q; r s) = A⁻¹; the (x2, x4) block is (s -q; -r p).
    let (p, q, r, s) = (a22.mul(&det_inv), a12.neg().mul(&det_inv), a21.neg().mul(&det_inv), a11.mul(&det_inv));
    let z = F::zero;
    Some(Mat4([
        [a11.clone(), z(), a12.clone(), z()],
        [z(), s, z(), q.neg()],
        [a21.clone(), z(), a22.clone(), z()],
        [z(), r.neg(), z(), p],
    ]))
}

/// The linear part `φ(g)` of an element of `Stab([x1, x3]) = E24 ⋊ GL2`,
/// checking that `φ(g)⁻¹ ∘ g` is elementary of type `E24`.
fn x1x3_linear_part<F: Field>(g: &PolyMap<F>) -> Result<Mat4<F>, DomainError> {
    let outside = || DomainError::NotInSubgroup(format!("({}, {}, {}, {}) does not fix [x1, x3]", g[0], g[1], g[2], g[3]));
    for c in [&g[0], &g[2]] {
        if !c.is_linear_form() || !c.uses_only(&[1, 3]) {
            return Err(outside());
        }
    }
    let a = [[coeff(&g[0], 1), coeff(&g[0], 3)], [coeff(&g[2], 1), coeff(&g[2], 3)]];
    let l = gl2_element(&a).ok_or_else(outside)?;
    let n = compose_maps(&l.inverse().ok_or_else(outside)?.components(), g);
    let shift = n[1].sub(&Poly::x(2)).div_exact(&Poly::x(1)).ok_or_else(outside)?;
    let e = ElementaryAuto::new(Family::E24, shift).map_err(|_| outside())?;
    if e.to_auto().components() != &n {
        return Err(outside());
    }
    Ok(l)
}

fn lift<F: Field>(m: &PolyMap<F>) -> Result<TameAuto<F>, DomainError> {
    let f4 = Poly::q()
        .add(&m[1].mul(&m[2]))
        .div_exact(&m[0])
        .ok_or_else(|| DomainError::NotInSubgroup("no fourth component completes the map".into()))?;
    TameAuto::new([m[0].clone(), m[1].clone(), m[2].clone(), f4])
}

fn verified<F: Field>(
    group: &FiniteSubgroup<F>,
    m: TameAuto<F>,
    m_inv: TameAuto<F>,
    linear: Vec<Mat4<F>>,
) -> Result<Linearization<F>, DomainError> {
    if m.compose(&m_inv) != TameAuto::identity() {
        return Err(DomainError::NotInSubgroup("conjugator inverse check failed".into()));
    }
    for (f, l) in group.elements().iter().zip(&linear) {
        if m.compose(f).compose(&m_inv).components() != &l.components() {
            return Err(DomainError::NotInSubgroup(format!("conjugate of {f} is not linear")));
        }
    }
    Ok(Linearization { conjugator: m, conjugator_inverse: m_inv, images: linear })
}

/// Conjugate a finite subgroup of `Stab([x1, x3]) = E24 ⋊ GL2` into `GL2`.
///
/// The conjugator is the elementary map `E24(P̄)` where `P̄` is the mean of
/// the elementary parts of the elements.
pub fn mean_linearize<F: Field>(group: &FiniteSubgroup<F>) -> Result<Linearization<F>, DomainError> {
    let maps: Vec<PolyMap<F>> = group.elements().iter().map(|f| f.components().clone()).collect();
    let (m, linear) = mean_trick(&maps, x1x3_linear_part)?;
    let m_inv = unipotent_inverse(&m, [2, 4, 1, 3])?;
    verified(group, TameAuto::new(m)?, TameAuto::new(m_inv)?, linear)
}

/// `(a x1, b22 x2 + b23 x3, b32 x2 + b33 x3)`: the linear part of an element
/// of `K1` or `H2`, with the fourth component forced by the quadric.
fn x1_linear_part<F: Field>(g: &PolyMap<F>) -> Result<Mat4<F>, DomainError> {
    let z = F::zero;
    let a = coeff(&g[0], 1);
    let (b22, b23, b32, b33) = (coeff(&g[1], 2), coeff(&g[1], 3), coeff(&g[2], 2), coeff(&g[2], 3));
    let l = [
        Poly::x(1).scale(&a),
        Poly::linear(&[z(), b22, b23, z()]),
        Poly::linear(&[z(), b32, b33, z()]),
        Poly::x(4),
    ];
    let lifted = lift(&l)?;
    Mat4::from_components(lifted.components())
}

/// Conjugate a finite subgroup of `K1` or of `H2` (inside `Stab([x1])`)
/// into the linear maps, averaging in the first three coordinates.
pub fn linearize_stab_x1<F: Field>(group: &FiniteSubgroup<F>) -> Result<(StabilizerCase, Linearization<F>), DomainError> {
    let case = if group.elements().iter().all(|f| in_k1(f).is_some()) {
        StabilizerCase::X1InK1
    } else if group.elements().iter().all(|f| in_h2(f).is_some()) {
        StabilizerCase::X1InH2
    } else {
        return Err(DomainError::NotInSubgroup("the group lies neither in K1 nor in H2".into()));
    };
    let maps: Vec<PolyMap<F>> = group
        .elements()
        .iter()
        .map(|f| {
            let c = f.components();
            [c[0].clone(), c[1].clone(), c[2].clone(), Poly::x(4)]
        })
        .collect();
    let (m, _) = mean_trick(&maps, |g| x1_linear_part(g).map(|l| {
        let mut rows = l.0.clone();
        rows[3] = [F::zero(), F::zero(), F::zero(), F::one()];
        Mat4(rows)
    }))?;
    let m_inv = unipotent_inverse(&m, [2, 3, 1, 4])?;
    let linear = maps.iter().map(x1_linear_part).collect::<Result<Vec<_>, _>>()?;
    Ok((case, verified(group, lift(&m)?, lift(&m_inv)?, linear)?))
}

/// Linearize a finite group fixing `[id]`, `[x1, x3]` or `[x1]`.
pub fn linearize<F: Field>(group: &FiniteSubgroup<F>) -> Result<(StabilizerCase, Linearization<F>), DomainError> {
    if group.elements().iter().all(TameAuto::is_linear) {
        let images = group.elements().iter().map(|f| f.as_linear().expect("linear")).collect();
        let id = TameAuto::identity();
        return Ok((StabilizerCase::Identity, Linearization { conjugator: id.clone(), conjugator_inverse: id, images }));
    }
    let maps: Vec<PolyMap<F>> = group.elements().iter().map(|f| f.components().clone()).collect();
    if maps.iter().all(|g| x1x3_linear_part(g).is_ok()) {
        return Ok((StabilizerCase::X1X3, mean_linearize(group)?));
    }
    linearize_stab_x1(group)
}

/// Diagonal coefficients with the conjugator of a triangular group.
#[derive(Clone, Debug)]
pub struct TriangularDiagonalization<F: Field> {
    /// Unipotent triangular `u` with `u ∘ f ∘ u⁻¹` diagonal for every `f`.
    pub conjugator: Triangular<F>,
    pub conjugator_inverse: Triangular<F>,
    pub diagonals: Vec<[F; 3]>,
}

/// Diagonalize a finite group of triangular automorphisms of `C^3`.
pub fn diagonalize_triangular<F: Field>(group: &TriangularGroup<F>) -> Result<TriangularDiagonalization<F>, DomainError> {
    let maps: Vec<PolyMap<F>> = group.elements().iter().map(Triangular::to_map).collect();
    let (m, _) = mean_trick(&maps, |g| {
        let t = Triangular::from_map(g.clone());
        let [a, b, c] = t.diagonal_part();
        Ok(Mat4::diag([a, b, c, F::one()]))
    })?;
    let m_inv = unipotent_inverse(&m, [1, 2, 3, 4])?;
    let u = Triangular::from_map(m);
    let u_inv = Triangular::from_map(m_inv);
    let mut diagonals = Vec::with_capacity(group.order());
    for f in group.elements() {
        let c = u.compose(f).compose(&u_inv);
        if !c.is_diagonal() {
            return Err(DomainError::NotInSubgroup(format!("conjugate {:?} is not diagonal", c.components())));
        }
        diagonals.push(c.diagonal_part());
    }
    Ok(TriangularDiagonalization { conjugator: u, conjugator_inverse: u_inv, diagonals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::tame::{Factor, TameWord};

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    fn gl2(a: [[i64; 2]; 2]) -> Mat4<Q> {
        gl2_element(&a.map(|r| r.map(Q::from_i64))).unwrap()
    }

    fn elem(family: Family, s: &str) -> Factor<Q> {
        Factor::Elem(ElementaryAuto::new(family, p(s)).unwrap())
    }

    fn conjugated(l: &Mat4<Q>, shift: &str) -> TameWord<Q> {
        let m = ElementaryAuto::new(Family::E24, p(shift)).unwrap();
        TameWord::new(vec![Factor::Elem(m.clone()), Factor::Orth(l.clone()), Factor::Elem(m.inverse())])
    }

    #[test]
    fn trivial_group_needs_no_conjugation() {
        let g = FiniteSubgroup::<Q>::new(vec![TameWord::empty()]).unwrap();
        let lin = mean_linearize(&g).unwrap();
        assert_eq!(lin.conjugator, TameAuto::identity());
    }

    #[test]
    fn linear_groups_average_to_the_identity() {
        let rot = gl2([[0, -1], [1, -1]]);
        let g = FiniteSubgroup::generate(&[TameWord::single(Factor::Orth(rot))], 10).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(mean_linearize(&g).unwrap().conjugator, TameAuto::identity());
    }

    #[test]
    fn conjugated_involution_is_linearized() {
        let l = gl2([[-1, 0], [0, 1]]);
        let g = FiniteSubgroup::generate(&[conjugated(&l, "x3")], 10).unwrap();
        assert_eq!(g.order(), 2);
        assert!(!g.elements()[1].is_linear());
        let lin = mean_linearize(&g).unwrap();
        assert_eq!(lin.images[1], l);
        let (case, _) = linearize(&g).unwrap();
        assert_eq!(case, StabilizerCase::X1X3);
    }

    #[test]
    fn elements_outside_the_stabilizer_are_rejected() {
        let g = FiniteSubgroup::<Q>::new(vec![TameWord::empty(), TameWord::single(Factor::Orth(Mat4::tau()))]).unwrap();
        assert!(matches!(mean_linearize(&g), Err(DomainError::NotInSubgroup(_))));
    }

    #[test]
    fn groups_inside_h2_are_linearized() {
        let h = Factor::Orth(Mat4::diag([1, -1, -1, 1].map(Q::from_i64)));
        let w = TameWord::new(vec![
            elem(Family::E34, "x1"),
            elem(Family::E24, "x3^2"),
            h,
            elem(Family::E24, "-x3^2"),
            elem(Family::E34, "-x1"),
        ]);
        let g = FiniteSubgroup::generate(&[w], 10).unwrap();
        assert_eq!(g.order(), 2);
        assert!(in_h2(&g.elements()[1]).is_some());
        let (case, lin) = linearize(&g).unwrap();
        assert_eq!(case, StabilizerCase::X1InH2);
        assert_eq!(lin.images[1], Mat4::diag([1, -1, -1, 1].map(Q::from_i64)));
    }

    #[test]
    fn groups_inside_k1_are_linearized() {
        let w = TameWord::new(vec![
            elem(Family::E24, "x1"),
            elem(Family::E34, "2*x1"),
            Factor::Orth(Mat4::tau()),
            elem(Family::E34, "-2*x1"),
            elem(Family::E24, "-x1"),
        ]);
        let g = FiniteSubgroup::generate(&[w], 10).unwrap();
        assert!(in_k1(&g.elements()[1]).is_some() && in_h2(&g.elements()[1]).is_none());
        let (case, lin) = linearize(&g).unwrap();
        assert_eq!(case, StabilizerCase::X1InK1);
        assert_eq!(lin.images[1], Mat4::tau());
    }

    #[test]
    fn triangular_involution_is_diagonalized() {
        let d = Triangular::<Q>::diagonal([Q::from_i64(-1), Q::one(), Q::one()]);
        let u = Triangular::new([p("x1 + x2^2 + x3"), p("x2 + x3^2"), p("x3")]).unwrap();
        let ui = Triangular::new([p("x1 - (x2 - x3^2)^2 - x3"), p("x2 - x3^2"), p("x3")]).unwrap();
        assert_eq!(u.compose(&ui), Triangular::identity());
        let g = TriangularGroup::generate(&[ui.compose(&d).compose(&u)], 4).unwrap();
        let r = diagonalize_triangular(&g).unwrap();
        assert!(r.diagonals.contains(&[Q::from_i64(-1), Q::one(), Q::one()]));
        assert_eq!(r.conjugator.compose(&r.conjugator_inverse), Triangular::identity());
    }

    #[test]
    fn translation_only_groups_are_already_diagonal() {
        let g = TriangularGroup::generate(&[Triangular::new([p("-x1"), p("x2"), p("x3")]).unwrap()], 4).unwrap();
        let r = diagonalize_triangular(&g).unwrap();
        assert_eq!(r.conjugator, Triangular::identity());
    }
}
