//! The orthogonal group `O4` of the quadric `q = x1*x4 - x2*x3`.
//!
//! Linear forms are coefficient arrays `[c1, c2, c3, c4]` meaning
//! `c1*x1 + c2*x2 + c3*x3 + c4*x4`. A [`Mat4`] is read by rows: row `i`
//! holds the coefficients of the component `f_i`, so the map is
//! `(f1, f2, f3, f4)`. A linear form `l` is moved by a matrix `g` as `l∘g`,
//! whose coefficient vector is `l * G`.

use std::fmt;

use crate::error::DomainError;
use crate::field::Field;
use crate::linalg;
use crate::poly::Poly;

/// Coefficients of a linear form on `x1..x4`.
pub type Lin<F> = [F; 4];

/// Exact 4×4 matrix; row `i` is the component `f_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat4<F: Field>(pub [[F; 4]; 4]);

/// Outcome of [`is_orthogonal`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrthVerdict {
    No,
    GeneralO4,
    SpecialSO4,
}

impl<F: Field> Mat4<F> {
    pub fn identity() -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| if i == j { F::one() } else { F::zero() })))
    }

    pub fn from_i64(rows: [[i64; 4]; 4]) -> Self {
        Mat4(rows.map(|r| r.map(F::from_i64)))
    }

    pub fn diag(d: [F; 4]) -> Self {
        let mut m = Mat4::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    fn zero() -> Self {
        Mat4(std::array::from_fn(|_| std::array::from_fn(|_| F::zero())))
    }

    /// The transposition `τ = (x1, x3, x2, x4)`.
    pub fn tau() -> Self {
        Mat4::from_i64([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    }

    /// Read a matrix off four homogeneous linear components.
    pub fn from_components(f: &[Poly<F>; 4]) -> Result<Self, DomainError> {
        let mut rows = Vec::with_capacity(4);
        for p in f {
            rows.push(p.linear_coeffs()?);
        }
        Ok(Mat4(rows.try_into().unwrap_or_else(|_| unreachable!())))
    }

    pub fn components(&self) -> [Poly<F>; 4] {
        std::array::from_fn(|i| Poly::linear(&self.0[i]))
    }

    pub fn row(&self, i: usize) -> &Lin<F> {
        &self.0[i]
    }

    fn to_vecs(&self) -> Vec<Vec<F>> {
        self.0.iter().map(|r| r.to_vec()).collect()
    }

    fn from_vecs(v: Vec<Vec<F>>) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| v[i][j].clone())))
    }

    /// Matrix of the composite map `self ∘ other`.
    pub fn compose(&self, other: &Mat4<F>) -> Mat4<F> {
        Mat4::from_vecs(linalg::mat_mul(&self.to_vecs(), &other.to_vecs()))
    }

    pub fn inverse(&self) -> Option<Mat4<F>> {
        linalg::inverse(&self.to_vecs()).map(Mat4::from_vecs)
    }

    pub fn det(&self) -> F {
        linalg::determinant(&self.to_vecs())
    }

    pub fn transpose(&self) -> Mat4<F> {
        Mat4::from_vecs(linalg::transpose(&self.to_vecs()))
    }

    /// Image of the linear form `l` under the map: `l ∘ self`.
    pub fn pull(&self, l: &Lin<F>) -> Lin<F> {
        std::array::from_fn(|j| {
            (0..4).fold(F::zero(), |acc, i| acc.add(&l[i].mul(&self.0[i][j])))
        })
    }
}

impl<F: Field> fmt::Display for Mat4<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = self.components();
        write!(f, "({}, {}, {}, {})", comps[0], comps[1], comps[2], comps[3])
    }
}

/// The pairing matrix `A`: `1/2` at `(1,4), (4,1)` and `-1/2` at `(2,3), (3,2)`.
pub fn pairing_matrix<F: Field>() -> [[F; 4]; 4] {
    let h = F::one().div(&F::from_i64(2)).expect("2 is invertible");
    let mut a: [[F; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| F::zero()));
    a[0][3] = h.clone();
    a[3][0] = h.clone();
    a[1][2] = h.neg();
    a[2][1] = h.neg();
    a
}

/// `⟨u, v⟩` for coefficient vectors.
pub fn pair<F: Field>(u: &Lin<F>, v: &Lin<F>) -> F {
    let h = F::one().div(&F::from_i64(2)).expect("2 is invertible");
    let s = u[0].mul(&v[3]).add(&u[3].mul(&v[0])).sub(&u[1].mul(&v[2])).sub(&u[2].mul(&v[1]));
    s.mul(&h)
}

/// The symmetric pairing on linear forms whose matrix is [`pairing_matrix`].
pub fn q_pairing<F: Field>(u: &Poly<F>, v: &Poly<F>) -> Result<F, DomainError> {
    Ok(pair(&u.linear_coeffs()?, &v.linear_coeffs()?))
}

fn std_pair<F: Field>(i: usize, j: usize) -> F {
    let mut a: Lin<F> = std::array::from_fn(|_| F::zero());
    let mut b = a.clone();
    a[i] = F::one();
    b[j] = F::one();
    pair(&a, &b)
}

/// Orthogonality via the ten pairings `⟨f_i, f_j⟩ = ⟨x_i, x_j⟩`.
pub fn is_orthogonal<F: Field>(m: &Mat4<F>) -> OrthVerdict {
    for i in 0..4 {
        for j in i..4 {
            if pair(&m.0[i], &m.0[j]) != std_pair::<F>(i, j) {
                return OrthVerdict::No;
            }
        }
    }
    verdict_from_det(m)
}

/// Orthogonality via the matrix identity `Mᵗ A M = A`, which says that
/// substituting the rows into `q` returns `q`.
pub fn is_orthogonal_matrix<F: Field>(m: &Mat4<F>) -> OrthVerdict {
    let a: Vec<Vec<F>> = pairing_matrix::<F>().iter().map(|r| r.to_vec()).collect();
    let mv = m.to_vecs();
    let lhs = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&mv), &a), &mv);
    if lhs != a {
        return OrthVerdict::No;
    }
    verdict_from_det(m)
}

fn verdict_from_det<F: Field>(m: &Mat4<F>) -> OrthVerdict {
    if m.det().is_one() {
        OrthVerdict::SpecialSO4
    } else {
        OrthVerdict::GeneralO4
    }
}

/// A totally isotropic plane stored by its reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IsotropicPlane<F: Field> {
    basis: [Lin<F>; 2],
}

/// The two rulings of the quadric, with the projective parameter `(a:b)`
/// normalized to `(1:b/a)` or `(0:1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PlaneTag<F: Field> {
    /// `span(a*x1 + b*x3, a*x2 + b*x4)`.
    Horizontal(F, F),
    /// `span(a*x1 + b*x2, a*x3 + b*x4)`.
    Vertical(F, F),
}

impl<F: Field> PlaneTag<F> {
    pub fn is_horizontal(&self) -> bool {
        matches!(self, PlaneTag::Horizontal(..))
    }
}

fn normalize_param<F: Field>(a: F, b: F) -> (F, F) {
    match a.inv() {
        Some(ai) => (F::one(), b.mul(&ai)),
        None => (F::zero(), F::one()),
    }
}

fn independent<F: Field>(rows: &[Lin<F>]) -> usize {
    linalg::rank(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

impl<F: Field> IsotropicPlane<F> {
    /// Canonical plane spanned by two linear forms; they must be independent
    /// and totally isotropic.
    pub fn new(u: &Lin<F>, v: &Lin<F>) -> Result<Self, DomainError> {
        let mut rows = vec![u.to_vec(), v.to_vec()];
        linalg::rref(&mut rows);
        if rows.len() < 2 {
            return Err(DomainError::Dependent);
        }
        if !pair(u, u).is_zero() || !pair(u, v).is_zero() || !pair(v, v).is_zero() {
            return Err(DomainError::NotIsotropic);
        }
        let basis = [0, 1].map(|i| std::array::from_fn(|j| rows[i][j].clone()));
        Ok(IsotropicPlane { basis })
    }

    pub fn from_polys(u: &Poly<F>, v: &Poly<F>) -> Result<Self, DomainError> {
        IsotropicPlane::new(&u.linear_coeffs()?, &v.linear_coeffs()?)
    }

    /// Plane spanned by two of the coordinate forms (1-based indices).
    pub fn coordinate(i: usize, j: usize) -> Result<Self, DomainError> {
        let e = |k: usize| -> Lin<F> { std::array::from_fn(|t| if t + 1 == k { F::one() } else { F::zero() }) };
        IsotropicPlane::new(&e(i), &e(j))
    }

    pub fn horizontal(a: &F, b: &F) -> Self {
        let z = F::zero();
        IsotropicPlane::new(
            &[a.clone(), z.clone(), b.clone(), z.clone()],
            &[z.clone(), a.clone(), z, b.clone()],
        )
        .expect("horizontal planes are isotropic")
    }

    pub fn vertical(a: &F, b: &F) -> Self {
        let z = F::zero();
        IsotropicPlane::new(
            &[a.clone(), b.clone(), z.clone(), z.clone()],
            &[z.clone(), z, a.clone(), b.clone()],
        )
        .expect("vertical planes are isotropic")
    }

    pub fn basis(&self) -> &[Lin<F>; 2] {
        &self.basis
    }

    pub fn basis_polys(&self) -> [Poly<F>; 2] {
        [Poly::linear(&self.basis[0]), Poly::linear(&self.basis[1])]
    }

    pub fn contains(&self, l: &Lin<F>) -> bool {
        independent(&[self.basis[0].clone(), self.basis[1].clone(), l.clone()]) == 2
    }

    /// Image `{l ∘ g : l ∈ self}`.
    pub fn pull(&self, g: &Mat4<F>) -> Self {
        IsotropicPlane::new(&g.pull(&self.basis[0]), &g.pull(&self.basis[1]))
            .expect("orthogonal maps preserve isotropic planes")
    }

    /// Dimension of `self ∩ other`.
    pub fn meet_dim(&self, other: &Self) -> usize {
        4 - independent(&[
            self.basis[0].clone(),
            self.basis[1].clone(),
            other.basis[0].clone(),
            other.basis[1].clone(),
        ])
    }
}

/// Horizontal or vertical ruling of a plane, with its parameter.
pub fn classify_plane<F: Field>(p: &IsotropicPlane<F>) -> PlaneTag<F> {
    let f = &p.basis[0];
    let (a, b) = if !f[0].is_zero() || !f[2].is_zero() {
        (f[0].clone(), f[2].clone())
    } else {
        (f[1].clone(), f[3].clone())
    };
    let (a, b) = normalize_param(a, b);
    if IsotropicPlane::horizontal(&a, &b) == *p {
        return PlaneTag::Horizontal(a, b);
    }
    let (a, b) = if !f[0].is_zero() || !f[1].is_zero() {
        (f[0].clone(), f[1].clone())
    } else {
        (f[2].clone(), f[3].clone())
    };
    let (a, b) = normalize_param(a, b);
    PlaneTag::Vertical(a, b)
}

/// The two totally isotropic planes containing the isotropic form `f`,
/// horizontal first.
pub fn planes_through<F: Field>(f: &Poly<F>) -> Result<(IsotropicPlane<F>, IsotropicPlane<F>), DomainError> {
    let c = f.linear_coeffs()?;
    if c.iter().all(F::is_zero) {
        return Err(DomainError::Dependent);
    }
    if !pair(&c, &c).is_zero() {
        return Err(DomainError::NotIsotropic);
    }
    let h = if !c[0].is_zero() || !c[2].is_zero() {
        normalize_param(c[0].clone(), c[2].clone())
    } else {
        normalize_param(c[1].clone(), c[3].clone())
    };
    let v = if !c[0].is_zero() || !c[1].is_zero() {
        normalize_param(c[0].clone(), c[1].clone())
    } else {
        normalize_param(c[2].clone(), c[3].clone())
    };
    Ok((IsotropicPlane::horizontal(&h.0, &h.1), IsotropicPlane::vertical(&v.0, &v.1)))
}

fn check_isotropic_pair<F: Field>(f1: &Lin<F>, f2: &Lin<F>) -> Result<(), DomainError> {
    if independent(&[f1.clone(), f2.clone()]) < 2 {
        return Err(DomainError::Dependent);
    }
    if !pair(f1, f1).is_zero() || !pair(f1, f2).is_zero() || !pair(f2, f2).is_zero() {
        return Err(DomainError::NotIsotropic);
    }
    Ok(())
}

/// The unique basis `(f3, f4)` of `w2` with `(f1, f2, f3, f4)` in `O4`.
pub fn complete_pair<F: Field>(
    f1: &Lin<F>,
    f2: &Lin<F>,
    w2: &IsotropicPlane<F>,
) -> Result<(Lin<F>, Lin<F>), DomainError> {
    check_isotropic_pair(f1, f2)?;
    let [w1, w2b] = &w2.basis;
    let g = vec![
        vec![pair(f1, w1), pair(f1, w2b)],
        vec![pair(f2, w1), pair(f2, w2b)],
    ];
    if linalg::determinant(&g).is_zero() {
        return Err(DomainError::NotTransverse);
    }
    let half = F::one().div(&F::from_i64(2)).expect("2 is invertible");
    let comb = |s: &[F]| -> Lin<F> { std::array::from_fn(|j| s[0].mul(&w1[j]).add(&s[1].mul(&w2b[j]))) };
    // <f1,f3> = 0, <f2,f3> = -1/2 ; <f1,f4> = 1/2, <f2,f4> = 0
    let s3 = linalg::solve(&g, &[F::zero(), half.neg()]).ok_or(DomainError::NotTransverse)?;
    let s4 = linalg::solve(&g, &[half, F::zero()]).ok_or(DomainError::NotTransverse)?;
    Ok((comb(&s3), comb(&s4)))
}

/// An orthogonal matrix whose first two rows are `f1, f2`.
pub fn extend_isotropic_pair<F: Field>(f1: &Lin<F>, f2: &Lin<F>) -> Result<Mat4<F>, DomainError> {
    check_isotropic_pair(f1, f2)?;
    let w = IsotropicPlane::new(f1, f2)?;
    let (one, zero) = (F::one(), F::zero());
    let candidates = [
        IsotropicPlane::horizontal(&zero, &one),
        IsotropicPlane::horizontal(&one, &zero),
        IsotropicPlane::vertical(&zero, &one),
        IsotropicPlane::vertical(&one, &zero),
    ];
    let comp = candidates
        .into_iter()
        .find(|c| c.meet_dim(&w) == 0)
        .ok_or(DomainError::NotTransverse)?;
    let (f3, f4) = complete_pair(f1, f2, &comp)?;
    Ok(Mat4([f1.clone(), f2.clone(), f3, f4]))
}

/// The `SO4` element `X ↦ A·X·Bᵗ` with `X = [[x1, x2], [x3, x4]]`.
pub fn so4_from_sl2_pair<F: Field>(a: &[[F; 2]; 2], b: &[[F; 2]; 2]) -> Result<Mat4<F>, DomainError> {
    for m in [a, b] {
        let d = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
        if !d.is_one() {
            return Err(DomainError::BadDeterminant(d.to_string()));
        }
    }
    Ok(Mat4(std::array::from_fn(|r| {
        let (i, j) = (r / 2, r % 2);
        std::array::from_fn(|c| {
            let (k, l) = (c / 2, c % 2);
            a[i][k].mul(&b[j][l])
        })
    })))
}

/// Relative position of two isotropic planes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PlanePairCase {
    Equal,
    Transverse,
    Meeting,
}

/// An orthogonal `g` moving `w` to `span(x3, x4)` and `w2` to `span(x3, x4)`,
/// `span(x1, x2)` or `span(x2, x4)` according to how the planes meet.
pub fn normalize_plane_pair<F: Field>(
    w: &IsotropicPlane<F>,
    w2: &IsotropicPlane<F>,
) -> Result<(Mat4<F>, PlanePairCase), DomainError> {
    // N has rows (n1, n2, w_a, -w_b), so x3∘N, x4∘N span w and g = N⁻¹.
    let target = IsotropicPlane::coordinate(3, 4)?;
    let g = if *w == target {
        Mat4::identity()
    } else {
        let e = extend_isotropic_pair(&w.basis[0], &w.basis[1])?;
        let pi = Mat4::<F>::from_i64([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]]);
        pi.compose(&e).inverse().ok_or(DomainError::NotOrthogonal)?
    };
    let moved = w2.pull(&g);
    match moved.meet_dim(&target) {
        2 => Ok((g, PlanePairCase::Equal)),
        0 => {
            let [u1, u2] = moved.basis.clone();
            let (f3, f4) = complete_pair(&u1, &u2, &target)?;
            let k = Mat4([u1, u2, f3, f4]);
            let h = k.inverse().ok_or(DomainError::NotOrthogonal)?;
            Ok((g.compose(&h), PlanePairCase::Transverse))
        }
        _ => {
            let k = meeting_frame(&moved, &target)?;
            let h = k.inverse().ok_or(DomainError::NotOrthogonal)?;
            Ok((g.compose(&h), PlanePairCase::Meeting))
        }
    }
}

/// Orthogonal `K` with rows 3, 4 spanning `base` and rows 2, 4 spanning
/// `other`, for planes meeting in a line.
fn meeting_frame<F: Field>(other: &IsotropicPlane<F>, base: &IsotropicPlane<F>) -> Result<Mat4<F>, DomainError> {
    let mut rows: Vec<Vec<F>> = other.basis.iter().map(|r| r.to_vec()).collect();
    rows.extend(base.basis.iter().map(|r| r.iter().map(F::neg).collect::<Vec<_>>()));
    // Kernel vector of [o1 o2 -b1 -b2]ᵗ gives the common line.
    let a = linalg::transpose(&rows);
    let mut m = a.clone();
    let pivots = linalg::rref(&mut m);
    let free = (0..4).find(|c| !pivots.contains(c)).ok_or(DomainError::NotTransverse)?;
    let mut coef = vec![F::zero(); 4];
    coef[free] = F::one();
    for (row, &p) in m.iter().zip(&pivots) {
        coef[p] = row[free].neg();
    }
    let v: Lin<F> = std::array::from_fn(|j| coef[0].mul(&other.basis[0][j]).add(&coef[1].mul(&other.basis[1][j])));
    let pick = |plane: &IsotropicPlane<F>| -> Lin<F> {
        plane
            .basis
            .iter()
            .find(|b| independent(&[(*b).clone(), v.clone()]) == 2)
            .cloned()
            .expect("plane has a second direction")
    };
    let k3 = pick(base);
    let w = pick(other);
    let half = F::one().div(&F::from_i64(2)).expect("2 is invertible");
    let s = half.neg().div(&pair(&w, &k3)).ok_or(DomainError::NotTransverse)?;
    let row2: Lin<F> = w.map(|c| c.mul(&s));
    let g = vec![row2.to_vec(), k3.to_vec(), v.to_vec()]
        .into_iter()
        .map(|r| {
            let a = pairing_matrix::<F>();
            (0..4)
                .map(|j| (0..4).fold(F::zero(), |acc, i| acc.add(&r[i].mul(&a[i][j]))))
                .collect::<Vec<F>>()
        })
        .collect::<Vec<_>>();
    let r0 = linalg::solve(&g, &[F::zero(), F::zero(), half]).ok_or(DomainError::NotTransverse)?;
    let r0: Lin<F> = std::array::from_fn(|j| r0[j].clone());
    // Moving along v keeps the linear conditions and shifts <r,r> by t.
    let t = pair(&r0, &r0).neg();
    let row1: Lin<F> = std::array::from_fn(|j| r0[j].add(&t.mul(&v[j])));
    Ok(Mat4([row1, row2, k3, v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn lin(v: [i64; 4]) -> Lin<Q> {
        v.map(Q::from_i64)
    }

    #[test]
    fn pairing_values() {
        let x = |i| Poly::<Q>::x(i);
        assert_eq!(q_pairing(&x(1), &x(4)).unwrap(), Q::new(1, 2));
        assert_eq!(q_pairing(&x(1), &x(1)).unwrap(), Q::zero());
        assert_eq!(q_pairing(&x(2), &x(3)).unwrap(), Q::new(-1, 2));
        assert!(q_pairing(&(&x(1) * &x(2)), &x(1)).is_err());
    }

    #[test]
    fn orthogonality_verdicts() {
        assert_eq!(is_orthogonal(&Mat4::<Q>::identity()), OrthVerdict::SpecialSO4);
        assert_eq!(is_orthogonal(&Mat4::<Q>::tau()), OrthVerdict::GeneralO4);
        let d = Mat4::diag([Q::from_i64(2), Q::one(), Q::one(), Q::one()]);
        assert_eq!(is_orthogonal(&d), OrthVerdict::No);
        for m in [Mat4::<Q>::identity(), Mat4::tau(), d] {
            assert_eq!(is_orthogonal(&m), is_orthogonal_matrix(&m));
        }
    }

    #[test]
    fn complete_pair_fixtures() {
        for a in [0, 1, -3] {
            let w = IsotropicPlane::new(&lin([a, 0, 1, 0]), &lin([0, a, 0, 1])).unwrap();
            let (f3, f4) = complete_pair(&lin([1, 0, 0, 0]), &lin([0, 1, 0, 0]), &w).unwrap();
            assert_eq!((f3, f4), (lin([a, 0, 1, 0]), lin([0, a, 0, 1])));
        }
        let w = IsotropicPlane::coordinate(3, 4).unwrap();
        let (f3, f4) = complete_pair(&lin([0, 1, 0, 0]), &lin([1, 0, 0, 0]), &w).unwrap();
        assert_eq!((f3, f4), (lin([0, 0, 0, -1]), lin([0, 0, -1, 0])));
        let w = IsotropicPlane::coordinate(1, 3).unwrap();
        assert_eq!(
            complete_pair(&lin([1, 0, 0, 0]), &lin([0, 1, 0, 0]), &w),
            Err(DomainError::NotTransverse)
        );
    }

    #[test]
    fn extensions_are_orthogonal() {
        for (a, b) in [([1, 0, 0, 0], [0, 1, 0, 0]), ([0, 0, 0, 1], [0, 0, 1, 0]), ([1, 1, 0, 0], [0, 0, 1, 1])] {
            let m = extend_isotropic_pair(&lin(a), &lin(b)).unwrap();
            assert_ne!(is_orthogonal(&m), OrthVerdict::No);
            let c = m.components();
            assert_eq!(&(&c[0] * &c[3]) - &(&c[1] * &c[2]), Poly::q());
        }
        let m = extend_isotropic_pair(&lin([1, 0, 0, 0]), &lin([0, 1, 0, 0])).unwrap();
        assert_eq!(m, Mat4::identity());
        assert_eq!(extend_isotropic_pair(&lin([1, 0, 0, 0]), &lin([0, 0, 0, 1])), Err(DomainError::NotIsotropic));
    }

    #[test]
    fn planes_and_tags() {
        let (h, v) = planes_through(&Poly::<Q>::x(1)).unwrap();
        assert_eq!(h, IsotropicPlane::coordinate(1, 2).unwrap());
        assert_eq!(v, IsotropicPlane::coordinate(1, 3).unwrap());
        let (h, v) = planes_through(&Poly::<Q>::x(4)).unwrap();
        assert_eq!(h, IsotropicPlane::coordinate(3, 4).unwrap());
        assert_eq!(v, IsotropicPlane::coordinate(2, 4).unwrap());
        let f = Poly::<Q>::parse("x1+x2").unwrap();
        let (h, v) = planes_through(&f).unwrap();
        assert!(h.contains(&lin([1, 1, 0, 0])) && v.contains(&lin([1, 1, 0, 0])));
        assert!(classify_plane(&h).is_horizontal() && !classify_plane(&v).is_horizontal());
        assert_eq!(classify_plane(&IsotropicPlane::<Q>::coordinate(1, 2).unwrap()), PlaneTag::Horizontal(Q::one(), Q::zero()));
        assert_eq!(classify_plane(&IsotropicPlane::<Q>::coordinate(1, 3).unwrap()), PlaneTag::Vertical(Q::one(), Q::zero()));
        assert_eq!(classify_plane(&IsotropicPlane::<Q>::coordinate(3, 4).unwrap()), PlaneTag::Horizontal(Q::zero(), Q::one()));
        assert!(planes_through(&Poly::<Q>::parse("x1+x4").unwrap()).is_err());
    }

    #[test]
    fn sl2_cover() {
        let i = [[Q::one(), Q::zero()], [Q::zero(), Q::one()]];
        let mi = [[Q::from_i64(-1), Q::zero()], [Q::zero(), Q::from_i64(-1)]];
        assert_eq!(so4_from_sl2_pair(&i, &i).unwrap(), Mat4::identity());
        assert_eq!(so4_from_sl2_pair(&mi, &mi).unwrap(), Mat4::identity());
        let (a, b) = (Q::from_i64(2), Q::from_i64(3));
        let da = [[a.clone(), Q::zero()], [Q::zero(), a.inv().unwrap()]];
        let db = [[b.clone(), Q::zero()], [Q::zero(), b.inv().unwrap()]];
        let m = so4_from_sl2_pair(&da, &db).unwrap();
        assert_eq!(m, Mat4::diag([Q::from_i64(6), Q::new(2, 3), Q::new(3, 2), Q::new(1, 6)]));
        assert_eq!(is_orthogonal(&m), OrthVerdict::SpecialSO4);
        let bad = [[Q::from_i64(2), Q::zero()], [Q::zero(), Q::one()]];
        assert!(so4_from_sl2_pair(&bad, &i).is_err());
    }

    #[test]
    fn plane_pair_normalization() {
        let p34 = IsotropicPlane::<Q>::coordinate(3, 4).unwrap();
        let p12 = IsotropicPlane::coordinate(1, 2).unwrap();
        let p24 = IsotropicPlane::coordinate(2, 4).unwrap();
        let (g, c) = normalize_plane_pair(&p34, &p12).unwrap();
        assert_eq!(c, PlanePairCase::Transverse);
        assert_eq!(g, Mat4::identity());
        assert_eq!((p34.pull(&g), p12.pull(&g)), (p34.clone(), p12.clone()));
        let (g, c) = normalize_plane_pair(&p12, &p12).unwrap();
        assert_eq!(c, PlanePairCase::Equal);
        assert_eq!(p12.pull(&g), p34);
        let (g, c) = normalize_plane_pair(&p34, &p24).unwrap();
        assert_eq!(c, PlanePairCase::Meeting);
        assert_ne!(is_orthogonal(&g), OrthVerdict::No);
        assert_eq!((p34.pull(&g), p24.pull(&g)), (p34.clone(), p24.clone()));
        let w = IsotropicPlane::horizontal(&Q::one(), &Q::from_i64(2));
        let w2 = IsotropicPlane::vertical(&Q::from_i64(3), &Q::one());
        let (g, c) = normalize_plane_pair(&w, &w2).unwrap();
        assert_eq!(c, PlanePairCase::Meeting);
        assert_eq!((w.pull(&g), w2.pull(&g)), (p34, p24));
    }
}
