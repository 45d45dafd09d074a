//! Dense exact linear algebra over a [`Field`], plus span computations on
//! polynomials viewed as coefficient vectors.

use std::collections::BTreeSet;

use crate::field::Field;
use crate::poly::{Exponent4, Poly};

/// Reduce `rows` in place to reduced row echelon form and return the pivot
/// columns. Zero rows are removed.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.sub(&factor.mul(pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Solve `A x = b`. Free variables are set to zero. `None` if inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if aug.is_empty() {
        return Some(vec![F::zero(); n]);
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[n].clone();
    }
    Some(x)
}

/// Rank of a matrix.
pub fn rank<F: Field>(a: &[Vec<F>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            det = det.neg();
        }
        det = det.mul(&m[c][c]);
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].mul(&inv);
            let (top, bottom) = m.split_at_mut(i);
            for (target, pivot) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                *target = target.sub(&factor.mul(pivot));
            }
        }
    }
    det
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<F: Field>(a: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(F::zero(), |acc, (x, brow)| acc.add(&x.mul(&brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose<F: Field>(a: &[Vec<F>]) -> Vec<Vec<F>> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Monomials in the union of the supports, in decreasing division order.
pub fn joint_support<F: Field>(polys: &[&Poly<F>]) -> Vec<Exponent4> {
    let set: BTreeSet<Exponent4> = polys
        .iter()
        .flat_map(|p| p.terms().iter().map(|(e, _)| *e))
        .collect();
    set.into_iter().rev().collect()
}

fn coeff_row<F: Field>(p: &Poly<F>, support: &[Exponent4]) -> Vec<F> {
    support.iter().map(|e| p.coeff(e)).collect()
}

fn row_poly<F: Field>(row: &[F], support: &[Exponent4]) -> Poly<F> {
    Poly::from_terms(support.iter().copied().zip(row.iter().cloned()))
}

/// Reduced echelon basis of the span of `polys` in decreasing division order.
/// Every basis element has leading coefficient 1 and the pivot monomials do
/// not occur in the other elements, so the basis is canonical for the span.
pub fn echelon_basis<F: Field>(polys: &[&Poly<F>]) -> Vec<Poly<F>> {
    let support = joint_support(polys);
    let mut rows: Vec<Vec<F>> = polys.iter().map(|p| coeff_row(p, &support)).collect();
    rref(&mut rows);
    rows.iter().map(|r| row_poly(r, &support)).collect()
}

/// Express each target as a combination of `basis`; row `i` of the result
/// holds the coefficients of `targets[i]`. `None` if some target leaves the
/// span. When `basis` is dependent, free coefficients are zero.
pub fn express_in_span<F: Field>(targets: &[&Poly<F>], basis: &[&Poly<F>]) -> Option<Vec<Vec<F>>> {
    let mut all: Vec<&Poly<F>> = basis.to_vec();
    all.extend_from_slice(targets);
    let support = joint_support(&all);
    // Columns are basis elements, rows are monomials.
    let a: Vec<Vec<F>> = support
        .iter()
        .map(|e| basis.iter().map(|b| b.coeff(e)).collect())
        .collect();
    targets
        .iter()
        .map(|t| solve(&a, &coeff_row(t, &support)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| Q::from_i64(x)).collect()).collect()
    }

    #[test]
    fn solve_and_invert() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = solve(&a, &[Q::from_i64(3), Q::from_i64(2)]).unwrap();
        assert_eq!(x, vec![Q::one(), Q::one()]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), m(&[&[1, 0], &[0, 1]]));
        assert_eq!(determinant(&a), Q::one());
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[Q::one(), Q::zero()]).is_none());
    }

    #[test]
    fn echelon_of_mixed_pair() {
        let p = |s: &str| Poly::<Q>::parse(s).unwrap();
        let a = echelon_basis(&[&p("x1+x2"), &p("x2")]);
        assert_eq!(a, vec![p("x1"), p("x2")]);
        let f1 = p("x1^2 + x3");
        let f2 = p("x2*x4 - 1");
        let b = echelon_basis(&[&f2.scale(&Q::from_i64(2)), &(&f1 - &f2)]);
        assert_eq!(b, echelon_basis(&[&f1, &f2]));
        let c = express_in_span(&[&p("3*x1 - x2")], &[&p("x1"), &p("x2")]).unwrap();
        assert_eq!(c, vec![vec![Q::from_i64(3), Q::from_i64(-1)]]);
        assert!(express_in_span(&[&p("x3")], &[&p("x1")]).is_none());
    }
}
