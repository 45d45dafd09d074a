//! Evaluation fingerprints of vertices along long orbit chains.
//!
//! Components of long words are far too large to expand, but a tame map is
//! cheap to evaluate at a point one factor at a time. Vertices are keyed by
//! the values of their polynomials at a fixed set of random points over the
//! prime field `F_p`, `p = 2^64 - 2^32 + 1`: proportional value vectors for
//! type 1, equal value spans for types 2 and 3. Distinct vertices collide
//! only when a nonzero polynomial of degree `d` vanishes at every sample
//! point, which happens with probability at most `(d/p)^POINTS`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::poly::Poly;
use crate::tame::Factor;

/// The prime modulus.
pub const P: u64 = 0xffff_ffff_0000_0001;

/// Number of evaluation points.
pub const POINTS: usize = 6;

fn add(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % P as u128) as u64
}

fn sub(a: u64, b: u64) -> u64 {
    add(a, P - b)
}

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

/// A square root of `-1` modulo `P` (`7` generates the multiplicative group).
fn sqrt_minus_one() -> u64 {
    pow(7, (P - 1) / 4)
}

fn reduce_int(n: &BigInt) -> u64 {
    let m = n % BigInt::from(P);
    let m = if m < BigInt::zero() { m + BigInt::from(P) } else { m };
    m.to_u64().expect("residues fit in u64")
}

fn reduce_rational(r: &BigRational) -> u64 {
    mul(reduce_int(r.numer()), inv(reduce_int(r.denom())))
}

/// Image of a coefficient in `F_p`, sending `i` to a fixed square root of -1.
pub fn reduce_coeff<F: Field>(c: &F) -> u64 {
    let (re, im) = c.gaussian_parts();
    add(reduce_rational(&re), mul(reduce_rational(&im), sqrt_minus_one()))
}

/// A polynomial with coefficients reduced modulo `P`.
#[derive(Clone, Debug)]
pub struct ModPoly(Vec<([u32; 4], u64)>);

impl ModPoly {
    pub fn of<F: Field>(p: &Poly<F>) -> Self {
        ModPoly(p.terms().iter().map(|(e, c)| (e.0, reduce_coeff(c))).collect())
    }

    pub fn eval(&self, x: &[u64; 4]) -> u64 {
        self.0.iter().fold(0, |acc, (e, c)| {
            let m = (0..4).fold(*c, |m, i| mul(m, pow(x[i], e[i] as u64)));
            add(acc, m)
        })
    }
}

/// The polynomial map of a factor, reduced modulo `P`.
#[derive(Clone, Debug)]
pub struct ModMap([ModPoly; 4]);

impl ModMap {
    pub fn of_factor<F: Field>(f: &Factor<F>) -> Self {
        let a = f.to_auto();
        ModMap(std::array::from_fn(|i| ModPoly::of(a.f(i + 1))))
    }

    pub fn eval(&self, x: &[u64; 4]) -> [u64; 4] {
        std::array::from_fn(|i| self.0[i].eval(x))
    }
}

/// Values of the four components at every sample point.
pub type Values = [[u64; POINTS]; 4];

/// The fixed sample points.
pub fn sample_points() -> [[u64; 4]; POINTS] {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a5a_0001);
    std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(0..P)))
}

/// Values of the identity map.
pub fn identity_values(points: &[[u64; 4]; POINTS]) -> Values {
    std::array::from_fn(|i| std::array::from_fn(|s| points[s][i]))
}

/// Values of `m ∘ h` from those of `h`.
pub fn apply(m: &ModMap, h: &Values) -> Values {
    let mut out = [[0; POINTS]; 4];
    for s in 0..POINTS {
        let y = m.eval(&[h[0][s], h[1][s], h[2][s], h[3][s]]);
        for i in 0..4 {
            out[i][s] = y[i];
        }
    }
    out
}

/// Reduced row echelon form of the given rows, zero rows dropped.
pub fn rref(mut rows: Vec<[u64; POINTS]>) -> Vec<[u64; POINTS]> {
    let mut r = 0;
    for c in 0..POINTS {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let k = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = mul(*x, k);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot = rows[r];
                for (x, p) in rows[i].iter_mut().zip(pivot) {
                    *x = sub(*x, mul(f, p));
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Fingerprint of a vertex: its type and the canonical value rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexPrint {
    pub kind: u8,
    pub rows: Vec<[u64; POINTS]>,
}

/// Fingerprints of the nine vertices of a big square, in the order
/// `[f1..f4]`, the four pairs of `T2_PAIRS`, then `[f]`.
pub fn big_square_prints(h: &Values, pairs: &[(usize, usize); 4]) -> [VertexPrint; 9] {
    std::array::from_fn(|slot| match slot {
        0..=3 => VertexPrint { kind: 1, rows: rref(vec![h[slot]]) },
        4..=7 => {
            let (a, b) = pairs[slot - 4];
            VertexPrint { kind: 2, rows: rref(vec![h[a - 1], h[b - 1]]) }
        }
        _ => VertexPrint { kind: 3, rows: rref(h.to_vec()) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Qi, Q};
    use crate::orth::Mat4;

    #[test]
    fn modular_arithmetic() {
        let i = sqrt_minus_one();
        assert_eq!(mul(i, i), P - 1);
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(reduce_coeff(&Q::new(-1, 2)), sub(0, inv(2)));
        assert_eq!(reduce_coeff(&Qi::i()), i);
    }

    #[test]
    fn prints_see_linear_changes_of_coordinates() {
        let pts = sample_points();
        let id = identity_values(&pts);
        let tau = apply(&ModMap::of_factor(&Factor::<Q>::Orth(Mat4::tau())), &id);
        let pairs = crate::complex::T2_PAIRS;
        let a = big_square_prints(&id, &pairs);
        let b = big_square_prints(&tau, &pairs);
        assert_eq!(a[8], b[8]);
        assert_eq!(a[0], b[0]);
        assert_eq!(a[5], b[4]);
        assert_ne!(a[1], a[2]);
    }
}
