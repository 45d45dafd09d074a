//! Multiplicative relations `a^p b^q = 1` and resonant polynomials.
//!
//! A nonzero element of `Q` or `Q(i)` factors as a root of unity times a
//! product of prime powers, so `a^p b^q = 1` splits into a linear system on
//! the prime exponents and a congruence on the root-of-unity parts.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::field::{Factorization, Field};
use crate::poly::Poly;

/// Nonzero integers `p`, `q` with `a^p b^q = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResonanceWitness {
    pub p: i64,
    pub q: i64,
}

impl fmt::Display for ResonanceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} b^{} = 1", self.p, self.q)
    }
}

impl ResonanceWitness {
    /// Check `a^p b^q = 1` in the field.
    pub fn holds<F: Field>(&self, a: &F, b: &F) -> bool {
        match (a.pow(self.p), b.pow(self.q)) {
            (Some(x), Some(y)) => x.mul(&y).is_one(),
            _ => false,
        }
    }
}

/// The root-of-unity part as a fraction of a full turn.
fn turn(f: &Factorization) -> Ratio<i64> {
    Ratio::new(f.unit.0, f.unit.1)
}

/// Smallest `k ≥ 1` (at most 4, the largest unit order) with `k·t ∈ Z`.
fn unit_multiplier(t: Ratio<i64>) -> Option<i64> {
    (1..=4).find(|k| (t * k).is_integer())
}

/// A witness of resonance with `|p| + |q|` minimal and `p > 0`, or `None`.
///
/// Zero arguments have no witness.
pub fn resonant<F: Field>(a: &F, b: &F) -> Option<ResonanceWitness> {
    let (fa, fb) = (a.factorize()?, b.factorize()?);
    let primes: BTreeSet<&String> = fa.primes.keys().chain(fb.primes.keys()).collect();
    let exps = |f: &Factorization| primes.iter().map(|p| *f.primes.get(*p).unwrap_or(&0)).collect::<Vec<i64>>();
    let (u, v) = (exps(&fa), exps(&fb));
    let (ta, tb) = (turn(&fa), turn(&fb));
    let witness = match (u.iter().all(|&x| x == 0), v.iter().all(|&x| x == 0)) {
        (true, true) => {
            // Both are roots of unity: search the smallest exponents.
            (2..=8i64)
                .flat_map(|s| (1..s).flat_map(move |p| [(p, s - p), (p, p - s)]))
                .find(|&(p, q)| (ta * p + tb * q).is_integer())
                .map(|(p, q)| ResonanceWitness { p, q })
        }
        (false, false) => {
            // p·u + q·v = 0 forces (p, q) to be a multiple of (v_i, -u_i)/gcd.
            let i = u.iter().position(|&x| x != 0)?;
            let g = u[i].gcd(&v[i]);
            let (mut p0, mut q0) = (v[i] / g, -u[i] / g);
            if p0 < 0 {
                (p0, q0) = (-p0, -q0);
            }
            if p0 == 0 || !u.iter().zip(&v).all(|(x, y)| p0 * x + q0 * y == 0) {
                return None;
            }
            unit_multiplier(ta * p0 + tb * q0).map(|k| ResonanceWitness { p: k * p0, q: k * q0 })
        }
        _ => None,
    }?;
    witness.holds(a, b).then_some(witness)
}

/// Whether `R(x, y)`, written in `x1, x2`, is resonant in `a` and `b`:
/// nonconstant, and every monomial `x^i y^j` of `R` has `a^(i+1) b^(j+1) = 1`.
pub fn resonant_poly<F: Field>(r: &Poly<F>, a: &F, b: &F) -> bool {
    if r.is_constant() || !r.uses_only(&[1, 2]) {
        return false;
    }
    r.terms().iter().all(|(e, _)| match (a.pow(e.0[0] as i64 + 1), b.pow(e.0[1] as i64 + 1)) {
        (Some(x), Some(y)) => x.mul(&y).is_one(),
        _ => false,
    })
}

/// `a b R(a x, b y) = R(x, y)`, checked by expansion.
pub fn resonance_identity<F: Field>(r: &Poly<F>, a: &F, b: &F) -> bool {
    let scaled = r.substitute(&[Poly::x(1).scale(a), Poly::x(2).scale(b), Poly::x(3), Poly::x(4)]);
    scaled.scale(&a.mul(b)) == *r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Qi, Q};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn rational_witnesses() {
        assert_eq!(resonant(&q(2, 1), &q(1, 2)), Some(ResonanceWitness { p: 1, q: 1 }));
        assert_eq!(resonant(&q(4, 1), &q(1, 2)), Some(ResonanceWitness { p: 1, q: 2 }));
        assert_eq!(resonant(&q(2, 1), &q(3, 1)), None);
        assert_eq!(resonant(&q(12, 1), &q(1, 18)), None);
        assert_eq!(resonant(&q(-2, 1), &q(1, 2)), Some(ResonanceWitness { p: 2, q: 2 }));
        assert_eq!(resonant(&q(8, 1), &q(4, 1)), Some(ResonanceWitness { p: 2, q: -3 }));
        assert_eq!(resonant(&q(2, 1), &q(1, 1)), None);
        assert_eq!(resonant(&q(0, 1), &q(1, 1)), None);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(resonant(&q(-1, 1), &q(-1, 1)), Some(ResonanceWitness { p: 1, q: 1 }));
        let i = Qi::i();
        let w = resonant(&i, &i).unwrap();
        assert!(w.holds(&i, &i));
        assert_eq!(w, ResonanceWitness { p: 1, q: -1 });
        let two_i = i.mul(&Qi::from_i64(2));
        let half = Qi::from_rational(num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(resonant(&two_i, &half), Some(ResonanceWitness { p: 4, q: 4 }));
    }

    #[test]
    fn resonant_polynomials() {
        let xy = Poly::<Q>::parse("x1*x2").unwrap();
        assert!(resonant_poly(&xy, &q(2, 1), &q(1, 2)));
        assert!(resonance_identity(&xy, &q(2, 1), &q(1, 2)));
        assert!(!resonant_poly(&xy, &q(2, 1), &q(1, 3)));
        assert!(!resonant_poly(&Poly::one(), &Q::one(), &Q::one()));
        let mixed = Poly::<Q>::parse("x1^2 + x1^3 + x2^2 + x2^3").unwrap();
        assert!(!resonant_poly(&mixed, &q(2, 1), &q(1, 2)));
    }
}
