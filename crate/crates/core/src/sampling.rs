//! Seeded random generators for property suites and benchmarks: small
//! polynomials, orthogonal matrices and tame words.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::orth::{so4_from_sl2_pair, Mat4};
use crate::poly::{Exponent4, Poly};
use crate::tame::{ElementaryAuto, Factor, Family, TameAuto, TameWord};

/// Shape of the random words drawn by [`Sampler::word`].
#[derive(Clone, Copy, Debug)]
pub struct WordShape {
    pub max_len: usize,
    /// Maximal raw degree of the elementary polynomials.
    pub max_p_degree: u32,
    /// Coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    /// Maximal number of terms of an elementary polynomial.
    pub max_p_terms: usize,
    /// Probability that a factor is orthogonal rather than elementary.
    pub orth_ratio: f64,
    /// Words whose evaluation exceeds this many terms are redrawn.
    pub max_terms: usize,
}

impl Default for WordShape {
    fn default() -> Self {
        WordShape { max_len: 6, max_p_degree: 3, coeff_bound: 2, max_p_terms: 2, orth_ratio: 0.5, max_terms: 600 }
    }
}

/// A deterministic source of random algebraic objects.
pub struct Sampler {
    rng: ChaCha8Rng,
    /// Number of words rejected by the size cap so far.
    pub rejected: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), rejected: 0 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero integer in `-bound..=bound`.
    pub fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let c = self.rng.gen_range(-bound..=bound);
            if c != 0 {
                return c;
            }
        }
    }

    /// A small nonzero rational `n/d` with `|n| <= bound`, `1 <= d <= bound`.
    pub fn small_rational<F: Field>(&mut self, bound: i64) -> F {
        let n = self.nonzero(bound);
        let d = self.rng.gen_range(1..=bound.max(1));
        F::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// A polynomial in the given variables with at most `terms` terms of raw
    /// degree at most `max_deg`.
    pub fn poly_in<F: Field>(&mut self, vars: &[usize], max_deg: u32, terms: usize, bound: i64) -> Poly<F> {
        let n = self.rng.gen_range(1..=terms.max(1));
        Poly::from_terms((0..n).map(|_| {
            let deg = self.rng.gen_range(0..=max_deg);
            let mut e = [0u32; 4];
            for _ in 0..deg {
                let v = *vars.choose(&mut self.rng).expect("at least one variable");
                e[v - 1] += 1;
            }
            (Exponent4(e), F::from_i64(self.nonzero(bound)))
        }))
    }

    /// A random elementary automorphism of a random family.
    pub fn elementary<F: Field>(&mut self, shape: &WordShape) -> ElementaryAuto<F> {
        let family = *Family::ALL.choose(&mut self.rng).expect("four families");
        let (a, b) = family.roles().vars;
        let p = self.poly_in(&[a, b], shape.max_p_degree, shape.max_p_terms, shape.coeff_bound);
        ElementaryAuto::new(family, p).expect("polynomial drawn in the family variables")
    }

    /// A random element of `SL2` over the integers, a short product of
    /// transvections and a sign.
    pub fn sl2<F: Field>(&mut self, bound: i64) -> [[F; 2]; 2] {
        let mut m = [[1i64, 0], [0, 1]];
        for _ in 0..self.rng.gen_range(0..=3) {
            let k = self.rng.gen_range(-bound..=bound);
            let t = if self.rng.gen_bool(0.5) { [[1, k], [0, 1]] } else { [[1, 0], [k, 1]] };
            m = [
                [m[0][0] * t[0][0] + m[0][1] * t[1][0], m[0][0] * t[0][1] + m[0][1] * t[1][1]],
                [m[1][0] * t[0][0] + m[1][1] * t[1][0], m[1][0] * t[0][1] + m[1][1] * t[1][1]],
            ];
        }
        if self.rng.gen_bool(0.25) {
            m = m.map(|r| r.map(|x| -x));
        }
        m.map(|r| r.map(F::from_i64))
    }

    /// A random element of `O4`: an `SO4` image of two `SL2` matrices, a
    /// diagonal scaling, and the transposition with probability one half.
    pub fn orthogonal<F: Field>(&mut self, bound: i64) -> Mat4<F> {
        let a = self.sl2(bound);
        let b = self.sl2(bound);
        let mut m = so4_from_sl2_pair(&a, &b).expect("determinant one");
        if self.rng.gen_bool(0.5) {
            let c: F = self.small_rational(bound.max(1));
            let d: F = self.small_rational(bound.max(1));
            let diag = Mat4::diag([
                c.clone(),
                d.clone(),
                d.inv().expect("nonzero"),
                c.inv().expect("nonzero"),
            ]);
            m = diag.compose(&m);
        }
        if self.rng.gen_bool(0.5) {
            m = Mat4::tau().compose(&m);
        }
        m
    }

    /// A random 4×4 matrix with small entries, orthogonal or not.
    pub fn matrix<F: Field>(&mut self, bound: i64) -> Mat4<F> {
        Mat4(std::array::from_fn(|_| std::array::from_fn(|_| F::from_i64(self.rng.gen_range(-bound..=bound)))))
    }

    /// A random word with its evaluation, redrawn until the evaluation fits
    /// the size cap.
    pub fn word<F: Field>(&mut self, shape: &WordShape) -> (TameWord<F>, TameAuto<F>) {
        loop {
            let len = self.rng.gen_range(1..=shape.max_len);
            let factors: Vec<Factor<F>> = (0..len)
                .map(|_| {
                    if self.rng.gen_bool(shape.orth_ratio) {
                        Factor::Orth(self.orthogonal(1))
                    } else {
                        Factor::Elem(self.elementary(shape))
                    }
                })
                .collect();
            let mut acc = TameAuto::identity();
            let mut fits = true;
            for fac in factors.iter().rev() {
                acc = fac.apply_left(&acc);
                if acc.term_count() > shape.max_terms {
                    fits = false;
                    break;
                }
            }
            if fits {
                return (TameWord::new(factors), acc);
            }
            self.rejected += 1;
        }
    }

    /// A random polynomial `R(X1, X2)` written in `x1, x2`.
    pub fn two_variable<F: Field>(&mut self, max_deg: u32, terms: usize, bound: i64) -> Poly<F> {
        self.poly_in(&[1, 2], max_deg, terms, bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::orth::{is_orthogonal, OrthVerdict};

    #[test]
    fn sampler_is_deterministic() {
        let shape = WordShape::default();
        let (w1, _) = Sampler::new(7).word::<Q>(&shape);
        let (w2, _) = Sampler::new(7).word::<Q>(&shape);
        assert_eq!(w1, w2);
    }

    #[test]
    fn orthogonal_samples_are_orthogonal() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            assert_ne!(is_orthogonal(&s.orthogonal::<Q>(2)), OrthVerdict::No);
        }
    }

    #[test]
    fn words_respect_the_cap() {
        let mut s = Sampler::new(3);
        let shape = WordShape { max_terms: 50, ..WordShape::default() };
        for _ in 0..20 {
            let (w, f) = s.word::<Q>(&shape);
            assert!(f.term_count() <= 50);
            assert_eq!(w.evaluate(), f);
        }
    }
}
