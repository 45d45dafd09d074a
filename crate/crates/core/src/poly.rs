//! Sparse polynomials in `x1..x4` with the weighted degree.
//!
//! The weighted degree sends `x1^i x2^j x3^k x4^l` to
//! `(2i+j+k, i+2j+l, i+2k+l, j+k+2l)` and compares values graded-lex: sums
//! first, then lexicographically. Because this degree is not injective on
//! monomials, term storage and division use the separate [`DivisionOrder`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{DomainError, ParseError};
use crate::field::Field;

/// Rows of the weight matrix: the degrees of `x1, x2, x3, x4`.
pub const WEIGHTS: [[i64; 4]; 4] = [[2, 1, 1, 0], [1, 2, 0, 1], [1, 0, 2, 1], [0, 1, 1, 2]];

/// Exponent vector `(i, j, k, l)` of the monomial `x1^i x2^j x3^k x4^l`.
///
/// The derived order is the [`DivisionOrder`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exponent4(pub [u32; 4]);

impl Exponent4 {
    pub const ZERO: Exponent4 = Exponent4([0; 4]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Exponent4(e)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Image under the weight matrix.
    pub fn weight(&self) -> WeightVec {
        let mut w = [0i64; 4];
        for (v, row) in self.0.iter().zip(WEIGHTS.iter()) {
            for (acc, r) in w.iter_mut().zip(row) {
                *acc += *v as i64 * r;
            }
        }
        WeightVec::Finite(w)
    }

    pub fn divides(&self, other: &Exponent4) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent4) -> Exponent4 {
        Exponent4(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// `self - other`; the caller guarantees `other` divides `self`.
    pub fn sub(&self, other: &Exponent4) -> Exponent4 {
        Exponent4(std::array::from_fn(|i| self.0[i] - other.0[i]))
    }
}

impl Ord for Exponent4 {
    fn cmp(&self, other: &Self) -> Ordering {
        DivisionOrder::cmp(self, other)
    }
}

impl PartialOrd for Exponent4 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lex on raw exponents with `x1 > x2 > x3 > x4`.
pub struct DivisionOrder;

impl DivisionOrder {
    pub fn cmp(a: &Exponent4, b: &Exponent4) -> Ordering {
        a.total().cmp(&b.total()).then_with(|| a.0.cmp(&b.0))
    }
}

/// A weighted degree: `−∞` or a vector compared graded-lex.
///
/// Components are signed so that differences of degrees (as in the parachute)
/// stay in the same type; degrees of polynomials are always non-negative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum WeightVec {
    MinusInfinity,
    Finite([i64; 4]),
}

impl WeightVec {
    pub const LINEAR: WeightVec = WeightVec::Finite([2, 1, 1, 0]);
    pub const QUADRIC: WeightVec = WeightVec::Finite([2, 2, 2, 2]);

    pub fn of_var(i: usize) -> WeightVec {
        WeightVec::Finite(WEIGHTS[i])
    }

    pub fn finite(&self) -> Option<[i64; 4]> {
        match self {
            WeightVec::MinusInfinity => None,
            WeightVec::Finite(w) => Some(*w),
        }
    }

    pub fn sum(&self) -> Option<i64> {
        self.finite().map(|w| w.iter().sum())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, WeightVec::Finite(_))
    }

    /// Componentwise difference; `−∞` on either side gives `−∞`.
    pub fn minus(&self, other: &WeightVec) -> WeightVec {
        match (self, other) {
            (WeightVec::Finite(a), WeightVec::Finite(b)) => {
                WeightVec::Finite(std::array::from_fn(|i| a[i] - b[i]))
            }
            _ => WeightVec::MinusInfinity,
        }
    }

    pub fn scaled(&self, k: i64) -> WeightVec {
        match self {
            WeightVec::Finite(a) => WeightVec::Finite(a.map(|x| x * k)),
            WeightVec::MinusInfinity => WeightVec::MinusInfinity,
        }
    }

    /// Whether every component is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.finite().is_some_and(|w| w.iter().all(|&x| x >= 0))
    }
}

impl Add for WeightVec {
    type Output = WeightVec;
    fn add(self, other: WeightVec) -> WeightVec {
        match (self, other) {
            (WeightVec::Finite(a), WeightVec::Finite(b)) => {
                WeightVec::Finite(std::array::from_fn(|i| a[i] + b[i]))
            }
            _ => WeightVec::MinusInfinity,
        }
    }
}

impl Ord for WeightVec {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (WeightVec::MinusInfinity, WeightVec::MinusInfinity) => Ordering::Equal,
            (WeightVec::MinusInfinity, _) => Ordering::Less,
            (_, WeightVec::MinusInfinity) => Ordering::Greater,
            (WeightVec::Finite(a), WeightVec::Finite(b)) => {
                let sa: i64 = a.iter().sum();
                let sb: i64 = b.iter().sum();
                sa.cmp(&sb).then_with(|| a.cmp(b))
            }
        }
    }
}

impl PartialOrd for WeightVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightVec::MinusInfinity => write!(f, "-inf"),
            WeightVec::Finite(w) => write!(f, "({},{},{},{})", w[0], w[1], w[2], w[3]),
        }
    }
}

/// Exact sparse polynomial over `F` in `x1..x4`.
///
/// Terms are stored without zero coefficients, sorted by decreasing
/// [`DivisionOrder`], so equality, hashing and printing are canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F: Field> {
    terms: Vec<(Exponent4, F)>,
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::monomial(Exponent4::ZERO, c)
    }

    pub fn from_i64(n: i64) -> Self {
        Poly::constant(F::from_i64(n))
    }

    pub fn monomial(e: Exponent4, c: F) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(e, c)] }
        }
    }

    /// The variable `x_i` for `i` in `1..=4`.
    pub fn x(i: usize) -> Self {
        assert!((1..=4).contains(&i), "variables are x1..x4");
        Poly::monomial(Exponent4::var(i - 1), F::one())
    }

    /// The quadric `q = x1*x4 - x2*x3`.
    pub fn q() -> Self {
        Poly::from_terms(vec![
            (Exponent4([1, 0, 0, 1]), F::one()),
            (Exponent4([0, 1, 1, 0]), F::one().neg()),
        ])
    }

    /// Build from arbitrary terms, merging repeats and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent4, F)>) -> Self {
        let mut acc: HashMap<Exponent4, F> = HashMap::new();
        for (e, c) in terms {
            acc.entry(e)
                .and_modify(|v| v.add_assign(&c))
                .or_insert(c);
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Exponent4, F>) -> Self {
        let mut terms: Vec<(Exponent4, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Poly { terms }
    }

    /// Terms in decreasing [`DivisionOrder`].
    pub fn terms(&self) -> &[(Exponent4, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent4) -> F {
        self.terms
            .binary_search_by(|t| e.cmp(&t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    /// The constant term.
    pub fn constant_term(&self) -> F {
        self.coeff(&Exponent4::ZERO)
    }

    /// Leading term under [`DivisionOrder`].
    pub fn leading_term(&self) -> Option<&(Exponent4, F)> {
        self.terms.first()
    }

    /// Total raw degree, `None` for zero.
    pub fn raw_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.total()).max()
    }

    /// Which of `x1..x4` occur.
    pub fn variables(&self) -> [bool; 4] {
        let mut used = [false; 4];
        for (e, _) in &self.terms {
            for (u, &v) in used.iter_mut().zip(e.0.iter()) {
                *u |= v > 0;
            }
        }
        used
    }

    /// Whether only the variables with the given 1-based indices occur.
    pub fn uses_only(&self, vars: &[usize]) -> bool {
        self.variables()
            .iter()
            .enumerate()
            .all(|(i, &u)| !u || vars.contains(&(i + 1)))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.total() == 0)
    }

    /// Whether the polynomial is a nonzero homogeneous linear form.
    pub fn is_linear_form(&self) -> bool {
        !self.is_zero() && self.terms.iter().all(|(e, _)| e.total() == 1)
    }

    /// Coefficients of a linear form on `x1..x4`.
    pub fn linear_coeffs(&self) -> Result<[F; 4], DomainError> {
        if !self.terms.iter().all(|(e, _)| e.total() == 1) {
            return Err(DomainError::NotLinear(self.to_string()));
        }
        let mut out = std::array::from_fn(|_| F::zero());
        for (e, c) in &self.terms {
            let i = e.0.iter().position(|&v| v == 1).unwrap_or(0);
            out[i] = c.clone();
        }
        Ok(out)
    }

    /// The linear form `Σ c_i x_i`.
    pub fn linear(c: &[F; 4]) -> Self {
        Poly::from_terms((0..4).map(|i| (Exponent4::var(i), c[i].clone())))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, v)| (*e, v.mul(c))).collect(),
        }
    }

    /// Multiply by a monomial term.
    pub fn mul_term(&self, e: &Exponent4, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(f, v)| (f.add(e), v.mul(c))).collect(),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: &F| if negate { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match b[j].0.cmp(&a[i].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (*e, sign(c))));
        Poly { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: HashMap<Exponent4, F> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let c = ca.mul(cb);
                acc.entry(ea.add(eb))
                    .and_modify(|v| v.add_assign(&c))
                    .or_insert(c);
            }
        }
        Poly::from_map(acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Weighted degree; `−∞` for zero.
    pub fn wdeg(&self) -> WeightVec {
        self.terms
            .iter()
            .map(|(e, _)| e.weight())
            .max()
            .unwrap_or(WeightVec::MinusInfinity)
    }

    /// `hom p`: the sum of the terms of maximal weighted degree.
    pub fn leading_part(&self) -> Result<Self, DomainError> {
        if self.is_zero() {
            return Err(DomainError::ZeroLeadingPart);
        }
        let d = self.wdeg();
        Ok(Poly {
            terms: self.terms.iter().filter(|(e, _)| e.weight() == d).cloned().collect(),
        })
    }

    /// Terms of weighted degree at least `d`.
    pub fn terms_at_least(&self, d: &WeightVec) -> Vec<(Exponent4, F)> {
        self.terms.iter().filter(|(e, _)| e.weight() >= *d).cloned().collect()
    }

    /// Partial derivative with respect to `x_i`, `i` in `1..=4`.
    pub fn deriv(&self, i: usize) -> Self {
        let k = i - 1;
        Poly::from_terms(self.terms.iter().filter(|(e, _)| e.0[k] > 0).map(|(e, c)| {
            let mut f = *e;
            f.0[k] -= 1;
            (f, c.mul(&F::from_i64(e.0[k] as i64)))
        }))
    }

    /// Replace `x_i` by `g[i-1]` and expand.
    pub fn substitute(&self, g: &[Poly<F>; 4]) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut max = [0u32; 4];
        for (e, _) in &self.terms {
            for (m, &v) in max.iter_mut().zip(e.0.iter()) {
                *m = (*m).max(v);
            }
        }
        let powers: Vec<Vec<Poly<F>>> = (0..4)
            .map(|i| {
                let mut p = Vec::with_capacity(max[i] as usize + 1);
                p.push(Poly::one());
                for k in 1..=max[i] as usize {
                    let next = p[k - 1].mul(&g[i]);
                    p.push(next);
                }
                p
            })
            .collect();
        // Nested Horner grouping: multiplications happen once per distinct
        // exponent prefix rather than once per term.
        let mut grouped: std::collections::BTreeMap<u32, Vec<&(Exponent4, F)>> = Default::default();
        for t in &self.terms {
            grouped.entry(t.0 .0[0]).or_default().push(t);
        }
        let mut out = Poly::zero();
        for (i, ts) in grouped {
            let inner = substitute_level(&ts, 1, &powers);
            out = out.add(&powers[0][i as usize].mul(&inner));
        }
        out
    }

    /// Compose with a polynomial map given as four components.
    pub fn compose(&self, g: &[Poly<F>; 4]) -> Self {
        self.substitute(g)
    }

    /// Map each coefficient through `f`.
    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Single-divisor division under [`DivisionOrder`]: `self = quo·d + rem`
    /// with no term of `rem` divisible by the leading monomial of `d`.
    pub fn divrem_single(&self, d: &Self) -> Result<(Self, Self), DomainError> {
        let (lm, lc) = d.leading_term().cloned().ok_or(DomainError::DivisionByZero)?;
        let lc_inv = lc.inv().ok_or(DomainError::DivisionByZero)?;
        let mut quo = Vec::new();
        let mut rem = Vec::new();
        let mut p = self.clone();
        while let Some((e, c)) = p.terms.first().cloned() {
            if lm.divides(&e) {
                let t = (e.sub(&lm), c.mul(&lc_inv));
                p = p.sub(&d.mul_term(&t.0, &t.1));
                quo.push(t);
            } else {
                rem.push((e, c));
                p.terms.remove(0);
            }
        }
        Ok((Poly::from_terms(quo), Poly::from_terms(rem)))
    }

    /// Exact quotient by `d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (quo, rem) = self.divrem_single(d).ok()?;
        rem.is_zero().then_some(quo)
    }

    /// Remainder modulo `q - 1` under [`DivisionOrder`].
    pub fn rem_quadric(&self) -> Self {
        let qm1 = Poly::q().sub(&Poly::one());
        self.divrem_single(&qm1).map(|(_, r)| r).unwrap_or_default()
    }

    /// Representative modulo `(q - 1)` whose leading part is not divisible
    /// by `q`; its weighted degree is the minimal degree of the class.
    pub fn quotient_normal_form(&self) -> Self {
        let q = Poly::q();
        let qm1 = q.sub(&Poly::one());
        let mut r = self.clone();
        while !r.is_zero() {
            let hom = r.leading_part().expect("nonzero");
            match hom.div_exact(&q) {
                Some(h) => r = r.sub(&qm1.mul(&h)),
                None => break,
            }
        }
        r
    }

    /// Equality in `C[x1..x4]/(q - 1)`.
    pub fn eq_mod_quadric(&self, other: &Self) -> bool {
        self.sub(other).rem_quadric().is_zero()
    }

    /// Parse the human-readable form, e.g. `x1^2*x3 - 3/2*x4 + (x1+x2)^2`.
    ///
    /// Supports `+ - * ^`, parentheses, integers, `/` by a nonzero constant,
    /// the variables `x1..x4`, and `i` when the field contains it.
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let out = p.expr::<F>()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(ParseError::Shape(format!("trailing input at {} in `{s}`", p.pos)));
        }
        Ok(out)
    }
}

fn substitute_level<F: Field>(
    terms: &[&(Exponent4, F)],
    level: usize,
    powers: &[Vec<Poly<F>>],
) -> Poly<F> {
    if level == 4 {
        return Poly::constant(
            terms.iter().fold(F::zero(), |acc, (_, c)| acc.add(c)),
        );
    }
    let mut grouped: std::collections::BTreeMap<u32, Vec<&(Exponent4, F)>> = Default::default();
    for t in terms {
        grouped.entry(t.0 .0[level]).or_default().push(t);
    }
    let mut out = Poly::zero();
    for (k, ts) in grouped {
        let inner = substitute_level(&ts, level + 1, powers);
        let term = if k == 0 {
            inner
        } else if inner.is_constant() {
            powers[level][k as usize].scale(&inner.constant_term())
        } else {
            powers[level][k as usize].mul(&inner)
        };
        out = out.add(&term);
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> ParseError {
        ParseError::Shape(format!("{what} at position {}", self.pos))
    }

    fn expr<F: Field>(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term::<F>()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term::<F>()?
            }
            _ => self.term::<F>()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term::<F>()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term::<F>()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<F: Field>(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.power::<F>()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power::<F>()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power::<F>()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err("division by a non-constant"));
                    }
                    let inv = d.constant_term().inv().ok_or_else(|| self.err("division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<F: Field>(&mut self) -> Result<Poly<F>, ParseError> {
        let base = self.atom::<F>()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let n: u32 = n.parse().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn atom<F: Field>(&mut self) -> Result<Poly<F>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr::<F>()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let d = self.integer()?;
                match d.as_str() {
                    "1" | "2" | "3" | "4" => Ok(Poly::x(d.parse().unwrap())),
                    _ => Err(self.err("unknown variable")),
                }
            }
            Some(b'i') => {
                self.pos += 1;
                F::imaginary_unit()
                    .map(Poly::constant)
                    .ok_or(ParseError::NotInField("i".into(), F::NAME))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(F::from_strings(&[&n])?))
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.pretty_parts();
            let sep = match (n, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(i, &v)| if v == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, v) })
                .collect();
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<&Poly<F>> for &Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                Poly::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

/// The identity quadruple `(x1, x2, x3, x4)`.
pub fn identity_components<F: Field>() -> [Poly<F>; 4] {
    std::array::from_fn(|i| Poly::x(i + 1))
}

/// Jacobian determinant; rows follow the given tuple, columns `x1..x4`.
pub fn jacobian<F: Field>(f: [&Poly<F>; 4]) -> Poly<F> {
    let m: Vec<Vec<Poly<F>>> = f.iter().map(|p| (1..=4).map(|j| p.deriv(j)).collect()).collect();
    det4(&m)
}

fn det4<F: Field>(m: &[Vec<Poly<F>>]) -> Poly<F> {
    // Laplace expansion along the first two rows via 2x2 minors.
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let minor = |r0: usize, r1: usize, a: usize, b: usize| {
        m[r0][a].mul(&m[r1][b]).sub(&m[r0][b].mul(&m[r1][a]))
    };
    let mut out = Poly::zero();
    for &(a, b) in &pairs {
        let top = minor(0, 1, a, b);
        if top.is_zero() {
            continue;
        }
        let rest: Vec<usize> = (0..4).filter(|c| *c != a && *c != b).collect();
        let bottom = minor(2, 3, rest[0], rest[1]);
        // Sign of the complementary minor: (-1)^(rows 1+2 + cols a+1 + b+1).
        let sign = (a + b + 1) % 2 == 0;
        let term = top.mul(&bottom);
        out = if sign { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// `jj(f1, f2, f3) = Jac(q, f1, f2, f3)`.
pub fn pseudo_jacobian<F: Field>(f1: &Poly<F>, f2: &Poly<F>, f3: &Poly<F>) -> Poly<F> {
    jacobian([&Poly::q(), f1, f2, f3])
}

/// `jj_k(f1, f2) = jj(x_k, f1, f2)` for `k` in `1..=4`.
pub fn jj_k<F: Field>(k: usize, f1: &Poly<F>, f2: &Poly<F>) -> Poly<F> {
    pseudo_jacobian(&Poly::x(k), f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn weighted_degree_fixtures() {
        assert_eq!(p("x1+x2+x3+x4").wdeg(), WeightVec::Finite([2, 1, 1, 0]));
        assert_eq!(p("x1*x2+x3^2").wdeg(), WeightVec::Finite([3, 3, 1, 1]));
        assert_eq!(Poly::<Q>::zero().wdeg(), WeightVec::MinusInfinity);
        assert_eq!(Poly::<Q>::q().wdeg(), WeightVec::QUADRIC);
        assert_eq!(p("x1*x4").wdeg(), p("x2*x3").wdeg());
    }

    #[test]
    fn graded_lex_order() {
        let a = WeightVec::Finite([6, 3, 3, 0]);
        let b = WeightVec::Finite([1, 2, 0, 1]);
        assert!(a > b);
        assert!(WeightVec::Finite([1, 0, 2, 1]) < WeightVec::Finite([1, 2, 0, 1]));
        assert!(WeightVec::MinusInfinity < WeightVec::Finite([0, 0, 0, 0]));
    }

    #[test]
    fn leading_parts() {
        assert_eq!(Poly::<Q>::q().leading_part().unwrap(), Poly::q());
        assert_eq!(p("x2 + x1^3").leading_part().unwrap(), p("x1^3"));
        assert_eq!(p("5*x1").leading_part().unwrap(), p("5*x1"));
        assert!(Poly::<Q>::zero().leading_part().is_err());
    }

    #[test]
    fn arithmetic_and_printing() {
        assert_eq!(&p("x1*x4") - &p("x2*x3"), Poly::q());
        assert!((&p("x1") * &Poly::zero()).is_zero());
        assert_eq!(p("x1^2*x3 - 3/2*x4").to_string(), "x1^2*x3 - 3/2*x4");
        assert_eq!(p("-(x1+1)^2").to_string(), "-x1^2 - 2*x1 - 1");
        assert_eq!(p("(x1+x2)^3"), p("x1^3+3*x1^2*x2+3*x1*x2^2+x2^3"));
    }

    #[test]
    fn substitution_preserves_quadric() {
        let q = Poly::<Q>::q();
        let pp = p("x1^2*x3 - x3 + 2");
        let g = [p("x1"), &p("x2") + &(&p("x1") * &pp), p("x3"), &p("x4") + &(&p("x3") * &pp)];
        assert_eq!(q.substitute(&g), q);
        let anick = [p("x1"), p("x2 + x1*(x1*x4-x2*x3)"), p("x3"), p("x4 + x3*(x1*x4-x2*x3)")];
        assert_eq!(q.substitute(&anick), q);
        assert_eq!(p("x1").substitute(&identity_components()), p("x1"));
    }

    #[test]
    fn division_by_quadric_minus_one() {
        let qm1 = &Poly::<Q>::q() - &Poly::one();
        let (quo, rem) = qm1.divrem_single(&qm1).unwrap();
        assert_eq!((quo, rem), (Poly::one(), Poly::zero()));
        let (_, rem) = p("x1*x4").divrem_single(&qm1).unwrap();
        assert_eq!(rem, p("x2*x3 + 1"));
        let (quo, rem) = p("x1").divrem_single(&qm1).unwrap();
        assert_eq!((quo, rem), (Poly::zero(), p("x1")));
        assert!(p("x1").divrem_single(&Poly::zero()).is_err());
    }

    #[test]
    fn quotient_normal_forms() {
        assert_eq!(Poly::<Q>::q().quotient_normal_form(), Poly::one());
        assert_eq!((&p("x1") * &Poly::q()).quotient_normal_form(), p("x1"));
        assert_eq!(p("x1*x4").quotient_normal_form(), p("x1*x4"));
        assert!(Poly::<Q>::q().eq_mod_quadric(&Poly::one()));
        assert!(p("x1*x4").eq_mod_quadric(&p("x2*x3+1")));
        assert!(!p("x1").eq_mod_quadric(&p("x2")));
    }

    #[test]
    fn jacobian_fixtures() {
        let id = identity_components::<Q>();
        assert_eq!(jacobian([&id[0], &id[1], &id[2], &id[3]]), Poly::one());
        assert_eq!(jacobian([&id[1], &id[0], &id[2], &id[3]]), Poly::from_i64(-1));
        let pp = p("x1^3 + x1*x3");
        let e = [p("x1"), &p("x2") + &(&p("x1") * &pp), p("x3"), &p("x4") + &(&p("x3") * &pp)];
        assert_eq!(jacobian([&e[0], &e[1], &e[2], &e[3]]), Poly::one());
    }

    #[test]
    fn pseudo_jacobian_fixtures() {
        // rows q, x2, x3, x4 leave the x1 column: the x4 entry of grad q.
        assert_eq!(pseudo_jacobian(&p("x2"), &p("x3"), &p("x4")), p("x4"));
        let f = p("x1 + x2^2");
        assert!(pseudo_jacobian(&f, &f, &p("x3")).is_zero());
        let f1 = p("x1 + x3");
        let f2 = &Poly::q() * &f1;
        for k in 1..=4 {
            assert!(jj_k(k, &f1, &f2).is_zero());
        }
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!(Poly::<Q>::parse("x5").is_err());
        assert!(Poly::<Q>::parse("x1 +").is_err());
        assert!(Poly::<Q>::parse("i*x1").is_err());
        assert!(Poly::<crate::field::Qi>::parse("i*x1").is_ok());
    }
}
