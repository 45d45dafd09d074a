//! Exact coefficient fields.
//!
//! Every algorithm in the crate is generic over [`Field`]. Two instantiations
//! are provided: the rationals [`Q`] and the Gaussian rationals [`Qi`], which
//! add the fourth roots of unity needed by the resonance examples.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Multiplicative decomposition of a nonzero field element.
///
/// `unit` is `(k, n)` meaning the unit part is `ζ_n^k` where `ζ_2 = -1` and
/// `ζ_4 = i`. `primes` maps a canonical prime label to its exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: (i64, i64),
    pub primes: BTreeMap<String, i64>,
}

/// An exact field of characteristic zero.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Short name used by the command line (`q` or `qi`).
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: BigRational) -> Self;
    /// The imaginary unit, when the field contains one.
    fn imaginary_unit() -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Integer power; negative exponents require a nonzero base.
    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        Some(acc)
    }

    /// The element as a rational number, if it is one.
    fn to_rational(&self) -> Option<BigRational>;

    /// Real and imaginary parts; the second is zero over `Q`.
    fn gaussian_parts(&self) -> (BigRational, BigRational);

    /// Serialized form: one string for `Q`, real and imaginary strings for `Qi`.
    fn to_strings(&self) -> Vec<String>;
    fn from_strings(parts: &[&str]) -> Result<Self, ParseError>;

    /// Sign-aware rendering for the pretty printer: `(negative, magnitude)`.
    /// Non-real elements are parenthesised and never reported negative.
    fn pretty_parts(&self) -> (bool, String);

    /// Unit and prime-power decomposition of a nonzero element.
    fn factorize(&self) -> Option<Factorization>;
}

fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Coefficient(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Trial-division factorization of a positive integer into rational primes.
fn factor_integer(n: &BigInt) -> BTreeMap<BigInt, i64> {
    let mut out = BTreeMap::new();
    let mut n = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            *out.entry(p.clone()).or_insert(0) += 1;
            n /= &p;
        }
        p += 1;
    }
    if n > BigInt::one() {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Exact rational numbers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(n: i64, d: i64) -> Self {
        Q(BigRational::new(n.into(), d.into()))
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rational_string(&self.0))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", rational_string(&self.0))
    }
}

impl Field for Q {
    const NAME: &'static str = "q";

    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Q(BigRational::from_integer(n.into()))
    }
    fn from_rational(r: BigRational) -> Self {
        Q(r)
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn add_assign(&mut self, other: &Self) {
        self.0 += &other.0;
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.0.clone())
    }
    fn gaussian_parts(&self) -> (BigRational, BigRational) {
        (self.0.clone(), BigRational::zero())
    }
    fn to_strings(&self) -> Vec<String> {
        vec![rational_string(&self.0)]
    }
    fn from_strings(parts: &[&str]) -> Result<Self, ParseError> {
        match parts {
            [s] => Ok(Q(parse_rational(s)?)),
            [re, im] => {
                let im = parse_rational(im)?;
                if !im.is_zero() {
                    return Err(ParseError::NotInField(format!("{re}+{im}i"), Self::NAME));
                }
                Ok(Q(parse_rational(re)?))
            }
            _ => Err(ParseError::Coefficient(parts.join(","))),
        }
    }
    fn pretty_parts(&self) -> (bool, String) {
        (self.0.is_negative(), rational_string(&self.0.abs()))
    }
    fn factorize(&self) -> Option<Factorization> {
        if self.0.is_zero() {
            return None;
        }
        let mut primes = BTreeMap::new();
        for (p, e) in factor_integer(self.0.numer()) {
            *primes.entry(p.to_string()).or_insert(0) += e;
        }
        for (p, e) in factor_integer(self.0.denom()) {
            *primes.entry(p.to_string()).or_insert(0) -= e;
        }
        primes.retain(|_, e| *e != 0);
        let unit = if self.0.is_negative() { (1, 2) } else { (0, 2) };
        Some(Factorization { unit, primes })
    }
}

/// Exact Gaussian rationals `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Qi {
    pub re: BigRational,
    pub im: BigRational,
}

impl Qi {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Qi { re, im }
    }

    pub fn i() -> Self {
        Qi::new(BigRational::zero(), BigRational::one())
    }

    fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Debug for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rational_string(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", rational_string(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if self.im.is_negative() {
            write!(f, "{}{}", rational_string(&self.re), im)
        } else {
            write!(f, "{}+{}", rational_string(&self.re), im)
        }
    }
}

/// A Gaussian integer, used only during factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GInt(BigInt, BigInt);

impl GInt {
    fn norm(&self) -> BigInt {
        &self.0 * &self.0 + &self.1 * &self.1
    }

    fn mul(&self, o: &GInt) -> GInt {
        GInt(
            &self.0 * &o.0 - &self.1 * &o.1,
            &self.0 * &o.1 + &self.1 * &o.0,
        )
    }

    /// Exact quotient `self / d`, if it is a Gaussian integer.
    fn div_exact(&self, d: &GInt) -> Option<GInt> {
        let n = d.norm();
        let num = self.mul(&GInt(d.0.clone(), -&d.1));
        if (&num.0 % &n).is_zero() && (&num.1 % &n).is_zero() {
            Some(GInt(&num.0 / &n, &num.1 / &n))
        } else {
            None
        }
    }

    /// The associate with positive real part and non-negative imaginary part.
    fn normalized(&self) -> GInt {
        let mut z = self.clone();
        for _ in 0..4 {
            if z.0.is_positive() && !z.1.is_negative() {
                return z;
            }
            z = GInt(-&z.1, z.0.clone());
        }
        z
    }

    fn label(&self) -> String {
        if self.1.is_zero() {
            self.0.to_string()
        } else {
            format!("{}+{}i", self.0, self.1)
        }
    }

    /// Index `k` with `self = i^k`, for a unit.
    fn unit_index(&self) -> Option<i64> {
        let one = BigInt::one();
        let minus = -BigInt::one();
        match (&self.0, &self.1) {
            (a, b) if *a == one && b.is_zero() => Some(0),
            (a, b) if a.is_zero() && *b == one => Some(1),
            (a, b) if *a == minus && b.is_zero() => Some(2),
            (a, b) if a.is_zero() && *b == minus => Some(3),
            _ => None,
        }
    }

    /// Gaussian prime factorization; returns the unit index and prime powers.
    fn factor(&self) -> (i64, BTreeMap<String, i64>) {
        let mut z = self.clone();
        let mut primes = BTreeMap::new();
        for (p, _) in factor_integer(&self.norm()) {
            let candidates = gaussian_primes_over(&p);
            for pi in candidates {
                while let Some(next) = z.div_exact(&pi) {
                    *primes.entry(pi.label()).or_insert(0) += 1;
                    z = next;
                }
            }
        }
        (z.unit_index().unwrap_or(0), primes)
    }
}

/// The normalized Gaussian primes lying over a rational prime `p`.
fn gaussian_primes_over(p: &BigInt) -> Vec<GInt> {
    let four = BigInt::from(4);
    if *p == BigInt::from(2) {
        return vec![GInt(BigInt::one(), BigInt::one())];
    }
    if p.mod_floor(&four) == BigInt::from(3) {
        return vec![GInt(p.clone(), BigInt::zero())];
    }
    let mut u = BigInt::one();
    while &u * &u < *p {
        let rest = p - &u * &u;
        let v = rest.sqrt();
        if &v * &v == rest {
            let a = GInt(u.clone(), v.clone()).normalized();
            let b = GInt(u, -v).normalized();
            return vec![a, b];
        }
        u += 1;
    }
    vec![GInt(p.clone(), BigInt::zero())]
}

impl Field for Qi {
    const NAME: &'static str = "qi";

    fn zero() -> Self {
        Qi::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Qi::new(BigRational::one(), BigRational::zero())
    }
    fn from_i64(n: i64) -> Self {
        Qi::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn from_rational(r: BigRational) -> Self {
        Qi::new(r, BigRational::zero())
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Qi::i())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Qi::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        Qi::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Qi::new(&self.re * &o.re, BigRational::zero());
        }
        Qi::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        Qi::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Qi::new(&self.re / &n, -&self.im / &n))
    }
    fn add_assign(&mut self, o: &Self) {
        self.re += &o.re;
        self.im += &o.im;
    }
    fn to_rational(&self) -> Option<BigRational> {
        self.im.is_zero().then(|| self.re.clone())
    }
    fn gaussian_parts(&self) -> (BigRational, BigRational) {
        (self.re.clone(), self.im.clone())
    }
    fn to_strings(&self) -> Vec<String> {
        vec![rational_string(&self.re), rational_string(&self.im)]
    }
    fn from_strings(parts: &[&str]) -> Result<Self, ParseError> {
        match parts {
            [re] => Ok(Qi::new(parse_rational(re)?, BigRational::zero())),
            [re, im] => Ok(Qi::new(parse_rational(re)?, parse_rational(im)?)),
            _ => Err(ParseError::Coefficient(parts.join(","))),
        }
    }
    fn pretty_parts(&self) -> (bool, String) {
        if self.im.is_zero() {
            (self.re.is_negative(), rational_string(&self.re.abs()))
        } else {
            (false, format!("({self})"))
        }
    }
    fn factorize(&self) -> Option<Factorization> {
        if self.is_zero() {
            return None;
        }
        let lcm = self.re.denom().lcm(self.im.denom());
        let num = GInt(
            (&self.re * BigRational::from_integer(lcm.clone())).to_integer(),
            (&self.im * BigRational::from_integer(lcm.clone())).to_integer(),
        );
        let (unit, mut primes) = num.factor();
        let (den_unit, den_primes) = GInt(lcm, BigInt::zero()).factor();
        for (p, e) in den_primes {
            *primes.entry(p).or_insert(0) -= e;
        }
        primes.retain(|_, e| *e != 0);
        Some(Factorization {
            unit: ((unit - den_unit).rem_euclid(4), 4),
            primes,
        })
    }
}

/// Convert a small rational to `f64` for diagnostics only.
pub fn approx_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let a = Q::from_strings(&["-3/6"]).unwrap();
        assert_eq!(a, Q::new(-1, 2));
        assert_eq!(a.to_strings(), vec!["-1/2".to_string()]);
        assert_eq!(Q::from_strings(&["7"]).unwrap(), Q::from_i64(7));
        assert!(Q::from_strings(&["1/0"]).is_err());
        assert!(Q::from_strings(&["1", "1"]).is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = Qi::i();
        assert_eq!(i.mul(&i), Qi::from_i64(-1));
        assert_eq!(i.inv().unwrap(), i.neg());
        assert_eq!(i.pow(4).unwrap(), Qi::one());
        assert_eq!(i.pow(-1).unwrap(), i.neg());
        assert_eq!(format!("{}", Qi::from_strings(&["1/2", "-3"]).unwrap()), "1/2-3*i");
    }

    #[test]
    fn rational_factorization() {
        let f = Q::new(-12, 5).factorize().unwrap();
        assert_eq!(f.unit, (1, 2));
        assert_eq!(f.primes.get("2"), Some(&2));
        assert_eq!(f.primes.get("3"), Some(&1));
        assert_eq!(f.primes.get("5"), Some(&-1));
    }

    #[test]
    fn gaussian_factorization() {
        // 2 = -i (1+i)^2
        let f = Qi::from_i64(2).factorize().unwrap();
        assert_eq!(f.primes.get("1+1i"), Some(&2));
        assert_eq!(f.unit, (3, 4));
        // 5 = (2+i)(2-i) and the two primes are not associates
        let f = Qi::from_i64(5).factorize().unwrap();
        assert_eq!(f.primes.len(), 2);
        assert_eq!(Qi::i().factorize().unwrap().unit, (1, 4));
        let half = Qi::from_rational(BigRational::new(1.into(), 2.into()));
        let f = half.factorize().unwrap();
        assert_eq!(f.primes.get("1+1i"), Some(&-2));
        assert_eq!(f.unit, (1, 4));
    }
}
