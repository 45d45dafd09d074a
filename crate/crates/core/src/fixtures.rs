//! Named test vectors: the worked example with its printed inverse, the
//! classical non-tame automorphisms, and the building blocks of the example
//! families (`σ`, the maps `g(P)`, `g̃(P)`, the hyperbolic generators).

use crate::error::DomainError;
use crate::field::Field;
use crate::orth::Mat4;
use crate::poly::Poly;
use crate::tame::{ElementaryAuto, Factor, Family, TameAuto, TameWord};

fn parse<F: Field>(s: &str) -> Poly<F> {
    Poly::parse(s).expect("fixture polynomials are well formed")
}

fn quad<F: Field>(c: [&str; 4]) -> [Poly<F>; 4] {
    c.map(parse)
}

/// `g = (x4 + x3*x1^2 + x2*x1^2 + x1^5, x2 + x1^3, x3 + x1^3, x1)`.
pub fn example_g<F: Field>() -> TameAuto<F> {
    TameAuto::new(quad(["x4 + x3*x1^2 + x2*x1^2 + x1^5", "x2 + x1^3", "x3 + x1^3", "x1"]))
        .expect("example g preserves the quadric")
}

/// The inverse of [`example_g`], written exactly in its published factored
/// shape and expanded.
pub fn example_g_inverse<F: Field>() -> TameAuto<F> {
    TameAuto::new(quad([
        "x4",
        "x2 - x4^3",
        "x3 - x4^3",
        "x1 - x4^5 - x4^2*(x2 - x4^3) - (x3 - x4^3)*x4^2",
    ]))
    .expect("the inverse of example g preserves the quadric")
}

/// Anick's automorphism `(x1, x2 + x1*q, x3, x4 + x3*q)`; it preserves `q`
/// but is not tame.
pub fn anick<F: Field>() -> [Poly<F>; 4] {
    let q = Poly::q();
    let [x1, x2, x3, x4] = [1, 2, 3, 4].map(Poly::<F>::x);
    [x1.clone(), &x2 + &(&x1 * &q), x3.clone(), &x4 + &(&x3 * &q)]
}

/// A quadratic automorphism of `C^4` preserving `q` whose restriction to
/// the quadric is not tame.
pub fn quadratic_non_tame<F: Field>() -> [Poly<F>; 4] {
    quad([
        "x1 - x2*(x1 + x4)",
        "x2",
        "x3 + (x1 - x4)*(x1 + x4) - x2*(x1 + x4)^2",
        "x4 + x2*(x1 + x4)",
    ])
}

/// `σ = (-x3, x4, -x1, x2)`, an orthogonal involution.
pub fn sigma<F: Field>() -> Mat4<F> {
    Mat4::from_i64([[0, 0, -1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, 1, 0, 0]])
}

/// `g(P) = (-x2, -x1 - x2*P(x2,x4), x4, x3 + x4*P(x2,x4))` as the word
/// `M ∘ E13(P)` with `M = (-x2, -x1, x4, x3)`.
pub fn g_of<F: Field>(p_x2x4: &Poly<F>) -> Result<TameWord<F>, DomainError> {
    let m = Mat4::from_i64([[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
    let e = ElementaryAuto::new(Family::E13, p_x2x4.clone())?;
    Ok(TameWord::new(vec![Factor::Orth(m), Factor::Elem(e)]))
}

/// `g̃(P) = σ ∘ g(P) ∘ σ`.
pub fn g_tilde_of<F: Field>(p_x2x4: &Poly<F>) -> Result<TameWord<F>, DomainError> {
    let s = TameWord::single(Factor::Orth(sigma()));
    Ok(s.then_after(&g_of(p_x2x4)?).then_after(&s))
}

/// `P_n(x, y) = (x*y)^(2^n - 1)` evaluated at `(x2, x4)`.
pub fn parabolic_p<F: Field>(n: u32) -> Poly<F> {
    (&Poly::x(2) * &Poly::x(4)).pow((1u32 << n) - 1)
}

/// `L = (b^-1 x2, a x1, -a^-1 x4, -b x3)`, the linear half of a hyperbolic
/// generator.
pub fn hyperbolic_linear<F: Field>(a: &F, b: &F) -> Result<Mat4<F>, DomainError> {
    let (ai, bi) = match (a.inv(), b.inv()) {
        (Some(ai), Some(bi)) => (ai, bi),
        _ => return Err(DomainError::BadDeterminant("0".into())),
    };
    let z = F::zero;
    Ok(Mat4([
        [z(), bi, z(), z()],
        [a.clone(), z(), z(), z()],
        [z(), z(), z(), ai.neg()],
        [z(), z(), b.neg(), z()],
    ]))
}

/// `g = (b^-1 x2, a x1 + a x2 P, -a^-1 x4, -b x3 - b x4 P)` with
/// `P ∈ C[x2, x4]` of degree at least two, as `L ∘ E13(P)`.
pub fn hyperbolic_generator<F: Field>(a: &F, b: &F, p_x2x4: &Poly<F>) -> Result<TameWord<F>, DomainError> {
    let deg = p_x2x4.raw_degree().unwrap_or(0) as usize;
    if deg < 2 {
        return Err(DomainError::DegreeTooLow(deg, 2));
    }
    let e = ElementaryAuto::new(Family::E13, p_x2x4.clone())?;
    Ok(TameWord::new(vec![Factor::Orth(hyperbolic_linear(a, b)?), Factor::Elem(e)]))
}

/// A small menu of polynomials in `x2, x4` used by the hyperbolic families.
pub fn hyperbolic_sample_p<F: Field>(i: usize) -> Poly<F> {
    const MENU: [&str; 4] = ["x2^2", "x2*x4 + x4^2", "x2^2*x4 - x4", "x4^3 + x2"];
    parse(MENU[i % MENU.len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::tame::quadric_residual;

    #[test]
    fn example_g_and_its_printed_inverse_cancel() {
        let g = example_g::<Q>();
        let gi = example_g_inverse::<Q>();
        assert_eq!(g.compose(&gi), TameAuto::identity());
        assert_eq!(gi.compose(&g), TameAuto::identity());
    }

    #[test]
    fn non_tame_vectors_preserve_the_quadric() {
        assert!(quadric_residual(&anick::<Q>()).is_zero());
        assert!(quadric_residual(&quadratic_non_tame::<Q>()).is_zero());
    }

    #[test]
    fn family_words_have_the_printed_components() {
        let p = parse::<Q>("x2*x4");
        let g = g_of(&p).unwrap().evaluate();
        let expect = quad::<Q>(["-x2", "-x1 - x2^2*x4", "x4", "x3 + x2*x4^2"]);
        assert_eq!(g.components(), &expect);
        let h = hyperbolic_generator(&Q::from_i64(2), &Q::from_i64(3), &p).unwrap().evaluate();
        let expect = quad::<Q>(["1/3*x2", "2*x1 + 2*x2^2*x4", "-1/2*x4", "-3*x3 - 3*x2*x4^2"]);
        assert_eq!(h.components(), &expect);
        assert!(hyperbolic_generator(&Q::one(), &Q::one(), &parse("x2 + x4")).is_err());
    }

    #[test]
    fn sigma_is_an_orthogonal_involution() {
        let s = TameAuto::<Q>::from_linear(&sigma()).unwrap();
        assert_eq!(s.compose(&s), TameAuto::identity());
    }
}
