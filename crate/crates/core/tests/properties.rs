//! Property tests over randomly drawn words, groups and scalars.

use proptest::prelude::*;
use tame_core::complex::{act, Vertex};
use tame_core::grouplab::{
    gl2_element, mean_linearize, resonance_identity, resonant, resonant_poly, stab_x1_normal_form, FiniteSubgroup,
};
use tame_core::orth::{is_orthogonal, is_orthogonal_matrix, Mat4};
use tame_core::sampling::{Sampler, WordShape};
use tame_core::tame::{reduce, Budget, ElementaryAuto, Factor, Family, TameAuto, TameWord};
use tame_core::{Field, Poly, Q};

fn small_shape() -> WordShape {
    WordShape { max_len: 3, max_p_degree: 2, max_terms: 200, ..WordShape::default() }
}

fn p(s: &str) -> Poly<Q> {
    Poly::parse(s).unwrap()
}

fn vertices() -> Vec<Vertex<Q>> {
    vec![
        Vertex::t1(&p("x1")).unwrap(),
        Vertex::t1(&p("x3 + x1^2")).unwrap(),
        Vertex::t2(&p("x1"), &p("x2")).unwrap(),
        Vertex::t3(&TameAuto::identity()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn act_is_a_group_action(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (w1, _) = s.word::<Q>(&small_shape());
        let (w2, _) = s.word::<Q>(&small_shape());
        let product = w1.then_after(&w2);
        for v in vertices() {
            prop_assert_eq!(act(&product, &v), act(&w1, &act(&w2, &v)));
            prop_assert_eq!(act(&TameWord::empty(), &v), v.clone());
        }
    }

    #[test]
    fn words_and_their_inverses_cancel(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (w, f) = s.word::<Q>(&small_shape());
        prop_assert_eq!(w.invert().evaluate().compose(&f), TameAuto::identity());
    }

    #[test]
    fn reduction_certifies_sampled_words(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (_, f) = s.word::<Q>(&small_shape());
        let t = reduce(&f, &Budget::default());
        prop_assert!(t.is_linear() && t.strictly_decreasing() && t.verify());
    }

    #[test]
    fn orthogonality_checks_agree(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let o = s.orthogonal::<Q>(2);
        let m = s.matrix::<Q>(1);
        for x in [o.clone(), m.clone(), o.compose(&m)] {
            prop_assert_eq!(is_orthogonal(&x), is_orthogonal_matrix(&x));
        }
    }

    #[test]
    fn resonance_is_symmetric(an in -12i64..=12, ad in 1i64..=12, bn in -12i64..=12, bd in 1i64..=12) {
        prop_assume!(an != 0 && bn != 0);
        let (a, b) = (Q::new(an, ad), Q::new(bn, bd));
        let (ai, bi) = (a.inv().unwrap(), b.inv().unwrap());
        let w = resonant(&a, &b);
        prop_assert_eq!(w, resonant(&ai, &bi));
        prop_assert_eq!(w.is_some(), resonant(&b, &a).is_some());
        if let Some(w) = w {
            prop_assert!(w.p > 0 && w.holds(&a, &b) && w.holds(&ai, &bi));
        }
    }

    #[test]
    fn resonant_polynomials_satisfy_the_identity(k in -3i32..=3, m in -3i32..=3, seed in any::<u64>()) {
        let two = Q::from_i64(2);
        let (a, b) = (two.pow(k as i64).unwrap(), two.pow(m as i64).unwrap());
        let mut s = Sampler::new(seed);
        let r = s.two_variable::<Q>(4, 3, 2);
        if resonant_poly(&r, &a, &b) {
            prop_assert!(resonance_identity(&r, &a, &b));
        }
        // The monomial x^i y^j with (i+1)k + (j+1)m = 0 is resonant whenever it exists.
        for i in 0..6u32 {
            for j in 0..6u32 {
                if (i + j) >= 1 && (i as i32 + 1) * k + (j as i32 + 1) * m == 0 {
                    let mono = Poly::monomial(tame_core::Exponent4([i, j, 0, 0]), Q::one());
                    prop_assert!(resonant_poly(&mono, &a, &b) && resonance_identity(&mono, &a, &b));
                }
            }
        }
    }

    #[test]
    fn stabilizer_normal_forms_round_trip(seed in any::<u64>(), len in 1usize..6) {
        let mut s = Sampler::new(seed);
        let mut f = TameAuto::<Q>::identity();
        for i in 0..len {
            let factor = if i % 2 == 0 {
                let p = s.poly_in::<Q>(&[1, 3], 3, 2, 2);
                Factor::Elem(ElementaryAuto::new(Family::E24, p).unwrap())
            } else {
                let p = s.poly_in::<Q>(&[1], 2, 2, 2);
                let e = ElementaryAuto::new(Family::E34, p).unwrap();
                let l = if s.nonzero(1) > 0 { Mat4::tau() } else { Mat4::identity() };
                f = Factor::Orth(l).apply_left(&f);
                Factor::Elem(e)
            };
            f = factor.apply_left(&f);
        }
        let nf = stab_x1_normal_form(&f).unwrap();
        prop_assert_eq!(nf.evaluate(), f);
        prop_assert!(nf.is_alternating());
    }

    #[test]
    fn mean_linearization_conjugates_to_linear_maps(pick in 0usize..5, seed in any::<u64>()) {
        let parts: [[[i64; 2]; 2]; 5] = [[[-1, 0], [0, 1]], [[0, 1], [1, 0]], [[0, -1], [1, -1]], [[0, -1], [1, 0]], [[-1, 0], [0, -1]]];
        let l = gl2_element(&parts[pick].map(|r| r.map(Q::from_i64))).unwrap();
        let mut s = Sampler::new(seed);
        let shift = s.poly_in::<Q>(&[1, 3], 3, 3, 2);
        let e = ElementaryAuto::new(Family::E24, shift).unwrap();
        let w = TameWord::new(vec![Factor::Elem(e.clone()), Factor::Orth(l), Factor::Elem(e.inverse())]);
        let g = FiniteSubgroup::generate(&[w], 16).unwrap();
        let lin = mean_linearize(&g).unwrap();
        prop_assert_eq!(lin.conjugator.compose(&lin.conjugator_inverse), TameAuto::identity());
        for (f, m) in g.elements().iter().zip(&lin.images) {
            let c = lin.conjugator.compose(f).compose(&lin.conjugator_inverse);
            let linear = c.as_linear();
            prop_assert_eq!(linear.as_ref(), Some(m));
        }
    }
}
