//! Word balls in the group and the subcomplex swept by their big squares.

use std::collections::HashSet;

use crate::exec::ExecMode;
use crate::field::Field;
use crate::orth::{so4_from_sl2_pair, Mat4};
use crate::poly::Poly;
use crate::tame::{klein_group, ElementaryAuto, Factor, Family, TameAuto, TameWord};

use super::subcomplex::{BigSquareData, BigSquareIds, SubComplex};

/// Parameters of [`explore`].
#[derive(Clone, Debug)]
pub struct ExploreConfig<F: Field> {
    /// Extra generators; their inverses are added as well.
    pub generators: Vec<TameWord<F>>,
    pub depth: usize,
    /// Elementary polynomials written in `x1, x3`, the variables of the
    /// `E24` family; each is transported to the variables of every family.
    pub sample_p: Vec<Poly<F>>,
    pub mode: ExecMode,
}

impl<F: Field> ExploreConfig<F> {
    pub fn new(depth: usize, sample_p: Vec<Poly<F>>) -> Self {
        ExploreConfig { generators: Vec::new(), depth, sample_p, mode: ExecMode::default() }
    }

    pub fn with_generators(mut self, generators: Vec<TameWord<F>>) -> Self {
        self.generators = generators;
        self
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }
}

/// The explored ball: group elements, their big squares and the union.
#[derive(Clone, Debug)]
pub struct Exploration<F: Field> {
    pub complex: SubComplex<F>,
    /// Distinct group elements reached, in breadth-first order.
    pub elements: Vec<TameAuto<F>>,
    /// Word length at which each element was first reached.
    pub levels: Vec<usize>,
    pub big_squares: Vec<BigSquareIds>,
}

/// Rewrite a polynomial in `x1, x3` as the abstract `P(X1, X2)`.
fn e24_to_abstract<F: Field>(p: &Poly<F>) -> Option<Poly<F>> {
    if !p.uses_only(&[1, 3]) {
        return None;
    }
    let [x1, x2] = [1, 2].map(Poly::x);
    Some(p.substitute(&[x1, Poly::zero(), x2, Poly::zero()]))
}

/// A fixed sample of `O4`: a transvection-type rotation and its inverse.
pub fn o4_sample<F: Field>() -> Vec<Mat4<F>> {
    let one = F::one;
    let t = [[one(), one()], [F::zero(), one()]];
    let id = [[one(), F::zero()], [F::zero(), one()]];
    let m = so4_from_sl2_pair(&t, &id).expect("determinant one");
    let mi = m.inverse().expect("orthogonal matrices are invertible");
    vec![m, mi]
}

/// The symmetric move set: generators and inverses, `±P` elementary moves
/// in every family, the non-trivial Klein elements and the `O4` sample.
///
/// Polynomials of `sample_p` that do not lie in `C[x1, x3]` are skipped.
pub fn explore_moves<F: Field>(generators: &[TameWord<F>], sample_p: &[Poly<F>]) -> Vec<TameWord<F>> {
    let mut moves: Vec<TameWord<F>> = Vec::new();
    let mut push = |w: TameWord<F>| {
        if !moves.contains(&w) {
            moves.push(w);
        }
    };
    for g in generators {
        push(g.clone());
        push(g.invert());
    }
    for p in sample_p.iter().filter_map(e24_to_abstract) {
        if p.is_zero() {
            continue;
        }
        for family in Family::ALL {
            for q in [p.clone(), p.neg()] {
                let e = ElementaryAuto::from_abstract(family, &q).expect("abstract polynomials use x1, x2");
                push(TameWord::single(Factor::Elem(e)));
            }
        }
    }
    for m in klein_group::<F>().into_iter().skip(1) {
        push(TameWord::single(Factor::Orth(m)));
    }
    for m in o4_sample() {
        push(TameWord::single(Factor::Orth(m)));
    }
    moves
}

/// `w ∘ f`.
pub fn word_apply_left<F: Field>(w: &TameWord<F>, f: &TameAuto<F>) -> TameAuto<F> {
    w.factors.iter().rev().fold(f.clone(), |acc, fac| fac.apply_left(&acc))
}

/// Breadth-first ball of radius `depth` around the identity in the group,
/// followed by the union of the big squares of its elements.
pub fn explore<F: Field>(cfg: &ExploreConfig<F>) -> Exploration<F> {
    let moves = explore_moves(&cfg.generators, &cfg.sample_p);
    let mut seen: HashSet<TameAuto<F>> = HashSet::new();
    let mut elements = vec![TameAuto::identity()];
    let mut levels = vec![0];
    seen.insert(TameAuto::identity());
    let mut frontier = vec![TameAuto::identity()];
    for level in 1..=cfg.depth {
        let products = cfg.mode.map(&frontier, |f| moves.iter().map(|w| word_apply_left(w, f)).collect::<Vec<_>>());
        let mut next = Vec::new();
        for g in products.into_iter().flatten() {
            if seen.insert(g.clone()) {
                elements.push(g.clone());
                levels.push(level);
                next.push(g);
            }
        }
        frontier = next;
    }
    let data = cfg.mode.map(&elements, BigSquareData::of);
    let mut complex = SubComplex::new();
    let big_squares = data.into_iter().map(|d| complex.insert_big_square(d)).collect();
    Exploration { complex, elements, levels, big_squares }
}

/// The union of the big squares of the given automorphisms.
pub fn union_of_big_squares<F: Field>(fs: &[TameAuto<F>], mode: ExecMode) -> (SubComplex<F>, Vec<BigSquareIds>) {
    let data = mode.map(fs, BigSquareData::of);
    let mut complex = SubComplex::new();
    let ids = data.into_iter().map(|d| complex.insert_big_square(d)).collect();
    (complex, ids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::vertex::{act, Vertex};
    use crate::field::Q;
    use crate::fixtures;

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn depth_zero_is_the_standard_big_square() {
        let e = explore(&ExploreConfig::<Q>::new(0, vec![]));
        assert_eq!(e.complex.counts(), (9, 12, 4));
    }

    #[test]
    fn linear_moves_fix_the_standard_type_three_vertex() {
        let e = explore(&ExploreConfig::<Q>::new(2, vec![]));
        assert!(e.elements.len() > 1);
        let t3 = e.complex.vertices().iter().filter(|v| v.kind() == 3).count();
        assert_eq!(t3, 1);
        assert!(e.complex.squares().len() > 4);
    }

    #[test]
    fn degree_one_moves_surround_the_standard_square() {
        let e = explore(&ExploreConfig::<Q>::new(1, vec![p("x1")]));
        let s = &e.complex;
        // Each family moves [id] across one of its four edges, both ways.
        let t3 = s.vertices().iter().filter(|v| v.kind() == 3).count();
        assert_eq!(t3, 9);
        for (a, b) in [("x1", "x2"), ("x1", "x3"), ("x2", "x4"), ("x3", "x4")] {
            let i = s.find(&Vertex::t2(&p(a), &p(b)).unwrap()).unwrap();
            let t3_next = s.neighbours(i).iter().filter(|&&j| s.vertex(j).kind() == 3).count();
            assert_eq!(t3_next, 3, "type-3 neighbours of [{a},{b}]");
        }
    }

    #[test]
    fn example_g_geodesic_vertices_are_connected() {
        let g = fixtures::example_g::<Q>();
        let w = crate::tame::reduce(&g, &Default::default()).certified_word().unwrap();
        let e = explore(&ExploreConfig::new(2, vec![]).with_generators(vec![w.clone()]));
        let s = &e.complex;
        let x1 = s.find_t1(&p("x1")).unwrap();
        let x4 = s.find_t1(&p("x4")).unwrap();
        let gx4 = s.find(&act(&w, &Vertex::t1(&p("x4")).unwrap())).unwrap();
        assert!(s.edge_distance(x1, x4).is_some());
        assert!(s.edge_distance(x4, gx4).is_some());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let cfg = ExploreConfig::<Q>::new(2, vec![p("x1")]);
        let a = explore(&cfg.clone().with_mode(ExecMode::Sequential));
        let b = explore(&cfg.with_mode(ExecMode::Parallel));
        assert_eq!(a.elements, b.elements);
        assert_eq!(a.complex.counts(), b.complex.counts());
    }
}
