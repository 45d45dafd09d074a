//! Elliptic/hyperbolic classification of a word acting on the complex,
//! measured with edge-path distances in an explored piece of the skeleton.
//!
//! Every verdict is relative to the explored chain: an elliptic verdict
//! exhibits a fixed vertex, a hyperbolic verdict exhibits a vertex `x` with
//! `d(x, w^k·x) = k·d(x, w·x) > 0` for `k = 1, 2, 3` inside that chain.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::field::Field;
use crate::tame::{TameAuto, TameWord};

use super::fingerprint::{apply, big_square_prints, identity_values, sample_points, ModMap, VertexPrint};
use super::subcomplex::{BigSquareData, CORNER_T2, T2_PAIRS};
use super::vertex::Vertex;

/// Label attached to every verdict of [`classify_isometry`].
pub const SKELETON_CERTIFIED: &str = "skeleton-certified";

/// Outcome of [`classify_isometry`].
#[derive(Clone, Debug)]
pub enum IsometryClass<F: Field> {
    Elliptic {
        fixed: Vertex<F>,
    },
    Hyperbolic {
        /// The vertex `x` of the standard big square realizing the length.
        start: Vertex<F>,
        /// `d(x, w·x)` in edges.
        length: usize,
        /// `d(x, w^k·x)` for `k = 1, 2, 3`.
        distances: [usize; 3],
    },
    Undetermined,
}

impl<F: Field> IsometryClass<F> {
    pub fn name(&self) -> &'static str {
        match self {
            IsometryClass::Elliptic { .. } => "elliptic",
            IsometryClass::Hyperbolic { .. } => "hyperbolic",
            IsometryClass::Undetermined => "undetermined",
        }
    }

    pub fn skeleton_length(&self) -> Option<usize> {
        match self {
            IsometryClass::Hyperbolic { length, .. } => Some(*length),
            _ => None,
        }
    }
}

impl<F: Field> fmt::Display for IsometryClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsometryClass::Elliptic { fixed } => write!(f, "elliptic, fixes {fixed} ({SKELETON_CERTIFIED})"),
            IsometryClass::Hyperbolic { length, start, distances } => write!(
                f,
                "hyperbolic, skeleton length {length} from {start}, d(x, w^k x) = {distances:?} ({SKELETON_CERTIFIED})"
            ),
            IsometryClass::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// The verdict with the size of the chain it was read from.
#[derive(Clone, Debug)]
pub struct IsometryReport<F: Field> {
    pub class: IsometryClass<F>,
    /// Number of powers of the word spanned by the chain.
    pub powers: usize,
    /// Distinct vertices and edges of the chain.
    pub vertices: usize,
    pub edges: usize,
}

/// The automorphisms whose big squares form the chain from `[id]` to
/// `w^powers·[id]`: the inverses of all prefixes of `w^powers`. Exact, so
/// only usable while the components stay small.
pub fn orbit_chain<F: Field>(w: &TameWord<F>, powers: usize) -> Vec<TameAuto<F>> {
    let inverse_factors: Vec<_> = w.factors.iter().map(|f| f.inverse()).collect();
    let mut cur = TameAuto::identity();
    let mut out = vec![cur.clone()];
    for _ in 0..powers {
        for fac in &inverse_factors {
            cur = fac.apply_left(&cur);
            out.push(cur.clone());
        }
    }
    out
}

/// One-skeleton of the chain of big squares, vertices keyed by fingerprint.
struct Chain {
    /// `ids[j][slot]` for the big square of the `j`-th chain element.
    ids: Vec<[usize; 9]>,
    adjacency: Vec<Vec<usize>>,
    edges: usize,
}

impl Chain {
    fn build<F: Field>(w: &TameWord<F>, powers: usize) -> Self {
        let maps: Vec<ModMap> = w.factors.iter().map(|f| ModMap::of_factor(&f.inverse())).collect();
        let mut index: HashMap<VertexPrint, usize> = HashMap::new();
        let mut adjacency: Vec<Vec<usize>> = Vec::new();
        let mut ids = Vec::new();
        let mut edges = 0;
        let mut h = identity_values(&sample_points());
        let mut record = |h: &_, index: &mut HashMap<VertexPrint, usize>, adjacency: &mut Vec<Vec<usize>>| {
            let prints = big_square_prints(h, &T2_PAIRS);
            let slot_ids: [usize; 9] = prints.map(|p| {
                let next = index.len();
                *index.entry(p).or_insert_with(|| {
                    adjacency.push(Vec::new());
                    next
                })
            });
            let mut link = |a: usize, b: usize| {
                if a != b && !adjacency[a].contains(&b) {
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                    edges += 1;
                }
            };
            for (i, &(p, q)) in CORNER_T2.iter().enumerate() {
                link(slot_ids[i], slot_ids[4 + p]);
                link(slot_ids[i], slot_ids[4 + q]);
            }
            for k in 4..8 {
                link(slot_ids[k], slot_ids[8]);
            }
            slot_ids
        };
        ids.push(record(&h, &mut index, &mut adjacency));
        for _ in 0..powers {
            for m in &maps {
                h = apply(m, &h);
                ids.push(record(&h, &mut index, &mut adjacency));
            }
        }
        Chain { ids, adjacency, edges }
    }

    fn distances_from(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adjacency.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].expect("queued vertices have a distance");
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// Edge-path distance between `[id]` and its image under the word, measured
/// inside the chain of big squares of the word's prefixes. This is an upper
/// bound for the distance in the complex.
pub fn chain_distance<F: Field>(w: &TameWord<F>) -> Option<usize> {
    let chain = Chain::build(w, 1);
    let dist = chain.distances_from(chain.ids[0][8]);
    dist[chain.ids[w.len()][8]]
}

fn slot_vertex<F: Field>(h: &TameAuto<F>, slot: usize) -> Vertex<F> {
    let data = BigSquareData::of(h);
    match slot {
        0..=3 => data.t1[slot].clone(),
        4..=7 => data.t2[slot - 4].clone(),
        _ => data.t3,
    }
}

/// Classify `w` on the chain of big squares from `[id]` to
/// `w^k·[id]`, `k ≤ max(horizon, 3)`.
///
/// The chain element `h_j` satisfies `h_(j+n) = h_j ∘ w⁻¹` for a word of
/// length `n`, so `w` maps each vertex of the `j`-th big square to the same
/// vertex of the `(j+n)`-th one. Elliptic when some chain vertex is fixed;
/// hyperbolic when a vertex `x` of the big square of `[id]` satisfies
/// `d(x, w^k·x) = k·d(x, w·x) > 0` for `k = 1, 2, 3`, reporting the smallest
/// such length. Vertices are compared by fingerprint (see
/// [`super::fingerprint`]); distances are edge-path distances in the chain.
pub fn classify_isometry<F: Field>(w: &TameWord<F>, horizon: usize) -> IsometryReport<F> {
    let powers = horizon.max(3);
    let chain = Chain::build(w, powers);
    let n = w.len();
    let report = |class| IsometryReport { class, powers, vertices: chain.adjacency.len(), edges: chain.edges };
    for j in 0..chain.ids.len() - n {
        if let Some(slot) = (0..9).find(|&s| chain.ids[j][s] == chain.ids[j + n][s]) {
            let prefix = TameWord::new(w.power(powers).factors[..j].to_vec());
            let fixed = slot_vertex(&prefix.invert().evaluate(), slot);
            return report(IsometryClass::Elliptic { fixed });
        }
    }
    let mut best: Option<(usize, usize)> = None;
    for slot in 0..9 {
        let dist = chain.distances_from(chain.ids[0][slot]);
        let d: Vec<Option<usize>> = (1..=3).map(|k| dist[chain.ids[k * n][slot]]).collect();
        let Some(d1) = d[0] else { continue };
        let linear = d.iter().enumerate().all(|(k, dk)| *dk == Some((k + 1) * d1));
        if d1 > 0 && linear && best.is_none_or(|(b, _)| d1 < b) {
            best = Some((d1, slot));
        }
    }
    match best {
        Some((length, slot)) => report(IsometryClass::Hyperbolic {
            start: slot_vertex(&TameAuto::identity(), slot),
            length,
            distances: [length, 2 * length, 3 * length],
        }),
        None => report(IsometryClass::Undetermined),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use crate::fixtures;
    use crate::orth::Mat4;
    use crate::poly::Poly;
    use crate::tame::{ElementaryAuto, Factor, Family};

    #[test]
    fn orthogonal_words_are_elliptic() {
        let w = TameWord::<Q>::new(vec![Factor::Orth(Mat4::tau()), Factor::Orth(fixtures::sigma())]);
        let r = classify_isometry(&w, 3);
        assert!(matches!(r.class, IsometryClass::Elliptic { .. }));
    }

    #[test]
    fn elementary_maps_are_elliptic() {
        let e = ElementaryAuto::new(Family::E24, Poly::<Q>::parse("x1^2").unwrap()).unwrap();
        let r = classify_isometry(&TameWord::single(Factor::Elem(e)), 3);
        assert!(matches!(r.class, IsometryClass::Elliptic { .. }));
    }

    #[test]
    fn example_g_is_hyperbolic() {
        let g = fixtures::example_g::<Q>();
        let w = crate::tame::reduce(&g, &Default::default()).certified_word().unwrap();
        let r = classify_isometry(&w, 3);
        match r.class {
            IsometryClass::Hyperbolic { length, distances, .. } => {
                assert_eq!(distances, [length, 2 * length, 3 * length]);
            }
            other => panic!("expected a hyperbolic verdict, got {other}"),
        }
    }

    #[test]
    fn fingerprints_agree_with_exact_vertices_on_short_chains() {
        let g = fixtures::example_g::<Q>();
        let w = crate::tame::reduce(&g, &Default::default()).certified_word().unwrap();
        let exact = crate::complex::union_of_big_squares(&orbit_chain(&w, 2), crate::ExecMode::Sequential).0;
        let chain = Chain::build(&w, 2);
        assert_eq!(exact.vertices().len(), chain.adjacency.len());
        assert_eq!(exact.edges().len(), chain.edges);
    }
}
