//! Finite subcomplexes: deduplicated vertices, edges, squares and the
//! horizontal/vertical orientation of type-2 vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::field::Field;
use crate::orth::Mat4;
use crate::poly::Poly;
use crate::tame::TameAuto;

use super::vertex::{Vertex, VertexKey};

/// A square `[f_i], [f_i, f_j], [f_i, f_k], [f]` by vertex indices.
/// Its boundary cycle is `t1 - a - t3 - b - t1`, with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Square {
    pub t1: usize,
    pub a: usize,
    pub b: usize,
    pub t3: usize,
}

impl Square {
    pub fn new(t1: usize, a: usize, b: usize, t3: usize) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Square { t1, a, b, t3 }
    }

    pub fn vertices(&self) -> [usize; 4] {
        [self.t1, self.a, self.t3, self.b]
    }

    /// The two pairs of opposite vertices.
    pub fn diagonals(&self) -> [(usize, usize); 2] {
        [(self.t1, self.t3), (self.a, self.b)]
    }

    /// The two vertices adjacent to `v` along the boundary.
    pub fn neighbours_of(&self, v: usize) -> Option<(usize, usize)> {
        if v == self.t1 || v == self.t3 {
            Some((self.a, self.b))
        } else if v == self.a || v == self.b {
            Some((self.t1, self.t3))
        } else {
            None
        }
    }

    pub fn edges(&self) -> [(usize, usize); 4] {
        [(self.t1, self.a), (self.a, self.t3), (self.t3, self.b), (self.b, self.t1)].map(ordered)
    }
}

fn ordered((x, y): (usize, usize)) -> (usize, usize) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Orientation of a type-2 vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Indices of the nine vertices of a big square.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BigSquareIds {
    /// `[f1], [f2], [f3], [f4]`.
    pub t1: [usize; 4],
    /// `[f1,f2], [f1,f3], [f2,f4], [f3,f4]`.
    pub t2: [usize; 4],
    pub t3: usize,
}

/// The canonical vertices of a big square, computed ahead of insertion so
/// that the expensive part can run in parallel.
#[derive(Clone, Debug)]
pub struct BigSquareData<F: Field> {
    pub t1: [Vertex<F>; 4],
    pub t2: [Vertex<F>; 4],
    pub t3: Vertex<F>,
    /// Whether `f` lies in the index-two subgroup with Jacobian `+1`.
    pub special: bool,
}

/// Component pairs of the type-2 vertices, 1-based.
pub const T2_PAIRS: [(usize, usize); 4] = [(1, 2), (1, 3), (2, 4), (3, 4)];

/// For each type-1 corner, the type-2 vertices next to it (indices into
/// [`T2_PAIRS`]).
pub const CORNER_T2: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 3), (2, 3)];

/// Orientation of the `k`-th type-2 vertex of a big square (see
/// [`T2_PAIRS`]): the pairs `{1,2}` and `{3,4}` are horizontal for special
/// maps, the pairs `{1,3}` and `{2,4}` for the others.
pub fn t2_orientation(special: bool, k: usize) -> Orientation {
    if (k == 0 || k == 3) == special {
        Orientation::Horizontal
    } else {
        Orientation::Vertical
    }
}

/// Sign of the constant Jacobian determinant, read off the linear part.
pub fn is_special<F: Field>(f: &TameAuto<F>) -> bool {
    let lin: [[F; 4]; 4] = std::array::from_fn(|i| {
        let p = f.f(i + 1);
        std::array::from_fn(|j| p.coeff(&crate::poly::Exponent4::var(j)))
    });
    Mat4(lin).det().is_one()
}

impl<F: Field> BigSquareData<F> {
    pub fn of(f: &TameAuto<F>) -> Self {
        let c = f.components();
        let t1 = std::array::from_fn(|i| Vertex::t1(&c[i]).expect("components are nonzero"));
        let t2 = T2_PAIRS.map(|(i, j)| Vertex::t2(&c[i - 1], &c[j - 1]).expect("components are independent"));
        BigSquareData { t1, t2, t3: Vertex::t3(f), special: is_special(f) }
    }
}

/// A finite subcomplex of the square complex.
#[derive(Clone, Debug, Default)]
pub struct SubComplex<F: Field> {
    vertices: Vec<Vertex<F>>,
    index: HashMap<VertexKey<F>, Vec<usize>>,
    adjacency: Vec<BTreeSet<usize>>,
    edges: BTreeSet<(usize, usize)>,
    squares: Vec<Square>,
    square_set: HashMap<Square, usize>,
    squares_at: Vec<Vec<usize>>,
    orientation: BTreeMap<usize, Orientation>,
    orientation_conflicts: BTreeSet<usize>,
}

impl<F: Field> SubComplex<F> {
    pub fn new() -> Self {
        SubComplex {
            vertices: Vec::new(),
            index: HashMap::new(),
            adjacency: Vec::new(),
            edges: BTreeSet::new(),
            squares: Vec::new(),
            square_set: HashMap::new(),
            squares_at: Vec::new(),
            orientation: BTreeMap::new(),
            orientation_conflicts: BTreeSet::new(),
        }
    }

    pub fn vertices(&self) -> &[Vertex<F>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex<F> {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn neighbours(&self, i: usize) -> &BTreeSet<usize> {
        &self.adjacency[i]
    }

    /// Indices into [`SubComplex::squares`] of the squares containing `i`.
    pub fn squares_at(&self, i: usize) -> &[usize] {
        &self.squares_at[i]
    }

    pub fn orientation(&self, i: usize) -> Option<Orientation> {
        self.orientation.get(&i).copied()
    }

    /// Type-2 vertices that received both orientations.
    pub fn orientation_conflicts(&self) -> &BTreeSet<usize> {
        &self.orientation_conflicts
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.squares.len())
    }

    /// Index of a vertex equal to `v`.
    pub fn find(&self, v: &Vertex<F>) -> Option<usize> {
        self.index.get(&v.key())?.iter().copied().find(|&i| &self.vertices[i] == v)
    }

    pub fn find_t1(&self, p: &Poly<F>) -> Option<usize> {
        self.find(&Vertex::t1(p).ok()?)
    }

    pub fn find_t3(&self, f: &TameAuto<F>) -> Option<usize> {
        self.find(&Vertex::t3(f))
    }

    /// Insert `v` unless an equal vertex is present; returns its index.
    pub fn insert_vertex(&mut self, v: Vertex<F>) -> usize {
        if let Some(i) = self.find(&v) {
            return i;
        }
        let i = self.vertices.len();
        self.index.entry(v.key()).or_default().push(i);
        self.vertices.push(v);
        self.adjacency.push(BTreeSet::new());
        self.squares_at.push(Vec::new());
        i
    }

    pub fn add_edge(&mut self, x: usize, y: usize) {
        if x == y {
            return;
        }
        self.edges.insert(ordered((x, y)));
        self.adjacency[x].insert(y);
        self.adjacency[y].insert(x);
    }

    /// Add a square and its four edges without any consistency check. Used
    /// by construction code and by negative controls.
    pub fn add_square(&mut self, sq: Square) {
        if self.square_set.contains_key(&sq) {
            return;
        }
        for (x, y) in sq.edges() {
            self.add_edge(x, y);
        }
        let k = self.squares.len();
        self.square_set.insert(sq, k);
        self.squares.push(sq);
        for v in [sq.t1, sq.a, sq.b, sq.t3] {
            self.squares_at[v].push(k);
        }
    }

    pub(crate) fn set_orientation(&mut self, i: usize, o: Orientation) {
        match self.orientation.get(&i) {
            Some(&old) if old != o => {
                self.orientation_conflicts.insert(i);
            }
            Some(_) => {}
            None => {
                self.orientation.insert(i, o);
            }
        }
    }

    /// Insert a precomputed big square.
    pub fn insert_big_square(&mut self, data: BigSquareData<F>) -> BigSquareIds {
        let BigSquareData { t1, t2, t3, special } = data;
        let t1 = t1.map(|v| self.insert_vertex(v));
        let t2 = t2.map(|v| self.insert_vertex(v));
        let t3 = self.insert_vertex(t3);
        for (k, &v) in t2.iter().enumerate() {
            self.set_orientation(v, t2_orientation(special, k));
        }
        for (i, &(p, q)) in CORNER_T2.iter().enumerate() {
            self.add_square(Square::new(t1[i], t2[p], t2[q], t3));
        }
        BigSquareIds { t1, t2, t3 }
    }

    pub fn add_big_square(&mut self, f: &TameAuto<F>) -> BigSquareIds {
        self.insert_big_square(BigSquareData::of(f))
    }

    /// Shortest edge-path distance, or `None` when unreachable.
    pub fn edge_distance(&self, from: usize, to: usize) -> Option<usize> {
        self.distances_from(from)[to]
    }

    /// Breadth-first distances from `from` to every vertex.
    pub fn distances_from(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
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

/// The link of a vertex: neighbours joined once per square through the
/// vertex (a multigraph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub vertices: Vec<usize>,
    /// Edges between positions in `vertices`, one per square.
    pub edges: Vec<(usize, usize)>,
}

/// Loops found in a link within the explored subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthReport {
    pub vertex: usize,
    pub link_vertices: usize,
    pub link_edges: usize,
    /// Length of the shortest loop, `None` if the link is a forest.
    pub girth: Option<usize>,
    pub bipartite: bool,
    /// The bipartition separates vertex types or orientations.
    pub parts_by_type: bool,
}

impl GirthReport {
    pub fn ok(&self) -> bool {
        self.girth.is_none_or(|g| g >= 4)
    }
}

/// The link of `v` inside `s`.
pub fn link<F: Field>(s: &SubComplex<F>, v: usize) -> Link {
    let vertices: Vec<usize> = s.neighbours(v).iter().copied().collect();
    let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let edges = s
        .squares_at(v)
        .iter()
        .filter_map(|&k| s.squares()[k].neighbours_of(v))
        .map(|(x, y)| (pos[&x], pos[&y]))
        .collect();
    Link { vertices, edges }
}

/// Girth of a multigraph on `n` vertices: parallel edges give loops of
/// length 2, self-loops length 1.
pub fn multigraph_girth(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut best: Option<usize> = None;
    for (id, &(x, y)) in edges.iter().enumerate() {
        if x == y {
            return Some(1);
        }
        adj[x].push((y, id));
        adj[y].push((x, id));
    }
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, id) in &adj[x] {
                if id == via[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    via[y] = id;
                    queue.push_back(y);
                } else {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Two-colouring of a simple graph, if one exists.
pub fn two_colouring(n: usize, edges: &[(usize, usize)]) -> Option<Vec<bool>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(x, y) in edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let c = colour[x].expect("queued vertices are coloured");
            for &y in &adj[x] {
                match colour[y] {
                    None => {
                        colour[y] = Some(!c);
                        queue.push_back(y);
                    }
                    Some(d) if d == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
}

/// Girth and bipartiteness of the link of `v` within `s`.
pub fn link_girth_ok<F: Field>(v: usize, s: &SubComplex<F>) -> GirthReport {
    let l = link(s, v);
    let n = l.vertices.len();
    let girth = multigraph_girth(n, &l.edges);
    let colouring = two_colouring(n, &l.edges);
    // Neighbours of a type-2 or type-3 vertex already have two types; the
    // neighbours of a type-1 vertex are type-2 vertices, split by orientation.
    let label = |x: usize| match s.vertex(x).kind() {
        2 => match s.orientation(x) {
            Some(Orientation::Horizontal) => 0,
            Some(Orientation::Vertical) => 1,
            None => 2,
        },
        k => 3 + k as usize,
    };
    let parts_by_type = l.edges.iter().all(|&(x, y)| label(l.vertices[x]) != label(l.vertices[y]));
    GirthReport {
        vertex: v,
        link_vertices: n,
        link_edges: l.edges.len(),
        girth,
        bipartite: colouring.is_some(),
        parts_by_type,
    }
}

/// A pair of distinct squares sharing a diagonal, which forces them to meet
/// in more than a single edge or vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionViolation {
    pub first: Square,
    pub second: Square,
    pub diagonal: (usize, usize),
}

/// Outcome of the pairwise square intersection check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub squares: usize,
    /// Pairs of squares that meet at all.
    pub meeting_pairs: usize,
    pub violations: Vec<IntersectionViolation>,
}

impl IntersectionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that two distinct squares meet in nothing, one vertex or one edge.
///
/// Any three vertices of a square contain a diagonal, so a bad pair is
/// exactly a pair sharing a diagonal. The same test shows that opposite
/// vertices determine their square.
pub fn square_intersection_ok<F: Field>(s: &SubComplex<F>) -> IntersectionReport {
    let mut by_diagonal: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (k, sq) in s.squares().iter().enumerate() {
        for d in sq.diagonals() {
            by_diagonal.entry(ordered(d)).or_default().push(k);
        }
    }
    let mut violations = Vec::new();
    let mut keys: Vec<_> = by_diagonal.iter().filter(|(_, v)| v.len() > 1).collect();
    keys.sort();
    for (&diagonal, list) in keys {
        for (i, &x) in list.iter().enumerate() {
            for &y in &list[i + 1..] {
                violations.push(IntersectionViolation { first: s.squares()[x], second: s.squares()[y], diagonal });
            }
        }
    }
    let mut meeting = BTreeSet::new();
    for v in 0..s.vertices().len() {
        let at = s.squares_at(v);
        for (i, &x) in at.iter().enumerate() {
            for &y in &at[i + 1..] {
                meeting.insert(ordered((x, y)));
            }
        }
    }
    IntersectionReport { squares: s.squares().len(), meeting_pairs: meeting.len(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn standard_big_square() {
        let mut s = SubComplex::<Q>::new();
        let ids = s.add_big_square(&TameAuto::identity());
        assert_eq!(s.counts(), (9, 12, 4));
        let x1 = ids.t1[0];
        let x4 = ids.t1[3];
        assert_eq!(s.edge_distance(x1, ids.t2[0]), Some(1));
        assert_eq!(s.edge_distance(x1, x4), Some(4));
        assert_eq!(s.orientation(ids.t2[0]), Some(Orientation::Horizontal));
        assert_eq!(s.orientation(ids.t2[1]), Some(Orientation::Vertical));
        // The transpose gives the same nine vertices.
        let tau = TameAuto::from_linear(&Mat4::tau()).unwrap();
        s.add_big_square(&tau);
        assert_eq!(s.counts(), (9, 12, 4));
        assert!(s.orientation_conflicts().is_empty());
        assert_eq!(s.find_t1(&p("2*x3")), Some(ids.t1[2]));
    }

    #[test]
    fn standard_square_intersections_and_links() {
        let mut s = SubComplex::<Q>::new();
        let ids = s.add_big_square(&TameAuto::identity());
        let r = square_intersection_ok(&s);
        assert!(r.ok());
        assert_eq!(r.meeting_pairs, 6);
        let l = link_girth_ok(ids.t2[1], &s);
        assert!(l.ok() && l.bipartite && l.parts_by_type);
        let at_id = link_girth_ok(ids.t3, &s);
        assert_eq!((at_id.girth, at_id.bipartite), (Some(4), true));
    }

    #[test]
    fn duplicated_diagonal_is_reported() {
        let mut s = SubComplex::<Q>::new();
        let ids = s.add_big_square(&TameAuto::identity());
        let extra = s.insert_vertex(Vertex::t2(&p("x1"), &p("x4")).unwrap());
        s.add_square(Square::new(ids.t1[0], ids.t2[0], extra, ids.t3));
        let r = square_intersection_ok(&s);
        assert!(!r.ok());
        assert_eq!(r.violations[0].diagonal, ordered((ids.t1[0], ids.t3)));
    }

    #[test]
    fn girth_of_small_multigraphs() {
        assert_eq!(multigraph_girth(3, &[(0, 1), (1, 2)]), None);
        assert_eq!(multigraph_girth(2, &[(0, 1), (0, 1)]), Some(2));
        assert_eq!(multigraph_girth(3, &[(0, 1), (1, 2), (2, 0)]), Some(3));
        assert_eq!(multigraph_girth(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]), Some(4));
        assert!(two_colouring(3, &[(0, 1), (1, 2), (2, 0)]).is_none());
    }
}
