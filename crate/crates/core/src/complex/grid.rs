//! Grids: the explicit 4×4 grid around `[id]` and an exhaustive search for
//! square grids inside an explored subcomplex.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::DomainError;
use crate::exec::ExecMode;
use crate::field::Field;
use crate::poly::{jacobian, Poly};
use crate::tame::{ElementaryAuto, Family, TameAuto};

use super::subcomplex::{t2_orientation, BigSquareData, Square, SubComplex, CORNER_T2};
use super::vertex::Vertex;

/// A lattice point; `x` grows to the east, `y` to the north.
pub type Pos = (i32, i32);

/// The 4×4 grid with its lattice labels.
#[derive(Clone, Debug)]
pub struct Grid4<F: Field> {
    pub complex: SubComplex<F>,
    /// Lattice position of every vertex, `-2..=2` in both directions.
    pub positions: BTreeMap<Pos, usize>,
    /// The automorphism behind each type-3 vertex (even coordinates).
    pub automorphisms: BTreeMap<Pos, TameAuto<F>>,
    /// Some positions share a vertex, as happens when a parameter is zero.
    pub degenerate: bool,
}

fn univariate<F: Field>(name: &str, p: &Poly<F>, var: usize) -> Result<(), DomainError> {
    if p.uses_only(&[var]) {
        Ok(())
    } else {
        Err(DomainError::WrongVariables(format!("{name} = {p}"), format!("{{x{var}}}")))
    }
}

/// `(x1, x2 + x1*W, x3 + x1*N, x4 + x2*N + x3*W + x1*N*W)`, the north-west
/// corner of the grid written out.
pub fn grid_corner_nw<F: Field>(n: &Poly<F>, w: &Poly<F>) -> [Poly<F>; 4] {
    let [x1, x2, x3, x4] = [1, 2, 3, 4].map(Poly::<F>::x);
    [
        x1.clone(),
        &x2 + &(&x1 * w),
        &x3 + &(&x1 * n),
        &(&(&x4 + &(&x2 * n)) + &(&x3 * w)) + &(&(&x1 * n) * w),
    ]
}

/// Jacobian determinant of [`grid_corner_nw`]. It is `1` exactly when
/// `∂W/∂x3 · ∂N/∂x2 = 0`; otherwise the corner is not invertible and the
/// grid cannot close up.
pub fn grid_corner_jacobian<F: Field>(n: &Poly<F>, w: &Poly<F>) -> Poly<F> {
    let c = grid_corner_nw(n, w);
    jacobian([&c[0], &c[1], &c[2], &c[3]])
}

fn elementary<F: Field>(family: Family, p: &Poly<F>) -> Result<TameAuto<F>, DomainError> {
    Ok(ElementaryAuto::new(family, p.clone())?.to_auto())
}

fn grid_error(msg: impl Into<String>) -> DomainError {
    DomainError::GridRejected(msg.into())
}

/// The 25-vertex grid around `[id]` built from `N ∈ C[x2]`, `S ∈ C[x3]`,
/// `E ∈ C[x4]`, `W ∈ C[x1]`.
///
/// Type-3 vertices sit at even positions: `[id]` in the middle, `E34(N)`,
/// `E13(E)`, `E12(S)`, `E24(W)` on the axes and the products of neighbouring
/// maps in the corners. The four coordinate vertices `[x1]`, `[x2]`, `[x3]`,
/// `[x4]` sit at `(-1,1)`, `(1,1)`, `(-1,-1)`, `(1,-1)`. Every square is
/// checked against the big square of its type-3 corner. Zero parameters
/// are allowed and fold the grid onto fewer vertices.
pub fn grid_4x4<F: Field>(n: &Poly<F>, s: &Poly<F>, e: &Poly<F>, w: &Poly<F>) -> Result<Grid4<F>, DomainError> {
    univariate("N", n, 2)?;
    univariate("S", s, 3)?;
    univariate("E", e, 4)?;
    univariate("W", w, 1)?;
    let j = grid_corner_jacobian(n, w);
    if !j.is_constant() || j.constant_term().is_zero() {
        return Err(grid_error(format!("north-west corner has Jacobian {j}")));
    }
    let e_n = elementary(Family::E34, n)?;
    let e_e = elementary(Family::E13, e)?;
    let e_s = elementary(Family::E12, s)?;
    let e_w = elementary(Family::E24, w)?;
    let nw = e_w.compose(&e_n);
    if nw.components() != &grid_corner_nw(n, w) {
        return Err(grid_error("north-west corner differs from its closed form"));
    }
    let t3: [(Pos, TameAuto<F>); 9] = [
        ((0, 0), TameAuto::identity()),
        ((0, 2), e_n.clone()),
        ((2, 0), e_e.clone()),
        ((0, -2), e_s.clone()),
        ((-2, 0), e_w.clone()),
        ((-2, 2), nw),
        ((2, 2), e_n.compose(&e_e)),
        ((2, -2), e_e.compose(&e_s)),
        ((-2, -2), e_s.compose(&e_w)),
    ];
    let mut complex = SubComplex::new();
    let mut positions: BTreeMap<Pos, usize> = BTreeMap::new();
    let t1_names = [((-1, 1), 1), ((1, 1), 2), ((-1, -1), 3), ((1, -1), 4)];
    for &(pos, k) in &t1_names {
        let v = complex.insert_vertex(Vertex::t1(&Poly::x(k))?);
        positions.insert(pos, v);
    }
    for (pos, (a, b)) in [((0, 1), (1, 2)), ((-1, 0), (1, 3)), ((1, 0), (2, 4)), ((0, -1), (3, 4))] {
        let v = complex.insert_vertex(Vertex::t2(&Poly::x(a), &Poly::x(b))?);
        positions.insert(pos, v);
    }
    for (c, f) in &t3 {
        let data = BigSquareData::of(f);
        let t3v = complex.insert_vertex(data.t3.clone());
        place(&mut positions, *c, t3v)?;
        for &(d, _) in &t1_names {
            if (d.0 - c.0).abs() != 1 || (d.1 - c.1).abs() != 1 {
                continue;
            }
            let t1v = positions[&d];
            let corner = (0..4)
                .find(|&i| complex.vertex(t1v) == &data.t1[i])
                .ok_or_else(|| grid_error(format!("{} is not a corner of the square at {c:?}", complex.vertex(t1v))))?;
            let (p, q) = CORNER_T2[corner];
            let (ta, tb) = (complex.insert_vertex(data.t2[p].clone()), complex.insert_vertex(data.t2[q].clone()));
            let (pa, pb) = ((c.0, d.1), (d.0, c.1));
            match (positions.get(&pa).copied(), positions.get(&pb).copied()) {
                (Some(x), _) if x == ta => place(&mut positions, pb, tb)?,
                (Some(x), _) if x == tb => place(&mut positions, pb, ta)?,
                (None, Some(y)) if y == ta => place(&mut positions, pa, tb)?,
                (None, Some(y)) if y == tb => place(&mut positions, pa, ta)?,
                _ => return Err(grid_error(format!("square at {c:?} and {d:?} does not match its neighbours"))),
            }
            complex.add_square(Square::new(t1v, positions[&pa], positions[&pb], t3v));
            complex.set_orientation(ta, t2_orientation(data.special, p));
            complex.set_orientation(tb, t2_orientation(data.special, q));
        }
    }
    let distinct: HashSet<usize> = positions.values().copied().collect();
    Ok(Grid4 { degenerate: distinct.len() < 25, complex, positions, automorphisms: t3.into_iter().collect() })
}

fn place(positions: &mut BTreeMap<Pos, usize>, pos: Pos, v: usize) -> Result<(), DomainError> {
    match positions.insert(pos, v) {
        Some(old) if old != v => Err(grid_error(format!("two vertices compete for position {pos:?}"))),
        _ => Ok(()),
    }
}

/// Type of the vertex sitting at the centre of a searched grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridCentre {
    Type1,
    Type3,
}

/// An injective map from the `n × n` lattice square to the subcomplex
/// sending every unit square onto a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridEmbedding {
    pub size: usize,
    pub map: BTreeMap<Pos, usize>,
}

/// Result of [`search_grid`].
#[derive(Clone, Debug)]
pub struct GridSearchReport {
    pub size: usize,
    pub centre: GridCentre,
    /// Number of candidate centres examined.
    pub centres: usize,
    /// One embedding per centre that admits one.
    pub found: Vec<GridEmbedding>,
}

impl GridSearchReport {
    pub fn none_found(&self) -> bool {
        self.found.is_empty()
    }
}

fn expected_kind(p: Pos, centre: GridCentre) -> u8 {
    let (ex, ey) = (p.0.rem_euclid(2) == 0, p.1.rem_euclid(2) == 0);
    let (even, odd) = match centre {
        GridCentre::Type1 => (1, 3),
        GridCentre::Type3 => (3, 1),
    };
    match (ex, ey) {
        (true, true) => even,
        (false, false) => odd,
        _ => 2,
    }
}

struct Searcher<'a, F: Field> {
    s: &'a SubComplex<F>,
    half: i32,
    centre: GridCentre,
    diag: &'a HashMap<(usize, usize), usize>,
    map: BTreeMap<Pos, usize>,
    used: HashSet<usize>,
}

/// An edge with both endpoints placed, the two corners it determines and the
/// candidate placements for them.
type EdgeChoice = (Pos, Pos, Pos, Pos, Vec<(usize, usize)>);

/// Unit squares by their lower-left corner, corners listed cyclically.
fn unit_corners(ll: Pos) -> [Pos; 4] {
    [ll, (ll.0 + 1, ll.1), (ll.0 + 1, ll.1 + 1), (ll.0, ll.1 + 1)]
}

impl<F: Field> Searcher<'_, F> {
    fn unit_squares(&self) -> impl Iterator<Item = Pos> + '_ {
        let h = self.half;
        (-h..h).flat_map(move |x| (-h..h).map(move |y| (x, y)))
    }

    fn fits(&self, p: Pos, v: usize) -> bool {
        !self.used.contains(&v) && self.s.vertex(v).kind() == expected_kind(p, self.centre)
    }

    fn assign(&mut self, p: Pos, v: usize) {
        self.map.insert(p, v);
        self.used.insert(v);
    }

    fn unassign(&mut self, p: Pos) {
        if let Some(v) = self.map.remove(&p) {
            self.used.remove(&v);
        }
    }

    /// The square with the given diagonal, if any.
    fn square_on(&self, a: usize, b: usize) -> Option<Square> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.diag.get(&key).map(|&k| self.s.squares()[k])
    }

    /// Squares containing the edge `u - v`, with the vertices opposite to
    /// `u` and to `v` respectively.
    fn squares_on_edge(&self, u: usize, v: usize) -> Vec<(usize, usize)> {
        let at_v: HashSet<usize> = self.s.squares_at(v).iter().copied().collect();
        self.s
            .squares_at(u)
            .iter()
            .filter(|k| at_v.contains(k))
            .filter_map(|&k| {
                let sq = self.s.squares()[k];
                let opp = |x: usize| sq.diagonals().iter().find_map(|&(a, b)| match x {
                    _ if x == a => Some(b),
                    _ if x == b => Some(a),
                    _ => None,
                });
                Some((opp(u)?, opp(v)?))
            })
            .collect()
    }

    fn search(&mut self) -> bool {
        let total = ((2 * self.half + 1) * (2 * self.half + 1)) as usize;
        if self.map.len() == total {
            return true;
        }
        // Completely determined squares first: three corners fix the fourth.
        let mut best_edge: Option<EdgeChoice> = None;
        let squares: Vec<Pos> = self.unit_squares().collect();
        for ll in squares {
            let c = unit_corners(ll);
            let got: Vec<bool> = c.iter().map(|p| self.map.contains_key(p)).collect();
            let n = got.iter().filter(|&&g| g).count();
            if n == 3 {
                let i = (0..4).find(|&i| !got[i]).expect("one corner is free");
                let (a, b) = (self.map[&c[(i + 1) % 4]], self.map[&c[(i + 3) % 4]]);
                let opposite = self.map[&c[(i + 2) % 4]];
                let Some(sq) = self.square_on(a, b) else { return false };
                let Some(v) = sq.diagonals().iter().find_map(|&(x, y)| {
                    (x == opposite).then_some(y).or((y == opposite).then_some(x))
                }) else {
                    return false;
                };
                if !self.fits(c[i], v) {
                    return false;
                }
                self.assign(c[i], v);
                if self.search() {
                    return true;
                }
                self.unassign(c[i]);
                return false;
            }
            if n == 2 {
                for i in 0..4 {
                    let (p, q) = (c[i], c[(i + 1) % 4]);
                    if got[i] && got[(i + 1) % 4] {
                        let options = self.squares_on_edge(self.map[&p], self.map[&q]);
                        if best_edge.as_ref().is_none_or(|b| options.len() < b.4.len()) {
                            best_edge = Some((p, q, c[(i + 2) % 4], c[(i + 3) % 4], options));
                        }
                    }
                }
            }
        }
        let Some((_, _, p_next, q_next, options)) = best_edge else { return false };
        for (vp, vq) in options {
            if vp == vq || !self.fits(p_next, vp) || !self.fits(q_next, vq) {
                continue;
            }
            self.assign(p_next, vp);
            self.assign(q_next, vq);
            if self.search() {
                return true;
            }
            self.unassign(q_next);
            self.unassign(p_next);
        }
        false
    }
}

fn search_from<F: Field>(
    s: &SubComplex<F>,
    diag: &HashMap<(usize, usize), usize>,
    size: usize,
    centre: GridCentre,
    v: usize,
) -> Option<GridEmbedding> {
    let mut st = Searcher {
        s,
        half: (size / 2) as i32,
        centre,
        diag,
        map: BTreeMap::new(),
        used: HashSet::new(),
    };
    st.assign((0, 0), v);
    // Up to the symmetries of the lattice, the unit square north-east of
    // the centre can be any square through `v`, in a fixed orientation.
    for &k in s.squares_at(v) {
        let sq = s.squares()[k];
        let (a, b) = sq.neighbours_of(v).expect("square contains its vertex");
        let far = sq.diagonals().iter().find_map(|&(x, y)| {
            (x == v).then_some(y).or((y == v).then_some(x))
        });
        let Some(far) = far else { continue };
        if !(st.fits((1, 0), a) && st.fits((0, 1), b) && st.fits((1, 1), far)) {
            continue;
        }
        st.assign((1, 0), a);
        st.assign((0, 1), b);
        st.assign((1, 1), far);
        if st.search() {
            return Some(GridEmbedding { size, map: st.map });
        }
        for p in [(1, 0), (0, 1), (1, 1)] {
            st.unassign(p);
        }
    }
    None
}

/// Search for `size × size` grids (`size` even) centred at vertices of the
/// given type. Every centre is tried; the search is exhaustive.
pub fn search_grid<F: Field>(s: &SubComplex<F>, size: usize, centre: GridCentre, mode: ExecMode) -> GridSearchReport {
    assert!(size >= 2 && size.is_multiple_of(2), "grid size must be a positive even number");
    let want = match centre {
        GridCentre::Type1 => 1,
        GridCentre::Type3 => 3,
    };
    let mut diag = HashMap::new();
    for (k, sq) in s.squares().iter().enumerate() {
        for (a, b) in sq.diagonals() {
            diag.insert(if a <= b { (a, b) } else { (b, a) }, k);
        }
    }
    // A centre of an n × n grid lies in at least four squares.
    let centres: Vec<usize> = (0..s.vertices().len())
        .filter(|&v| s.vertex(v).kind() == want && s.squares_at(v).len() >= 4)
        .collect();
    let found = mode
        .map(&centres, |&v| search_from(s, &diag, size, centre, v))
        .into_iter()
        .flatten()
        .collect();
    GridSearchReport { size, centre, centres: centres.len(), found }
}

/// Search for 6×6 grids centred at type-1 vertices.
pub fn search_6x6<F: Field>(s: &SubComplex<F>, mode: ExecMode) -> GridSearchReport {
    search_grid(s, 6, GridCentre::Type1, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn p(s: &str) -> Poly<Q> {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn coordinate_grid_is_valid() {
        let g = grid_4x4(&p("x2"), &p("x3"), &p("x4"), &p("x1")).unwrap();
        assert_eq!(g.complex.counts(), (25, 40, 16));
        assert!(!g.degenerate);
        let nw = &g.automorphisms[&(-2, 2)];
        let expect = [p("x1"), p("x2 + x1^2"), p("x3 + x1*x2"), p("x4 + x2^2 + x3*x1 + x1^2*x2")];
        assert_eq!(nw.components(), &expect);
        assert!(g.complex.orientation_conflicts().is_empty());
    }

    #[test]
    fn wrong_variables_are_rejected() {
        let r = grid_4x4(&p("x1"), &p("x3"), &p("x4"), &p("x1"));
        assert!(matches!(r, Err(DomainError::WrongVariables(..))));
        assert!(grid_4x4(&p("x2"), &p("x3"), &p("x4"), &p("x2")).is_err());
    }

    #[test]
    fn corner_jacobian_detects_the_obstruction() {
        assert_eq!(grid_corner_jacobian(&p("x2"), &p("x1")), Poly::one());
        // W depending on x3 and N on x2 break invertibility.
        assert_eq!(grid_corner_jacobian(&p("x2"), &p("x3")), p("1 - x1^2"));
    }

    #[test]
    fn zero_parameters_degenerate() {
        let g = grid_4x4(&Poly::<Q>::zero(), &Poly::zero(), &Poly::zero(), &Poly::zero()).unwrap();
        assert!(g.degenerate);
        assert_eq!(g.complex.counts(), (9, 12, 4));
    }

    #[test]
    fn search_recovers_the_grid_and_finds_no_larger_one() {
        let g = grid_4x4(&p("x2^2"), &p("x3"), &p("-x4"), &p("x1 + 1")).unwrap();
        let r = search_grid(&g.complex, 4, GridCentre::Type3, ExecMode::Sequential);
        assert_eq!(r.found.len(), 1);
        assert_eq!(r.found[0].map.len(), 25);
        assert!(search_6x6(&g.complex, ExecMode::Sequential).none_found());
        assert_eq!(search_grid(&g.complex, 2, GridCentre::Type1, ExecMode::Sequential).found.len(), 4);
    }
}
