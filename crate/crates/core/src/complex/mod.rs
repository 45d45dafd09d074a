//! Finite pieces of the square complex on which the tame group acts:
//! canonical vertices, big squares, explored balls, link and intersection
//! checks, grids and a skeleton-metric isometry classifier.

pub mod explore;
pub mod export;
pub mod fingerprint;
pub mod grid;
pub mod isometry;
pub mod subcomplex;
pub mod vertex;

pub use explore::{explore, explore_moves, o4_sample, union_of_big_squares, word_apply_left, Exploration, ExploreConfig};
pub use export::{to_dot, to_json};
pub use grid::{
    grid_4x4, grid_corner_jacobian, grid_corner_nw, search_6x6, search_grid, Grid4, GridCentre, GridEmbedding,
    GridSearchReport, Pos,
};
pub use isometry::{chain_distance, classify_isometry, orbit_chain, IsometryClass, IsometryReport, SKELETON_CERTIFIED};
pub use subcomplex::{
    t2_orientation,
    is_special, link, link_girth_ok, multigraph_girth, square_intersection_ok, two_colouring, BigSquareData,
    BigSquareIds, GirthReport, IntersectionReport, IntersectionViolation, Link, Orientation, Square, SubComplex,
    CORNER_T2, T2_PAIRS,
};
pub use vertex::{
    act, canonical_t1, canonical_t2, canonical_t3, linear_relation, vertex_eq_t3, Vertex, VertexKey, VertexT1,
    VertexT2, VertexT3,
};

/// The big square of `f` as a subcomplex of its own.
pub fn big_square<F: crate::field::Field>(f: &crate::tame::TameAuto<F>) -> SubComplex<F> {
    let mut s = SubComplex::new();
    s.add_big_square(f);
    s
}
