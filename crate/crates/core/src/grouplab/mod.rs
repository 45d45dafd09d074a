//! Group-theoretic constructions: linearization of finite groups by
//! averaging, resonance of scalars, generators of the example families and
//! the amalgam normal form in the stabilizer of `[x1]`.

pub mod families;
pub mod group;
pub mod linearize;
pub mod normal_form;
pub mod resonance;

pub use families::{
    diagonal_element, gen_example_g, gen_henon, gen_hyperelliptic, gen_hyperelliptic_elementary, gen_parabolic,
    parabolic_step, CommutationCheck, ElementaryHyperelliptic, HyperellipticWitness, ParabolicFamily,
};
pub use group::{compose_maps, FiniteSubgroup, PolyMap, Triangular, TriangularGroup};
pub use linearize::{
    diagonalize_triangular, gl2_element, linearize, linearize_stab_x1, mean_linearize, Linearization, StabilizerCase,
    TriangularDiagonalization,
};
pub use normal_form::{in_h2, in_k1, stab_x1_normal_form, x1_scalar, AmalgamFactor, AmalgamWord};
pub use resonance::{resonance_identity, resonant, resonant_poly, ResonanceWitness};
