//! Tame automorphisms of the quadric, their words, and the reduction engine.

pub mod auto;
pub mod degree;
pub mod reduce;

pub use auto::{klein_group, quadric_residual, ElementaryAuto, Factor, Family, TameAuto, TameWord};
pub use degree::{
    component_drop_equiv, hom_membership, leading_relation, lower_bound_check, parachute,
    ComponentDropReport, GenericDegreeData, HRelation, LowerBoundReport,
};
pub use reduce::{
    find_elementary_reduction, is_tame, reduce, reduce_batch, search_reduction, Budget,
    FamilyReport, Level0Outcome, MultiLayerOutcome, NoReductionReport, ReductionTrace, Step, normalize_left, level0_reduction, quotient_degree_gaps,
    TameVerdict, Verdict,
};
