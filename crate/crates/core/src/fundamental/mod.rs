//! Path components, fundamental groupoids and categories, and their invariants.

pub mod group;
pub mod homs;
pub mod presentation;
pub mod snf;
pub mod words;

pub use group::{abelianization, group_order, tietze_simplify, todd_coxeter, CosetTable, Tietze};
pub use homs::{
    brute_force_classes, groupoid_hom_count, ElementKey, GroupoidSolver, HomClasses, OracleCount, PiMonoid,
};
pub use presentation::{
    edge_path_groupoid, fundamental_category, pi0_complex, pi0_directed, pi0_trunc, vertex_group, Arrow,
    CategoryPresentation, Components, GroupPresentation, GroupoidPresentation, VertexGroup,
};
pub use snf::AbelianInvariants;
pub use words::{Letter, Word};
