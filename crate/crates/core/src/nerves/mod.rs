//! Nerves of finite groupoids and categories, the two nerve adjunctions, and van Kampen
//! pasting checks.

pub mod category;
pub mod checks;
pub mod nerve;
pub mod vankampen;

pub use category::{category_catalog, groupoid_catalog, FiniteCategory, FiniteGroupoid};
pub use checks::{counit_check, dir_counit_check, unit_map, Report, UnitMap, Verdict};
pub use nerve::{nerve, nerve_trunc2, symmetric_nerve, symmetric_nerve_trunc2, NerveSimplexList};
pub use vankampen::{
    pushout_category_presentation, pushout_groupoid_presentation, span_catalog, vankampen_check, GroupSummary,
    SpaceSource, Span, SpanSpec,
};
