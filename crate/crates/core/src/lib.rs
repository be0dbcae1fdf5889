//! Combinatorial homotopy of simple spaces: paths, fundamental groupoids and categories,
//! nerves of small categories, and Rips-style spaces of finite metric data.

pub mod complex;
pub mod error;
pub mod fundamental;
pub mod metric;
pub mod nerves;
pub mod paths;
pub mod spaces;
pub mod trunc;
pub mod union_find;

pub use complex::{Complex, DirectedComplex, StepSet, TolSet, Vertex};
pub use error::{Error, Result};
pub use spaces::{build_space, Space, SpaceSpec};
pub use trunc::{EdgeId, Orientation, Triangle, TruncMap, TruncSet};
