//! Paths, delays, double paths and directed homotopies.

pub mod delay;
pub mod grid;
pub mod homotopy;
pub mod path;

pub use delay::Delay;
pub use grid::{caterpillar_grid, connection_grid, validate_grid, Connection, PathGrid};
pub use homotopy::{bounded_homotopy_reachable, immediate_homotopy, Reachability, DEFAULT_STATE_BUDGET};
pub use path::{Path, Support};
