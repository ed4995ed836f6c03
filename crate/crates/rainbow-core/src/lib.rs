pub mod coloring;
pub mod diam3;
pub mod families;
pub mod graph;
pub mod io;
pub mod radius;
pub mod reference;
pub mod solver;
pub mod verify;

pub use coloring::{ColorSet, EdgeColoring, MAX_TRACKED_COLORS};
pub use diam3::{color_diam3, color_diam3_traced, Diam3Error, Diam3Options, UvRows};
pub use graph::{EdgeId, Graph};
pub use radius::{color_by_radius, color_by_radius_traced, RadiusError};
pub use solver::{exact_rc, Budget, RcResult, RcStatus};
pub use verify::{rainbow_connected, VerificationReport, VerifyError, VerifyOptions};
