//! Mixed point-feature labeling with parallel leaders.
//!
//! Every point of an instance is labeled either internally (a unit-square
//! label anchored at the point by its lower-left corner) or externally (a
//! leader ray of a fixed slope to the map boundary, then a horizontal outer
//! segment to a label outside the map). A labeling is valid when no two
//! internal labels overlap, no internal label meets a leader, and no two
//! leaders meet. The library maximizes the number of internal labels:
//!
//! * [`solver_left`] — dynamic program specialized to horizontal leaders
//!   pointing left,
//! * [`solver_general`] — dynamic program for an arbitrary leader direction,
//!   built on influence-region configurations,
//! * [`sweep`] — optimization over all leader directions via critical slopes,
//! * [`oracle`] — exhaustive enumeration used to certify the solvers,
//! * [`routing`] — placement of the external labels along the map boundary,
//! * [`preprocess`] — forced-label analysis, obstacles and scaling.
//!
//! All geometry is exact: coordinates are arbitrary-precision rationals and
//! every predicate is decided without rounding.

pub mod bits;
pub mod frame;
pub mod gen;
pub mod geometry;
pub mod instance;
pub mod oracle;
pub mod preprocess;
pub mod routing;
pub mod solver_general;
pub mod solver_left;
pub mod sweep;
pub mod validity;

mod prep;

pub use frame::{Frame, OrientationExponents, RegionKind, SlabClass, SlabQuery, ThetaClass};
pub use geometry::{Direction, LeaderRay, Point, Rect, Scalar};
pub use instance::Instance;
pub use validity::{Labeling, Psi, PsiContext};

/// A solver result: the labeling, its internal-label count, and counters.
#[derive(Debug, Clone)]
pub struct Solution {
    pub labeling: Labeling,
    pub internal_count: usize,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    /// Dynamic-programming cells filled.
    pub dp_cells: usize,
    /// Configurations enumerated over all anchors (general solver only).
    pub configs: usize,
    /// Density parameter of the solved instance.
    pub delta: usize,
}

/// Errors shared by the whole library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("instance is infeasible: {0}")]
    Infeasible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
