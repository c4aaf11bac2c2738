//! Finite-resolution engine for planar and toral piecewise translations.
//!
//! Sets are bit masks over a uniform grid, regions are sampled at cell
//! centers, and translation vectors are snapped to whole cells. The grid map
//! is then an honest piecewise translation of a finite set, so monotonicity,
//! invariance and stabilization hold exactly on masks.

mod distance;
mod geometry;
mod map;
mod region;
mod set;

pub use distance::{
    cell_length, directed_hausdorff, distance_transform, epsilon_neighborhood, hausdorff,
    DistanceField,
};
pub use geometry::{GridGeometry, Wrap};
pub use map::{
    apply_grid, attractor_grid, attractor_grid_with, snap_vector, AttractorResult2, BranchSpec,
    CompiledBranch, PwtMap, PwtSpec, SnappedVector, DEFAULT_GRID_CAP,
};
pub use region::{rasterize, RegionSpec};
pub use set::GridSet;
