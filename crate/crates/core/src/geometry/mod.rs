//! Point processes and Voronoi cell geometry.

mod batch;
mod cell;
mod index;
mod lattice;
mod oned;
mod point;
mod ppp;
mod sample;

pub use batch::{sample_cell_batch, CellBatch, CellRecord, GridMoments};
pub(crate) use cell::raw_directional_radius;
pub use cell::{cell_polygon, directional_radius, shoelace_area, CellPolygon};
pub use index::{cell_radius_toward, GridIndex};
pub use lattice::{lattice_density, lattice_spacing, triangular_lattice, triangular_lattice_stream};
pub use oned::{sample_oned_typical_cell, OneDimCell};
pub use point::Point;
pub use ppp::{
    check_budget, sample_ppp, sample_ppp_with_budget, PointSet, RadialPpp, COINCIDENT_TOL, DEFAULT_POINT_BUDGET,
};
pub use sample::{
    sample_typical_cell, sample_zero_cell, AngleGrid, CellKind, CellSample, CellSampler, Draw, DEFAULT_GRID_SIZE,
    DEFAULT_WINDOW_FACTOR, MAX_RESAMPLES,
};
