//! Directional radii of Poisson Voronoi cells and the joint
//! spatial-propagation (JSP) cellular network model.
//!
//! - [`geometry`]: PPP and lattice samplers, Voronoi cells, directional radii.
//! - [`analytic`]: closed-form laws, special functions and quadrature.
//! - [`stats`]: empirical distributions, moments, KS distances.
//! - [`network`]: cell-dependent shadowing, SIR, MISR, meta distribution.
//! - [`cli`]: the experiment runner behind the `jsp-sim` binary.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod network;
pub mod seed;
pub mod stats;

pub use error::{Error, Result};
