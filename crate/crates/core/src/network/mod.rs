//! The joint spatial-propagation (JSP) cellular model: cell-dependent
//! shadowing, strongest-BS association, SIR, MISR, meta distribution and
//! the path-loss point process, with PPP and lattice deployments.

mod config;
mod ordered;
mod pathloss;
mod realization;
mod sir;

pub use config::{
    Deployment, JspConfig, ShadowingMode, JSP_TRUNCATION_FACTOR, PLAIN_TRUNCATION_FACTOR, WINDOW_MARGIN_FACTOR,
};
pub use ordered::{ordered_radii_samples, sample_ordered_radii, serving_power_samples, OrderedRadius};
pub use pathloss::{
    first_point_ks, normalized_count, normalized_count_means, path_loss_convergence, path_loss_process, PathLossPoint,
};
pub use realization::{build_realization, sample_deployment, BaseStation, NetworkRealization, SeedRecord};
pub use sir::{
    conditional_success, estimate_gain, gain_from_samples, meta_distribution, meta_from_samples, misr, simulate,
    GainEstimate, MetaTable, MEDIAN_OF_MEANS_BATCHES,
};
