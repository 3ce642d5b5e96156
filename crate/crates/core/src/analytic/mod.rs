//! Closed-form laws, special functions and quadrature used as oracles.

pub mod jsp;
pub mod laws;
pub mod lens;
pub mod quadrature;
pub mod special;
pub mod zero_cell;

pub use jsp::{
    db_to_linear, disk_packing_edge_power, far_field_hits, far_interference_bound, hyp2f1_ppp, linear_to_db, misr_ppp,
    normalized_count_mean, path_loss_rescale, rescaled_hit_probability, serving_signal_ccdf, serving_signal_tail,
    shadowing_ccdf, shadowing_moments, standard_ppp_moment, ShadowedLink, ShadowingMoments,
};
pub use laws::{
    anchor_gap_correlation, corollary1_pdf, gamma_type_pdf, oned_backward_cdf, oned_means, DistributionSpec, Family,
    GammaTypeLaw, RatioLaw, TabulatedCdf, ZeroCellLaw,
};
pub use lens::{lens_area, lens_area_dy};
pub use zero_cell::{
    mean_area_approximation, mean_area_quadrature, zero_cell_joint_pdf, zero_directional_ccdf, zero_directional_moment,
    zero_directional_pdf, zero_pair_correlations, zero_uniform_angle_ccdf, zero_uniform_angle_mean,
    zero_uniform_angle_pdf, MeanArea, PairCorrelations,
};
