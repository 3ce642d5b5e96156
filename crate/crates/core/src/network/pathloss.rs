use rayon::prelude::*;
use serde::Serialize;

use super::config::{JspConfig, ShadowingMode};
use super::realization::{build_realization, NetworkRealization};
use crate::analytic::{far_field_hits, path_loss_rescale, rescaled_hit_probability};
use crate::error::{Error, Result};
use crate::stats::{Estimate, MomentAccumulator};

/// Path losses `‖x‖^α/K_x`, sorted. With `rescale`, each value is
/// multiplied by `P₀ exp(−σ²(1 − δ)/2)`, which makes the intensity measure
/// `t²` in distance units (`v^{1/α} < t`).
pub fn path_loss_process(config: &JspConfig, realization: &NetworkRealization, rescale: bool) -> Result<Vec<f64>> {
    let alpha = config.path_loss_exponent;
    let c = if rescale {
        path_loss_rescale(config.edge_power, config.shadowing_sigma, alpha)?
    } else {
        1.0
    };
    let mut v: Vec<f64> = realization
        .bs
        .iter()
        .map(|b| c * b.distance.powf(alpha) / b.shadowing)
        .collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// `#{x : ‖x‖/r(x) < t}` over the BSs inside the truncation radius.
pub fn normalized_count(realization: &NetworkRealization, t: f64) -> Result<usize> {
    realization.bs.iter().try_fold(0, |n, b| {
        let r = b
            .cell_radius
            .ok_or_else(|| Error::InvalidParameter("realization has no cell radii".into()))?;
        Ok(n + usize::from(b.distance < t * r))
    })
}

/// Mean count of BSs with `‖x‖/r(x) < t`, per threshold.
pub fn normalized_count_means(
    config: &JspConfig,
    thresholds: &[f64],
    replicates: u64,
    seed: u64,
) -> Result<Vec<Estimate>> {
    require_jsp(config)?;
    let rows: Vec<Vec<usize>> = (0..replicates)
        .into_par_iter()
        .map(|rep| {
            let r = build_realization(config, seed, rep)?;
            thresholds.iter().map(|&t| normalized_count(&r, t)).collect()
        })
        .collect::<Result<_>>()?;
    (0..thresholds.len())
        .map(|i| {
            let mut acc = MomentAccumulator::default();
            rows.iter().for_each(|row| acc.push(row[i] as f64));
            acc.estimate()
        })
        .collect()
}

fn require_jsp(config: &JspConfig) -> Result<()> {
    if config.shadowing_mode != ShadowingMode::Jsp {
        return Err(Error::InvalidParameter(
            "the path-loss estimators need the JSP shadowing mode".into(),
        ));
    }
    Ok(())
}

/// Intensity measure and first-point law of the rescaled path-loss process
/// at one threshold `t` (distance units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathLossPoint {
    pub t: f64,
    /// Estimate of `Λ([0, t))/t²`.
    pub intensity_ratio: Estimate,
    /// Estimate of `P(first rescaled point > t)`.
    pub first_point_ccdf: Estimate,
    /// Limit law of the first point, `exp(−t²)`.
    pub limit_ccdf: f64,
    /// Expected hits beyond the truncation radius (analytic).
    pub far_field: f64,
}

/// Conditional-expectation estimator of the rescaled path-loss process.
///
/// Given the deployment, a BS with normalized distance `s = ‖x‖/r(x)` lies
/// below `t` with probability `q(s/t)`, so the shadowing draws are
/// integrated out: the count estimate is `Σ q(s_i/t)` and the first-point
/// ccdf estimate is `∏(1 − q(s_i/t))`. BSs beyond the truncation radius
/// enter through their expected count, computed from the law of `r(x)`
/// for a BS at a given distance.
pub fn path_loss_convergence(
    config: &JspConfig,
    thresholds: &[f64],
    replicates: u64,
    seed: u64,
) -> Result<Vec<PathLossPoint>> {
    require_jsp(config)?;
    let alpha = config.path_loss_exponent;
    let sigma = config.shadowing_sigma;
    let far: Vec<f64> = thresholds
        .iter()
        .map(|&t| far_field_hits(t, config.interferer_truncation_radius, config.intensity, sigma, alpha))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<(f64, f64)>> = (0..replicates)
        .into_par_iter()
        .map(|rep| {
            let r = build_realization(config, seed, rep)?;
            let s: Vec<f64> =
                r.bs.iter()
                    .map(|b| b.distance / b.cell_radius.expect("jsp radii"))
                    .collect();
            Ok(thresholds
                .iter()
                .map(|&t| {
                    let mut hits = 0.0;
                    let mut log_miss = 0.0;
                    for &si in &s {
                        let q = rescaled_hit_probability(si / t, sigma, alpha);
                        hits += q;
                        log_miss += (-q).ln_1p();
                    }
                    (hits, log_miss.exp())
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    thresholds
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut count = MomentAccumulator::default();
            let mut first = MomentAccumulator::default();
            for row in &rows {
                count.push((row[i].0 + far[i]) / (t * t));
                first.push(row[i].1 * (-far[i]).exp());
            }
            Ok(PathLossPoint {
                t,
                intensity_ratio: count.estimate()?,
                first_point_ccdf: first.estimate()?,
                limit_ccdf: (-t * t).exp(),
                far_field: far[i],
            })
        })
        .collect()
}

/// Largest gap between the estimated first-point ccdf and its limit law.
pub fn first_point_ks(points: &[PathLossPoint]) -> f64 {
    points
        .iter()
        .map(|p| (p.first_point_ccdf.value - p.limit_ccdf).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_sigma_rescale_gives_normalized_distances() {
        let c = JspConfig::jsp_ppp(1.0, 4.0, 2.5, 0.0).unwrap();
        let r = build_realization(&c, 8, 0).unwrap();
        let v = path_loss_process(&c, &r, true).unwrap();
        let mut s: Vec<f64> =
            r.bs.iter()
                .map(|b| (b.distance / b.cell_radius.unwrap()).powi(4))
                .collect();
        s.sort_by(f64::total_cmp);
        for (a, b) in v.iter().zip(&s) {
            assert!((a - b).abs() < 1e-9 * b);
        }
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn only_the_nearest_bs_is_below_one() {
        let c = JspConfig::jsp_ppp(1.0, 4.0, 1.0, 0.0).unwrap();
        for rep in 0..10 {
            let r = build_realization(&c, 2, rep).unwrap();
            assert_eq!(normalized_count(&r, 1.0).unwrap(), 1);
        }
    }

    #[test]
    fn rejects_models_without_radii() {
        let c = JspConfig::standard(1.0, 4.0, crate::network::Deployment::Ppp).unwrap();
        assert!(normalized_count_means(&c, &[1.0], 2, 0).is_err());
    }
}
