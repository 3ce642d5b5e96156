use rayon::prelude::*;
use serde::Serialize;

use super::config::JspConfig;
use super::realization::{build_realization, NetworkRealization};
use crate::analytic::{db_to_linear, far_interference_bound, linear_to_db, misr_ppp};
use crate::error::{Error, Result};
use crate::stats::{median_of_means, Estimate, MomentAccumulator};

/// Batches used by the median-of-means MISR estimate.
pub const MEDIAN_OF_MEANS_BATCHES: usize = 32;

/// Runs `f` on `replicates` independent realizations in parallel. Results
/// come back in replicate order together with the number of discarded
/// realizations.
pub fn simulate<T, F>(config: &JspConfig, replicates: u64, seed: u64, f: F) -> Result<(Vec<T>, u64)>
where
    T: Send,
    F: Fn(&NetworkRealization) -> Result<T> + Sync,
{
    config.validate()?;
    let out: Vec<(T, u64)> = (0..replicates)
        .into_par_iter()
        .map(|rep| {
            let r = build_realization(config, seed, rep)?;
            Ok((f(&r)?, r.seed.discarded))
        })
        .collect::<Result<_>>()?;
    let discarded = out.iter().map(|x| x.1).sum();
    Ok((out.into_iter().map(|x| x.0).collect(), discarded))
}

/// Rayleigh-fading success probability given the realization:
/// `∏_{y ≠ x} 1/(1 + θ P_y/P_x)` over the BSs inside the truncation radius.
pub fn conditional_success(realization: &NetworkRealization, theta: f64) -> Result<f64> {
    if realization.bs.len() < 2 {
        return Err(Error::InvalidParameter(
            "need a serving BS and at least one interferer".into(),
        ));
    }
    if !(theta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold {theta} must be non-negative"
        )));
    }
    let ps = realization.serving().mean_power;
    let log: f64 = realization
        .interferers()
        .map(|b| (theta * b.mean_power / ps).ln_1p())
        .sum();
    Ok((-log).exp())
}

/// Interference-to-mean-signal ratio `Σ_{y ≠ x} P_y/P_x`.
pub fn misr(realization: &NetworkRealization) -> f64 {
    let ps = realization.serving().mean_power;
    realization.interferers().map(|b| b.mean_power).sum::<f64>() / ps
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GainEstimate {
    pub misr: Estimate,
    pub misr_median_of_means: f64,
    /// Expected MISR contribution of BSs beyond the truncation radius, with
    /// their powers treated as independent of the serving BS.
    pub far_field: f64,
    /// `misr + far_field`.
    pub misr_tail_corrected: f64,
    /// `MISR_PPP / misr_tail_corrected`.
    pub gain: f64,
    pub gain_db: f64,
    pub gain_db_std_error: f64,
    pub replicates: u64,
    pub discarded: u64,
}

/// Estimates the MISR and the asymptotic gain over the standard PPP.
pub fn estimate_gain(config: &JspConfig, replicates: u64, seed: u64) -> Result<GainEstimate> {
    let (pairs, discarded) = simulate(config, replicates, seed, |r| {
        Ok((misr(r), 1.0 / r.serving().mean_power))
    })?;
    gain_from_samples(config, &pairs, discarded)
}

/// Builds a [`GainEstimate`] from per-realization `(MISR, 1/serving power)`.
pub fn gain_from_samples(config: &JspConfig, pairs: &[(f64, f64)], discarded: u64) -> Result<GainEstimate> {
    let mut acc = MomentAccumulator::default();
    let mut inv = MomentAccumulator::default();
    for &(m, s) in pairs {
        acc.push(m);
        inv.push(s);
    }
    let misr = acc.estimate()?;
    let values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mom = median_of_means(&values, MEDIAN_OF_MEANS_BATCHES.min(values.len()))?;
    let bound = far_interference_bound(
        config.interferer_truncation_radius,
        config.intensity,
        config.interferer_mean_shadowing(),
        config.path_loss_exponent,
    )? * inv.mean();
    let corrected = misr.value + bound;
    let gain = misr_ppp(config.path_loss_exponent)? / corrected;
    Ok(GainEstimate {
        misr,
        misr_median_of_means: mom,
        far_field: bound,
        misr_tail_corrected: corrected,
        gain,
        gain_db: linear_to_db(gain),
        gain_db_std_error: 10.0 / std::f64::consts::LN_10 * misr.std_error / corrected,
        replicates: pairs.len() as u64,
        discarded,
    })
}

/// Meta distribution `F̄(θ, x) = P(P_s(θ) > x)` with the first two moments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetaTable {
    pub theta_db: Vec<f64>,
    pub reliability: Vec<f64>,
    /// `ccdf[i][j] = F̄(θ_i, x_j)`.
    pub ccdf: Vec<Vec<f64>>,
    pub m1: Vec<Estimate>,
    pub m2: Vec<Estimate>,
    pub replicates: u64,
    pub discarded: u64,
}

pub fn meta_distribution(
    config: &JspConfig,
    theta_db: &[f64],
    reliability: &[f64],
    replicates: u64,
    seed: u64,
) -> Result<MetaTable> {
    if theta_db.is_empty() || reliability.is_empty() {
        return Err(Error::InvalidParameter(
            "threshold and reliability grids must be non-empty".into(),
        ));
    }
    if reliability.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::InvalidParameter("reliabilities must lie in [0, 1]".into()));
    }
    let thetas: Vec<f64> = theta_db.iter().map(|&d| db_to_linear(d)).collect();
    let (rows, discarded) = simulate(config, replicates, seed, |r| {
        thetas
            .iter()
            .map(|&t| conditional_success(r, t))
            .collect::<Result<Vec<f64>>>()
    })?;
    meta_from_samples(theta_db, reliability, &rows, discarded)
}

/// Tabulates the meta distribution from per-realization success
/// probabilities (`rows[replicate][threshold]`).
pub fn meta_from_samples(
    theta_db: &[f64],
    reliability: &[f64],
    rows: &[Vec<f64>],
    discarded: u64,
) -> Result<MetaTable> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least 2 replicates".into()));
    }
    let mut ccdf = Vec::with_capacity(theta_db.len());
    let mut m1 = Vec::with_capacity(theta_db.len());
    let mut m2 = Vec::with_capacity(theta_db.len());
    for i in 0..theta_db.len() {
        let mut a1 = MomentAccumulator::default();
        let mut a2 = MomentAccumulator::default();
        let mut col: Vec<f64> = rows.iter().map(|r| r[i]).collect();
        col.iter().for_each(|&p| {
            a1.push(p);
            a2.push(p * p);
        });
        col.sort_by(f64::total_cmp);
        ccdf.push(
            reliability
                .iter()
                .map(|&x| (n - col.partition_point(|&p| p <= x)) as f64 / n as f64)
                .collect(),
        );
        m1.push(a1.estimate()?);
        m2.push(a2.estimate()?);
    }
    Ok(MetaTable {
        theta_db: theta_db.to_vec(),
        reliability: reliability.to_vec(),
        ccdf,
        m1,
        m2,
        replicates: n as u64,
        discarded,
    })
}
