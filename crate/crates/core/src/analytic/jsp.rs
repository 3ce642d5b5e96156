//! Laws of the cellular model: standard-PPP SIR moments, the JSP shadowing
//! and serving-signal laws, and the rescaled path-loss process.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use super::quadrature::{integrate_to_infinity, integrate_with, Tolerance};
use super::special::{erfc, gamma_fn};
use crate::error::{ensure_positive, Error, Result};

fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha.is_finite() && alpha > 2.0 {
        Ok(2.0 / alpha)
    } else {
        Err(Error::InvalidParameter(format!(
            "path-loss exponent {alpha} must exceed 2"
        )))
    }
}

/// `₂F₁(b, −δ; 1 − δ; −θ)` for `b ≥ 0`, `θ ≥ 0`, `δ ∈ (0, 1)`.
///
/// Uses `1 + δ ∫₀¹ [1 − (1 + θv)^{−b}] v^{−δ−1} dv`, obtained by writing
/// the series term by term as a Beta integral. The substitution
/// `v = w^{1/(1−δ)}` removes the endpoint singularity, leaving a bounded
/// integrand for every `θ`.
pub fn hyp2f1_ppp(b: f64, delta: f64, theta: f64) -> Result<f64> {
    if !(b >= 0.0 && b.is_finite()) || !(theta >= 0.0 && theta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need b ≥ 0 and θ ≥ 0, got b={b}, θ={theta}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("δ = {delta} outside (0, 1)")));
    }
    if b == 0.0 || theta == 0.0 {
        return Ok(1.0);
    }
    let p = 1.0 / (1.0 - delta);
    let g = |w: f64| {
        let v = w.powf(p);
        if v == 0.0 {
            return b * theta * p;
        }
        let bracket = -(-b * (theta * v).ln_1p()).exp_m1();
        bracket * p * w.powf(-p)
    };
    let tol = Tolerance { abs: 1e-12, rel: 1e-10 };
    let est = integrate_with(g, 0.0, 1.0, tol)?;
    Ok(1.0 + delta * est.value)
}

/// `M_b(θ) = 1/₂F₁(b, −δ; 1 − δ; −θ)`: the `b`-th moment of the conditional
/// success probability in the standard PPP with Rayleigh fading.
pub fn standard_ppp_moment(b: f64, theta: f64, alpha: f64) -> Result<f64> {
    let delta = check_alpha(alpha)?;
    Ok(1.0 / hyp2f1_ppp(b, delta, theta)?)
}

/// `MISR = 2/(α − 2)` for the standard PPP.
pub fn misr_ppp(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(2.0 / (alpha - 2.0))
}

/// Converts a dB value to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to dB.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Which BS a shadowing law refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShadowedLink {
    /// The nearest (serving) BS `x₀`.
    Serving,
    /// Any other BS `x_i`, `i ≥ 1`.
    Interferer,
}

/// `P(K_x ≥ t)` in the deterministic regime `σ = 0`.
pub fn shadowing_ccdf(which: ShadowedLink, t: f64, intensity: f64, edge_power: f64, alpha: f64) -> Result<f64> {
    let delta = check_alpha(alpha)?;
    ensure_positive("intensity", intensity)?;
    ensure_positive("edge power", edge_power)?;
    if t <= 0.0 {
        return Ok(1.0);
    }
    let u = intensity * PI * (t / edge_power).powf(delta);
    Ok(match which {
        ShadowedLink::Serving => (-u).exp() * (1.0 + u),
        ShadowedLink::Interferer => (-u).exp(),
    })
}

/// Means and variances of `K_{x₀}` and `K_{x_i}` for `σ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShadowingMoments {
    pub serving_mean: f64,
    pub serving_variance: f64,
    pub interferer_mean: f64,
    pub interferer_variance: f64,
}

pub fn shadowing_moments(intensity: f64, edge_power: f64, alpha: f64) -> Result<ShadowingMoments> {
    check_alpha(alpha)?;
    ensure_positive("intensity", intensity)?;
    ensure_positive("edge power", edge_power)?;
    let scale = edge_power * (intensity * PI).powf(-alpha / 2.0);
    let h = alpha / 2.0;
    Ok(ShadowingMoments {
        serving_mean: scale * gamma_fn(h + 2.0),
        serving_variance: scale * scale * (gamma_fn(alpha + 2.0) - gamma_fn(h + 2.0).powi(2)),
        interferer_mean: scale * gamma_fn(h + 1.0),
        interferer_variance: scale * scale * (gamma_fn(alpha + 1.0) - gamma_fn(h + 1.0).powi(2)),
    })
}

/// Edge power that matches the standard-model signal tail: `(λπ)^{α/2}`.
pub fn disk_packing_edge_power(intensity: f64, alpha: f64) -> f64 {
    (intensity * PI).powf(alpha / 2.0)
}

/// `P(K_{x₀}‖x₀‖^{−α} > t) = (P₀/t)^δ` for `t ≥ P₀`, and 1 below `P₀`.
pub fn serving_signal_ccdf(t: f64, edge_power: f64, alpha: f64) -> Result<f64> {
    let delta = check_alpha(alpha)?;
    ensure_positive("edge power", edge_power)?;
    if t <= edge_power {
        return Ok(1.0);
    }
    Ok((edge_power / t).powf(delta))
}

/// Tail of the faded serving signal with Rayleigh fading:
/// `P(S > t) ~ P₀^δ Γ(1 + δ) t^{−δ}`.
pub fn serving_signal_tail(t: f64, edge_power: f64, alpha: f64) -> Result<f64> {
    let delta = check_alpha(alpha)?;
    ensure_positive("edge power", edge_power)?;
    Ok(edge_power.powf(delta) * gamma_fn(1.0 + delta) * t.powf(-delta))
}

/// Rescaling constant of the path-loss process, `P₀ exp(−σ²(1 − δ)/2)`.
pub fn path_loss_rescale(edge_power: f64, sigma: f64, alpha: f64) -> Result<f64> {
    let delta = check_alpha(alpha)?;
    Ok(edge_power * (-sigma * sigma * (1.0 - delta) / 2.0).exp())
}

/// Probability that a BS whose normalized distance `‖x‖/r(x)` equals
/// `ratio·t` has rescaled path loss (in distance units) below `t`.
pub fn rescaled_hit_probability(ratio: f64, sigma: f64, alpha: f64) -> f64 {
    let delta = 2.0 / alpha;
    if sigma == 0.0 {
        return if ratio < 1.0 { 1.0 } else { 0.0 };
    }
    if ratio <= 0.0 {
        return 1.0;
    }
    0.5 * erfc((alpha * ratio.ln() + sigma * sigma * delta / 2.0) / (sigma * SQRT_2))
}

/// Expected number of BSs beyond distance `radius` whose rescaled path loss
/// (in distance units) is below `t`.
///
/// For a BS at distance `ρ`, the radius toward the origin has ccdf
/// `exp(−λπs²)` on `[0, ρ)`, which gives
/// `∫_R^∞ 2πλρ ∫₀^ρ 2λπs e^{−λπs²} q(ρ/(st)) ds dρ`.
pub fn far_field_hits(t: f64, radius: f64, intensity: f64, sigma: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    ensure_positive("intensity", intensity)?;
    ensure_positive("radius", radius)?;
    if t <= 0.0 {
        return Ok(0.0);
    }
    let a = intensity * PI;
    if sigma == 0.0 {
        // Hit iff s > ρ/t, which needs t > 1.
        if t <= 1.0 {
            return Ok(0.0);
        }
        let r2 = radius * radius;
        return Ok(t * t * (-a * r2 / (t * t)).exp() - (-a * r2).exp());
    }
    let s_max = (40.0 / a).sqrt();
    let inner = |rho: f64| -> f64 {
        let upper = rho.min(s_max);
        let f = |s: f64| 2.0 * a * s * (-a * s * s).exp() * rescaled_hit_probability(rho / (s * t), sigma, alpha);
        integrate_with(f, 0.0, upper, Tolerance { abs: 1e-13, rel: 1e-9 })
            .map(|e| e.value)
            .unwrap_or(f64::NAN)
    };
    // Integrate over u = ln ρ, where the integrand is eventually Gaussian.
    let outer = |u: f64| {
        let rho = u.exp();
        2.0 * intensity * PI * rho * rho * inner(rho)
    };
    let value = integrate_to_infinity(outer, radius.ln(), sigma)?.value;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Numeric("far-field quadrature failed".into()))
    }
}

/// Expected number of BSs with `‖x‖/r(x) < t` in the JSP-PPP: `t²`.
pub fn normalized_count_mean(t: f64) -> f64 {
    t * t
}

/// Bound on the interference contributed beyond `radius` per unit serving
/// power: `λ 2π E[K] R^{2−α}/(α − 2)`.
pub fn far_interference_bound(radius: f64, intensity: f64, mean_k: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(intensity * 2.0 * PI * mean_k * radius.powf(2.0 - alpha) / (alpha - 2.0))
}

/// `∫₀^∞ ccdf` helper for the tests of this module.
#[cfg(test)]
fn mean_from_ccdf<F: Fn(f64) -> f64>(f: F, scale: f64) -> f64 {
    integrate_to_infinity(f, 0.0, scale).unwrap().value
}
