//! Laws of the directional radius `R₀(φ)` of the zero-cell and of `D₀`.

use std::f64::consts::PI;

use super::lens::{lens_area, lens_area_dy};
use super::quadrature::{integrate, integrate_to_infinity, integrate_to_infinity_with, integrate_with, Tolerance};
use super::special::lower_incomplete_gamma;
use crate::error::{ensure_positive, Error, Result};

fn check_angle(phi: f64) -> Result<()> {
    if (0.0..=PI).contains(&phi) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("angle {phi} outside [0, π]")))
    }
}

fn scale(intensity: f64) -> f64 {
    1.0 / intensity.sqrt()
}

/// Density of `D₀ = ‖x₀‖`: `2λπx e^{−λπx²}`.
pub fn d0_pdf(x: f64, intensity: f64) -> f64 {
    2.0 * intensity * PI * x * (-intensity * PI * x * x).exp()
}

/// `P(R₀(φ) > y | D₀ = x) = exp(−λ(πy² − S(φ,x,y)))`.
pub fn conditional_ccdf(phi: f64, x: f64, y: f64, intensity: f64) -> Result<f64> {
    let s = lens_area(phi, x, y)?;
    Ok((-intensity * (PI * y * y - s)).exp().min(1.0))
}

/// Conditional density of `R₀(φ)` given `D₀ = x`.
pub fn conditional_pdf(phi: f64, x: f64, y: f64, intensity: f64) -> Result<f64> {
    if phi == 0.0 && y < x {
        return Ok(0.0);
    }
    let s = lens_area(phi, x, y)?;
    let ds = lens_area_dy(phi, x, y)?;
    let rate = intensity * (2.0 * PI * y - ds);
    Ok((-intensity * (PI * y * y - s)).exp() * rate)
}

/// Joint density of `(D₀, R₀(φ))` at `(x, y)`.
pub fn zero_cell_joint_pdf(phi: f64, x: f64, y: f64, intensity: f64) -> Result<f64> {
    ensure_positive("intensity", intensity)?;
    check_angle(phi)?;
    if x < 0.0 || y < 0.0 {
        return Err(Error::InvalidParameter(format!("x={x}, y={y} must be non-negative")));
    }
    if phi == 0.0 && y < x {
        return Err(Error::InvalidParameter(format!(
            "at φ = 0 the support is y ≥ x, got x={x}, y={y}"
        )));
    }
    Ok(d0_pdf(x, intensity) * conditional_pdf(phi, x, y, intensity)?)
}

/// Integrates `g(x) f_{D₀}(x)` over `x ≥ 0`, splitting at `y` where the
/// conditional law has a kink.
fn over_d0<G: Fn(f64) -> Result<f64>>(g: G, y: f64, intensity: f64) -> Result<f64> {
    let err = std::cell::Cell::new(None);
    let h = |x: f64| match g(x) {
        Ok(v) => v * d0_pdf(x, intensity),
        Err(e) => {
            err.set(Some(e));
            0.0
        }
    };
    let inner = integrate(h, 0.0, y)?.value;
    let outer = integrate_to_infinity(h, y, scale(intensity))?.value;
    match err.take() {
        Some(e) => Err(e),
        None => Ok(inner + outer),
    }
}

/// `P(R₀(φ) > y)`.
pub fn zero_directional_ccdf(phi: f64, y: f64, intensity: f64) -> Result<f64> {
    ensure_positive("intensity", intensity)?;
    check_angle(phi)?;
    if y <= 0.0 {
        return Ok(1.0);
    }
    over_d0(|x| conditional_ccdf(phi, x, y, intensity), y, intensity)
}

/// Marginal density of `R₀(φ)`.
pub fn zero_directional_pdf(phi: f64, y: f64, intensity: f64) -> Result<f64> {
    ensure_positive("intensity", intensity)?;
    check_angle(phi)?;
    if y < 0.0 {
        return Ok(0.0);
    }
    if phi == 0.0 {
        // support x ≤ y only
        return Ok(integrate(
            |x| d0_pdf(x, intensity) * conditional_pdf(0.0, x, y, intensity).unwrap_or(0.0),
            0.0,
            y,
        )?
        .value);
    }
    over_d0(|x| conditional_pdf(phi, x, y, intensity), y, intensity)
}

/// `E[R₀(φ)^k]` for `k ≥ 1`, as `∫∫ k y^{k−1} P(R₀(φ) > y | D₀ = x) f_{D₀}(x) dy dx`.
pub fn zero_directional_moment(phi: f64, k: f64, intensity: f64) -> Result<f64> {
    ensure_positive("intensity", intensity)?;
    check_angle(phi)?;
    let sc = scale(intensity);
    let err = std::cell::Cell::new(None);
    let tol = Tolerance { abs: 1e-11, rel: 1e-9 };
    let inner = |x: f64| -> f64 {
        let g = |y: f64| match conditional_ccdf(phi, x, y, intensity) {
            Ok(c) => k * y.powf(k - 1.0) * c,
            Err(e) => {
                err.set(Some(e));
                0.0
            }
        };
        let near = integrate_with(g, 0.0, x, tol).map(|e| e.value);
        let far = integrate_to_infinity_with(g, x, sc, tol).map(|e| e.value);
        let total = match (near, far) {
            (Ok(a), Ok(b)) => a + b,
            _ => f64::NAN,
        };
        total * d0_pdf(x, intensity)
    };
    let value = integrate_to_infinity_with(inner, 0.0, sc, tol)?.value;
    if let Some(e) = err.take() {
        return Err(e);
    }
    if !value.is_finite() {
        return Err(Error::Numeric("moment quadrature failed".into()));
    }
    Ok(value)
}

/// Averages `g(φ)` over `φ ∈ [0, π]`.
fn over_angle<G: Fn(f64) -> Result<f64>>(g: G, tol: Tolerance) -> Result<f64> {
    let err = std::cell::Cell::new(None);
    let h = |phi: f64| match g(phi) {
        Ok(v) => v,
        Err(e) => {
            err.set(Some(e));
            f64::NAN
        }
    };
    let est = integrate_with(h, 0.0, PI, tol);
    if let Some(e) = err.take() {
        return Err(e);
    }
    Ok(est?.value / PI)
}

/// Density of the uniform-angled radius `R̄₀`: `(1/π)∫₀^π f_{R₀(φ)}(y) dφ`.
pub fn zero_uniform_angle_pdf(y: f64, intensity: f64) -> Result<f64> {
    over_angle(
        |phi| zero_directional_pdf(phi, y, intensity),
        Tolerance { abs: 1e-9, rel: 1e-7 },
    )
}

/// `P(R̄₀ > y)`.
pub fn zero_uniform_angle_ccdf(y: f64, intensity: f64) -> Result<f64> {
    over_angle(
        |phi| zero_directional_ccdf(phi, y, intensity),
        Tolerance { abs: 1e-9, rel: 1e-7 },
    )
}

/// `E R̄₀ = (1/π) ∫₀^π E R₀(φ) dφ`.
pub fn zero_uniform_angle_mean(intensity: f64) -> Result<f64> {
    over_angle(
        |phi| zero_directional_moment(phi, 1.0, intensity),
        Tolerance { abs: 1e-10, rel: 1e-8 },
    )
}

/// Mean zero-cell area by quadrature, and the `c(φ) = 1 + exp(−φ^{3/2})`
/// approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanArea {
    /// `∫₀^π E R₀²(φ) dφ`.
    pub quadrature: f64,
    /// `(1 + 2γ(2/3, π^{3/2})/(3π)) / λ`.
    pub approximation: f64,
}

pub fn mean_area_quadrature(intensity: f64) -> Result<MeanArea> {
    ensure_positive("intensity", intensity)?;
    let quadrature = PI
        * over_angle(
            |phi| zero_directional_moment(phi, 2.0, intensity),
            Tolerance { abs: 1e-10, rel: 1e-9 },
        )?;
    Ok(MeanArea {
        quadrature,
        approximation: mean_area_approximation(intensity),
    })
}

pub fn mean_area_approximation(intensity: f64) -> f64 {
    (1.0 + 2.0 * lower_incomplete_gamma(2.0 / 3.0, PI.powf(1.5)) / (3.0 * PI)) / intensity
}

/// `c(φ)/(λπ)`, the approximation of `E R₀²(φ)`.
pub fn second_moment_approximation(phi: f64, intensity: f64) -> f64 {
    (1.0 + (-phi.powf(1.5)).exp()) / (intensity * PI)
}

/// Pearson correlations among `D₀`, `R₀(0)` and the gap `R₀(0) − D₀`.
/// They do not depend on the intensity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCorrelations {
    pub anchor_gap: f64,
    pub forward_gap: f64,
    pub forward_anchor: f64,
}

/// Correlations by quadrature of the conditional law of `R₀(0)` given `D₀`.
pub fn zero_pair_correlations() -> Result<PairCorrelations> {
    let err = std::cell::Cell::new(None);
    let keep = |r: Result<f64>| match r {
        Ok(v) => v,
        Err(e) => {
            err.set(Some(e));
            0.0
        }
    };
    // E[G^k | D₀ = x] = ∫ k g^{k−1} P(R₀(0) > x + g | D₀ = x) dg.
    let gap_moment = |x: f64, k: i32| {
        let f = |g: f64| f64::from(k) * g.powi(k - 1) * keep(conditional_ccdf(0.0, x, x + g, 1.0));
        keep(integrate_to_infinity(f, 0.0, 1.0).map(|e| e.value))
    };
    let over =
        |h: &dyn Fn(f64) -> f64| integrate_to_infinity(|x: f64| h(x) * d0_pdf(x, 1.0), 0.0, 1.0).map(|e| e.value);
    let ed = over(&|x| x)?;
    let ed2 = over(&|x| x * x)?;
    let eg = over(&|x| gap_moment(x, 1))?;
    let eg2 = over(&|x| gap_moment(x, 2))?;
    let edg = over(&|x| x * gap_moment(x, 1))?;
    if let Some(e) = err.take() {
        return Err(e);
    }
    let (vd, vg, c) = (ed2 - ed * ed, eg2 - eg * eg, edg - ed * eg);
    let vr = vd + vg + 2.0 * c;
    Ok(PairCorrelations {
        anchor_gap: c / (vd * vg).sqrt(),
        forward_gap: (c + vg) / (vr * vg).sqrt(),
        forward_anchor: (vd + c) / (vr * vd).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn phi_zero_reduction() {
        for (x, y) in [(0.2, 0.5), (0.4, 0.4), (0.1, 1.3)] {
            let f = zero_cell_joint_pdf(0.0, x, y, 1.0).unwrap();
            let expected = (2.0 * PI).powi(2) * x * y * (-PI * y * y).exp();
            assert!((f - expected).abs() < 1e-12 * expected.max(1.0));
        }
        assert!(zero_cell_joint_pdf(0.0, 0.5, 0.2, 1.0).is_err());
    }

    #[test]
    fn phi_pi_product_form() {
        for (x, y) in [(0.2, 0.5), (0.7, 0.1), (1.1, 0.9)] {
            let f = zero_cell_joint_pdf(PI, x, y, 2.0).unwrap();
            let expected = d0_pdf(x, 2.0) * d0_pdf(y, 2.0);
            assert!((f - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn marginal_at_zero_matches_corollary() {
        for y in [0.3, 0.75, 1.4] {
            let f = zero_directional_pdf(0.0, y, 1.0).unwrap();
            let expected = 2.0 * PI * PI * y.powi(3) * (-PI * y * y).exp();
            assert!((f - expected).abs() < 1e-8);
        }
    }

    #[test]
    fn first_moments() {
        assert!((zero_directional_moment(0.0, 1.0, 1.0).unwrap() - 0.75).abs() < 1e-7);
        assert!((zero_directional_moment(PI, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-7);
        assert!(
            (zero_directional_moment(FRAC_PI_4, 1.0, 4.0).unwrap() * 2.0
                - zero_directional_moment(FRAC_PI_4, 1.0, 1.0).unwrap())
            .abs()
                < 1e-7
        );
    }

    #[test]
    fn pair_correlations_match_closed_form() {
        let c = zero_pair_correlations().unwrap();
        assert!((c.anchor_gap - super::super::laws::anchor_gap_correlation()).abs() < 1e-6);
        assert!(c.forward_gap > 0.0 && c.forward_anchor > 0.0);
    }

    #[test]
    fn approximation_value() {
        assert!((mean_area_approximation(1.0) - 1.286_918_367_092_72).abs() < 1e-10);
        assert!((mean_area_approximation(2.0) - 0.5 * mean_area_approximation(1.0)).abs() < 1e-15);
    }
}
