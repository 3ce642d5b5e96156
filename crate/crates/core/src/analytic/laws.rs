//! Closed-form and quadrature-backed laws of cell distances.

use std::f64::consts::PI;

use serde::Serialize;

use super::quadrature::integrate_to_infinity;
use super::special::{erfc, exp_integral_e1};
use super::zero_cell;
use crate::error::{ensure_positive, Error, Result};

/// Which distance law a [`DistributionSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    /// Uniform-angled radius `R̄` of the typical cell.
    TypicalUniformAngle,
    /// Directional radius `R₀(φ)` of the zero-cell, `φ ∈ [0, π]`.
    ZeroDirectional { phi: f64 },
    /// `R₀(0)`.
    ZeroForward,
    /// `R₀(π)`, identically distributed with `D₀`.
    ZeroBackward,
    /// `R₀(0) − D₀`.
    ZeroGap,
    /// Uniform-angled radius `R̄₀` of the zero-cell.
    ZeroUniformAngle,
    /// Distance from the typical edge point to its nearest nucleus.
    EdgeDistance,
    /// Distance from the typical vertex to its nearest nucleus.
    VertexDistance,
    /// Distance from the typical nucleus to its nearest edge.
    MinEdgeDistance,
    /// `R(π)` of the typical cell of a one-dimensional PPP.
    OneDimBackward,
    /// `D/R(0)` (or `D₀/R₀(0)`), with cdf `t²` on `[0, 1]`.
    RatioLaw,
    /// `r(x_i)/‖x_i‖` for the `i`-th nearest point, `i ≥ 1`.
    OrderedRatioLaw { index: u32 },
}

/// A distance law at a given intensity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionSpec {
    pub family: Family,
    pub intensity: f64,
}

impl DistributionSpec {
    pub fn new(family: Family, intensity: f64) -> Result<Self> {
        ensure_positive("intensity", intensity)?;
        match family {
            Family::ZeroDirectional { phi } if !(0.0..=PI).contains(&phi) => {
                return Err(Error::InvalidParameter(format!("angle {phi} outside [0, π]")))
            }
            Family::OrderedRatioLaw { index: 0 } => {
                return Err(Error::InvalidParameter("ordered ratio law needs index ≥ 1".into()))
            }
            _ => {}
        }
        Ok(Self { family, intensity })
    }

    /// Upper end of the support (`∞` for distances).
    pub fn support_end(&self) -> f64 {
        match self.family {
            Family::RatioLaw | Family::OrderedRatioLaw { .. } => 1.0,
            _ => f64::INFINITY,
        }
    }

    /// Characteristic length used to size quadrature and tabulation ranges.
    pub fn length_scale(&self) -> f64 {
        match self.family {
            Family::RatioLaw | Family::OrderedRatioLaw { .. } => 1.0,
            Family::OneDimBackward => 1.0 / self.intensity,
            _ => 1.0 / self.intensity.sqrt(),
        }
    }

    pub fn pdf(&self, y: f64) -> Result<f64> {
        let lam = self.intensity;
        if y < 0.0 || y > self.support_end() {
            return Ok(0.0);
        }
        let u = lam * PI * y * y;
        Ok(match self.family {
            Family::TypicalUniformAngle | Family::ZeroBackward => 2.0 * lam * PI * y * (-u).exp(),
            Family::ZeroForward | Family::VertexDistance => 2.0 * (lam * PI).powi(2) * y.powi(3) * (-u).exp(),
            Family::ZeroGap => lam.sqrt() * PI * erfc(y * (lam * PI).sqrt()),
            Family::EdgeDistance => 4.0 * lam.powf(1.5) * PI * y * y * (-u).exp(),
            Family::MinEdgeDistance => 8.0 * lam * PI * y * (-4.0 * u).exp(),
            Family::OneDimBackward => {
                let z = 2.0 * lam * y;
                if y == 0.0 {
                    4.0 * lam
                } else {
                    4.0 * lam * (-z).exp() - 8.0 * lam * lam * y * exp_integral_e1(z)
                }
            }
            Family::RatioLaw => 2.0 * y,
            Family::OrderedRatioLaw { index } => {
                let i = index as i32;
                2.0 * i as f64 * y * (1.0 - y * y).powi(i - 1)
            }
            Family::ZeroDirectional { phi } => zero_cell::zero_directional_pdf(phi, y, lam)?,
            Family::ZeroUniformAngle => zero_cell::zero_uniform_angle_pdf(y, lam)?,
        })
    }

    pub fn ccdf(&self, y: f64) -> Result<f64> {
        let lam = self.intensity;
        if y <= 0.0 {
            return Ok(1.0);
        }
        if y >= self.support_end() {
            return Ok(0.0);
        }
        let u = lam * PI * y * y;
        Ok(match self.family {
            Family::TypicalUniformAngle | Family::ZeroBackward => (-u).exp(),
            Family::ZeroForward | Family::VertexDistance => (-u).exp() * (1.0 + u),
            Family::ZeroGap => {
                let z = u.sqrt();
                (-u).exp() - PI.sqrt() * z * erfc(z)
            }
            Family::EdgeDistance => erfc(u.sqrt()) + 2.0 * (u / PI).sqrt() * (-u).exp(),
            Family::MinEdgeDistance => (-4.0 * u).exp(),
            Family::OneDimBackward => 1.0 - oned_backward_cdf(y, lam),
            Family::RatioLaw => 1.0 - y * y,
            Family::OrderedRatioLaw { index } => (1.0 - y * y).powi(index as i32),
            Family::ZeroDirectional { phi } => zero_cell::zero_directional_ccdf(phi, y, lam)?,
            Family::ZeroUniformAngle => zero_cell::zero_uniform_angle_ccdf(y, lam)?,
        })
    }

    pub fn cdf(&self, y: f64) -> Result<f64> {
        Ok(1.0 - self.ccdf(y)?)
    }

    /// Mean, as the integral of the ccdf.
    pub fn mean(&self) -> Result<f64> {
        let err = std::cell::Cell::new(None);
        let f = |y: f64| match self.ccdf(y) {
            Ok(v) => v,
            Err(e) => {
                err.set(Some(e));
                0.0
            }
        };
        let value = if self.support_end().is_finite() {
            super::quadrature::integrate(f, 0.0, self.support_end())?.value
        } else {
            integrate_to_infinity(f, 0.0, self.length_scale())?.value
        };
        match err.take() {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }

    /// Tabulates the cdf on `n + 1` equally spaced points of `[0, upper]`
    /// for fast repeated evaluation.
    pub fn tabulate(&self, upper: f64, n: usize) -> Result<TabulatedCdf> {
        let step = upper / n as f64;
        let values = (0..=n).map(|k| self.cdf(k as f64 * step)).collect::<Result<Vec<_>>>()?;
        Ok(TabulatedCdf { step, values })
    }
}

/// Cdf of `R(π)` for the one-dimensional PPP:
/// `1 − e^{−2λr} + 2λr e^{−2λr} − 4λ²r² E₁(2λr)`.
pub fn oned_backward_cdf(r: f64, intensity: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let z = 2.0 * intensity * r;
    1.0 - (-z).exp() + z * (-z).exp() - z * z * exp_integral_e1(z)
}

/// `E R(π)` and `E R(0)` for the one-dimensional PPP: `1/(3λ)` and `2/(3λ)`.
pub fn oned_means(intensity: f64) -> (f64, f64) {
    (1.0 / (3.0 * intensity), 2.0 / (3.0 * intensity))
}

/// Piecewise-linear cdf from a table.
#[derive(Debug, Clone)]
pub struct TabulatedCdf {
    step: f64,
    values: Vec<f64>,
}

impl TabulatedCdf {
    pub fn cdf(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return self.values[0];
        }
        let pos = y / self.step;
        let k = pos.floor() as usize;
        if k + 1 >= self.values.len() {
            return *self.values.last().expect("non-empty table");
        }
        let w = pos - k as f64;
        self.values[k] * (1.0 - w) + self.values[k + 1] * w
    }
}

/// Which law of Corollary-type zero-cell distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroCellLaw {
    Forward,
    Backward,
    Gap,
}

/// Densities of `R₀(0)`, `R₀(π)` and `R₀(0) − D₀`.
pub fn corollary1_pdf(which: ZeroCellLaw, y: f64, intensity: f64) -> Result<f64> {
    let family = match which {
        ZeroCellLaw::Forward => Family::ZeroForward,
        ZeroCellLaw::Backward => Family::ZeroBackward,
        ZeroCellLaw::Gap => Family::ZeroGap,
    };
    DistributionSpec::new(family, intensity)?.pdf(y)
}

/// Correlation coefficient of `D₀` and `R₀(0) − D₀`:
/// `(8 − 3π)/(√(12 − 3π) √(16 − 3π))`.
pub fn anchor_gap_correlation() -> f64 {
    (8.0 - 3.0 * PI) / ((12.0 - 3.0 * PI).sqrt() * (16.0 - 3.0 * PI).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaTypeLaw {
    Edge,
    Vertex,
    MinEdge,
}

/// Densities of the edge, vertex and nearest-edge distances.
pub fn gamma_type_pdf(which: GammaTypeLaw, r: f64, intensity: f64) -> Result<f64> {
    let family = match which {
        GammaTypeLaw::Edge => Family::EdgeDistance,
        GammaTypeLaw::Vertex => Family::VertexDistance,
        GammaTypeLaw::MinEdge => Family::MinEdgeDistance,
    };
    DistributionSpec::new(family, intensity)?.pdf(r)
}

/// Ratio laws on `[0, 1]`: index 0 is `D₀/R₀(0)` (cdf `t²`); index `i ≥ 1`
/// is `r(x_i)/‖x_i‖` (ccdf `(1 − t²)^i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioLaw {
    pub index: u32,
}

impl RatioLaw {
    pub fn new(index: u32) -> Self {
        Self { index }
    }

    fn check(t: f64) -> Result<f64> {
        if (0.0..=1.0).contains(&t) {
            Ok(t)
        } else {
            Err(Error::InvalidParameter(format!("ratio {t} outside [0, 1]")))
        }
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        Ok(1.0 - self.ccdf(t)?)
    }

    pub fn ccdf(&self, t: f64) -> Result<f64> {
        let t = Self::check(t)?;
        Ok(if self.index == 0 {
            1.0 - t * t
        } else {
            (1.0 - t * t).powi(self.index as i32)
        })
    }
}
