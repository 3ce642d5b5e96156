use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::analytic::special::gamma_fn;
use crate::error::{ensure_positive, Error, Result};
use crate::geometry::lattice_spacing;

/// Interferer truncation radius (in units of `1/√λ`) when cell radii are
/// needed for every BS.
pub const JSP_TRUNCATION_FACTOR: f64 = 12.0;
/// Interferer truncation radius (in units of `1/√λ`) when no cell radii are
/// needed.
pub const PLAIN_TRUNCATION_FACTOR: f64 = 24.0;
/// Margin (in units of `1/√λ`) between the truncation radius and the window,
/// so that cell radii near the truncation edge can be certified.
pub const WINDOW_MARGIN_FACTOR: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Deployment {
    Ppp,
    Triangular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShadowingMode {
    /// Cell-dependent shadowing: `E[K_x | Φ] = P₀ r(x)^α`.
    Jsp,
    /// Unit-mean log-normal shadowing, iid across BSs.
    IidLognormal,
    /// `K_x ≡ 1`.
    None,
}

/// Parameters of one network model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JspConfig {
    pub intensity: f64,
    pub path_loss_exponent: f64,
    pub edge_power: f64,
    pub shadowing_sigma: f64,
    pub deployment: Deployment,
    pub shadowing_mode: ShadowingMode,
    pub window_radius: f64,
    pub interferer_truncation_radius: f64,
}

impl JspConfig {
    /// Model with default truncation radius and window for the given mode.
    pub fn new(
        intensity: f64,
        path_loss_exponent: f64,
        edge_power: f64,
        shadowing_sigma: f64,
        deployment: Deployment,
        shadowing_mode: ShadowingMode,
    ) -> Result<Self> {
        ensure_positive("intensity", intensity)?;
        let unit = 1.0 / intensity.sqrt();
        let truncation = match shadowing_mode {
            ShadowingMode::Jsp => JSP_TRUNCATION_FACTOR,
            _ => PLAIN_TRUNCATION_FACTOR,
        } * unit;
        Self {
            intensity,
            path_loss_exponent,
            edge_power,
            shadowing_sigma,
            deployment,
            shadowing_mode,
            window_radius: truncation,
            interferer_truncation_radius: truncation,
        }
        .with_truncation_radius(truncation)
    }

    /// JSP model on a PPP.
    pub fn jsp_ppp(intensity: f64, alpha: f64, edge_power: f64, sigma: f64) -> Result<Self> {
        Self::new(intensity, alpha, edge_power, sigma, Deployment::Ppp, ShadowingMode::Jsp)
    }

    /// Standard model without shadowing.
    pub fn standard(intensity: f64, alpha: f64, deployment: Deployment) -> Result<Self> {
        Self::new(intensity, alpha, 1.0, 0.0, deployment, ShadowingMode::None)
    }

    /// Sets the truncation radius and moves the window along with it. The
    /// window extends past the truncation radius only when cell radii are
    /// needed.
    pub fn with_truncation_radius(mut self, radius: f64) -> Result<Self> {
        ensure_positive("intensity", self.intensity)?;
        let margin = if self.needs_cell_radii() {
            WINDOW_MARGIN_FACTOR / self.intensity.sqrt()
        } else {
            0.0
        };
        self.interferer_truncation_radius = radius;
        self.window_radius = radius + margin;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("intensity", self.intensity)?;
        ensure_positive("edge power", self.edge_power)?;
        ensure_positive("window radius", self.window_radius)?;
        ensure_positive("interferer truncation radius", self.interferer_truncation_radius)?;
        if !(self.path_loss_exponent.is_finite() && self.path_loss_exponent > 2.0) {
            return Err(Error::InvalidParameter(format!(
                "path-loss exponent {} must exceed 2",
                self.path_loss_exponent
            )));
        }
        if !(self.shadowing_sigma.is_finite() && self.shadowing_sigma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "shadowing sigma {} must be non-negative",
                self.shadowing_sigma
            )));
        }
        if self.window_radius < self.interferer_truncation_radius {
            return Err(Error::InvalidParameter(format!(
                "window radius {} is smaller than the truncation radius {}",
                self.window_radius, self.interferer_truncation_radius
            )));
        }
        Ok(())
    }

    /// `δ = 2/α`.
    pub fn delta(&self) -> f64 {
        2.0 / self.path_loss_exponent
    }

    pub fn needs_cell_radii(&self) -> bool {
        self.shadowing_mode == ShadowingMode::Jsp
    }

    /// Upper bound on `E[K_x]` for a BS beyond the truncation radius.
    pub fn interferer_mean_shadowing(&self) -> f64 {
        let alpha = self.path_loss_exponent;
        match self.shadowing_mode {
            ShadowingMode::None | ShadowingMode::IidLognormal => 1.0,
            ShadowingMode::Jsp => match self.deployment {
                Deployment::Ppp => {
                    self.edge_power * (self.intensity * PI).powf(-alpha / 2.0) * gamma_fn(alpha / 2.0 + 1.0)
                }
                // cell radii never exceed the circumradius s/√3
                Deployment::Triangular => self.edge_power * (lattice_spacing(self.intensity) / 3f64.sqrt()).powf(alpha),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_validation() {
        let c = JspConfig::jsp_ppp(1.0, 4.0, 1.0, 0.0).unwrap();
        assert_eq!(c.interferer_truncation_radius, 12.0);
        assert_eq!(c.window_radius, 20.0);
        assert!(JspConfig::jsp_ppp(1.0, 2.0, 1.0, 0.0).is_err());
        assert!(JspConfig::jsp_ppp(1.0, 4.0, 1.0, -1.0).is_err());
        let mut bad = c;
        bad.window_radius = 5.0;
        assert!(bad.validate().is_err());
        let s = JspConfig::standard(4.0, 4.0, Deployment::Ppp).unwrap();
        assert_eq!(s.interferer_truncation_radius, 12.0);
        assert_eq!(s.window_radius, 12.0);
    }

    #[test]
    fn interferer_mean_matches_shadowing_law() {
        let c = JspConfig::jsp_ppp(1.0, 4.0, PI * PI, 0.0).unwrap();
        assert!((c.interferer_mean_shadowing() - 2.0).abs() < 1e-12);
    }
}
