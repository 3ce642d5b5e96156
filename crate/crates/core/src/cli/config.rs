//! Experiment configuration file (TOML).
//!
//! Every key except `experiment` is optional; unknown keys are rejected.
//!
//! | key                  | default                          |
//! |----------------------|----------------------------------|
//! | `seed`               | `1`                              |
//! | `replicates`         | `100000`                         |
//! | `output_dir`         | `"results/<experiment>"`         |
//! | `intensity`          | `1.0`                            |
//! | `path_loss_exponent` | `4.0`                            |
//! | `edge_power`         | `(λπ)^{α/2}`                     |
//! | `sigmas`             | `[0, 1, 2, 3]` (dB-free, natural-log scale) |
//! | `theta_db`           | `-10, -7.5, …, 10`               |
//! | `reliability`        | `0.1, 0.2, …, 0.9`               |
//! | `alphas`             | `[2.5, 3, 3.5, 4, 4.5, 5]`       |
//! | `deployment`         | `"ppp"`                          |
//! | `shadowing_mode`     | `"jsp"`                          |
//! | `truncation_radius`  | mode-dependent (see [`JspConfig::new`]) |
//! | `thresholds`         | `[0.5, 1, 2]`                    |
//! | `grid_size`          | `360`                            |

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analytic::disk_packing_edge_power;
use crate::network::{Deployment, JspConfig, ShadowingMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    CellMoments,
    CellDistributions,
    ZeroCellJoint,
    ShadowingLaws,
    ServingSignal,
    GainSweep,
    MetaDistribution,
    PathLossConvergence,
    OnedAppendix,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::CellMoments,
        Experiment::CellDistributions,
        Experiment::ZeroCellJoint,
        Experiment::ShadowingLaws,
        Experiment::ServingSignal,
        Experiment::GainSweep,
        Experiment::MetaDistribution,
        Experiment::PathLossConvergence,
        Experiment::OnedAppendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::CellMoments => "cell-moments",
            Experiment::CellDistributions => "cell-distributions",
            Experiment::ZeroCellJoint => "zero-cell-joint",
            Experiment::ShadowingLaws => "shadowing-laws",
            Experiment::ServingSignal => "serving-signal",
            Experiment::GainSweep => "gain-sweep",
            Experiment::MetaDistribution => "meta-distribution",
            Experiment::PathLossConvergence => "path-loss-convergence",
            Experiment::OnedAppendix => "oned-appendix",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Experiment::CellMoments => {
                "Means of directional radii, anchor distance, side count and area of typical and zero cells"
            }
            Experiment::CellDistributions => {
                "Empirical distance laws of Voronoi cells against their closed forms (KS distances)"
            }
            Experiment::ZeroCellJoint => "Joint law of R0(0) and D0, correlation constant and mean zero-cell area",
            Experiment::ShadowingLaws => {
                "Laws and moments of the cell-dependent shadowing of serving and interfering BSs"
            }
            Experiment::ServingSignal => "Distribution of the serving mean power for PPP and lattice deployments",
            Experiment::GainSweep => "MISR and asymptotic SIR gain over the standard PPP versus alpha and sigma",
            Experiment::MetaDistribution => "SIR meta distribution and its first two moments",
            Experiment::PathLossConvergence => "Intensity measure and first point of the rescaled path-loss process",
            Experiment::OnedAppendix => "Directional radii of the typical cell of a one-dimensional PPP",
        }
    }

    /// Figure or table of the source article that the experiment reproduces.
    pub fn anchor(self) -> &'static str {
        match self {
            Experiment::CellMoments => "Table I",
            Experiment::CellDistributions => "Figs. 3-5, Lemmas 1-2, Corollaries 1-2, Lemma 4",
            Experiment::ZeroCellJoint => "Theorem 1, Fig. 4, mean-area remark",
            Experiment::ShadowingLaws => "Sec. IV-B, Fig. 8",
            Experiment::ServingSignal => "Eq. 17, Figs. 7a-7b",
            Experiment::GainSweep => "Sec. III-C, Fig. 10",
            Experiment::MetaDistribution => "Figs. 12-13",
            Experiment::PathLossConvergence => "Lemma 6",
            Experiment::OnedAppendix => "Appendix B",
        }
    }

    /// Whether the experiment simulates the cellular network model.
    pub fn is_network(self) -> bool {
        matches!(
            self,
            Experiment::ShadowingLaws
                | Experiment::ServingSignal
                | Experiment::GainSweep
                | Experiment::MetaDistribution
                | Experiment::PathLossConvergence
        )
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    #[serde(default = "defaults::replicates")]
    pub replicates: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default = "defaults::one")]
    pub intensity: f64,
    #[serde(default = "defaults::four")]
    pub path_loss_exponent: f64,
    #[serde(default)]
    pub edge_power: Option<f64>,
    #[serde(default = "defaults::sigmas")]
    pub sigmas: Vec<f64>,
    #[serde(default = "defaults::theta_db")]
    pub theta_db: Vec<f64>,
    #[serde(default = "defaults::reliability")]
    pub reliability: Vec<f64>,
    #[serde(default = "defaults::alphas")]
    pub alphas: Vec<f64>,
    #[serde(default = "defaults::deployment")]
    pub deployment: Deployment,
    #[serde(default = "defaults::shadowing_mode")]
    pub shadowing_mode: ShadowingMode,
    #[serde(default)]
    pub truncation_radius: Option<f64>,
    #[serde(default = "defaults::thresholds")]
    pub thresholds: Vec<f64>,
    #[serde(default = "defaults::grid_size")]
    pub grid_size: usize,
}

mod defaults {
    use super::*;

    pub fn seed() -> u64 {
        1
    }
    pub fn replicates() -> u64 {
        100_000
    }
    pub fn one() -> f64 {
        1.0
    }
    pub fn four() -> f64 {
        4.0
    }
    pub fn sigmas() -> Vec<f64> {
        vec![0.0, 1.0, 2.0, 3.0]
    }
    pub fn theta_db() -> Vec<f64> {
        (0..9).map(|k| -10.0 + 2.5 * k as f64).collect()
    }
    pub fn reliability() -> Vec<f64> {
        (1..10).map(|k| k as f64 / 10.0).collect()
    }
    pub fn alphas() -> Vec<f64> {
        vec![2.5, 3.0, 3.5, 4.0, 4.5, 5.0]
    }
    pub fn deployment() -> Deployment {
        Deployment::Ppp
    }
    pub fn shadowing_mode() -> ShadowingMode {
        ShadowingMode::Jsp
    }
    pub fn thresholds() -> Vec<f64> {
        vec![0.5, 1.0, 2.0]
    }
    pub fn grid_size() -> usize {
        360
    }
}

impl ExperimentConfig {
    /// Configuration with every default for the given experiment.
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            seed: defaults::seed(),
            replicates: defaults::replicates(),
            output_dir: None,
            intensity: 1.0,
            path_loss_exponent: 4.0,
            edge_power: None,
            sigmas: defaults::sigmas(),
            theta_db: defaults::theta_db(),
            reliability: defaults::reliability(),
            alphas: defaults::alphas(),
            deployment: defaults::deployment(),
            shadowing_mode: defaults::shadowing_mode(),
            truncation_radius: None,
            thresholds: defaults::thresholds(),
            grid_size: defaults::grid_size(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, String> {
        let cfg: Self = toml::from_str(text).map_err(|e| e.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks field-level constraints, naming the offending key.
    pub fn validate(&self) -> Result<(), String> {
        fn positive(name: &str, v: f64) -> Result<(), String> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(format!("{name}: must be positive and finite, got {v}"))
            }
        }
        fn non_empty(name: &str, v: &[f64]) -> Result<(), String> {
            if v.is_empty() {
                Err(format!("{name}: must be non-empty"))
            } else if v.iter().any(|x| !x.is_finite()) {
                Err(format!("{name}: entries must be finite"))
            } else {
                Ok(())
            }
        }
        if self.replicates < 2 {
            return Err(format!("replicates: must be at least 2, got {}", self.replicates));
        }
        positive("intensity", self.intensity)?;
        if !(self.path_loss_exponent.is_finite() && self.path_loss_exponent > 2.0) {
            return Err(format!(
                "path_loss_exponent: must exceed 2, got {}",
                self.path_loss_exponent
            ));
        }
        if let Some(p) = self.edge_power {
            positive("edge_power", p)?;
        }
        if let Some(r) = self.truncation_radius {
            positive("truncation_radius", r)?;
        }
        non_empty("sigmas", &self.sigmas)?;
        if self.sigmas.iter().any(|&s| s < 0.0) {
            return Err("sigmas: entries must be non-negative".into());
        }
        non_empty("theta_db", &self.theta_db)?;
        non_empty("reliability", &self.reliability)?;
        if self.reliability.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err("reliability: entries must lie in [0, 1]".into());
        }
        non_empty("alphas", &self.alphas)?;
        if self.alphas.iter().any(|&a| a <= 2.0) {
            return Err("alphas: entries must exceed 2".into());
        }
        non_empty("thresholds", &self.thresholds)?;
        if self.thresholds.iter().any(|&t| t <= 0.0) {
            return Err("thresholds: entries must be positive".into());
        }
        if self.grid_size < 8 {
            return Err(format!("grid_size: must be at least 8, got {}", self.grid_size));
        }
        Ok(())
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("results").join(self.experiment.name()))
    }

    /// `P₀`, defaulting to the disk-packing value `(λπ)^{α/2}`.
    pub fn edge_power_for(&self, alpha: f64) -> f64 {
        self.edge_power
            .unwrap_or_else(|| disk_packing_edge_power(self.intensity, alpha))
    }

    /// Network model for one `(α, σ)` point with the configured deployment
    /// and shadowing mode.
    pub fn network(&self, alpha: f64, sigma: f64) -> crate::error::Result<JspConfig> {
        self.network_with(alpha, sigma, self.deployment, self.shadowing_mode)
    }

    pub fn network_with(
        &self,
        alpha: f64,
        sigma: f64,
        deployment: Deployment,
        mode: ShadowingMode,
    ) -> crate::error::Result<JspConfig> {
        let sigma = if mode == ShadowingMode::None { 0.0 } else { sigma };
        let cfg = JspConfig::new(
            self.intensity,
            alpha,
            self.edge_power_for(alpha),
            sigma,
            deployment,
            mode,
        )?;
        match self.truncation_radius {
            Some(r) => cfg.with_truncation_radius(r),
            None => Ok(cfg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = ExperimentConfig::from_toml("experiment = \"gain-sweep\"").unwrap();
        assert_eq!(cfg, ExperimentConfig::new(Experiment::GainSweep));
        assert_eq!(cfg.theta_db.len(), 9);
        assert_eq!(cfg.output_dir(), PathBuf::from("results/gain-sweep"));
    }

    #[test]
    fn unknown_key_is_named() {
        let err = ExperimentConfig::from_toml("experiment = \"gain-sweep\"\nsigma = 1.0").unwrap_err();
        assert!(err.contains("sigma"), "{err}");
    }

    #[test]
    fn invalid_values_are_named() {
        let err = ExperimentConfig::from_toml("experiment = \"oned-appendix\"\nreplicates = 0").unwrap_err();
        assert!(err.starts_with("replicates"), "{err}");
        let err = ExperimentConfig::from_toml("experiment = \"gain-sweep\"\nalphas = []").unwrap_err();
        assert!(err.starts_with("alphas"), "{err}");
    }

    #[test]
    fn names_round_trip() {
        for e in Experiment::ALL {
            let cfg = ExperimentConfig::from_toml(&format!("experiment = \"{}\"", e.name())).unwrap();
            assert_eq!(cfg.experiment, e);
        }
    }
}
