use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::config::{Deployment, JspConfig, ShadowingMode};
use crate::error::{Error, Result};
use crate::geometry::{triangular_lattice_stream, GridIndex, Point, PointSet, RadialPpp, MAX_RESAMPLES};

use crate::seed::{resample_seed, stream_rng};

/// Stream offset separating shadowing draws from deployment draws.
const SHADOWING_STREAM: u64 = 1 << 63;

/// One base station as seen from the typical user at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaseStation {
    pub position: Point,
    pub distance: f64,
    /// Radius of the BS's cell toward the origin, when the model needs it.
    pub cell_radius: Option<f64>,
    pub shadowing: f64,
    /// `K_x ‖x‖^{−α}`.
    pub mean_power: f64,
}

/// Where a realization's randomness came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeedRecord {
    pub seed: u64,
    pub replicate: u64,
    /// Number of discarded attempts before this realization.
    pub discarded: u64,
}

/// BSs within the truncation radius, ordered by distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkRealization {
    pub bs: Vec<BaseStation>,
    pub serving_index: usize,
    pub seed: SeedRecord,
}

impl NetworkRealization {
    pub fn serving(&self) -> &BaseStation {
        &self.bs[self.serving_index]
    }

    /// Interfering BSs (every BS except the serving one).
    pub fn interferers(&self) -> impl Iterator<Item = &BaseStation> + '_ {
        let s = self.serving_index;
        self.bs.iter().enumerate().filter(move |&(i, _)| i != s).map(|(_, b)| b)
    }
}

/// Deployment points in the window for one replicate.
pub fn sample_deployment(config: &JspConfig, seed: u64, replicate: u64) -> Result<PointSet> {
    match config.deployment {
        Deployment::Ppp => {
            let mut gen = RadialPpp::new(config.intensity, config.window_radius, stream_rng(seed, replicate))?;
            gen.extend_to(config.window_radius);
            gen.into_point_set()
        }
        Deployment::Triangular => triangular_lattice_stream(config.intensity, config.window_radius, seed, replicate),
    }
}

/// Samples the deployment, the cell radii toward the origin and the
/// shadowing coefficients, and associates the user with the strongest BS.
/// Realizations whose cell radii cannot be certified inside the window are
/// redrawn from a fresh seed.
pub fn build_realization(config: &JspConfig, seed: u64, replicate: u64) -> Result<NetworkRealization> {
    config.validate()?;
    let mut last = None;
    for attempt in 0..MAX_RESAMPLES {
        match build_once(config, resample_seed(seed, attempt), replicate) {
            Ok(bs) => {
                let serving_index = strongest(&bs)?;
                return Ok(NetworkRealization {
                    bs,
                    serving_index,
                    seed: SeedRecord {
                        seed,
                        replicate,
                        discarded: attempt,
                    },
                });
            }
            Err(e @ Error::Truncation(_)) | Err(e @ Error::CoincidentPoints) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Truncation("no certified realization".into())))
}

fn strongest(bs: &[BaseStation]) -> Result<usize> {
    bs.iter()
        .enumerate()
        .max_by(|a, b| a.1.mean_power.total_cmp(&b.1.mean_power))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Truncation("no BS inside the truncation radius".into()))
}

fn build_once(config: &JspConfig, seed: u64, replicate: u64) -> Result<Vec<BaseStation>> {
    let points = sample_deployment(config, seed, replicate)?;
    let alpha = config.path_loss_exponent;
    let sigma = config.shadowing_sigma;
    let truncation = config.interferer_truncation_radius;
    let count = points.points().partition_point(|p| p.norm() <= truncation);
    let radii: Vec<Option<f64>> = if config.needs_cell_radii() {
        let index = GridIndex::new(&points, 1.0 / config.intensity.sqrt());
        (0..count)
            .map(|i| index.radius_toward(i, Point::ORIGIN).map(Some))
            .collect::<Result<_>>()?
    } else {
        vec![None; count]
    };
    let mut rng = stream_rng(seed, replicate ^ SHADOWING_STREAM);
    let mut bs = Vec::with_capacity(count);
    for (p, r) in points.points()[..count].iter().zip(radii) {
        let distance = p.norm();
        let mut lognormal = || {
            if sigma == 0.0 {
                1.0
            } else {
                let g: f64 = rng.sample(StandardNormal);
                (sigma * g - 0.5 * sigma * sigma).exp()
            }
        };
        let shadowing = match config.shadowing_mode {
            ShadowingMode::Jsp => config.edge_power * r.expect("radius computed").powf(alpha) * lognormal(),
            ShadowingMode::IidLognormal => lognormal(),
            ShadowingMode::None => 1.0,
        };
        bs.push(BaseStation {
            position: *p,
            distance,
            cell_radius: r,
            shadowing,
            mean_power: shadowing * inverse_power(distance, alpha),
        });
    }
    Ok(bs)
}

/// `d^{−α}`, with an integer-power fast path for even integer `α`.
fn inverse_power(d: f64, alpha: f64) -> f64 {
    let half = 0.5 * alpha;
    if half.fract() == 0.0 && half <= 16.0 {
        (d * d).powi(-(half as i32))
    } else {
        d.powf(-alpha)
    }
}
