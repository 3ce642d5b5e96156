use rayon::prelude::*;

use super::config::Deployment;
use crate::error::{ensure_positive, Error, Result};
use crate::geometry::{
    cell_radius_toward, lattice_spacing, raw_directional_radius, triangular_lattice_stream, Point, RadialPpp,
    DEFAULT_WINDOW_FACTOR, MAX_RESAMPLES,
};
use crate::seed::{resample_seed, stream_rng};

/// Distance `‖x_i‖` and cell radius toward the origin `r(x_i)` of the
/// `i`-th nearest BS.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedRadius {
    pub distance: f64,
    pub radius: f64,
}

impl OrderedRadius {
    /// `r(x_i)/‖x_i‖`.
    pub fn ratio(&self) -> f64 {
        self.radius / self.distance
    }
}

/// `(‖x_i‖, r(x_i))` for `i = 0, …, max_index`, generating only as much of
/// the deployment as the radii need.
pub fn sample_ordered_radii(
    intensity: f64,
    deployment: Deployment,
    max_index: usize,
    seed: u64,
    stream: u64,
) -> Result<Vec<OrderedRadius>> {
    ensure_positive("intensity", intensity)?;
    let mut last = None;
    for attempt in 0..MAX_RESAMPLES {
        let s = resample_seed(seed, attempt);
        let result = match deployment {
            Deployment::Ppp => ppp_once(intensity, max_index, s, stream),
            Deployment::Triangular => lattice_once(intensity, max_index, s, stream),
        };
        match result {
            Err(e @ Error::Truncation(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap_or_else(|| Error::Truncation("no certified realization".into())))
}

fn ppp_once(intensity: f64, max_index: usize, seed: u64, stream: u64) -> Result<Vec<OrderedRadius>> {
    let window = DEFAULT_WINDOW_FACTOR / intensity.sqrt();
    let mut ppp = RadialPpp::new(intensity, window, stream_rng(seed, stream))?;
    ppp.extend_count(max_index + 1);
    if ppp.points().len() <= max_index {
        return Err(Error::Truncation(format!(
            "fewer than {} points in the window",
            max_index + 1
        )));
    }
    (0..=max_index)
        .map(|i| {
            let x = ppp.points()[i];
            let distance = x.norm();
            let u = x * (-1.0 / distance);
            loop {
                let radius = raw_directional_radius(&rel_all(&ppp, i, x), u);
                // points farther than 2·radius from x cannot lower the radius;
                // until then the radius is only an upper bound
                let needed = distance + 2.0 * radius;
                let complete = ppp.covered_radius();
                if complete >= needed {
                    return Ok(OrderedRadius { distance, radius });
                }
                if complete >= window {
                    return Err(Error::Truncation(format!("radius {radius} cannot be certified")));
                }
                let target = if radius.is_finite() {
                    needed
                } else {
                    2.0 * complete.max(distance)
                };
                ppp.extend_to(target);
            }
        })
        .collect()
}

fn rel_all(ppp: &RadialPpp, i: usize, x: Point) -> Vec<Point> {
    ppp.points()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, p)| *p - x)
        .collect()
}

fn lattice_once(intensity: f64, max_index: usize, seed: u64, stream: u64) -> Result<Vec<OrderedRadius>> {
    // cell radii are at most s/√3 and the i-th point lies within about
    // √(i+1)·s, so this window always certifies the radii
    let window = (2.0 + 1.5 * (max_index as f64 + 1.0).sqrt()) * lattice_spacing(intensity);
    let points = triangular_lattice_stream(intensity, window, seed, stream)?;
    (0..=max_index)
        .map(|i| {
            let distance = points.points()[i].norm();
            Ok(OrderedRadius {
                distance,
                radius: cell_radius_toward(&points, i, Point::ORIGIN)?,
            })
        })
        .collect()
}

/// Ordered radii for `replicates` independent deployments, in replicate order.
pub fn ordered_radii_samples(
    intensity: f64,
    deployment: Deployment,
    max_index: usize,
    replicates: u64,
    seed: u64,
) -> Result<Vec<Vec<OrderedRadius>>> {
    (0..replicates)
        .into_par_iter()
        .map(|rep| sample_ordered_radii(intensity, deployment, max_index, seed, rep))
        .collect()
}

/// Mean power `P₀ (r(x₀)/‖x₀‖)^α` of the nearest BS in the JSP model with
/// `σ = 0`, where the nearest BS is also the strongest.
pub fn serving_power_samples(
    intensity: f64,
    deployment: Deployment,
    edge_power: f64,
    alpha: f64,
    replicates: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    Ok(ordered_radii_samples(intensity, deployment, 0, replicates, seed)?
        .into_iter()
        .map(|v| edge_power * v[0].ratio().powf(alpha))
        .collect())
}
