//! Poisson point processes in a disk.
//!
//! Points are generated in order of increasing distance from the origin:
//! the areas `λπ r_k²` are the arrival times of a unit-rate Poisson process
//! and the angles are iid uniform. Restricted to a disk of radius `W` this is
//! exactly a PPP of intensity `λ` in that disk, and the realization inside any
//! smaller disk does not depend on `W` (prefix consistency), which lets cell
//! construction stop generating as soon as the cell is certified.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use super::point::Point;
use crate::error::{ensure_positive, Error, Result};
use crate::seed::{stream_rng, SimRng};

/// Default maximum expected number of points in one realization.
pub const DEFAULT_POINT_BUDGET: f64 = 1e7;

/// Relative tolerance below which two points are considered coincident.
pub const COINCIDENT_TOL: f64 = 1e-12;

/// A finite planar point pattern with its generating window and intensity.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
    window_radius: f64,
    intensity: f64,
}

impl PointSet {
    /// Validates that every point lies in the window disk and that no two
    /// points coincide.
    pub fn new(points: Vec<Point>, window_radius: f64, intensity: f64) -> Result<Self> {
        ensure_positive("window_radius", window_radius)?;
        ensure_positive("intensity", intensity)?;
        if let Some(p) = points.iter().find(|p| p.norm() > window_radius) {
            return Err(Error::InvalidParameter(format!(
                "point ({}, {}) lies outside the window of radius {window_radius}",
                p.x, p.y
            )));
        }
        if has_coincident(&points, window_radius) {
            return Err(Error::CoincidentPoints);
        }
        Ok(Self {
            points,
            window_radius,
            intensity,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn window_radius(&self) -> f64 {
        self.window_radius
    }

    pub fn intensity(&self) -> f64 {
        self.intensity
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

fn has_coincident(points: &[Point], scale: f64) -> bool {
    let tol = COINCIDENT_TOL * scale;
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort_unstable_by(|a, b| a.x.total_cmp(&b.x));
    for (i, p) in sorted.iter().enumerate() {
        for q in &sorted[i + 1..] {
            if q.x - p.x > tol {
                break;
            }
            if (q.y - p.y).abs() <= tol {
                return true;
            }
        }
    }
    false
}

/// Checks the point budget for a disk of radius `window_radius`.
pub fn check_budget(intensity: f64, window_radius: f64, budget: f64) -> Result<()> {
    let expected = intensity * PI * window_radius * window_radius;
    if expected > budget {
        Err(Error::BudgetExceeded { expected, budget })
    } else {
        Ok(())
    }
}

/// Samples a PPP of the given intensity in the disk of radius `window_radius`.
///
/// The returned points are ordered by distance from the origin.
pub fn sample_ppp(intensity: f64, window_radius: f64, seed: u64) -> Result<PointSet> {
    sample_ppp_with_budget(intensity, window_radius, seed, DEFAULT_POINT_BUDGET)
}

pub fn sample_ppp_with_budget(intensity: f64, window_radius: f64, seed: u64, budget: f64) -> Result<PointSet> {
    let mut gen = RadialPpp::new(intensity, window_radius, stream_rng(seed, 0))?;
    check_budget(intensity, window_radius, budget)?;
    gen.extend_to(window_radius);
    gen.into_point_set()
}

fn coincident(a: Point, b: Point, scale: f64) -> bool {
    (a - b).norm() <= COINCIDENT_TOL * scale
}

/// Lazy generator of a PPP in a disk, in order of distance from the origin.
#[derive(Debug, Clone)]
pub struct RadialPpp {
    intensity: f64,
    window_radius: f64,
    rng: SimRng,
    arrival: f64,
    pending: Option<f64>,
    exhausted: bool,
    points: Vec<Point>,
}

impl RadialPpp {
    pub fn new(intensity: f64, window_radius: f64, rng: SimRng) -> Result<Self> {
        ensure_positive("intensity", intensity)?;
        ensure_positive("window_radius", window_radius)?;
        Ok(Self {
            intensity,
            window_radius,
            rng,
            arrival: 0.0,
            pending: None,
            exhausted: false,
            points: Vec::new(),
        })
    }

    pub fn intensity(&self) -> f64 {
        self.intensity
    }

    pub fn window_radius(&self) -> f64 {
        self.window_radius
    }

    /// Points generated so far, sorted by distance from the origin.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Converts the generated points into a [`PointSet`]. Points come in
    /// order of distance, so coincident points are adjacent.
    pub fn into_point_set(self) -> Result<PointSet> {
        let window_radius = self.window_radius;
        if self.points.windows(2).any(|w| coincident(w[0], w[1], window_radius)) {
            return Err(Error::CoincidentPoints);
        }
        Ok(PointSet {
            points: self.points,
            window_radius,
            intensity: self.intensity,
        })
    }

    pub fn rng_mut(&mut self) -> &mut SimRng {
        &mut self.rng
    }

    /// Radius up to which the realization is complete.
    pub fn covered_radius(&self) -> f64 {
        if self.exhausted {
            self.window_radius
        } else {
            self.pending.unwrap_or(0.0).min(self.window_radius)
        }
    }

    fn next_radius(&mut self) -> f64 {
        let e: f64 = Exp1.sample(&mut self.rng);
        self.arrival += e;
        (self.arrival / (self.intensity * PI)).sqrt()
    }

    /// Generates every point with distance at most `min(radius, W)`.
    /// Returns `true` when the requested radius lies inside the window.
    pub fn extend_to(&mut self, radius: f64) -> bool {
        let target = radius.min(self.window_radius);
        while !self.exhausted {
            let r = match self.pending {
                Some(r) => r,
                None => {
                    let r = self.next_radius();
                    self.pending = Some(r);
                    r
                }
            };
            if r > self.window_radius {
                self.exhausted = true;
                break;
            }
            if r > target {
                break;
            }
            let angle = self.rng.random::<f64>() * TAU;
            self.points.push(Point::from_polar(r, angle));
            self.pending = None;
        }
        radius <= self.window_radius
    }

    /// Ensures at least `count` points are generated (or the window is exhausted).
    pub fn extend_count(&mut self, count: usize) {
        while self.points.len() < count && !self.exhausted {
            let r = match self.pending {
                Some(r) => r,
                None => {
                    let r = self.next_radius();
                    self.pending = Some(r);
                    r
                }
            };
            self.extend_to(r);
        }
    }
}
