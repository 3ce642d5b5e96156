//! Uniform bucket grid for directional-radius queries over a point set.

use super::cell::{directional_radius, raw_directional_radius};
use super::point::Point;
use super::ppp::PointSet;
use crate::error::{Error, Result};

/// Directional radius of the cell of `points[bs]` in the direction of
/// `target`, by direct scan over the whole point set.
pub fn cell_radius_toward(points: &PointSet, bs: usize, target: Point) -> Result<f64> {
    let pts = points.points();
    let nucleus = *pts
        .get(bs)
        .ok_or_else(|| Error::InvalidParameter(format!("no point with index {bs}")))?;
    let dir = target - nucleus;
    let dist = dir.norm();
    if dist == 0.0 {
        return Err(Error::InvalidParameter("target coincides with the nucleus".into()));
    }
    let u = dir * (1.0 / dist);
    let neighbors: Vec<Point> = pts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != bs)
        .map(|(_, p)| *p - nucleus)
        .collect();
    directional_radius(&neighbors, u, points.window_radius() - nucleus.norm())
}

/// Bucket grid over the window square.
#[derive(Debug, Clone)]
pub struct GridIndex {
    points: Vec<Point>,
    origin: Point,
    cell: f64,
    dim: usize,
    starts: Vec<u32>,
    entries: Vec<u32>,
    window_radius: f64,
}

impl GridIndex {
    /// Builds the index with a bucket side of `cell_size`.
    pub fn new(points: &PointSet, cell_size: f64) -> Self {
        let w = points.window_radius();
        let dim = ((2.0 * w / cell_size).ceil() as usize).max(1);
        let origin = Point::new(-w, -w);
        let pts = points.points().to_vec();
        let bucket = |p: &Point| {
            let cx = (((p.x - origin.x) / cell_size) as usize).min(dim - 1);
            let cy = (((p.y - origin.y) / cell_size) as usize).min(dim - 1);
            cy * dim + cx
        };
        let mut counts = vec![0u32; dim * dim + 1];
        for p in &pts {
            counts[bucket(p) + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let starts = counts.clone();
        let mut fill = counts;
        let mut entries = vec![0u32; pts.len()];
        for (i, p) in pts.iter().enumerate() {
            let b = bucket(p);
            entries[fill[b] as usize] = i as u32;
            fill[b] += 1;
        }
        Self {
            points: pts,
            origin,
            cell: cell_size,
            dim,
            starts,
            entries,
            window_radius: w,
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    fn coords(&self, p: Point) -> (i64, i64) {
        (
            ((p.x - self.origin.x) / self.cell).floor() as i64,
            ((p.y - self.origin.y) / self.cell).floor() as i64,
        )
    }

    fn bucket_slice(&self, cx: i64, cy: i64) -> &[u32] {
        if cx < 0 || cy < 0 || cx >= self.dim as i64 || cy >= self.dim as i64 {
            return &[];
        }
        let b = cy as usize * self.dim + cx as usize;
        &self.entries[self.starts[b] as usize..self.starts[b + 1] as usize]
    }

    /// Directional radius of the cell of point `index` in the direction of
    /// `target`. Buckets are scanned in rings of increasing Chebyshev distance
    /// until no unscanned point can lower the current minimum.
    pub fn radius_toward(&self, index: usize, target: Point) -> Result<f64> {
        let nucleus = self.points[index];
        let dir = target - nucleus;
        let dist = dir.norm();
        if dist == 0.0 {
            return Err(Error::InvalidParameter("target coincides with the nucleus".into()));
        }
        let u = dir * (1.0 / dist);
        let (cx, cy) = self.coords(nucleus);
        let mut best = f64::INFINITY;
        let max_ring = self.dim as i64 + 1;
        for ring in 0..=max_ring {
            // every point in this ring is at least (ring - 1) * cell away
            if ring >= 1 && (ring - 1) as f64 * self.cell >= 2.0 * best {
                break;
            }
            let mut visit = |bx: i64, by: i64| {
                for &j in self.bucket_slice(bx, by) {
                    let j = j as usize;
                    if j == index {
                        continue;
                    }
                    let y = self.points[j] - nucleus;
                    let proj = y.dot(u);
                    if proj > 0.0 {
                        best = best.min(y.norm_sq() / (2.0 * proj));
                    }
                }
            };
            if ring == 0 {
                visit(cx, cy);
                continue;
            }
            for k in -ring..=ring {
                visit(cx + k, cy - ring);
                visit(cx + k, cy + ring);
            }
            for k in (-ring + 1)..ring {
                visit(cx - ring, cy + k);
                visit(cx + ring, cy + k);
            }
        }
        let reach = self.window_radius - nucleus.norm();
        if !best.is_finite() {
            return Err(Error::Truncation("no neighbor in the requested direction".into()));
        }
        if best >= 0.5 * reach {
            return Err(Error::Truncation(format!(
                "cell radius {best} is not below half the window reach {reach}"
            )));
        }
        Ok(best)
    }

    /// Brute-force variant used to cross-check the ring search.
    pub fn radius_toward_scan(&self, index: usize, target: Point) -> f64 {
        let nucleus = self.points[index];
        let u = (target - nucleus) * (1.0 / (target - nucleus).norm());
        let rel: Vec<Point> = self
            .points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != index)
            .map(|(_, p)| *p - nucleus)
            .collect();
        raw_directional_radius(&rel, u)
    }
}
