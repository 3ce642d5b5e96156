use std::f64::consts::TAU;

use rand::Rng;

use super::point::Point;
use super::ppp::PointSet;
use crate::error::{ensure_positive, Result};
use crate::seed::stream_rng;

/// Nearest-neighbor spacing of a triangular lattice with `intensity` points
/// per unit area.
pub fn lattice_spacing(intensity: f64) -> f64 {
    (2.0 / (3f64.sqrt() * intensity)).sqrt()
}

/// Triangular lattice of the given density with a uniform random translation
/// over one fundamental cell and a uniform random rotation, clipped to the
/// window disk and sorted by distance from the origin.
pub fn triangular_lattice(intensity: f64, window_radius: f64, seed: u64) -> Result<PointSet> {
    triangular_lattice_stream(intensity, window_radius, seed, 0)
}

pub fn triangular_lattice_stream(intensity: f64, window_radius: f64, seed: u64, stream: u64) -> Result<PointSet> {
    ensure_positive("intensity", intensity)?;
    ensure_positive("window_radius", window_radius)?;
    let mut rng = stream_rng(seed, stream);
    let s = lattice_spacing(intensity);
    let a1 = Point::new(s, 0.0);
    let a2 = Point::new(0.5 * s, 0.5 * 3f64.sqrt() * s);
    let offset = a1 * rng.random::<f64>() + a2 * rng.random::<f64>();
    let rotation = rng.random::<f64>() * TAU;
    // rows are 0.866 s apart, so |j| ≤ W / (0.866 s) + 2 covers the disk
    let jmax = (window_radius / (a2.y) + 2.0).ceil() as i64;
    let imax = (window_radius / s + jmax as f64 * 0.5 + 2.0).ceil() as i64;
    let mut points = Vec::new();
    for j in -jmax..=jmax {
        for i in -imax..=imax {
            let p = (a1 * i as f64 + a2 * j as f64 + offset).rotate(rotation);
            if p.norm() <= window_radius {
                points.push(p);
            }
        }
    }
    points.sort_unstable_by(|a, b| a.norm_sq().total_cmp(&b.norm_sq()));
    PointSet::new(points, window_radius, intensity)
}

/// Density of the lattice implied by its spacing; `1/(area of a hexagonal cell)`.
pub fn lattice_density(spacing: f64) -> f64 {
    2.0 / (3f64.sqrt() * spacing * spacing)
}

#[cfg(test)]
fn hexagon_area(spacing: f64) -> f64 {
    0.5 * 3f64.sqrt() * spacing * spacing
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_density_spacing() {
        assert!((lattice_spacing(1.0) - 1.074_569_931_823_542).abs() < 1e-12);
        assert!((lattice_density(lattice_spacing(3.7)) - 3.7).abs() < 1e-12);
    }

    #[test]
    fn empirical_density() {
        let w = 60.0;
        let pts = triangular_lattice(1.0, w, 5).unwrap();
        let density = pts.len() as f64 / (PI * w * w);
        assert!((density - 1.0).abs() < 0.01, "density {density}");
    }

    #[test]
    fn seeds_change_offset_not_spacing() {
        let a = triangular_lattice(1.0, 10.0, 1).unwrap();
        let b = triangular_lattice(1.0, 10.0, 2).unwrap();
        assert_ne!(a.points()[0], b.points()[0]);
        let nn = |p: &PointSet| {
            let x = p.points()[0];
            p.points()[1..]
                .iter()
                .map(|q| (*q - x).norm())
                .fold(f64::INFINITY, f64::min)
        };
        assert!((nn(&a) - lattice_spacing(1.0)).abs() < 1e-12);
        assert!((nn(&b) - lattice_spacing(1.0)).abs() < 1e-12);
    }

    #[test]
    fn hexagon_area_is_inverse_density() {
        assert!((hexagon_area(lattice_spacing(2.0)) - 0.5).abs() < 1e-12);
    }
}
