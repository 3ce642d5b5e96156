//! Voronoi cell construction by half-plane clipping, with the nucleus at the
//! origin and neighbors given relative to it.

use rand::Rng;

use super::point::Point;
use super::ppp::COINCIDENT_TOL;
use crate::error::{Error, Result};

/// Distance from the nucleus (origin) along the unit vector `direction` to the
/// boundary of its Voronoi cell: `min ‖y‖² / (2 y·u)` over neighbors with
/// `y·u > 0`.
///
/// `reach` is the distance from the nucleus to the edge of the simulation
/// window. A neighbor outside the window is at least `reach` away and can only
/// lower the result below `reach / 2`, so a result at or beyond `reach / 2`
/// cannot be certified and is reported as truncation.
pub fn directional_radius(neighbors: &[Point], direction: Point, reach: f64) -> Result<f64> {
    let value = raw_directional_radius(neighbors, direction);
    if !value.is_finite() {
        return Err(Error::Truncation("no neighbor in the requested direction".into()));
    }
    if value >= 0.5 * reach {
        return Err(Error::Truncation(format!(
            "directional radius {value} is not below half the window reach {reach}"
        )));
    }
    Ok(value)
}

/// `directional_radius` without the window guard; infinite when unbounded.
pub(crate) fn raw_directional_radius(neighbors: &[Point], direction: Point) -> f64 {
    neighbors
        .iter()
        .filter_map(|y| {
            let proj = y.dot(direction);
            (proj > 0.0).then(|| y.norm_sq() / (2.0 * proj))
        })
        .fold(f64::INFINITY, f64::min)
}

const SQUARE: usize = usize::MAX;

/// A bounded convex Voronoi cell with its nucleus at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct CellPolygon {
    /// Vertices in counter-clockwise order.
    vertices: Vec<Point>,
    /// `generators[i]` is the neighbor whose bisector carries the edge from
    /// `vertices[i]` to `vertices[i + 1]`.
    generators: Vec<Point>,
    area: f64,
}

impl CellPolygon {
    fn from_parts(vertices: Vec<Point>, generators: Vec<Point>) -> Self {
        let area = shoelace_area(&vertices);
        Self {
            vertices,
            generators,
            area,
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Neighbors sharing an edge with the nucleus, one per edge.
    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn side_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn max_vertex_distance(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Distance from the nucleus to the closest edge, i.e. half the
    /// nearest-neighbor distance.
    pub fn min_edge_distance(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| 0.5 * g.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Directional radius at `angle`, exact for the bounded cell.
    pub fn radius_at(&self, angle: f64) -> f64 {
        raw_directional_radius(&self.generators, Point::unit(angle))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.generators
            .iter()
            .all(|g| p.dot(*g) <= 0.5 * g.norm_sq() * (1.0 + 1e-12))
    }

    pub fn rotated(&self, angle: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.rotate(angle)).collect(),
            generators: self.generators.iter().map(|g| g.rotate(angle)).collect(),
            area: self.area,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.scale(factor)).collect(),
            generators: self.generators.iter().map(|g| g.scale(factor)).collect(),
            area: self.area * factor * factor,
        }
    }

    /// Uniform point in the cell: pick a fan triangle `(o, v_i, v_{i+1})`
    /// with probability proportional to its area, then a uniform point in it.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let n = self.vertices.len();
        let tri_area = |i: usize| 0.5 * self.vertices[i].cross(self.vertices[(i + 1) % n]);
        let mut target = rng.random::<f64>() * self.area;
        let mut pick = n - 1;
        for i in 0..n {
            let a = tri_area(i);
            if target < a {
                pick = i;
                break;
            }
            target -= a;
        }
        let a = self.vertices[pick];
        let b = self.vertices[(pick + 1) % n];
        let (mut u, mut v): (f64, f64) = (rng.random(), rng.random());
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        a * u + b * v
    }
}

pub fn shoelace_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    0.5 * (0..n).map(|i| vertices[i].cross(vertices[(i + 1) % n])).sum::<f64>()
}

/// Incremental half-plane clipping of a bounding square.
#[derive(Debug, Clone)]
pub(crate) struct CellBuilder {
    vertices: Vec<Point>,
    labels: Vec<usize>,
    generators: Vec<Point>,
    max_vertex_sq: f64,
    scratch_v: Vec<Point>,
    scratch_l: Vec<usize>,
}

impl CellBuilder {
    pub fn new(half_width: f64) -> Self {
        let h = half_width;
        let vertices = vec![
            Point::new(-h, -h),
            Point::new(h, -h),
            Point::new(h, h),
            Point::new(-h, h),
        ];
        Self {
            vertices,
            labels: vec![SQUARE; 4],
            generators: Vec::new(),
            max_vertex_sq: 2.0 * h * h,
            scratch_v: Vec::new(),
            scratch_l: Vec::new(),
        }
    }

    pub fn max_vertex_distance(&self) -> f64 {
        self.max_vertex_sq.sqrt()
    }

    /// Whether a neighbor at distance `dist` from the nucleus can still cut
    /// the current cell.
    pub fn can_cut(&self, dist: f64) -> bool {
        dist * dist < 4.0 * self.max_vertex_sq
    }

    /// Clips by the bisector half-plane `{p : p·y ≤ ‖y‖²/2}`.
    pub fn clip(&mut self, y: Point) {
        let offset = 0.5 * y.norm_sq();
        let eps = 1e-12 * offset;
        let n = self.vertices.len();
        let side = |p: Point| p.dot(y) - offset;
        if self.vertices.iter().all(|&p| side(p) <= eps) {
            return;
        }
        let label = self.generators.len();
        self.generators.push(y);
        self.scratch_v.clear();
        self.scratch_l.clear();
        for i in 0..n {
            let cur = self.vertices[i];
            let nxt = self.vertices[(i + 1) % n];
            let (sc, sn) = (side(cur), side(nxt));
            let cur_in = sc <= eps;
            let nxt_in = sn <= eps;
            if cur_in {
                self.scratch_v.push(cur);
                self.scratch_l.push(self.labels[i]);
                if !nxt_in {
                    let t = sc / (sc - sn);
                    self.scratch_v.push(cur + (nxt - cur) * t);
                    self.scratch_l.push(label);
                }
            } else if nxt_in {
                let t = sc / (sc - sn);
                self.scratch_v.push(cur + (nxt - cur) * t);
                self.scratch_l.push(self.labels[i]);
            }
        }
        std::mem::swap(&mut self.vertices, &mut self.scratch_v);
        std::mem::swap(&mut self.labels, &mut self.scratch_l);
        self.drop_degenerate_edges(offset.sqrt());
        self.max_vertex_sq = self.vertices.iter().map(|v| v.norm_sq()).fold(0.0, f64::max);
    }

    fn drop_degenerate_edges(&mut self, scale: f64) {
        let tol = 1e-12 * scale.max(1e-300);
        let mut i = 0;
        while self.vertices.len() > 3 && i < self.vertices.len() {
            let j = (i + 1) % self.vertices.len();
            if (self.vertices[j] - self.vertices[i]).norm() <= tol {
                self.vertices.remove(i);
                self.labels.remove(i);
            } else {
                i += 1;
            }
        }
    }

    pub fn touches_square(&self) -> bool {
        self.labels.contains(&SQUARE)
    }

    pub fn finish(self) -> Result<CellPolygon> {
        if self.touches_square() {
            return Err(Error::Truncation("cell reaches the bounding square".into()));
        }
        let generators = self.labels.iter().map(|&l| self.generators[l]).collect();
        Ok(CellPolygon::from_parts(self.vertices, generators))
    }
}

/// Builds the Voronoi cell of the origin from neighbors sorted by distance.
///
/// Clipping stops as soon as the next neighbor is farther than twice the
/// largest vertex distance. `window_radius` is the distance from the nucleus
/// to the window edge: it sizes the bounding square and, when the neighbor
/// list runs out, certifies that no unseen point can cut the cell.
pub fn cell_polygon(neighbors: &[Point], window_radius: f64) -> Result<CellPolygon> {
    let tol = COINCIDENT_TOL * window_radius;
    let mut builder = CellBuilder::new(window_radius);
    let mut prev: Option<Point> = None;
    let mut terminated = false;
    for &y in neighbors {
        let dist = y.norm();
        if dist <= tol {
            return Err(Error::CoincidentPoints);
        }
        if let Some(p) = prev {
            if dist + tol < p.norm() {
                return Err(Error::InvalidParameter("neighbors must be sorted by distance".into()));
            }
            if (y - p).norm() <= tol {
                return Err(Error::CoincidentPoints);
            }
        }
        prev = Some(y);
        if !builder.can_cut(dist) {
            terminated = true;
            break;
        }
        builder.clip(y);
    }
    if !terminated && builder.can_cut(window_radius) {
        return Err(Error::Truncation("window too small to certify the cell".into()));
    }
    builder.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn hexagon(r: f64) -> Vec<Point> {
        (0..6).map(|k| Point::from_polar(r, k as f64 * PI / 3.0)).collect()
    }

    #[test]
    fn single_bisector() {
        let r = directional_radius(&[Point::new(2.0, 0.0)], Point::new(1.0, 0.0), 10.0).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_meets_two_bisectors() {
        let neighbors = [Point::new(2.0, 0.0), Point::new(0.0, 2.0)];
        let u = Point::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let r = directional_radius(&neighbors, u, 10.0).unwrap();
        assert!((r - SQRT_2).abs() < 1e-14);
        // the boundary point is equidistant from the nucleus and both neighbors
        let p = u * r;
        for y in neighbors {
            assert!(((p - y).norm() - p.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn no_neighbor_ahead_is_truncation() {
        let err = directional_radius(&[Point::new(2.0, 0.0)], Point::new(0.0, 1.0), 10.0);
        assert!(matches!(err, Err(Error::Truncation(_))));
    }

    #[test]
    fn radius_beyond_half_window_is_truncation() {
        let err = directional_radius(&[Point::new(8.0, 0.0)], Point::new(1.0, 0.0), 6.0);
        assert!(matches!(err, Err(Error::Truncation(_))));
    }

    #[test]
    fn regular_hexagon_cell() {
        let cell = cell_polygon(&hexagon(2.0), 10.0).unwrap();
        assert_eq!(cell.side_count(), 6);
        assert!((cell.area() - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((cell.max_vertex_distance() - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn square_cell() {
        let n = [
            Point::new(2.0, 0.0),
            Point::new(-2.0, 0.0),
            Point::new(0.0, 2.0),
            Point::new(0.0, -2.0),
        ];
        let cell = cell_polygon(&n, 10.0).unwrap();
        assert_eq!(cell.side_count(), 4);
        assert!((cell.area() - 4.0).abs() < 1e-12);
        for v in cell.vertices() {
            assert!((v.x.abs() - 1.0).abs() < 1e-12 && (v.y.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn unbounded_cell_is_truncation() {
        let err = cell_polygon(&[Point::new(2.0, 0.0)], 3.0);
        assert!(matches!(err, Err(Error::Truncation(_))));
    }

    #[test]
    fn far_neighbors_are_skipped() {
        let mut n = hexagon(2.0);
        n.push(Point::new(50.0, 0.0));
        let cell = cell_polygon(&n, 100.0).unwrap();
        assert_eq!(cell.side_count(), 6);
    }

    #[test]
    fn rejects_nucleus_duplicate() {
        assert_eq!(cell_polygon(&[Point::ORIGIN], 10.0), Err(Error::CoincidentPoints));
    }

    #[test]
    fn polygon_radius_matches_neighbor_formula() {
        let n = hexagon(2.0);
        let cell = cell_polygon(&n, 10.0).unwrap();
        for k in 0..50 {
            let a = k as f64 * 0.1257;
            let direct = raw_directional_radius(&n, Point::unit(a));
            assert!((cell.radius_at(a) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_points_fall_inside() {
        let cell = cell_polygon(&hexagon(2.0), 10.0).unwrap();
        let mut rng = crate::seed::stream_rng(1, 0);
        for _ in 0..1000 {
            assert!(cell.contains(cell.sample_uniform(&mut rng)));
        }
    }
}
