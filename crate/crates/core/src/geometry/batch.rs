//! Parallel batches of cell samples reduced to compact per-cell records.

use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sample::{CellKind, CellSample, CellSampler};
use crate::error::Result;
use crate::seed::{resample_seed, stream_rng};
use crate::stats::MomentAccumulator;

/// Replicates handled sequentially by one task; fixed so that the reduction
/// order does not depend on the thread count.
const CHUNK: u64 = 4096;

/// Label for the stream of uniform reading angles.
const ANGLE_LABEL: u64 = 0xA11_6E5;

/// The scalar readouts of one cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellRecord {
    /// `R(0)` or `R₀(0)`.
    pub forward: f64,
    /// `R(π)` or `R₀(π)`.
    pub backward: f64,
    /// `D` or `D₀`.
    pub anchor: f64,
    pub area: f64,
    pub sides: u32,
    /// Radius at an independent uniform angle (a draw of `R̄` or `R̄₀`).
    pub uniform_angle_radius: f64,
    /// Angular average of the radius.
    pub mean_radius: f64,
    /// Distance from the nucleus to the nearest edge.
    pub min_edge_distance: f64,
}

impl CellRecord {
    pub fn from_sample(cell: &CellSample, uniform_angle: f64) -> Self {
        Self {
            forward: cell.radius_forward(),
            backward: cell.radius_backward(),
            anchor: cell.anchor_distance,
            area: cell.area(),
            sides: cell.side_count() as u32,
            uniform_angle_radius: cell.radius_at(uniform_angle),
            mean_radius: cell.mean_radius(),
            min_edge_distance: cell.polygon.min_edge_distance(),
        }
    }
}

/// Per-angle accumulators of `R(φ)` and `R(φ)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMoments {
    pub angles: Vec<f64>,
    pub first: Vec<MomentAccumulator>,
    pub second: Vec<MomentAccumulator>,
}

impl GridMoments {
    fn new(angles: &[f64]) -> Self {
        Self {
            angles: angles.to_vec(),
            first: vec![MomentAccumulator::default(); angles.len()],
            second: vec![MomentAccumulator::default(); angles.len()],
        }
    }

    fn push(&mut self, cell: &CellSample) {
        for (k, &r) in cell.radii.iter().enumerate() {
            self.first[k].push(r);
            self.second[k].push(r * r);
        }
    }

    fn merge(&mut self, other: &Self) {
        for k in 0..self.angles.len() {
            self.first[k].merge(&other.first[k]);
            self.second[k].merge(&other.second[k]);
        }
    }
}

#[derive(Debug, Clone)]
pub struct CellBatch {
    pub kind: CellKind,
    pub records: Vec<CellRecord>,
    pub grid: GridMoments,
    pub discarded: u64,
}

impl CellBatch {
    /// Extracts one readout from every record.
    pub fn column<F: Fn(&CellRecord) -> f64>(&self, f: F) -> Vec<f64> {
        self.records.iter().map(f).collect()
    }
}

/// Samples `replicates` cells of the given kind in parallel.
pub fn sample_cell_batch(sampler: &CellSampler, kind: CellKind, replicates: u64, seed: u64) -> Result<CellBatch> {
    let angle_seed = resample_seed(seed, ANGLE_LABEL);
    let chunks: Vec<(Vec<CellRecord>, GridMoments, u64)> = (0..replicates.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut records = Vec::new();
            let mut grid = GridMoments::new(sampler.grid().angles());
            let mut discarded = 0;
            for rep in c * CHUNK..((c + 1) * CHUNK).min(replicates) {
                let draw = match kind {
                    CellKind::Typical => sampler.typical(seed, rep)?,
                    CellKind::Zero => sampler.zero(seed, rep)?,
                };
                discarded += u64::from(draw.discarded);
                let angle = stream_rng(angle_seed, rep).random::<f64>() * TAU;
                records.push(CellRecord::from_sample(&draw.value, angle));
                grid.push(&draw.value);
            }
            Ok((records, grid, discarded))
        })
        .collect::<Result<_>>()?;
    let mut out = CellBatch {
        kind,
        records: Vec::with_capacity(replicates as usize),
        grid: GridMoments::new(sampler.grid().angles()),
        discarded: 0,
    };
    for (records, grid, discarded) in chunks {
        out.records.extend(records);
        out.grid.merge(&grid);
        out.discarded += discarded;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_matches_individual_draws() {
        let sampler = CellSampler::new(1.0).unwrap();
        let batch = sample_cell_batch(&sampler, CellKind::Zero, 10, 3).unwrap();
        for (k, rec) in batch.records.iter().enumerate() {
            let cell = sampler.zero(3, k as u64).unwrap().value;
            assert_eq!(rec.forward, cell.radius_forward());
            assert_eq!(rec.sides as usize, cell.side_count());
        }
        assert_eq!(batch.grid.first[0].count(), 10);
    }

    #[test]
    fn mean_radius_of_a_disk_like_cell() {
        let sampler = CellSampler::new(1.0).unwrap();
        let cell = sampler.typical(1, 0).unwrap().value;
        let rec = CellRecord::from_sample(&cell, 0.3);
        assert!(rec.mean_radius > rec.min_edge_distance);
        assert!((rec.uniform_angle_radius - cell.radius_at(0.3)).abs() < 1e-15);
    }
}
