use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::error::{ensure_positive, Result};
use crate::seed::stream_rng;

/// Typical cell of a one-dimensional PPP observed from a uniform in-cell point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneDimCell {
    /// Distance from the nucleus to the uniform point.
    pub anchor_distance: f64,
    /// Distance to the boundary on the side of the uniform point.
    pub radius_forward: f64,
    /// Distance to the boundary on the opposite side.
    pub radius_backward: f64,
}

pub fn sample_oned_typical_cell(intensity: f64, seed: u64, stream: u64) -> Result<OneDimCell> {
    ensure_positive("intensity", intensity)?;
    let mut rng = stream_rng(seed, stream);
    let gap = Exp::new(intensity).expect("positive rate");
    let right = 0.5 * gap.sample(&mut rng);
    let left = 0.5 * gap.sample(&mut rng);
    let z = rng.random::<f64>() * (left + right) - left;
    let (forward, backward) = if z >= 0.0 { (right, left) } else { (left, right) };
    Ok(OneDimCell {
        anchor_distance: z.abs(),
        radius_forward: forward,
        radius_backward: backward,
    })
}
