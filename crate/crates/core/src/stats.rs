//! Empirical distributions, moment estimators and KS distances.

use serde::Serialize;

use crate::error::{Error, Result};

/// An estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// Sorted sample with ECDF, KS and moment queries.
#[derive(Debug, Clone)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Builds the distribution; NaN samples are rejected.
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(Error::Numeric("NaN sample".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// `#{samples ≤ t}/n`.
    pub fn ecdf(&self, t: f64) -> f64 {
        self.samples.partition_point(|&v| v <= t) as f64 / self.len() as f64
    }

    /// `#{samples > t}/n`.
    pub fn ccdf(&self, t: f64) -> f64 {
        1.0 - self.ecdf(t)
    }

    /// Empirical `q`-quantile (lower).
    pub fn quantile(&self, q: f64) -> f64 {
        let n = self.len();
        let k = ((q.clamp(0.0, 1.0) * n as f64).ceil() as usize).clamp(1, n);
        self.samples[k - 1]
    }

    /// Kolmogorov–Smirnov statistic `sup |F_n − F|`, evaluated on both sides
    /// of every jump.
    pub fn ks_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.len() as f64;
        let mut d: f64 = 0.0;
        let mut i = 0;
        while i < self.samples.len() {
            let x = self.samples[i];
            let mut j = i;
            while j < self.samples.len() && self.samples[j] == x {
                j += 1;
            }
            let f = cdf(x);
            d = d.max(f - i as f64 / n).max(j as f64 / n - f);
            i = j;
        }
        d
    }

    /// Sample mean of `X^k` with its standard error.
    pub fn moment(&self, k: i32) -> Result<Estimate> {
        moment_of(self.samples.iter().map(|v| v.powi(k)))
    }

    pub fn mean(&self) -> Result<Estimate> {
        self.moment(1)
    }

    /// Mean after discarding the `trim` fraction at each end.
    pub fn trimmed_mean(&self, trim: f64) -> Result<f64> {
        let n = self.len();
        let cut = (trim * n as f64).floor() as usize;
        if 2 * cut >= n {
            return Err(Error::InvalidParameter(format!("trim {trim} removes every sample")));
        }
        let kept = &self.samples[cut..n - cut];
        let mut acc = MomentAccumulator::default();
        kept.iter().for_each(|&v| acc.push(v));
        Ok(acc.mean())
    }
}

/// Sample mean and its standard error (unbiased variance).
pub fn moment_of<I: IntoIterator<Item = f64>>(values: I) -> Result<Estimate> {
    let mut acc = MomentAccumulator::default();
    values.into_iter().for_each(|v| acc.push(v));
    acc.estimate()
}

/// Welford accumulator, mergeable for parallel reduction.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MomentAccumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl MomentAccumulator {
    pub fn push(&mut self, v: f64) {
        self.count += 1;
        let d = v - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (v - self.mean);
    }

    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let d = other.mean - self.mean;
        self.mean += d * other.count as f64 / n;
        self.m2 += other.m2 + d * d * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            f64::NAN
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn estimate(&self) -> Result<Estimate> {
        if self.count < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 samples, got {}",
                self.count
            )));
        }
        Ok(Estimate {
            value: self.mean,
            std_error: (self.variance() / self.count as f64).sqrt(),
        })
    }
}

/// Accumulator for paired samples (means, variances and covariance).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PairAccumulator {
    count: u64,
    mean_x: f64,
    mean_y: f64,
    m2_x: f64,
    m2_y: f64,
    c_xy: f64,
}

impl PairAccumulator {
    pub fn push(&mut self, x: f64, y: f64) {
        self.count += 1;
        let n = self.count as f64;
        let dx = x - self.mean_x;
        self.mean_x += dx / n;
        let dy = y - self.mean_y;
        self.mean_y += dy / n;
        self.m2_x += dx * (x - self.mean_x);
        self.m2_y += dy * (y - self.mean_y);
        self.c_xy += dx * (y - self.mean_y);
    }

    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let dx = other.mean_x - self.mean_x;
        let dy = other.mean_y - self.mean_y;
        self.mean_x += dx * nb / n;
        self.mean_y += dy * nb / n;
        self.m2_x += other.m2_x + dx * dx * na * nb / n;
        self.m2_y += other.m2_y + dy * dy * na * nb / n;
        self.c_xy += other.c_xy + dx * dy * na * nb / n;
        self.count += other.count;
    }

    /// Pearson coefficient with the large-sample standard error `(1 − ρ²)/√n`.
    pub fn correlation(&self) -> Result<Estimate> {
        if self.count < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 pairs, got {}",
                self.count
            )));
        }
        let denom = (self.m2_x * self.m2_y).sqrt();
        if denom == 0.0 {
            return Err(Error::Numeric("correlation of a constant sample".into()));
        }
        let rho = self.c_xy / denom;
        Ok(Estimate {
            value: rho,
            std_error: (1.0 - rho * rho) / (self.count as f64).sqrt(),
        })
    }
}

/// Pearson correlation of two equally long samples.
pub fn correlation(xs: &[f64], ys: &[f64]) -> Result<Estimate> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidParameter(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    let mut acc = PairAccumulator::default();
    xs.iter().zip(ys).for_each(|(&x, &y)| acc.push(x, y));
    acc.correlation()
}

/// Median of the means of `batches` contiguous batches.
pub fn median_of_means(values: &[f64], batches: usize) -> Result<f64> {
    if batches == 0 || values.len() < batches {
        return Err(Error::InvalidParameter(format!(
            "{} samples cannot form {batches} batches",
            values.len()
        )));
    }
    let n = values.len();
    let mut means: Vec<f64> = (0..batches)
        .map(|b| {
            let chunk = &values[b * n / batches..(b + 1) * n / batches];
            let mut acc = MomentAccumulator::default();
            chunk.iter().for_each(|&v| acc.push(v));
            acc.mean()
        })
        .collect();
    means.sort_by(f64::total_cmp);
    Ok(if batches % 2 == 1 {
        means[batches / 2]
    } else {
        0.5 * (means[batches / 2 - 1] + means[batches / 2])
    })
}

/// Ratio of two means with a delta-method standard error.
pub fn ratio_of_means(xs: &[f64], ys: &[f64]) -> Result<Estimate> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidParameter(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    let mut acc = PairAccumulator::default();
    xs.iter().zip(ys).for_each(|(&x, &y)| acc.push(x, y));
    if acc.count < 2 {
        return Err(Error::InvalidParameter("need at least 2 pairs".into()));
    }
    let n = acc.count as f64;
    let r = acc.mean_x / acc.mean_y;
    let vx = acc.m2_x / (n - 1.0);
    let vy = acc.m2_y / (n - 1.0);
    let cxy = acc.c_xy / (n - 1.0);
    let var = (vx - 2.0 * r * cxy + r * r * vy) / (acc.mean_y * acc.mean_y * n);
    Ok(Estimate {
        value: r,
        std_error: var.max(0.0).sqrt(),
    })
}

/// Asymptotic 99.9% quantile of `√n·D_n` (Kolmogorov distribution).
pub const KOLMOGOROV_999: f64 = 1.949_6;
