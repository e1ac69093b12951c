//! Sample statistics used by the simulator and the Monte Carlo checks.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub n: usize,
}

impl MeanEstimate {
    /// Sample mean with the i.i.d. standard error `s / sqrt(n)`.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let n = samples.len();
        if n == 0 {
            return Err(Error::EmptySamples);
        }
        let (mean, var) = mean_var(samples);
        Ok(Self {
            mean,
            std_err: (var / n as f64).sqrt(),
            n,
        })
    }

    /// Sample mean with a batch-means standard error: the series is cut
    /// into `batches` contiguous blocks and the spread of block means is
    /// used, which stays honest when consecutive samples are correlated.
    pub fn batch_means(samples: &[f64], batches: usize) -> Result<Self> {
        let n = samples.len();
        if n == 0 {
            return Err(Error::EmptySamples);
        }
        let batches = batches.max(2);
        if n < 2 * batches {
            return Self::from_samples(samples);
        }
        let size = n / batches;
        let means: Vec<f64> = samples
            .chunks_exact(size)
            .take(batches)
            .map(|c| c.iter().sum::<f64>() / size as f64)
            .collect();
        let (_, var) = mean_var(&means);
        let mean = samples.iter().sum::<f64>() / n as f64;
        Ok(Self {
            mean,
            std_err: (var / batches as f64).sqrt(),
            n,
        })
    }

    /// Whether `value` lies within `k` standard errors. A zero standard
    /// error degenerates to an exact comparison with a `1e-12` allowance.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_err + 1e-12
    }

    pub fn z_score(&self, value: f64) -> f64 {
        if self.std_err > 0.0 {
            (self.mean - value) / self.std_err
        } else if self.mean == value {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Mean and unbiased variance (zero variance for a single sample).
pub fn mean_var(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, ss / (n - 1.0))
}

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and a
/// reference CDF that may jump. `cdf(x) = P(X <= x)` and
/// `cdf_left(x) = P(X < x)`.
pub fn ks_distance<F, G>(samples: &[f64], cdf: F, cdf_left: G) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let x = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == x {
            j += 1;
        }
        let below = i as f64 / n;
        let at = j as f64 / n;
        d = d.max((below - cdf_left(x)).abs()).max((at - cdf(x)).abs());
        i = j;
    }
    Ok(d)
}
