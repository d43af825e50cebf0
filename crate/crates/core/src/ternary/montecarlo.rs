use rayon::prelude::*;
use serde::Serialize;

use super::{derive_rng, generate_index_vector, sample_distinct, IndexVector};
use crate::error::{param, Result};

const MIN_SAMPLES: u64 = 10_000;
// Fixed work split so results do not depend on the thread count.
const CHUNKS: u64 = 64;
const SAMPLE_STREAM: u64 = 0x6d63_0000;
const REFERENCE_DIM: u64 = 0x6d63_ffff;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DotSource {
    Analytic,
    MonteCarlo,
}

/// Histogram of `|dot|` between random vectors and a reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DotDistribution {
    pub n: u64,
    pub k: u64,
    pub samples: u64,
    /// `counts[d]` is the number of samples with `|dot| = d`, for `d` in `0..=2k`.
    pub counts: Vec<u64>,
    pub source: DotSource,
}

impl DotDistribution {
    /// Probability of `dot = +d` (equal to that of `dot = -d`).
    pub fn prob(&self, d: usize) -> f64 {
        let combined = self.combined(d);
        if d == 0 {
            combined
        } else {
            combined / 2.0
        }
    }

    /// Probability of `|dot| = d`.
    pub fn combined(&self, d: usize) -> f64 {
        self.counts.get(d).copied().unwrap_or(0) as f64 / self.samples as f64
    }

    /// Binomial standard error of [`prob`](Self::prob) when the true per-sign
    /// probability is `p`.
    pub fn stderr_at(&self, d: usize, p: f64) -> f64 {
        let pc = if d == 0 { p } else { 2.0 * p };
        let se = (pc * (1.0 - pc) / self.samples as f64).sqrt();
        if d == 0 {
            se
        } else {
            se / 2.0
        }
    }

    /// Standard error using the observed frequency.
    pub fn stderr(&self, d: usize) -> f64 {
        self.stderr_at(d, self.prob(d))
    }
}

/// Samples `samples` random vectors with `k` trits of each sign against a
/// reference vector drawn from `seed`.
pub fn monte_carlo_dot(n: u64, k: u64, samples: u64, seed: u64) -> Result<DotDistribution> {
    if k == 0 || 2 * k > n {
        return param(format!("need 1 <= k and 2k <= n, got n = {n}, k = {k}"));
    }
    let reference = generate_index_vector(seed, REFERENCE_DIM, 0, n as usize, 2 * k as usize)?;
    monte_carlo_dot_with_reference(&reference, samples, seed)
}

/// Like [`monte_carlo_dot`] with an explicit reference vector; samples use the
/// reference's own nonzero count.
pub fn monte_carlo_dot_with_reference(
    reference: &IndexVector,
    samples: u64,
    seed: u64,
) -> Result<DotDistribution> {
    if samples < MIN_SAMPLES {
        return param(format!(
            "at least {MIN_SAMPLES} samples required, got {samples}"
        ));
    }
    let n = reference.len();
    let chi = reference.chi();
    let k = chi / 2;
    let dense = reference.to_dense();

    let counts = (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let quota = samples / CHUNKS + u64::from(chunk < samples % CHUNKS);
            let mut rng = derive_rng(seed, SAMPLE_STREAM, chunk);
            let mut hist = vec![0u64; chi + 1];
            let mut drawn = Vec::with_capacity(chi);
            let mut scratch = Vec::with_capacity(chi);
            for _ in 0..quota {
                sample_distinct(&mut rng, n, chi, &mut drawn, &mut scratch);
                let (plus, minus) = drawn.split_at(k);
                let d: i64 = plus.iter().map(|&p| dense[p] as i64).sum::<i64>()
                    - minus.iter().map(|&p| dense[p] as i64).sum::<i64>();
                hist[d.unsigned_abs() as usize] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; chi + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    Ok(DotDistribution {
        n: n as u64,
        k: k as u64,
        samples,
        counts,
        source: DotSource::MonteCarlo,
    })
}
