//! Planted-feature recovery on synthetic class/feature matrices.
//!
//! Every class `j` (a column) gets uniform integer background noise on
//! `0..=M` in all `N` rows, then `w` is added to `round(rho * N)` distinct
//! rows. After encoding the whole matrix, the top list of a sampled class is
//! compared with its planted rows.

use std::io::{self, Write};
use std::time::Instant;

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{param, Result};
use crate::report::{sci, write_row};
use crate::tensor::{DimensionSpec, Fiber, NriSpec, NriTensor, Values, DEFAULT_MEMORY_CAP};
use crate::ternary::derive_rng;

const CLASS_STREAM: u64 = u64::MAX - 1;
const SAMPLE_STREAM: u64 = u64::MAX - 2;
const CLASS_BLOCK: usize = 64;
const MIN_PROFILE: usize = 100;

/// Signal-to-noise ratio in dB of a planted feature of weight `w` against
/// uniform background noise on `0..=M`, `10 log10(6 rho w^2 / (M (2M + 1)))`.
/// Noise-free backgrounds (`M = 0`) give `+inf`.
///
/// ```
/// let db = nri::experiments::snr_db(0.01, 100.0, 10).unwrap();
/// assert!((db - 4.56).abs() < 0.01);
/// ```
pub fn snr_db(rho: f64, w: f64, noise_max: u32) -> Result<f64> {
    if !(rho > 0.0 && rho <= 1.0) {
        return param(format!("feature density must be in (0, 1], got {rho}"));
    }
    if !(w > 0.0 && w.is_finite()) {
        return param(format!("feature weight must be positive, got {w}"));
    }
    if noise_max == 0 {
        return Ok(f64::INFINITY);
    }
    let m = noise_max as f64;
    Ok(10.0 * (6.0 * rho * w * w / (m * (2.0 * m + 1.0))).log10())
}

/// Index-vector length per reduced dimension for reduction ratio `xi` spread
/// over `rank` dimensions, `round(N xi^(-1/rank))`.
pub fn index_dim_for_ratio(component_range: usize, xi: f64, rank: u32) -> Result<usize> {
    if !(xi >= 1.0 && xi.is_finite()) || rank == 0 {
        return param(format!(
            "need xi >= 1 and rank >= 1, got xi={xi}, rank={rank}"
        ));
    }
    Ok((component_range as f64 * xi.powf(-1.0 / rank as f64)).round() as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecoveryMode {
    /// Classes direct, features through random index vectors.
    OneWay,
    /// Both dimensions through random index vectors.
    TwoWay,
    /// Both dimensions direct: the lossless baseline.
    Direct,
}

impl RecoveryMode {
    pub fn name(self) -> &'static str {
        match self {
            RecoveryMode::OneWay => "one_way",
            RecoveryMode::TwoWay => "two_way",
            RecoveryMode::Direct => "direct",
        }
    }

    /// Number of randomly indexed dimensions.
    pub fn reduced_rank(self) -> u32 {
        match self {
            RecoveryMode::OneWay => 1,
            RecoveryMode::TwoWay => 2,
            RecoveryMode::Direct => 0,
        }
    }
}

impl std::str::FromStr for RecoveryMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one_way" | "one-way" | "oneway" => Ok(RecoveryMode::OneWay),
            "two_way" | "two-way" | "twoway" => Ok(RecoveryMode::TwoWay),
            "direct" => Ok(RecoveryMode::Direct),
            _ => param(format!("unknown mode {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryConfig {
    /// `N`: rows (features) and columns (classes).
    pub matrix_size: usize,
    /// `n`: index-vector length of each random dimension.
    pub state_size: usize,
    pub chi: usize,
    pub mode: RecoveryMode,
    /// `rho`: planted features per class as a fraction of `N`.
    pub feature_density: f64,
    pub feature_weight: i64,
    /// `M`: background noise is uniform on `0..=M`.
    pub noise_max: u32,
    pub classes_sampled: usize,
    pub seed: u64,
}

impl RecoveryConfig {
    /// Defaults: `chi = 8`, `w = 100`, `M = 10`, `min(N, 200)` sampled classes.
    pub fn new(
        matrix_size: usize,
        state_size: usize,
        mode: RecoveryMode,
        feature_density: f64,
    ) -> Self {
        Self {
            matrix_size,
            state_size,
            chi: 8,
            mode,
            feature_density,
            feature_weight: 100,
            noise_max: 10,
            classes_sampled: matrix_size.min(200),
            seed: 0,
        }
    }

    pub fn features_per_class(&self) -> usize {
        (self.feature_density * self.matrix_size as f64).round() as usize
    }

    /// `xi`: component cells per state cell.
    pub fn reduction_ratio(&self) -> f64 {
        let r = self.matrix_size as f64 / self.state_size as f64;
        r.powi(self.mode.reduced_rank() as i32)
    }

    pub fn tensor_spec(&self) -> NriSpec {
        let n = self.matrix_size;
        let random = DimensionSpec::random(n, self.state_size, self.chi);
        let dims = match self.mode {
            RecoveryMode::TwoWay => vec![random, random],
            RecoveryMode::OneWay => vec![random, DimensionSpec::direct(n)],
            RecoveryMode::Direct => vec![DimensionSpec::direct(n), DimensionSpec::direct(n)],
        };
        NriSpec::new(dims, self.seed)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.feature_density > 0.0 && self.feature_density < 1.0) {
            return param(format!(
                "feature density must be in (0, 1), got {}",
                self.feature_density
            ));
        }
        if self.features_per_class() == 0 {
            return param("rho * N must round to at least one feature");
        }
        if self.feature_weight <= 0 {
            return param(format!(
                "feature weight must be positive, got {}",
                self.feature_weight
            ));
        }
        if self.classes_sampled == 0 || self.classes_sampled > self.matrix_size {
            return param(format!(
                "classes sampled must be in 1..={}, got {}",
                self.matrix_size, self.classes_sampled
            ));
        }
        if self.mode != RecoveryMode::Direct && self.reduction_ratio() <= 1.0 {
            return param(format!(
                "reduction ratio must exceed 1, got {}",
                self.reduction_ratio()
            ));
        }
        self.tensor_spec().validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryReport {
    pub config: RecoveryConfig,
    pub features_per_class: usize,
    /// Sampled class labels, in the order of `per_class_correct`.
    pub classes: Vec<usize>,
    pub per_class_correct: Vec<usize>,
    pub mean_correct: f64,
    pub std_correct: f64,
    pub mean_correct_fraction: f64,
    pub std_correct_fraction: f64,
    /// Mean decoded value at each descending rank over the sampled classes.
    pub profile_mean: Vec<f64>,
    pub profile_std: Vec<f64>,
    pub snr_encoded_db: f64,
    pub saturated: bool,
    pub runtime_seconds: f64,
}

impl RecoveryReport {
    /// Sample standard error of `mean_correct_fraction`.
    pub fn stderr_fraction(&self) -> f64 {
        self.std_correct_fraction / (self.per_class_correct.len() as f64).sqrt()
    }

    /// Mean decoded value over the 1-based rank range `lo..=hi`.
    pub fn profile_range_mean(&self, lo: usize, hi: usize) -> f64 {
        let s = &self.profile_mean[lo - 1..hi];
        s.iter().sum::<f64>() / s.len() as f64
    }
}

fn mean_std(xs: impl ExactSizeIterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Background plus planted features of class `j`, and the planted rows.
fn class_column(cfg: &RecoveryConfig, j: usize) -> (Vec<i64>, Vec<usize>) {
    let mut rng = derive_rng(cfg.seed, CLASS_STREAM, j as u64);
    let m = cfg.noise_max as i64;
    let mut column: Vec<i64> = (0..cfg.matrix_size).map(|_| rng.gen_range(0..=m)).collect();
    let mut planted = sample(&mut rng, cfg.matrix_size, cfg.features_per_class()).into_vec();
    planted.sort_unstable();
    for &row in &planted {
        column[row] += cfg.feature_weight;
    }
    (column, planted)
}

/// The classes whose top lists are scored.
pub fn sampled_classes(cfg: &RecoveryConfig) -> Vec<usize> {
    let mut rng = derive_rng(cfg.seed, SAMPLE_STREAM, 0);
    let mut classes = sample(&mut rng, cfg.matrix_size, cfg.classes_sampled).into_vec();
    classes.sort_unstable();
    classes
}

/// Builds the tensor for `cfg`, encodes the full class/feature matrix and
/// scores the sampled classes.
pub fn run_recovery(cfg: &RecoveryConfig) -> Result<RecoveryReport> {
    run_recovery_with_cap(cfg, DEFAULT_MEMORY_CAP)
}

pub fn run_recovery_with_cap(cfg: &RecoveryConfig, cap: u64) -> Result<RecoveryReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut tensor = NriTensor::with_memory_cap(cfg.tensor_spec(), cap)?;
    let n = cfg.matrix_size;

    let classes: Vec<usize> = (0..n).collect();
    for block in classes.chunks(CLASS_BLOCK) {
        let fibers: Vec<Fiber> = block
            .par_iter()
            .map(|&j| Fiber {
                fixed: vec![None, Some(j)],
                values: Values::Int(class_column(cfg, j).0),
            })
            .collect();
        tensor.encode_fibers(&fibers)?;
    }
    log::debug!("encoded {n} classes in {:.2?}", start.elapsed());

    let f = cfg.features_per_class();
    let profile_len = MIN_PROFILE.max(2 * f).min(n);
    let sampled = sampled_classes(cfg);
    let scored: Vec<(usize, Vec<f64>)> = sampled
        .par_iter()
        .map(|&j| -> Result<_> {
            let planted = class_column(cfg, j).1;
            let top = tensor.find_top(&[None, Some(j)], profile_len)?;
            let correct = top.entries[..f]
                .iter()
                .filter(|e| planted.binary_search(&e.component).is_ok())
                .count();
            Ok((correct, top.entries.iter().map(|e| e.value).collect()))
        })
        .collect::<Result<_>>()?;

    let per_class_correct: Vec<usize> = scored.iter().map(|s| s.0).collect();
    let (mean_correct, std_correct) = mean_std(per_class_correct.iter().map(|&c| c as f64));
    let (profile_mean, profile_std) = (0..profile_len)
        .map(|r| mean_std(scored.iter().map(|s| s.1[r])))
        .unzip();

    Ok(RecoveryReport {
        config: cfg.clone(),
        features_per_class: f,
        classes: sampled,
        per_class_correct,
        mean_correct,
        std_correct,
        mean_correct_fraction: mean_correct / f as f64,
        std_correct_fraction: std_correct / f as f64,
        profile_mean,
        profile_std,
        snr_encoded_db: snr_db(
            cfg.feature_density,
            cfg.feature_weight as f64,
            cfg.noise_max,
        )?,
        saturated: tensor.is_saturated(),
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Rho,
    Xi,
    Chi,
}

impl std::str::FromStr for SweepAxis {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(SweepAxis::Rho),
            "xi" => Ok(SweepAxis::Xi),
            "chi" => Ok(SweepAxis::Chi),
            _ => param(format!("unknown sweep axis {s:?}")),
        }
    }
}

/// Configs obtained by setting `axis` of `base` to each value. Xi values
/// set the state size through [`index_dim_for_ratio`].
pub fn sweep_configs(
    base: &RecoveryConfig,
    axis: SweepAxis,
    values: &[f64],
) -> Result<Vec<RecoveryConfig>> {
    values
        .iter()
        .map(|&v| {
            let mut c = base.clone();
            match axis {
                SweepAxis::Rho => c.feature_density = v,
                SweepAxis::Chi => c.chi = v as usize,
                SweepAxis::Xi => {
                    c.state_size =
                        index_dim_for_ratio(c.matrix_size, v, c.mode.reduced_rank().max(1))?
                }
            }
            Ok(c)
        })
        .collect()
}

pub struct SweepRow {
    pub config: RecoveryConfig,
    pub outcome: Result<RecoveryReport>,
}

/// Runs every config in turn; a failing config is recorded and the sweep
/// continues. Each run is parallel internally, so configs are not run
/// concurrently to keep peak memory at one state array.
pub fn sweep(configs: &[RecoveryConfig]) -> Vec<SweepRow> {
    configs
        .iter()
        .map(|c| {
            let outcome = run_recovery(c);
            if let Err(e) = &outcome {
                log::warn!("sweep config failed: {e}");
            }
            SweepRow {
                config: c.clone(),
                outcome,
            }
        })
        .collect()
}

pub const SWEEP_HEADER: [&str; 13] = [
    "mode",
    "N",
    "n",
    "chi",
    "rho",
    "w",
    "M",
    "xi",
    "mean",
    "std",
    "mu_over_sigma",
    "snr_db",
    "runtime_s",
];

impl SweepRow {
    pub fn fields(&self) -> Vec<String> {
        let c = &self.config;
        let mut out = vec![
            c.mode.name().to_string(),
            c.matrix_size.to_string(),
            c.state_size.to_string(),
            c.chi.to_string(),
            sci(c.feature_density),
            c.feature_weight.to_string(),
            c.noise_max.to_string(),
            sci(c.reduction_ratio()),
        ];
        match &self.outcome {
            Ok(r) => out.extend([
                sci(r.mean_correct_fraction),
                sci(r.std_correct_fraction),
                sci(r.mean_correct_fraction / r.std_correct_fraction),
                sci(r.snr_encoded_db),
                sci(r.runtime_seconds),
            ]),
            Err(_) => out.extend(std::iter::repeat_n("nan".to_string(), 5)),
        }
        out
    }
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut w: W) -> io::Result<()> {
    write_row(&mut w, &SWEEP_HEADER)?;
    for r in rows {
        write_row(&mut w, &r.fields())?;
    }
    Ok(())
}
