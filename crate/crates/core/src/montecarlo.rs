//! Monte Carlo model of the coincidence experiment.
//!
//! Each trial draws the arrival-time difference `x = t1 - t2` from the
//! mixture `f+(x) + f-(x)`, decides whether the pair leaves split or bunched
//! with probability `f-(x) / (f+(x) + f-(x))`, draws the arrival-time sum
//! from the pump envelope, and records detector clicks with additive
//! Gaussian timing jitter. Detectors are otherwise ideal: no dead time, dark
//! counts or losses.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{amplitudes_a, density_normalization, total_probability, Sign, SpectralParams};

/// Inverse-CDF table spacing, in units of `tau_L`.
pub const CDF_STEP_PER_TAU: f64 = 0.01;
/// Half width of the tabulated support beyond `delta_t`, in units of `tau_L`.
pub const CDF_REACH_PER_TAU: f64 = 12.0;

pub const JITTER_MODEL: &str = "gaussian";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorConfig {
    /// Standard deviation of the per-detector Gaussian timing jitter, s.
    pub temporal_resolution: f64,
    /// Largest `|t_up - t_down|` counted as a coincidence, s.
    pub coincidence_window: f64,
}

impl DetectorConfig {
    pub fn new(temporal_resolution: f64, coincidence_window: f64) -> Result<Self> {
        if !(temporal_resolution.is_finite() && temporal_resolution >= 0.0) {
            return Err(Error::param("temporal_resolution", "must be non-negative and finite"));
        }
        if !(coincidence_window.is_finite() && coincidence_window > 0.0) {
            return Err(Error::param("coincidence_window", "must be positive and finite"));
        }
        Ok(Self {
            temporal_resolution,
            coincidence_window,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionRun {
    pub n_pairs: u64,
    pub seed: u64,
    pub params: SpectralParams,
    pub detector: DetectorConfig,
}

impl DetectionRun {
    pub fn new(n_pairs: u64, seed: u64, params: SpectralParams, detector: DetectorConfig) -> Result<Self> {
        if n_pairs == 0 {
            return Err(Error::param("n_pairs", "must be positive"));
        }
        Ok(Self {
            n_pairs,
            seed,
            params,
            detector,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    SplitUpDown,
    BunchedUp,
    BunchedDown,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::SplitUpDown => "split",
            Outcome::BunchedUp => "bunched_up",
            Outcome::BunchedDown => "bunched_down",
        }
    }
}

/// One detected pair. Bunched pairs click only the occupied channel, at the
/// earlier of the two arrivals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventRecord {
    pub pair_index: u64,
    pub outcome: Outcome,
    pub t_up: Option<f64>,
    pub t_down: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSample {
    /// `t1 - t2`, s.
    pub x: f64,
    /// `t1 + t2`, s.
    pub sum_time: f64,
    pub outcome: Outcome,
}

/// Tabulated inverse-CDF sampler for one parameter set.
#[derive(Debug, Clone)]
pub struct PairSampler {
    params: SpectralParams,
    x0: f64,
    step: f64,
    cdf: Vec<f64>,
}

impl PairSampler {
    pub fn new(params: SpectralParams) -> Self {
        let tau = params.tau_l();
        let reach = params.delta_t() + CDF_REACH_PER_TAU * tau;
        let step = CDF_STEP_PER_TAU * tau;
        let intervals = (2.0 * reach / step).ceil() as usize;
        let x0 = -0.5 * step * intervals as f64;
        let density = |x: f64| mixture_density(x, &params);
        let mut cdf = Vec::with_capacity(intervals + 1);
        cdf.push(0.0);
        let mut acc = 0.0;
        let mut left = density(x0);
        for k in 0..intervals {
            let a = x0 + step * k as f64;
            let mid = density(a + 0.5 * step);
            let right = density(a + step);
            acc += step / 6.0 * (left + 4.0 * mid + right);
            cdf.push(acc);
            left = right;
        }
        let total = acc;
        for c in &mut cdf {
            *c /= total;
        }
        Self { params, x0, step, cdf }
    }

    pub fn params(&self) -> &SpectralParams {
        &self.params
    }

    /// Table-interpolated quantile of the mixture density, `u` in `[0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        let k = self.cdf.partition_point(|&c| c <= u).clamp(1, self.cdf.len() - 1) - 1;
        let (lo, hi) = (self.cdf[k], self.cdf[k + 1]);
        let frac = if hi > lo {
            ((u - lo) / (hi - lo)).clamp(0.0, 1.0)
        } else {
            0.5
        };
        self.x0 + self.step * (k as f64 + frac)
    }

    /// Probability that a pair with arrival-time difference `x` leaves split.
    pub fn split_fraction(&self, x: f64) -> f64 {
        let (plus, minus) = amplitudes_a(x, &self.params);
        let (p2, m2) = (plus * plus, minus * minus);
        if p2 + m2 > 0.0 {
            m2 / (p2 + m2)
        } else {
            0.5
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> PairSample {
        let x = self.quantile(rng.random::<f64>());
        let u_outcome: f64 = rng.random();
        let u_side: f64 = rng.random();
        let z: f64 = rng.sample(StandardNormal);
        let outcome = if u_outcome < self.split_fraction(x) {
            Outcome::SplitUpDown
        } else if u_side < 0.5 {
            Outcome::BunchedUp
        } else {
            Outcome::BunchedDown
        };
        // |exp[-S^2 / 8 tau_p^2]|^2 with S = t1 + t2 + dt: std dev sqrt 2 tau_p.
        let sum_time = z * std::f64::consts::SQRT_2 * self.params.tau_p() - self.params.delta_t();
        PairSample { x, sum_time, outcome }
    }
}

/// `f+(x) + f-(x)`
pub fn mixture_density(x: f64, params: &SpectralParams) -> f64 {
    let (plus, minus) = amplitudes_a(x, params);
    density_normalization(params) * (plus * plus + minus * minus)
}

/// Draws one pair. Builds a fresh table; use [`PairSampler`] for repeated draws.
pub fn sample_pair<R: Rng + ?Sized>(params: &SpectralParams, rng: &mut R) -> PairSample {
    PairSampler::new(*params).sample(rng)
}

/// Deterministic generator for `seed`.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of point `index` in a scan: SplitMix64 finalizer applied to
/// `base + index` (wrapping).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub n_pairs: u64,
    pub seed: u64,
    pub split: u64,
    pub bunched_up: u64,
    pub bunched_down: u64,
    /// Split pairs whose recorded times fall within the coincidence window.
    pub coincidences: u64,
    pub w_minus_empirical: f64,
    /// Binomial standard error of `w_minus_empirical`.
    pub w_minus_std_error: f64,
    pub w_minus_analytic: f64,
    pub jitter_model: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub events: Vec<EventRecord>,
    pub summary: RunSummary,
}

#[derive(Default)]
struct Tally {
    split: u64,
    bunched_up: u64,
    bunched_down: u64,
    coincidences: u64,
}

fn run_with<F: FnMut(EventRecord)>(run: &DetectionRun, mut sink: F) -> RunSummary {
    let sampler = PairSampler::new(run.params);
    let mut rng = rng_for(run.seed);
    let sigma = run.detector.temporal_resolution;
    let mut tally = Tally::default();
    for pair_index in 0..run.n_pairs {
        let pair = sampler.sample(&mut rng);
        let j1: f64 = rng.sample(StandardNormal);
        let j2: f64 = rng.sample(StandardNormal);
        let t1 = 0.5 * (pair.sum_time + pair.x);
        let t2 = 0.5 * (pair.sum_time - pair.x);
        let (t_up, t_down) = match pair.outcome {
            Outcome::SplitUpDown => {
                let (up, down) = (t1 + sigma * j1, t2 + sigma * j2);
                tally.split += 1;
                if (up - down).abs() <= run.detector.coincidence_window {
                    tally.coincidences += 1;
                }
                (Some(up), Some(down))
            }
            Outcome::BunchedUp => {
                tally.bunched_up += 1;
                (Some(t1.min(t2) + sigma * j1), None)
            }
            Outcome::BunchedDown => {
                tally.bunched_down += 1;
                (None, Some(t1.min(t2) + sigma * j1))
            }
        };
        sink(EventRecord {
            pair_index,
            outcome: pair.outcome,
            t_up,
            t_down,
        });
    }
    let n = run.n_pairs as f64;
    let p = tally.split as f64 / n;
    RunSummary {
        n_pairs: run.n_pairs,
        seed: run.seed,
        split: tally.split,
        bunched_up: tally.bunched_up,
        bunched_down: tally.bunched_down,
        coincidences: tally.coincidences,
        w_minus_empirical: p,
        w_minus_std_error: (p * (1.0 - p) / n).sqrt(),
        w_minus_analytic: total_probability(Sign::Minus, &run.params),
        jitter_model: JITTER_MODEL,
    }
}

/// Simulates every pair of `run` and keeps the event stream.
pub fn simulate_run(run: &DetectionRun) -> Result<RunResult> {
    if run.n_pairs == 0 {
        return Err(Error::param("n_pairs", "must be positive"));
    }
    let mut events = Vec::with_capacity(run.n_pairs as usize);
    let summary = run_with(run, |e| events.push(e));
    Ok(RunResult { events, summary })
}

/// Same stream as [`simulate_run`], tallies only.
pub fn simulate_tallies(run: &DetectionRun) -> Result<RunSummary> {
    if run.n_pairs == 0 {
        return Err(Error::param("n_pairs", "must be positive"));
    }
    Ok(run_with(run, |_| {}))
}

/// Histogram estimate of the conditional split density `f-(x) / w-` built
/// from `t_up - t_down` of split events.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub bin_width: f64,
    pub counts: Vec<u64>,
    /// `counts / (n_split * bin_width)`; bins outside the range are not
    /// renormalized away.
    pub density: Vec<f64>,
    pub n_split: u64,
    /// No split events were present.
    pub empty: bool,
}

impl Histogram {
    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.counts.len()).map(move |k| self.lo + self.bin_width * (k as f64 + 0.5))
    }
}

/// Bins the recorded `t_up - t_down` of split events over `range`. Meant for
/// runs whose timing jitter is small against `tau_L`, with `bin_width` no
/// finer than the jitter.
pub fn reconstruct_density(events: &[EventRecord], bin_width: f64, range: Range<f64>) -> Result<Histogram> {
    if !(bin_width.is_finite() && bin_width > 0.0) {
        return Err(Error::param("bin_width", "must be positive and finite"));
    }
    if !(range.start.is_finite() && range.end.is_finite() && range.start < range.end) {
        return Err(Error::param("range", "need start < end"));
    }
    let n_bins = ((range.end - range.start) / bin_width).ceil() as usize;
    let mut counts = vec![0u64; n_bins];
    let mut n_split = 0u64;
    for e in events {
        let (Some(up), Some(down)) = (e.t_up, e.t_down) else {
            continue;
        };
        n_split += 1;
        let k = ((up - down - range.start) / bin_width).floor();
        if k >= 0.0 && (k as usize) < n_bins {
            counts[k as usize] += 1;
        }
    }
    let density = counts
        .iter()
        .map(|&c| {
            if n_split == 0 {
                0.0
            } else {
                c as f64 / (n_split as f64 * bin_width)
            }
        })
        .collect();
    Ok(Histogram {
        lo: range.start,
        bin_width,
        counts,
        density,
        n_split,
        empty: n_split == 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DipRow {
    pub delta_t: f64,
    pub w_minus_empirical: f64,
    pub std_error: f64,
    pub w_minus_analytic: f64,
}

/// One run per delay, sorted by delay, with point `i` seeded by
/// `derive_seed(base_run.seed, i)`. Points run in parallel; the result does
/// not depend on scheduling.
pub fn dip_scan(delta_t_values: &[f64], base_run: &DetectionRun) -> Result<Vec<DipRow>> {
    if delta_t_values.is_empty() {
        return Err(Error::param("delta_t_values", "must not be empty"));
    }
    let mut delays = delta_t_values.to_vec();
    for &d in &delays {
        if !(d.is_finite() && d >= 0.0) {
            return Err(Error::param(
                "delta_t_values",
                format!("delay {d} must be non-negative"),
            ));
        }
    }
    delays.sort_by(f64::total_cmp);
    let runs = delays
        .iter()
        .enumerate()
        .map(|(i, &dt)| {
            Ok(DetectionRun {
                seed: derive_seed(base_run.seed, i as u64),
                params: base_run.params.with_delta_t(dt)?,
                ..*base_run
            })
        })
        .collect::<Result<Vec<_>>>()?;
    runs.par_iter()
        .map(|run| {
            let s = simulate_tallies(run)?;
            Ok(DipRow {
                delta_t: run.params.delta_t(),
                w_minus_empirical: s.w_minus_empirical,
                std_error: s.w_minus_std_error,
                w_minus_analytic: s.w_minus_analytic,
            })
        })
        .collect()
}
