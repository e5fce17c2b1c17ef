//! Spectral and temporal two-photon amplitudes for degenerate type-I SPDC
//! with a long pump pulse, and the split/unsplit statistics they produce
//! after a delay `delta_t` in the up channel.
//!
//! Frequencies are detunings `nu = omega - omega_0/2` in rad/s; times are in
//! seconds. With `tau_L = sqrt(L k1'') / 2` the two-frequency amplitude is
//!
//! ```text
//! Psi(nu1, nu2) = exp(-(nu1 + nu2)^2 tau_p^2 / 2) exp(-(nu1 - nu2)^2 tau_L^2 / 2)
//!                 x [ (u)_1 (d)_2 e^{i nu1 dt} + (d)_1 (u)_2 e^{i nu2 dt} ]
//! ```
//!
//! and its Fourier transform to arrival times `(t1, t2)` is a pair of
//! Gaussians in `t1 - t2 +- dt` times a common envelope in `t1 + t2 + dt`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::BeamsplitterUnitary;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Shortest pump duration for which the long-pulse spectral model is trusted.
pub const LONG_PULSE_FLOOR: f64 = 10e-12;

/// Required spectral-grid half width, in envelope standard deviations.
pub const MIN_GRID_SIGMAS: f64 = 6.0;
/// Required spectral-grid density, in points per envelope standard deviation.
pub const MIN_POINTS_PER_SIGMA: f64 = 8.0;
/// Required `find_peaks` grid density, in points per `tau_L`.
pub const MIN_PEAK_POINTS_PER_TAU: f64 = 16.0;
/// Dimensionless `|A|^2` below which a sampled maximum is not a peak.
pub const PEAK_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrystalData {
    /// Crystal length, m.
    pub length: f64,
    /// Second frequency derivative of the emitted-photon wave vector, s^2/m.
    pub k1_second_deriv: f64,
}

/// Physical parameters of the source and the delay line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralParams {
    tau_p: f64,
    tau_l: f64,
    delta_t: f64,
    omega_0: Option<f64>,
    crystal: Option<CrystalData>,
}

impl SpectralParams {
    pub fn new(tau_p: f64, tau_l: f64, delta_t: f64) -> Result<Self> {
        positive("tau_p", tau_p)?;
        positive("tau_L", tau_l)?;
        non_negative("delta_t", delta_t)?;
        Ok(Self {
            tau_p,
            tau_l,
            delta_t,
            omega_0: None,
            crystal: None,
        })
    }

    /// Derives `tau_L` from the crystal length and dispersion.
    pub fn from_crystal(crystal: CrystalData, tau_p: f64, delta_t: f64) -> Result<Self> {
        let tau_l = tau_l_from_crystal(crystal.length, crystal.k1_second_deriv)?;
        let mut p = Self::new(tau_p, tau_l, delta_t)?;
        p.crystal = Some(crystal);
        Ok(p)
    }

    pub fn with_omega_0(mut self, omega_0: f64) -> Result<Self> {
        positive("omega_0", omega_0)?;
        self.omega_0 = Some(omega_0);
        Ok(self)
    }

    pub fn with_delta_t(mut self, delta_t: f64) -> Result<Self> {
        non_negative("delta_t", delta_t)?;
        self.delta_t = delta_t;
        Ok(self)
    }

    pub fn tau_p(&self) -> f64 {
        self.tau_p
    }

    pub fn tau_l(&self) -> f64 {
        self.tau_l
    }

    pub fn delta_t(&self) -> f64 {
        self.delta_t
    }

    pub fn omega_0(&self) -> Option<f64> {
        self.omega_0
    }

    pub fn crystal(&self) -> Option<CrystalData> {
        self.crystal
    }

    /// `eta = delta_t / (sqrt 8 tau_L)`, the shape parameter of the densities.
    pub fn eta(&self) -> f64 {
        self.delta_t / (8f64.sqrt() * self.tau_l)
    }

    /// `B = c (omega_0 / 4) k1''`, available when both the pump frequency and
    /// the crystal dispersion are known.
    pub fn dispersion_constant(&self) -> Option<f64> {
        let w0 = self.omega_0?;
        let crystal = self.crystal?;
        Some(SPEED_OF_LIGHT * (w0 / 4.0) * crystal.k1_second_deriv)
    }

    /// Pump pulse shorter than [`LONG_PULSE_FLOOR`]; the model still
    /// evaluates but is outside its validity range.
    pub fn long_pulse_warning(&self) -> bool {
        self.tau_p < LONG_PULSE_FLOOR
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be positive and finite, got {v}")))
    }
}

fn non_negative(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be non-negative and finite, got {v}")))
    }
}

/// `tau_L = sqrt(L k1'') / 2`
pub fn tau_l_from_crystal(length: f64, k1_second_deriv: f64) -> Result<f64> {
    positive("crystal_length", length)?;
    positive("k1_second_deriv", k1_second_deriv)?;
    Ok((length * k1_second_deriv).sqrt() / 2.0)
}

/// Delay produced by lengthening the up-channel path by `delta_l` metres.
pub fn delay_from_path(delta_l: f64) -> Result<f64> {
    non_negative("delta_l", delta_l)?;
    Ok(delta_l / SPEED_OF_LIGHT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectralModel {
    /// Phase-matching factor `sinc[(L B / 2 c omega_0) (nu1 - nu2)^2]`.
    SincExact,
    /// Phase-matching factor `exp(-(nu1 - nu2)^2 tau_L^2 / 2)`.
    GaussianModel,
}

pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Coefficient of `(nu1 - nu2)^2` in the sinc argument. `L B / (2 c omega_0)`
/// reduces to `L k1'' / 8 = tau_L^2 / 2`, so it is defined for every
/// parameter set; when crystal data and `omega_0` are present it is computed
/// from them directly.
pub fn sinc_coefficient(params: &SpectralParams) -> f64 {
    match (params.crystal, params.dispersion_constant(), params.omega_0) {
        (Some(crystal), Some(b), Some(w0)) => crystal.length * b / (2.0 * SPEED_OF_LIGHT * w0),
        _ => params.tau_l * params.tau_l / 2.0,
    }
}

/// Spectral amplitude without the directional bracket. Equals 1 at
/// `nu1 = nu2 = 0`.
pub fn frequency_amplitude(nu1: f64, nu2: f64, params: &SpectralParams, model: SpectralModel) -> Complex64 {
    let sum = nu1 + nu2;
    let diff = nu1 - nu2;
    let pump = (-(sum * params.tau_p).powi(2) / 2.0).exp();
    let phase_matching = match model {
        SpectralModel::GaussianModel => (-(diff * params.tau_l).powi(2) / 2.0).exp(),
        SpectralModel::SincExact => sinc(sinc_coefficient(params) * diff * diff),
    };
    Complex64::new(pump * phase_matching, 0.0)
}

/// The two directional components of the two-time amplitude:
/// `up_first` multiplies `(u)_1 (d)_2`, `down_first` multiplies `(d)_1 (u)_2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectionalAmplitudes {
    pub up_first: Complex64,
    pub down_first: Complex64,
}

impl DirectionalAmplitudes {
    pub fn scale(&self, f: f64) -> Self {
        Self {
            up_first: self.up_first * f,
            down_first: self.down_first * f,
        }
    }
}

/// Closed-form two-time amplitude. The sum-time envelope
/// `exp[-(t1 + t2 + dt)^2 / 8 tau_p^2]` is common to both components and is
/// only included on request.
pub fn temporal_amplitude_analytic(
    t1: f64,
    t2: f64,
    params: &SpectralParams,
    include_pump_envelope: bool,
) -> DirectionalAmplitudes {
    let x = t1 - t2;
    let dt = params.delta_t;
    let w = 8.0 * params.tau_l * params.tau_l;
    let envelope = if include_pump_envelope {
        (-(t1 + t2 + dt).powi(2) / (8.0 * params.tau_p * params.tau_p)).exp()
    } else {
        1.0
    };
    DirectionalAmplitudes {
        up_first: Complex64::new(envelope * (-(x + dt).powi(2) / w).exp(), 0.0),
        down_first: Complex64::new(envelope * (-(x - dt).powi(2) / w).exp(), 0.0),
    }
}

/// Ratio between the raw Fourier integral of the spectral amplitude and
/// [`temporal_amplitude_analytic`] with the envelope included:
/// `pi / (tau_p tau_L)`.
pub fn fourier_prefactor(params: &SpectralParams) -> f64 {
    PI / (params.tau_p * params.tau_l)
}

/// Quadrature grid for the two-frequency Fourier integral, laid out along
/// the sum `nu1 + nu2` and difference `nu1 - nu2` axes. The pump envelope is
/// typically two orders of magnitude narrower than the phase-matching one,
/// which a grid aligned with `nu1`, `nu2` could not resolve economically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralGrid {
    pub sum_half_width: f64,
    pub diff_half_width: f64,
    pub n_sum: usize,
    pub n_diff: usize,
}

impl SpectralGrid {
    /// Grid spanning `n_sigma` envelope widths with `points_per_sigma`
    /// samples per width on both axes.
    pub fn covering(params: &SpectralParams, n_sigma: f64, points_per_sigma: f64) -> Self {
        let n = (2.0 * n_sigma * points_per_sigma).ceil() as usize + 1;
        Self {
            sum_half_width: n_sigma / params.tau_p,
            diff_half_width: n_sigma / params.tau_l,
            n_sum: n,
            n_diff: n,
        }
    }

    fn step(half: f64, n: usize) -> f64 {
        2.0 * half / (n - 1) as f64
    }

    fn validate(&self, params: &SpectralParams) -> Result<()> {
        let axes = [
            ("nu1 + nu2", self.sum_half_width, self.n_sum, 1.0 / params.tau_p),
            ("nu1 - nu2", self.diff_half_width, self.n_diff, 1.0 / params.tau_l),
        ];
        for (name, half, n, sigma) in axes {
            if n < 2 || !half.is_finite() || half <= 0.0 {
                return Err(Error::UnderResolved(format!("{name} axis is empty")));
            }
            if half < MIN_GRID_SIGMAS * sigma * (1.0 - 1e-12) {
                return Err(Error::UnderResolved(format!(
                    "{name} axis spans {:.2} envelope widths, need {MIN_GRID_SIGMAS}",
                    half / sigma
                )));
            }
            let per_sigma = sigma / Self::step(half, n);
            if per_sigma < MIN_POINTS_PER_SIGMA * (1.0 - 1e-12) {
                return Err(Error::UnderResolved(format!(
                    "{name} axis has {per_sigma:.2} points per envelope width, need {MIN_POINTS_PER_SIGMA}"
                )));
            }
        }
        Ok(())
    }
}

/// Tensor-product trapezoid evaluation of
/// `int dnu1 dnu2 Psi(nu1, nu2) e^{i(nu1 t1 + nu2 t2)}`, including the
/// per-component delay phases. Returns the raw integral (no normalization).
pub fn temporal_amplitude_numeric(
    t1: f64,
    t2: f64,
    params: &SpectralParams,
    grid: &SpectralGrid,
    model: SpectralModel,
) -> Result<DirectionalAmplitudes> {
    grid.validate(params)?;
    let hs = SpectralGrid::step(grid.sum_half_width, grid.n_sum);
    let hd = SpectralGrid::step(grid.diff_half_width, grid.n_diff);
    let dt = params.delta_t;
    let weight = |i: usize, n: usize| if i == 0 || i + 1 == n { 0.5 } else { 1.0 };

    let mut up_first = Complex64::default();
    let mut down_first = Complex64::default();
    for i in 0..grid.n_sum {
        let s = -grid.sum_half_width + hs * i as f64;
        let ws = weight(i, grid.n_sum);
        for j in 0..grid.n_diff {
            let d = -grid.diff_half_width + hd * j as f64;
            let nu1 = 0.5 * (s + d);
            let nu2 = 0.5 * (s - d);
            let amp = frequency_amplitude(nu1, nu2, params, model) * (ws * weight(j, grid.n_diff));
            let carrier = nu1 * t1 + nu2 * t2;
            up_first += amp * Complex64::cis(carrier + nu1 * dt);
            down_first += amp * Complex64::cis(carrier + nu2 * dt);
        }
    }
    // d nu1 d nu2 = (1/2) ds dd
    let jacobian = 0.5 * hs * hd;
    Ok(DirectionalAmplitudes {
        up_first: up_first * jacobian,
        down_first: down_first * jacobian,
    })
}

/// [`temporal_amplitude_numeric`] with the grid density doubled until the
/// relative change between successive refinements drops below `1e-8`.
pub fn temporal_amplitude_oracle(
    t1: f64,
    t2: f64,
    params: &SpectralParams,
    model: SpectralModel,
) -> Result<DirectionalAmplitudes> {
    const REL_TOL: f64 = 1e-8;
    const MAX_REFINEMENTS: usize = 5;
    let n_sigma = 8.0;
    let mut pps = MIN_POINTS_PER_SIGMA;
    let mut prev = temporal_amplitude_numeric(t1, t2, params, &SpectralGrid::covering(params, n_sigma, pps), model)?;
    // Amplitudes this far below the peak are treated as converged zeros.
    let floor = 1e-12 * fourier_prefactor(params);
    for _ in 0..MAX_REFINEMENTS {
        pps *= 2.0;
        let next = temporal_amplitude_numeric(t1, t2, params, &SpectralGrid::covering(params, n_sigma, pps), model)?;
        let change =
            ((next.up_first - prev.up_first).norm_sqr() + (next.down_first - prev.down_first).norm_sqr()).sqrt();
        let size = (next.up_first.norm_sqr() + next.down_first.norm_sqr()).sqrt();
        prev = next;
        if change <= REL_TOL * size.max(floor) {
            break;
        }
    }
    Ok(prev)
}

/// Two-qubit `[uu, ud, du, dd]` amplitudes (first-quantized, particle 1
/// first) of the two-time wave function after the beamsplitter, without the
/// sum-time envelope. Equals `(A+ Phi- + A- Psi-) / sqrt 2` for the balanced
/// beamsplitter.
pub fn beamsplit_temporal(t1: f64, t2: f64, params: &SpectralParams, bs: &BeamsplitterUnitary) -> [Complex64; 4] {
    let amp = temporal_amplitude_analytic(t1, t2, params, false);
    let m = bs.matrix();
    // index 0 = up, 1 = down; psi'[a][b] = sum_{c,d} U[a][c] U[b][d] psi[c][d]
    let input = [
        [Complex64::default(), amp.up_first],
        [amp.down_first, Complex64::default()],
    ];
    let mut out = [Complex64::default(); 4];
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = Complex64::default();
            for c in 0..2 {
                for d in 0..2 {
                    acc += m[a][c] * m[b][d] * input[c][d];
                }
            }
            out[2 * a + b] = acc;
        }
    }
    out
}

/// `A+- = exp[-(x + dt)^2 / 8 tau_L^2] +- exp[-(x - dt)^2 / 8 tau_L^2]`,
/// `x = t1 - t2`. Returns `(A+, A-)`.
pub fn amplitudes_a(x: f64, params: &SpectralParams) -> (f64, f64) {
    let w = 8.0 * params.tau_l * params.tau_l;
    let dt = params.delta_t;
    let lead = (-(x + dt).powi(2) / w).exp();
    let lag = (-(x - dt).powi(2) / w).exp();
    (lead + lag, lead - lag)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    /// Unsplit (bunched) pairs.
    Plus,
    /// Split pairs, i.e. coincidences.
    Minus,
}

/// Uniform grid `t_min, ..., t_max` with `n_points` samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeGrid {
    t_min: f64,
    t_max: f64,
    n_points: usize,
}

impl TimeGrid {
    pub fn new(t_min: f64, t_max: f64, n_points: usize) -> Result<Self> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
            return Err(Error::param(
                "grid",
                format!("need t_min < t_max, got [{t_min}, {t_max}]"),
            ));
        }
        if n_points < 2 {
            return Err(Error::param("grid", "need at least 2 points"));
        }
        Ok(Self { t_min, t_max, n_points })
    }

    /// Symmetric grid on `[-half_width, half_width]` with spacing at most `max_step`.
    pub fn symmetric(half_width: f64, max_step: f64) -> Result<Self> {
        let intervals = (2.0 * half_width / max_step).ceil().max(1.0) as usize;
        // Even interval count keeps x = 0 on the grid.
        let intervals = intervals + intervals % 2;
        Self::new(-half_width, half_width, intervals + 1)
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.t_max - self.t_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        let f = i as f64 / (self.n_points - 1) as f64;
        self.t_min * (1.0 - f) + self.t_max * f
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.point(i))
    }
}

/// `A+` and `A-` sampled over the arrival-time difference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TemporalAmplitudes {
    pub grid: TimeGrid,
    pub a_plus: Vec<f64>,
    pub a_minus: Vec<f64>,
}

impl TemporalAmplitudes {
    pub fn evaluate(params: &SpectralParams, grid: TimeGrid) -> Self {
        let (a_plus, a_minus) = grid.points().map(|x| amplitudes_a(x, params)).unzip();
        Self { grid, a_plus, a_minus }
    }
}

/// Constant `N` with `f+-(x) = N |A+-(x)|^2` and `int (f+ + f-) dx = 1`:
/// `N = 1 / (8 sqrt(pi) tau_L)`.
pub fn density_normalization(params: &SpectralParams) -> f64 {
    1.0 / (8.0 * PI.sqrt() * params.tau_l)
}

fn squared_amplitude(x: f64, sign: Sign, params: &SpectralParams) -> f64 {
    let (plus, minus) = amplitudes_a(x, params);
    match sign {
        Sign::Plus => plus * plus,
        Sign::Minus => minus * minus,
    }
}

/// Probability density in `x = t1 - t2` of unsplit (`Plus`) or split
/// (`Minus`) pairs, normalized so both densities together integrate to one.
pub fn density_f(x: f64, sign: Sign, params: &SpectralParams) -> f64 {
    density_normalization(params) * squared_amplitude(x, sign, params)
}

/// `w+- = (1 +- exp[-(dt / 2 tau_L)^2]) / 2`
pub fn total_probability(sign: Sign, params: &SpectralParams) -> f64 {
    let overlap = (-(params.delta_t / (2.0 * params.tau_l)).powi(2)).exp();
    match sign {
        Sign::Plus => 0.5 * (1.0 + overlap),
        Sign::Minus => 0.5 * (1.0 - overlap),
    }
}

/// Full width at half maximum of one density peak far from its partner:
/// `|A|^2 -> exp[-(x - dt)^2 / 4 tau_L^2]`, i.e. `4 sqrt(ln 2) tau_L`.
pub fn isolated_peak_fwhm(tau_l: f64) -> f64 {
    4.0 * std::f64::consts::LN_2.sqrt() * tau_l
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    pub position: f64,
    /// Density at the refined maximum.
    pub height: f64,
    /// `None` when the half-maximum level is not crossed on one side before
    /// the grid edge or a neighbouring rise.
    pub width_fwhm: Option<f64>,
}

/// Local maxima of `f+-` sampled on `grid`, refined by a parabola through
/// the three samples around each maximum.
pub fn find_peaks(sign: Sign, params: &SpectralParams, grid: &TimeGrid) -> Result<Vec<Peak>> {
    let reach = params.delta_t + 6.0 * params.tau_l;
    if grid.t_min > -reach * (1.0 + 1e-12) || grid.t_max < reach * (1.0 - 1e-12) {
        return Err(Error::UnderResolved(format!(
            "grid [{:e}, {:e}] must cover +-(delta_t + 6 tau_L) = +-{reach:e}",
            grid.t_min, grid.t_max
        )));
    }
    let per_tau = params.tau_l / grid.spacing();
    if per_tau < MIN_PEAK_POINTS_PER_TAU {
        return Err(Error::UnderResolved(format!(
            "{per_tau:.2} points per tau_L, need {MIN_PEAK_POINTS_PER_TAU}"
        )));
    }

    let h = grid.spacing();
    let v: Vec<f64> = grid.points().map(|x| squared_amplitude(x, sign, params)).collect();
    let norm = density_normalization(params);
    let mut peaks = Vec::new();
    for i in 1..v.len() - 1 {
        if !(v[i] > v[i - 1] && v[i] >= v[i + 1]) || v[i] <= PEAK_THRESHOLD {
            continue;
        }
        let curvature = v[i - 1] - 2.0 * v[i] + v[i + 1];
        let offset = if curvature < 0.0 {
            0.5 * (v[i - 1] - v[i + 1]) / curvature
        } else {
            0.0
        };
        let height = v[i] - 0.25 * (v[i - 1] - v[i + 1]) * offset;
        let position = grid.point(i) + offset * h;
        let half = 0.5 * height;
        let left = half_crossing(&v, i, half, -1).map(|k| grid.point(0) + k * h);
        let right = half_crossing(&v, i, half, 1).map(|k| grid.point(0) + k * h);
        peaks.push(Peak {
            position,
            height: height * norm,
            width_fwhm: left.zip(right).map(|(l, r)| r - l),
        });
    }
    Ok(peaks)
}

/// Fractional sample index where `v` first drops below `level` walking away
/// from `start` in direction `dir`.
fn half_crossing(v: &[f64], start: usize, level: f64, dir: isize) -> Option<f64> {
    let mut i = start as isize;
    loop {
        let j = i + dir;
        if j < 0 || j as usize >= v.len() {
            return None;
        }
        let (a, b) = (v[i as usize], v[j as usize]);
        if b > a {
            return None;
        }
        if b < level {
            let frac = (a - level) / (a - b);
            return Some(i as f64 + dir as f64 * frac);
        }
        i = j;
    }
}
