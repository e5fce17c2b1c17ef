use hom_core::montecarlo::{mixture_density, rng_for, simulate_tallies};
use hom_core::quadrature::adaptive_simpson;
use hom_core::spectral::{density_f, total_probability};
use hom_core::{
    dip_scan, reconstruct_density, simulate_run, DetectionRun, DetectorConfig, Histogram, PairSampler, Sign,
    SpectralParams,
};
use statrs::function::erf::erf;

const TAU: f64 = 100e-15;

fn params(ratio: f64) -> SpectralParams {
    SpectralParams::new(10e-12, TAU, ratio * TAU).unwrap()
}

fn run(ratio: f64, n: u64, seed: u64, resolution: f64) -> DetectionRun {
    DetectionRun::new(n, seed, params(ratio), DetectorConfig::new(resolution, 1e-9).unwrap()).unwrap()
}

/// `f+ + f-` is an equal mixture of two Gaussians of std `sqrt 2 tau_L`
/// centred at `+-dt`; the cross terms cancel.
fn mixture_cdf(x: f64, p: &SpectralParams) -> f64 {
    let s = 2.0 * p.tau_l(); // sqrt(2) * sigma
    0.25 * (2.0 + erf((x + p.delta_t()) / s) + erf((x - p.delta_t()) / s))
}

#[test]
fn oracle_cdf_agrees_with_integrated_density() {
    let p = params(1.3);
    for x in [-500e-15, -120e-15, 0.0, 77e-15, 420e-15] {
        let lo = -p.delta_t() - 14.0 * TAU;
        let numeric = adaptive_simpson(|t| mixture_density(t, &p), lo, x, 1e-14);
        assert!((numeric - mixture_cdf(x, &p)).abs() < 1e-10);
    }
}

#[test]
fn sampled_differences_follow_mixture_cdf() {
    for ratio in [0.0, 1.0, 4.0] {
        let p = params(ratio);
        let sampler = PairSampler::new(p);
        let mut rng = rng_for(2024 + ratio as u64);
        let n = 1_000_000;
        let mut xs: Vec<f64> = (0..n).map(|_| sampler.sample(&mut rng).x).collect();
        xs.sort_by(f64::total_cmp);
        let ks = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = mixture_cdf(x, &p);
                (f - i as f64 / n as f64)
                    .abs()
                    .max((f - (i + 1) as f64 / n as f64).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.002, "dt = {ratio} tau: KS {ks}");
    }
}

#[test]
fn empirical_split_fraction_converges() {
    let n = 1_000_000u64;
    for (i, ratio) in [0.5, 1.0, 2.0, 4.0].into_iter().enumerate() {
        let s = simulate_tallies(&run(ratio, n, 500 + i as u64, 0.0)).unwrap();
        let w = total_probability(Sign::Minus, &params(ratio));
        let sigma = (w * (1.0 - w) / n as f64).sqrt();
        assert!(
            (s.w_minus_empirical - w).abs() < 3.0 * sigma,
            "{ratio}: {} vs {w}",
            s.w_minus_empirical
        );
        assert_eq!(s.w_minus_analytic, w);
    }
}

#[test]
fn bunched_sides_are_balanced() {
    let s = simulate_tallies(&run(1.0, 1_000_000, 77, 0.0)).unwrap();
    let n = (s.bunched_up + s.bunched_down) as f64;
    let z = (s.bunched_up as f64 - 0.5 * n) / (0.25 * n).sqrt();
    assert!(z.abs() < 2.576, "z = {z}");
}

#[test]
fn dip_scan_tracks_closed_form() {
    let base = run(0.0, 100_000, 9, 0.0);
    let delays: Vec<f64> = [0.0, 1.0, 2.0, 4.0, 8.0].iter().map(|r| r * TAU).collect();
    let rows = dip_scan(&delays, &base).unwrap();
    assert_eq!(rows[0].w_minus_empirical, 0.0);
    for row in &rows {
        let w = row.w_minus_analytic;
        let sigma = (w * (1.0 - w) / 1e5).sqrt();
        assert!((row.w_minus_empirical - w).abs() <= 3.0 * sigma, "{row:?}");
    }
    assert!(rows.windows(2).all(|r| r[0].w_minus_analytic <= r[1].w_minus_analytic));
    // scheduling-independent
    assert_eq!(rows, dip_scan(&delays, &base).unwrap());
}

#[test]
fn identical_runs_are_bit_identical() {
    let a = simulate_run(&run(2.0, 20_000, 31, TAU / 10.0)).unwrap();
    let b = simulate_run(&run(2.0, 20_000, 31, TAU / 10.0)).unwrap();
    assert_eq!(a.summary, b.summary);
    let bits = |r: &hom_core::RunResult| {
        r.events
            .iter()
            .map(|e| {
                (
                    e.pair_index,
                    e.outcome,
                    e.t_up.map(f64::to_bits),
                    e.t_down.map(f64::to_bits),
                )
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(bits(&a), bits(&b));
}

/// Mean-shift on histogram mass starting from the largest bin on one side.
fn lobe_centre(h: &Histogram, positive: bool, window: f64) -> f64 {
    let centers: Vec<f64> = h.centers().collect();
    let side = |x: f64| if positive { x > 0.0 } else { x < 0.0 };
    let mut c = centers
        .iter()
        .zip(&h.density)
        .filter(|(x, _)| side(**x))
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(x, _)| *x)
        .unwrap();
    for _ in 0..20 {
        let (mut m, mut w) = (0.0, 0.0);
        for (x, d) in centers.iter().zip(&h.density) {
            if (x - c).abs() <= window {
                m += x * d;
                w += d;
            }
        }
        c = m / w;
    }
    c
}

#[test]
fn reconstructed_histogram_peaks_at_the_delay() {
    let r = simulate_run(&run(4.0, 1_000_000, 4, TAU / 20.0)).unwrap();
    let h = reconstruct_density(&r.events, TAU / 10.0, -12.0 * TAU..12.0 * TAU).unwrap();
    let left = lobe_centre(&h, false, 2.0 * TAU);
    let right = lobe_centre(&h, true, 2.0 * TAU);
    assert!((right - 4.0 * TAU).abs() < 0.1 * TAU, "{}", right / TAU);
    assert!((left + 4.0 * TAU).abs() < 0.1 * TAU, "{}", left / TAU);
}

#[test]
fn reconstruction_converges_at_fine_resolution() {
    let p = params(4.0);
    let r = simulate_run(&run(4.0, 1_000_000, 12, TAU / 50.0)).unwrap();
    let bw = TAU / 4.0;
    let h = reconstruct_density(&r.events, bw, -12.0 * TAU..12.0 * TAU).unwrap();
    let w = total_probability(Sign::Minus, &p);
    let l1: f64 = h
        .centers()
        .zip(&h.density)
        .map(|(c, d)| {
            let exact = adaptive_simpson(|x| density_f(x, Sign::Minus, &p), c - bw / 2.0, c + bw / 2.0, 1e-15) / bw / w;
            (d - exact).abs() * bw
        })
        .sum();
    assert!(l1 < 0.05, "L1 = {l1}");
}

#[test]
fn coarse_resolution_broadens_the_split_density() {
    let r = simulate_run(&run(4.0, 200_000, 13, 5.0 * TAU)).unwrap();
    let diffs: Vec<f64> = r.events.iter().filter_map(|e| Some(e.t_up? - e.t_down?)).collect();
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let sd = (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n).sqrt();
    // f-/w- alone has sd close to sqrt(16 + 2) tau; jitter adds sqrt(2) * 5 tau in quadrature.
    let direct = (18.0f64 + 50.0).sqrt() * TAU;
    assert!(sd > 3.0 * TAU);
    assert!((sd / direct - 1.0).abs() < 0.05, "{} vs {}", sd / TAU, direct / TAU);
}
