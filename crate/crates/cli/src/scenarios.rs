use std::path::PathBuf;

use hom_core::montecarlo::simulate_run;
use hom_core::polarization::{split_probability, unsplit_probability};
use hom_core::spectral::{
    density_f, find_peaks, fourier_prefactor, temporal_amplitude_analytic, temporal_amplitude_numeric,
    temporal_amplitude_oracle, total_probability, SpectralGrid,
};
use hom_core::{
    apply_beamsplitter, create_photon, dip_scan, reconstruct_density, split_probability_of, BeamsplitterUnitary,
    Complex64, DetectionRun, ModeLabel, PhotonState, PolarizationAngles, Sign, SpectralModel, SpectralParams, TimeGrid,
};
use serde::Serialize;

use crate::config::{Scenario, ScenarioConfig};
use crate::error::CliError;
use crate::output::{write_file, CsvTable, Field, VERSION};

/// Files written and text meant for stdout / stderr.
#[derive(Debug, Default)]
pub struct Report {
    pub files: Vec<PathBuf>,
    pub stdout: String,
    pub warnings: Vec<String>,
}

impl Report {
    fn save(&mut self, config: &ScenarioConfig, name: &str, contents: &str) -> Result<(), CliError> {
        self.files.push(write_file(&config.output_path, name, contents)?);
        Ok(())
    }

    fn say(&mut self, line: impl AsRef<str>) {
        self.stdout.push_str(line.as_ref());
        self.stdout.push('\n');
    }
}

pub fn run_scenario(config: &ScenarioConfig) -> Result<Report, CliError> {
    let mut report = Report::default();
    if let Some(p) = config.params()? {
        if p.long_pulse_warning() {
            report.warnings.push(format!(
                "warning: tau_p = {:e} s is below the 10 ps long-pulse regime; the analytic forms lose accuracy",
                p.tau_p()
            ));
        }
    }
    match config.scenario {
        Scenario::Ideal => ideal(config, &mut report)?,
        Scenario::Polarization => polarization(config, &mut report)?,
        Scenario::DelayDensity => delay_density(config, &mut report)?,
        Scenario::DelayScan => delay_scan(config, &mut report)?,
        Scenario::MonteCarlo => monte_carlo(config, &mut report)?,
        Scenario::Oracle => oracle(config, &mut report)?,
    }
    Ok(report)
}

fn params_of(config: &ScenarioConfig) -> SpectralParams {
    config.params().ok().flatten().expect("validated at parse time")
}

/// `a_u^dag a_d^dag |0>` through the balanced splitter.
pub fn ideal_output() -> PhotonState {
    let input = create_photon(
        &create_photon(&PhotonState::vacuum(), ModeLabel::UP_H),
        ModeLabel::DOWN_H,
    );
    apply_beamsplitter(&input, &BeamsplitterUnitary::default())
}

fn ideal(config: &ScenarioConfig, report: &mut Report) -> Result<(), CliError> {
    let out = ideal_output().prune(1e-15);
    let split = split_probability_of(&out)?;
    let mut table = CsvTable::new(config, &["ket", "re", "im", "probability"]);
    for (occ, amp) in out.iter() {
        let ket = occ.to_string();
        table.row(&[
            Field::Text(&ket),
            Field::Float(amp.re),
            Field::Float(amp.im),
            Field::Float(amp.norm_sqr()),
        ]);
    }
    report.save(config, "ideal.csv", table.as_str())?;
    report.say(format!("output state: {out}"));
    report.say(format!("split probability: {split:e}"));
    Ok(())
}

fn polarization(config: &ScenarioConfig, report: &mut Report) -> Result<(), CliError> {
    let sweep = config.polarization.expect("polarization sweep");
    let grid = TimeGrid::new(sweep.delta_min, sweep.delta_max, sweep.n_points)?;
    let bs = BeamsplitterUnitary::default();
    let mut table = CsvTable::new(
        config,
        &["delta", "alpha", "beta", "w_split", "w_unsplit", "w_split_fock"],
    );
    for delta in grid.points() {
        let beta = sweep.alpha - delta;
        let angles = PolarizationAngles::new(sweep.alpha, beta)?;
        let fock = split_probability_of(&apply_beamsplitter(&hom_core::polarization::input_state(angles), &bs))?;
        table.floats(&[
            delta,
            sweep.alpha,
            beta,
            split_probability(angles),
            unsplit_probability(angles),
            fock,
        ]);
    }
    report.save(config, "polarization.csv", table.as_str())
}

fn delay_density(config: &ScenarioConfig, report: &mut Report) -> Result<(), CliError> {
    let p = params_of(config);
    let grid = config.density_grid()?.expect("density grid");
    let mut table = CsvTable::new(config, &["x_s", "x_scaled", "f_plus", "f_minus"]);
    let scale = 8f64.sqrt() * p.tau_l();
    for x in grid.points() {
        table.floats(&[
            x,
            x / scale,
            density_f(x, Sign::Plus, &p),
            density_f(x, Sign::Minus, &p),
        ]);
    }
    report.save(config, "delay_density.csv", table.as_str())?;

    // peaks on their own grid so a coarse table does not degrade them
    let peak_grid = TimeGrid::symmetric(p.delta_t() + 8.0 * p.tau_l(), p.tau_l() / 64.0)?;
    let mut peaks = CsvTable::new(
        config,
        &["sign", "position_s", "position_over_tau_L", "height", "fwhm_s"],
    );
    for (sign, label) in [(Sign::Plus, "plus"), (Sign::Minus, "minus")] {
        for peak in find_peaks(sign, &p, &peak_grid)? {
            peaks.row(&[
                Field::Text(label),
                Field::Float(peak.position),
                Field::Float(peak.position / p.tau_l()),
                Field::Float(peak.height),
                peak.width_fwhm.map_or(Field::Empty, Field::Float),
            ]);
        }
    }
    report.save(config, "delay_density_peaks.csv", peaks.as_str())?;
    report.say(format!(
        "eta = {:.6}, w_plus = {:.9}, w_minus = {:.9}",
        p.eta(),
        total_probability(Sign::Plus, &p),
        total_probability(Sign::Minus, &p)
    ));
    Ok(())
}

fn delay_scan(config: &ScenarioConfig, report: &mut Report) -> Result<(), CliError> {
    let p = params_of(config);
    let scan = config.scan.expect("scan spec");
    let delays: Vec<f64> = TimeGrid::new(scan.delta_t_min, scan.delta_t_max, scan.n_points)?
        .points()
        .collect();
    let empirical = match scan.n_pairs {
        Some(n) => {
            let base = DetectionRun::new(
                n,
                config.seed.unwrap_or(0),
                p,
                hom_core::DetectorConfig::new(0.0, crate::config::DEFAULT_COINCIDENCE_WINDOW)?,
            )?;
            Some(dip_scan(&delays, &base)?)
        }
        None => None,
    };
    let mut columns = vec!["delta_t_s", "delta_t_over_tau_L", "w_plus", "w_minus"];
    if empirical.is_some() {
        columns.extend(["w_minus_empirical", "std_error"]);
    }
    let mut table = CsvTable::new(config, &columns);
    for (i, &dt) in delays.iter().enumerate() {
        let q = p.with_delta_t(dt)?;
        let mut row = vec![
            dt,
            dt / p.tau_l(),
            total_probability(Sign::Plus, &q),
            total_probability(Sign::Minus, &q),
        ];
        if let Some(rows) = &empirical {
            row.extend([rows[i].w_minus_empirical, rows[i].std_error]);
        }
        table.floats(&row);
    }
    report.save(config, "delay_scan.csv", table.as_str())
}

#[derive(Serialize)]
struct MonteCarloJson<'a> {
    version: &'static str,
    config: String,
    summary: &'a hom_core::RunSummary,
}

fn monte_carlo(config: &ScenarioConfig, report: &mut Report) -> Result<(), CliError> {
    let run = config.detection_run()?.expect("detection run");
    let det = config.detection.expect("detection spec");
    let result = simulate_run(&run)?;

    let mut events = CsvTable::new(config, &["pair_index", "outcome", "t_up_s", "t_down_s"]);
    for e in &result.events {
        events.row(&[
            Field::Int(e.pair_index),
            Field::Text(e.outcome.as_str()),
            e.t_up.map_or(Field::Empty, Field::Float),
            e.t_down.map_or(Field::Empty, Field::Float),
        ]);
    }
    report.save(config, "monte_carlo_events.csv", events.as_str())?;

    let half = det.histogram_half_width;
    let hist = reconstruct_density(&result.events, det.bin_width, -half..half)?;
    let mut table = CsvTable::new(config, &["center_s", "count", "density", "f_minus_conditional"]);
    let w = total_probability(Sign::Minus, &run.params);
    for (k, c) in hist.centers().enumerate() {
        let exact = if w > 0.0 {
            density_f(c, Sign::Minus, &run.params) / w
        } else {
            0.0
        };
        table.row(&[
            Field::Float(c),
            Field::Int(hist.counts[k]),
            Field::Float(hist.density[k]),
            Field::Float(exact),
        ]);
    }
    report.save(config, "monte_carlo_histogram.csv", table.as_str())?;

    let json = MonteCarloJson {
        version: VERSION,
        config: config.to_config_string(),
        summary: &result.summary,
    };
    let mut text = serde_json::to_string_pretty(&json).expect("summary serializes");
    text.push('\n');
    report.save(config, "monte_carlo_summary.json", &text)?;

    let s = &result.summary;
    report.say(format!(
        "pairs {}: split {}, bunched up {}, bunched down {}, coincidences {}",
        s.n_pairs, s.split, s.bunched_up, s.bunched_down, s.coincidences
    ));
    report.say(format!(
        "w_minus empirical {:.6} +- {:.6}, analytic {:.6}",
        s.w_minus_empirical, s.w_minus_std_error, s.w_minus_analytic
    ));
    Ok(())
}

/// Lattice of (t1, t2): sum time over +-6 tau_p, difference over
/// +-(dt + 6 tau_L), five points each.
pub fn oracle_lattice(p: &SpectralParams) -> Vec<(f64, f64)> {
    let reach = p.delta_t() + 6.0 * p.tau_l();
    let mut pts = Vec::with_capacity(25);
    for i in 0..5 {
        let sum = -6.0 * p.tau_p() + 3.0 * p.tau_p() * i as f64;
        for j in 0..5 {
            let diff = -reach + 0.5 * reach * j as f64;
            pts.push((0.5 * (sum - p.delta_t() + diff), 0.5 * (sum - p.delta_t() - diff)));
        }
    }
    pts
}

pub fn relative_l2(pairs: &[(Complex64, Complex64)]) -> f64 {
    let num: f64 = pairs.iter().map(|(a, b)| (a - b).norm_sqr()).sum();
    let den: f64 = pairs.iter().map(|(_, b)| b.norm_sqr()).sum();
    (num / den).sqrt()
}

fn oracle(config: &ScenarioConfig, report: &mut Report) -> Result<(), CliError> {
    let p = params_of(config);
    let scale = fourier_prefactor(&p);
    let mut table = CsvTable::new(
        config,
        &[
            "t1_s",
            "t2_s",
            "analytic_up_first",
            "numeric_up_first_re",
            "numeric_up_first_im",
            "analytic_down_first",
            "numeric_down_first_re",
            "numeric_down_first_im",
        ],
    );
    let mut gauss = Vec::new();
    let mut sinc = Vec::new();
    let sinc_grid = SpectralGrid::covering(&p, 40.0, 8.0);
    for (t1, t2) in oracle_lattice(&p) {
        let analytic = temporal_amplitude_analytic(t1, t2, &p, true);
        let numeric = temporal_amplitude_oracle(t1, t2, &p, SpectralModel::GaussianModel)?.scale(1.0 / scale);
        let sinc_num = temporal_amplitude_numeric(t1, t2, &p, &sinc_grid, SpectralModel::SincExact)?.scale(1.0 / scale);
        table.floats(&[
            t1,
            t2,
            analytic.up_first.re,
            numeric.up_first.re,
            numeric.up_first.im,
            analytic.down_first.re,
            numeric.down_first.re,
            numeric.down_first.im,
        ]);
        gauss.push((numeric.up_first, analytic.up_first));
        gauss.push((numeric.down_first, analytic.down_first));
        sinc.push((sinc_num.up_first, analytic.up_first));
        sinc.push((sinc_num.down_first, analytic.down_first));
    }
    report.save(config, "oracle.csv", table.as_str())?;
    let err = relative_l2(&gauss);
    report.say(format!("gaussian model: relative L2 {err:.3e} (tolerance 1e-6)"));
    report.say(format!(
        "sinc model: relative L2 {:.3e} (reported only)",
        relative_l2(&sinc)
    ));
    if err.is_nan() || err >= 1e-6 {
        return Err(CliError::Validation(format!(
            "quadrature disagrees with the closed form: relative L2 {err:e}"
        )));
    }
    Ok(())
}
