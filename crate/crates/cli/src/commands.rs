//! One function per CLI command; each returns a [`RunReport`] and prints its
//! primary table to stdout (aligned text or CSV, per --format).

use crate::report::{csv_line, render_table, write_csv, RunReport};
use crate::scenario::Scenario;
use std::path::Path;
use thiserror::Error;
use uffsim_core::diffsignal::{
    fit_ellipse, monte_carlo_phase_spread, projection_noise_phase_bound, simulate_fringe_set,
    FringeParams,
};
use uffsim_core::geodesy::{local_gravity, project_onto_axis, propagate};
use uffsim_core::interferometer::AccelerationSpectrum;
use uffsim_core::mission::{pass_edge_eta_uncertainty, simulate_mission, simulate_pass};
use uffsim_core::source_timeline::{
    atom_budget_check, build_nominal_timeline, raman_transport_check, EvaporationBranch,
};
use uffsim_core::statnoise::{assemble_noise_table, combine_noise, NoiseInputs};
use uffsim_core::systematics::{assemble_budget, combine_budget, eotvos_from_bias, BudgetInputs};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Geodesy(#[from] uffsim_core::geodesy::GeodesyError),
    #[error(transparent)]
    Systematics(#[from] uffsim_core::systematics::SystematicsError),
    #[error(transparent)]
    Mission(#[from] uffsim_core::mission::MissionError),
    #[error(transparent)]
    Fit(#[from] uffsim_core::diffsignal::FitError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
}

fn emit(rows: &[Vec<String>], format: OutputFormat) {
    match format {
        OutputFormat::Table => print!("{}", render_table(rows)),
        OutputFormat::Csv => {
            for row in rows {
                println!("{}", csv_line(row));
            }
        }
    }
}

fn sci(v: f64) -> String {
    format!("{v:.4e}")
}

/// Track a value against its published reference; deviations beyond the
/// tolerance count as violations.
fn check_reference(
    report: &mut RunReport,
    label: &str,
    value: f64,
    reference: f64,
    tolerance_frac: f64,
) {
    let dev = (value - reference) / reference;
    if dev.abs() > tolerance_frac {
        report.violations += 1;
        report.warnings.push(format!(
            "{label} = {value:.4e} deviates {:+.2}% from the reference {reference:.3e} (tolerance {:.0}%)",
            dev * 100.0,
            tolerance_frac * 100.0
        ));
    }
}

pub fn cmd_orbit(
    scenario: &Scenario,
    out_dir: &Path,
    format: OutputFormat,
    mut report: RunReport,
) -> Result<RunReport, CommandError> {
    let model = scenario.gravity_model();
    let elements = scenario.orbit_elements()?;
    let attitude = scenario.attitude(&elements);

    let mut csv = vec![vec![
        "time_s".to_string(),
        "x_m".into(),
        "y_m".into(),
        "z_m".into(),
        "vx_m_s".into(),
        "vy_m_s".into(),
        "vz_m_s".into(),
        "altitude_m".into(),
        "g_proj_m_s2".into(),
        "tzz_proj_s2".into(),
    ]];
    let samples = 1440;
    for i in 0..=samples {
        let t = scenario.orbit.period_s * i as f64 / samples as f64 - scenario.orbit.period_s / 2.0;
        let state = propagate(&elements, t, &model)?;
        let (g_proj, tzz_proj) = project_onto_axis(&state, &attitude, &model);
        csv.push(vec![
            format!("{t}"),
            format!("{}", state.position_m.x),
            format!("{}", state.position_m.y),
            format!("{}", state.position_m.z),
            format!("{}", state.velocity_m_s.x),
            format!("{}", state.velocity_m_s.y),
            format!("{}", state.velocity_m_s.z),
            format!("{}", state.altitude_m(&model)),
            format!("{g_proj}"),
            format!("{tzz_proj}"),
        ]);
    }
    let path = out_dir.join("ephemeris.csv");
    write_csv(&path, &csv)?;
    report.outputs.push(path);

    let perigee = propagate(&elements, 0.0, &model)?;
    let g_p = local_gravity(&perigee, &model).norm();
    let tzz_p = 2.0 * model.mu / perigee.radius_m().powi(3);
    let rows = vec![
        vec!["quantity".to_string(), "value".to_string()],
        vec![
            "semi-major axis [m]".into(),
            sci(elements.semi_major_axis_m),
        ],
        vec![
            "eccentricity".into(),
            format!("{:.6}", elements.eccentricity),
        ],
        vec![
            "period [s]".into(),
            format!("{:.1}", elements.period_s(&model)),
        ],
        vec![
            "perigee altitude [m]".into(),
            sci(elements.perigee_radius_m() - model.earth_radius),
        ],
        vec![
            "apogee altitude [m]".into(),
            sci(elements.apogee_radius_m() - model.earth_radius),
        ],
        vec!["g at perigee [m/s2]".into(), format!("{g_p:.4}")],
        vec!["T_zz at perigee [1/s2]".into(), sci(tzz_p)],
    ];
    emit(&rows, format);
    Ok(report)
}

pub fn cmd_contrast(
    scenario: &Scenario,
    out_dir: &Path,
    format: OutputFormat,
    mut report: RunReport,
) -> Result<RunReport, CommandError> {
    let model = scenario.gravity_model();
    let elements = scenario.orbit_elements()?;
    let attitude = scenario.attitude(&elements);
    let cfg = scenario.interferometer_config();

    let mut csv = vec![vec![
        "time_s".to_string(),
        "g_proj_m_s2".into(),
        "tzz_proj_s2".into(),
        "contrast".into(),
        "shot_noise_m_s2".into(),
        "sigma_eta".into(),
    ]];
    let n = scenario.mission.cycles_per_pass;
    for i in 0..n {
        let t = -0.5 * scenario.mission.window_duration_s + (i as f64 + 0.5) * cfg.cycle_time_s;
        let state = propagate(&elements, t, &model)?;
        let (g_proj, tzz_proj) = project_onto_axis(&state, &attitude, &model);
        let contrast = cfg.contrast_at(tzz_proj);
        let sigma = cfg.shot_noise_at(contrast);
        let sigma_eta = if g_proj > 0.0 {
            sigma / g_proj
        } else {
            f64::NAN
        };
        csv.push(vec![
            format!("{t}"),
            format!("{g_proj}"),
            format!("{tzz_proj}"),
            format!("{contrast}"),
            format!("{sigma}"),
            format!("{sigma_eta}"),
        ]);
    }
    let path = out_dir.join("contrast_pass.csv");
    write_csv(&path, &csv)?;
    report.outputs.push(path);

    let tzz_700 = {
        let r = model.earth_radius + scenario.orbit.perigee_altitude_m;
        2.0 * model.mu / (r * r * r)
    };
    let c_bound = cfg.contrast_at(uffsim_core::nominal::GRADIENT_BOUND);
    let c_perigee = cfg.contrast_at(tzz_700);
    let shot = cfg.shot_noise_at(scenario.noise.shot_noise_contrast);
    check_reference(
        &mut report,
        "contrast at the gradient bound",
        c_bound,
        0.6,
        0.035,
    );
    check_reference(&mut report, "shot noise per cycle", shot, 2.93e-12, 0.005);
    let rows = vec![
        vec!["quantity".to_string(), "value".to_string()],
        vec![
            format!(
                "contrast at T_gg = {:.1e} (design bound)",
                uffsim_core::nominal::GRADIENT_BOUND
            ),
            format!("{c_bound:.4}"),
        ],
        vec![
            format!("contrast at perigee T_zz = {tzz_700:.3e}"),
            format!("{c_perigee:.4}"),
        ],
        vec![
            format!(
                "shot noise per cycle at C = {}",
                scenario.noise.shot_noise_contrast
            ),
            sci(shot),
        ],
    ];
    emit(&rows, format);
    Ok(report)
}

pub fn cmd_budget(
    scenario: &Scenario,
    out_dir: &Path,
    format: OutputFormat,
    mut report: RunReport,
) -> Result<RunReport, CommandError> {
    let model = scenario.gravity_model();
    let r_p = model.earth_radius + scenario.orbit.perigee_altitude_m;
    let tzz = 2.0 * model.mu / (r_p * r_p * r_p);
    let g_proj = model.mu / (r_p * r_p);

    let env = scenario.environment_spec();
    let overlap = scenario.overlap_state();
    let pair = scenario.species_pair();
    let suppression = scenario.suppression_spec();
    let mean_field = scenario.mean_field_model()?;
    let budget = assemble_budget(&BudgetInputs {
        tzz_proj: tzz,
        free_evolution_s: scenario.interferometer.free_evolution_time_s,
        overlap: &overlap,
        environment: &env,
        species_pair: &pair,
        suppression: &suppression,
        mean_field: &mean_field,
    })?;

    let mut rows = vec![vec![
        "error source".to_string(),
        "limit [1e-15 m/s2]".into(),
        "reference".into(),
        "deviation".into(),
        "conditions".into(),
    ]];
    for term in &budget.terms {
        let (reference, deviation) = match term.check {
            Some(uffsim_core::systematics::RowCheck::Within { reference_m_s2, .. }) => (
                format!("{:.3}", reference_m_s2 * 1e15),
                term.deviation_frac()
                    .map(|d| format!("{:+.1}%", d * 100.0))
                    .unwrap_or_default(),
            ),
            Some(uffsim_core::systematics::RowCheck::AtMost { bound_m_s2 }) => {
                (format!("<{:.3}", bound_m_s2 * 1e15), String::new())
            }
            None => (String::new(), String::new()),
        };
        if !term.within_tolerance() {
            report.violations += 1;
            report
                .warnings
                .push(format!("budget row '{}' outside its tolerance", term.name));
        }
        rows.push(vec![
            term.name.to_string(),
            format!("{:.4}", term.value_m_s2 * 1e15),
            reference,
            deviation,
            term.conditions.clone(),
        ]);
    }
    let total = combine_budget(&budget);
    let eta = eotvos_from_bias(total, g_proj)?;
    check_reference(
        &mut report,
        "total differential acceleration",
        total,
        uffsim_core::systematics::REFERENCE_TOTAL_BIAS_M_S2,
        0.05,
    );
    check_reference(&mut report, "Eotvos-ratio error", eta, 1e-15, 0.10);
    // overlap and preparation requirements ride along as warnings
    let prep = uffsim_core::systematics::PreparationConditions::default();
    let overlap_report = uffsim_core::systematics::overlap_requirement_check(&overlap, &prep);
    for v in &overlap_report.violations {
        report.violations += 1;
        report.warnings.push(format!("overlap requirement: {v}"));
    }
    // model footnotes, informational
    let root = mean_field.nulling_ratio()?;
    report.warnings.push(format!(
        "note: mean-field nulling ratio {root:.4} is model-dependent; the published operating \
         point is 1.697 (factor {:.2})",
        1.697 / root
    ));
    report.warnings.push(format!(
        "note: the common-mode suppression ratio {:.2e} uses the calibrated Rabi-mismatch weight {:.1e}",
        suppression.suppression_ratio,
        uffsim_core::interferometer::RABI_MISMATCH_WEIGHT
    ));
    rows.push(vec![
        "total (correlated combination)".into(),
        format!("{:.4}", total * 1e15),
        "7.9".into(),
        format!("{:+.1}%", (total / 7.9e-15 - 1.0) * 100.0),
        String::new(),
    ]);
    rows.push(vec![
        "Eotvos-ratio error".into(),
        sci(eta),
        "1e-15".into(),
        format!("{:+.1}%", (eta / 1e-15 - 1.0) * 100.0),
        format!("g projection {g_proj:.3} m/s2"),
    ]);
    emit(&rows, format);

    let path = out_dir.join("budget.csv");
    write_csv(&path, &rows)?;
    report.outputs.push(path);
    Ok(report)
}

pub fn cmd_noise(
    scenario: &Scenario,
    out_dir: &Path,
    format: OutputFormat,
    mut report: RunReport,
) -> Result<RunReport, CommandError> {
    let model = scenario.gravity_model();
    let r_p = model.earth_radius + scenario.orbit.perigee_altitude_m;
    let tzz = 2.0 * model.mu / (r_p * r_p * r_p);

    let cfg = scenario.interferometer_config();
    let env = scenario.environment_spec();
    let overlap = scenario.overlap_state();
    let suppression = scenario.suppression_spec();
    let mean_field = scenario.mean_field_model()?;
    let budget = assemble_budget(&BudgetInputs {
        tzz_proj: tzz,
        free_evolution_s: cfg.free_evolution_s,
        overlap: &overlap,
        environment: &env,
        species_pair: &cfg.species_pair,
        suppression: &suppression,
        mean_field: &mean_field,
    })?;
    let table = assemble_noise_table(&NoiseInputs {
        config: &cfg,
        contrast: scenario.noise.shot_noise_contrast,
        suppression: &suppression,
        vibration_spectrum: AccelerationSpectrum::BandLimitedWhite {
            rms_m_s2: scenario.noise.vibration_rms_m_s2,
            f_lo_hz: scenario.noise.vibration_band_lo_hz,
            f_hi_hz: scenario.noise.vibration_band_hi_hz,
        },
        laser_linewidth_hz: scenario.noise.laser_linewidth_hz,
        retro_delay_s: scenario.noise.retro_delay_s,
        mean_field: &mean_field,
        splitting_accuracy: scenario.environment.beam_splitting_accuracy,
        ratio_fluctuation_sigma: scenario.noise.ratio_fluctuation_sigma,
        bias_field_g: scenario.environment.bias_field_gauss,
        b0_fluctuation_fraction: scenario.noise.b0_fluctuation_fraction,
        noise_gradient_g_m: scenario.noise.noise_field_gradient_gauss_m,
        budget: &budget,
        overlap_fluctuation_fraction: scenario.noise.overlap_fluctuation_fraction,
    })?;

    let mut rows = vec![vec![
        "noise source".to_string(),
        "limit [1e-12 m/s2]".into(),
        "reference".into(),
        "deviation".into(),
        "conditions".into(),
    ]];
    for term in &table {
        let (reference, deviation) = match term.check {
            Some(uffsim_core::systematics::RowCheck::Within { reference_m_s2, .. }) => (
                format!("{:.2}", reference_m_s2 * 1e12),
                term.deviation_frac()
                    .map(|d| format!("{:+.1}%", d * 100.0))
                    .unwrap_or_default(),
            ),
            Some(uffsim_core::systematics::RowCheck::AtMost { bound_m_s2 }) => {
                (format!("<{:.2}", bound_m_s2 * 1e12), String::new())
            }
            None => (String::new(), String::new()),
        };
        if !term.within_tolerance() {
            report.violations += 1;
            report
                .warnings
                .push(format!("noise row '{}' outside its tolerance", term.name));
        }
        rows.push(vec![
            term.name.to_string(),
            format!("{:.4}", term.sigma_m_s2 * 1e12),
            reference,
            deviation,
            term.conditions.clone(),
        ]);
    }
    let total = combine_noise(&table);
    check_reference(&mut report, "noise sum (RSS)", total, 3.2e-12, 0.02);
    rows.push(vec![
        "sum (root-sum-square)".into(),
        format!("{:.4}", total * 1e12),
        "3.2".into(),
        format!("{:+.1}%", (total / 3.2e-12 - 1.0) * 100.0),
        String::new(),
    ]);
    emit(&rows, format);

    let path = out_dir.join("noise.csv");
    write_csv(&path, &rows)?;
    report.outputs.push(path);
    Ok(report)
}

pub fn cmd_mission(
    scenario: &Scenario,
    out_dir: &Path,
    format: OutputFormat,
    mut report: RunReport,
) -> Result<RunReport, CommandError> {
    let plan = scenario.mission_plan()?;
    let mission = simulate_mission(&plan)?;

    let mut csv = vec![vec![
        "revolution".to_string(),
        "perigee_altitude_m".into(),
        "pass_sigma_eta".into(),
        "cumulative_sigma_eta".into(),
    ]];
    for rec in &mission.per_revolution {
        csv.push(vec![
            format!("{}", rec.revolution),
            format!("{}", rec.perigee_altitude_m),
            format!("{}", rec.pass_sigma_eta),
            format!("{}", rec.cumulative_sigma_eta),
        ]);
    }
    let path = out_dir.join("mission_revolutions.csv");
    write_csv(&path, &csv)?;
    report.outputs.push(path);

    // systematic η profile across the first pass
    let profile = pass_edge_eta_uncertainty(&plan, 0)?;
    let mut csv = vec![vec![
        "time_s".to_string(),
        "g_proj_m_s2".into(),
        "tzz_proj_s2".into(),
        "total_bias_m_s2".into(),
        "eta_error".into(),
    ]];
    for p in &profile {
        csv.push(vec![
            format!("{}", p.time_s),
            format!("{}", p.g_proj),
            format!("{}", p.tzz_proj),
            format!("{}", p.total_bias_m_s2),
            format!("{}", p.eta_error),
        ]);
    }
    let path = out_dir.join("eta_profile.csv");
    write_csv(&path, &csv)?;
    report.outputs.push(path);

    let first = simulate_pass(&plan, 0)?;
    let pass_min = mission
        .per_revolution
        .iter()
        .map(|r| r.pass_sigma_eta)
        .fold(f64::INFINITY, f64::min);
    let pass_max = mission
        .per_revolution
        .iter()
        .map(|r| r.pass_sigma_eta)
        .fold(0.0, f64::max);
    let mid = profile[profile.len() / 2].eta_error;
    let edge = profile.iter().map(|p| p.eta_error).fold(0.0, f64::max);

    if !(4.5e-14..=5.7e-14).contains(&first.pass_sigma_eta) {
        report.violations += 1;
        report.warnings.push(format!(
            "per-revolution sigma_eta {:.3e} outside the published band [4.5e-14, 5.7e-14]",
            first.pass_sigma_eta
        ));
    }
    if scenario.mission.revolutions == 625 && !(1.8e-15..=2.3e-15).contains(&mission.sigma_eta) {
        report.violations += 1;
        report.warnings.push(format!(
            "mission sigma_eta {:.3e} outside the target band [1.8e-15, 2.3e-15]",
            mission.sigma_eta
        ));
    }

    let rows = vec![
        vec!["quantity".to_string(), "value".to_string()],
        vec!["revolutions".into(), format!("{}", plan.revolutions)],
        vec![
            "cycles per pass".into(),
            format!("{}", plan.cycles_per_pass),
        ],
        vec![
            "pass sigma_eta (first revolution)".into(),
            sci(first.pass_sigma_eta),
        ],
        vec!["pass sigma_eta (min over mission)".into(), sci(pass_min)],
        vec!["pass sigma_eta (max over mission)".into(), sci(pass_max)],
        vec!["mission sigma_eta".into(), sci(mission.sigma_eta)],
        vec!["systematic eta error, mid-pass".into(), sci(mid)],
        vec!["systematic eta error, window edge".into(), sci(edge)],
        vec![
            "schedule note".into(),
            uffsim_core::mission::APOGEE_ACTIVITY_NOTE.to_string(),
        ],
    ];
    emit(&rows, format);
    Ok(report)
}

pub fn cmd_ellipse(
    scenario: &Scenario,
    out_dir: &Path,
    format: OutputFormat,
    mut report: RunReport,
) -> Result<RunReport, CommandError> {
    let params = FringeParams {
        n_cycles: scenario.ellipse.n_cycles as usize,
        differential_phase_rad: scenario.ellipse.differential_phase_rad,
        common_noise_rms_rad: scenario.ellipse.common_noise_rms_rad,
        contrast_87: scenario.ellipse.contrast,
        contrast_85: scenario.ellipse.contrast,
        atoms: Some(scenario.interferometer.atoms_per_species),
        imbalance_epsilon: scenario.ellipse.imbalance_epsilon,
        seed: scenario.seed,
    };
    let samples = simulate_fringe_set(&params);
    let mut csv = vec![vec!["cycle".to_string(), "p87".into(), "p85".into()]];
    for (i, s) in samples.iter().enumerate() {
        csv.push(vec![
            format!("{i}"),
            format!("{}", s.p87),
            format!("{}", s.p85),
        ]);
    }
    let path = out_dir.join("fringe_samples.csv");
    write_csv(&path, &csv)?;
    report.outputs.push(path);

    let fit = fit_ellipse(&samples)?;
    let fit_csv = vec![
        vec![
            "differential_phase_rad".to_string(),
            "contrast_87".into(),
            "contrast_85".into(),
            "imbalance".into(),
            "residual".into(),
        ],
        vec![
            format!("{}", fit.differential_phase_rad),
            format!("{}", fit.contrast_87),
            format!("{}", fit.contrast_85),
            format!("{}", fit.imbalance),
            format!("{}", fit.residual),
        ],
    ];
    let path = out_dir.join("ellipse_fit.csv");
    write_csv(&path, &fit_csv)?;
    report.outputs.push(path);

    let spread = monte_carlo_phase_spread(&params, scenario.ellipse.repetitions as usize)?;
    let bound = projection_noise_phase_bound(
        scenario.interferometer.atoms_per_species,
        scenario.ellipse.contrast,
        params.n_cycles,
    );
    if spread.std_rad > 2.0 * bound {
        report.violations += 1;
        report.warnings.push(format!(
            "phase-estimator spread {:.3e} rad exceeds twice the projection-noise bound {:.3e} rad",
            spread.std_rad, bound
        ));
    }

    let rows = vec![
        vec!["quantity".to_string(), "value".to_string()],
        vec![
            "injected differential phase [rad]".into(),
            format!("{:.6}", params.differential_phase_rad),
        ],
        vec![
            "recovered phase (single set) [rad]".into(),
            format!("{:.6}", fit.differential_phase_rad),
        ],
        vec![
            "fitted contrast (species 1)".into(),
            format!("{:.4}", fit.contrast_87),
        ],
        vec![
            "fitted contrast (species 2)".into(),
            format!("{:.4}", fit.contrast_85),
        ],
        vec!["fitted imbalance".into(), format!("{:.5}", fit.imbalance)],
        vec!["fit residual".into(), sci(fit.residual)],
        vec![
            format!(
                "estimator mean over {} repetitions [rad]",
                spread.repetitions
            ),
            format!("{:.6}", spread.mean_rad),
        ],
        vec!["estimator std [rad]".into(), sci(spread.std_rad)],
        vec!["projection-noise bound [rad]".into(), sci(bound)],
        vec![
            "std / bound".into(),
            format!("{:.3}", spread.std_rad / bound),
        ],
    ];
    emit(&rows, format);
    Ok(report)
}

pub fn cmd_timeline(
    scenario: &Scenario,
    out_dir: &Path,
    format: OutputFormat,
    mut report: RunReport,
) -> Result<RunReport, CommandError> {
    let timeline = build_nominal_timeline(EvaporationBranch::Fast);
    let check = atom_budget_check(&timeline);
    for v in &check.violations {
        report.violations += 1;
        report.warnings.push(format!("timeline: {v}"));
    }
    let slow = build_nominal_timeline(EvaporationBranch::Slow);
    if !slow.within_budget() {
        report.warnings.push(format!(
            "slow evaporation branch totals {:.2} s and exceeds the 10 s budget (informational)",
            slow.total_duration_s()
        ));
    }

    let mut csv = vec![vec![
        "step".to_string(),
        "start_s".into(),
        "duration_s".into(),
        "n87_after".into(),
        "n85_after".into(),
        "temperature_k".into(),
        "notes".into(),
    ]];
    let mut rows = vec![vec![
        "step".to_string(),
        "start [s]".into(),
        "duration [s]".into(),
        "N87".into(),
        "N85".into(),
        "bar".into(),
    ]];
    let mut start = 0.0;
    let total = timeline.total_duration_s();
    for step in &timeline.steps {
        let bar_len = ((step.duration_s / total) * 40.0).ceil().max(1.0) as usize;
        rows.push(vec![
            step.name.to_string(),
            format!("{start:.4}"),
            format!("{:.4}", step.duration_s),
            format!("{:.1e}", step.n87_after),
            format!("{:.1e}", step.n85_after),
            "#".repeat(bar_len),
        ]);
        csv.push(vec![
            step.name.to_string(),
            format!("{start}"),
            format!("{}", step.duration_s),
            format!("{}", step.n87_after),
            format!("{}", step.n85_after),
            step.temperature_after_k
                .map(|t| format!("{t}"))
                .unwrap_or_default(),
            step.notes.to_string(),
        ]);
        start += step.duration_s;
    }
    let transport = raman_transport_check(1, &scenario.species_pair().0, 1.0);
    rows.push(vec![
        format!("total {total:.4} s (< 10 s budget)"),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        format!("chip distance {:.1} mm", transport.distance_m * 1e3),
    ]);
    emit(&rows, format);

    let path = out_dir.join("timeline.csv");
    write_csv(&path, &csv)?;
    report.outputs.push(path);
    Ok(report)
}
