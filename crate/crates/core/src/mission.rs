//! Mission integration: per-cycle sensitivities across each perigee science
//! window, inverse-variance accumulation over revolutions, and the
//! systematic Eötvös-error profile across the measurement arc.

use crate::geodesy::{
    elements_from_period_perigee, project_onto_axis, propagate, Attitude, GeodesyError,
    GravityModel,
};
use crate::interferometer::InterferometerConfig;
use crate::interferometer::SuppressionSpec;
use crate::systematics::{
    assemble_budget, combine_budget, BudgetInputs, EnvironmentSpec, MeanFieldModel, OverlapState,
    SystematicsError,
};
use nalgebra::Vector3;
use thiserror::Error;

/// Perigee-altitude evolution over the mission.
#[derive(Debug, Clone, PartialEq)]
pub enum PerigeeProfile {
    Constant {
        altitude_m: f64,
    },
    /// Symmetric drift min → max → min over the full set of revolutions.
    Sinusoidal {
        min_altitude_m: f64,
        max_altitude_m: f64,
    },
    /// One altitude per revolution; reused cyclically if shorter than the
    /// mission.
    Tabulated(Vec<f64>),
}

impl PerigeeProfile {
    pub fn altitude_at(&self, revolution: usize, total_revolutions: usize) -> f64 {
        match self {
            PerigeeProfile::Constant { altitude_m } => *altitude_m,
            PerigeeProfile::Sinusoidal {
                min_altitude_m,
                max_altitude_m,
            } => {
                let phase = 2.0 * std::f64::consts::PI * revolution as f64
                    / total_revolutions.max(1) as f64;
                min_altitude_m + 0.5 * (max_altitude_m - min_altitude_m) * (1.0 - phase.cos())
            }
            PerigeeProfile::Tabulated(table) => table[revolution % table.len()],
        }
    }
}

/// How the contrast entering the per-cycle shot noise is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContrastPolicy {
    /// Contrast fixed at its perigee value for the whole pass. The
    /// conservative choice that reproduces the published per-revolution
    /// integration: the contrast recovery at the window edges is not
    /// credited where the gravity projection collapses.
    PerigeeReference,
    /// Contrast recomputed from the projected gradient every cycle.
    PerCycle,
}

/// Systematic-budget context evaluated along the pass.
#[derive(Debug, Clone)]
pub struct SystematicsContext {
    pub environment: EnvironmentSpec,
    pub overlap: OverlapState,
    pub mean_field: MeanFieldModel,
    pub suppression: SuppressionSpec,
}

/// Full mission description.
#[derive(Debug, Clone)]
pub struct MissionPlan {
    pub gravity: GravityModel,
    pub period_s: f64,
    pub revolutions: usize,
    pub cycles_per_pass: usize,
    pub window_duration_s: f64,
    pub profile: PerigeeProfile,
    pub interferometer: InterferometerConfig,
    pub rotation_rate_rad_s: Vector3<f64>,
    pub contrast_policy: ContrastPolicy,
    /// When present, the pass results carry the systematic η error as well.
    pub systematics: Option<SystematicsContext>,
}

impl MissionPlan {
    /// Consistency checks between the window, the cycle time, and the
    /// revolution count.
    pub fn validate(&self) -> Result<(), MissionError> {
        let expected = self.cycles_per_pass as f64 * self.interferometer.cycle_time_s;
        if (self.window_duration_s - expected).abs() > 1e-9 * expected.max(1.0) {
            return Err(MissionError::InvalidPlan(format!(
                "window duration {} s does not equal cycles_per_pass × Tc = {} s",
                self.window_duration_s, expected
            )));
        }
        if self.revolutions < 1 {
            return Err(MissionError::InvalidPlan("revolutions must be ≥ 1".into()));
        }
        if self.window_duration_s > self.period_s {
            return Err(MissionError::InvalidPlan(
                "science window longer than the orbital period".into(),
            ));
        }
        Ok(())
    }
}

/// Per-cycle records and the integrated sensitivity of one perigee pass.
#[derive(Debug, Clone)]
pub struct PassResult {
    pub revolution: usize,
    pub perigee_altitude_m: f64,
    /// Mid-cycle epochs relative to perigee [s].
    pub times_s: Vec<f64>,
    pub g_proj: Vec<f64>,
    pub tzz_proj: Vec<f64>,
    /// Contrast used for the per-cycle shot noise (policy-dependent).
    pub contrast: Vec<f64>,
    /// Per-cycle differential-acceleration sensitivity [m/s²].
    pub sigma_acc: Vec<f64>,
    /// Per-cycle Eötvös sensitivity.
    pub sigma_eta: Vec<f64>,
    /// Inverse-variance combined Eötvös sensitivity of the pass.
    pub pass_sigma_eta: f64,
    /// Systematic Eötvös error at mid-pass, when the plan carries a
    /// systematics context.
    pub pass_bias_eta: Option<f64>,
    /// Cycles skipped because the gravity projection vanished.
    pub degenerate_cycles: Vec<usize>,
}

/// Systematic η error at one point of the arc.
#[derive(Debug, Clone, Copy)]
pub struct EtaPoint {
    pub time_s: f64,
    pub g_proj: f64,
    pub tzz_proj: f64,
    pub total_bias_m_s2: f64,
    pub eta_error: f64,
}

/// Mission accumulation over revolutions.
#[derive(Debug, Clone)]
pub struct MissionResult {
    pub per_revolution: Vec<RevolutionRecord>,
    /// Mission-integrated Eötvös sensitivity.
    pub sigma_eta: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RevolutionRecord {
    pub revolution: usize,
    pub perigee_altitude_m: f64,
    pub pass_sigma_eta: f64,
    pub cumulative_sigma_eta: f64,
}

/// Schedule annotation for the non-science part of each revolution; the
/// apogee activities are bookkeeping only, no calibration physics is
/// simulated beyond the self-gravity subtraction carried in the budget.
pub const APOGEE_ACTIVITY_NOTE: &str = "apogee phase: nadir pointing; overlap imaging and \
     instrument-parameter verification; self-gravity calibration feeding the bias budget";

#[derive(Debug, Error)]
pub enum MissionError {
    #[error("invalid mission plan: {0}")]
    InvalidPlan(String),
    #[error(transparent)]
    Geodesy(#[from] GeodesyError),
    #[error(transparent)]
    Systematics(#[from] SystematicsError),
    #[error("every cycle of the pass has a degenerate geometry")]
    AllCyclesDegenerate,
    #[error("the mission plan carries no systematics context")]
    MissingSystematics,
}

/// Inverse-variance combination σ = (Σ σᵢ⁻²)^(−1/2).
pub fn accumulate_inverse_variance(sigmas: &[f64]) -> f64 {
    let inv: f64 = sigmas
        .iter()
        .filter(|s| s.is_finite() && **s > 0.0)
        .map(|s| 1.0 / (s * s))
        .sum();
    if inv == 0.0 {
        f64::INFINITY
    } else {
        inv.sqrt().recip()
    }
}

/// Simulate one 0.5 h science window centred on perigee.
pub fn simulate_pass(plan: &MissionPlan, revolution: usize) -> Result<PassResult, MissionError> {
    plan.validate()?;
    let altitude = plan.profile.altitude_at(revolution, plan.revolutions);
    let elements = elements_from_period_perigee(plan.period_s, altitude, &plan.gravity)?;
    let attitude = Attitude::inertial_at_perigee(&elements, plan.rotation_rate_rad_s);
    let cfg = &plan.interferometer;

    // contrast reference at the perigee gradient
    let perigee_state = propagate(&elements, 0.0, &plan.gravity)?;
    let (g_mid, tzz_mid) = project_onto_axis(&perigee_state, &attitude, &plan.gravity);
    let contrast_ref = cfg.contrast_at(tzz_mid);

    let n = plan.cycles_per_pass;
    let mut result = PassResult {
        revolution,
        perigee_altitude_m: altitude,
        times_s: Vec::with_capacity(n),
        g_proj: Vec::with_capacity(n),
        tzz_proj: Vec::with_capacity(n),
        contrast: Vec::with_capacity(n),
        sigma_acc: Vec::with_capacity(n),
        sigma_eta: Vec::with_capacity(n),
        pass_sigma_eta: f64::INFINITY,
        pass_bias_eta: None,
        degenerate_cycles: Vec::new(),
    };

    for i in 0..n {
        // mid-cycle epoch: T = 5 s is far below the orbital timescale, so one
        // projection per cycle is enough
        let t = -0.5 * plan.window_duration_s + (i as f64 + 0.5) * cfg.cycle_time_s;
        let state = propagate(&elements, t, &plan.gravity)?;
        let (g_proj, tzz_proj) = project_onto_axis(&state, &attitude, &plan.gravity);
        let contrast = match plan.contrast_policy {
            ContrastPolicy::PerigeeReference => contrast_ref,
            ContrastPolicy::PerCycle => cfg.contrast_at(tzz_proj),
        };
        let sigma_acc = cfg.shot_noise_at(contrast);
        result.times_s.push(t);
        result.g_proj.push(g_proj);
        result.tzz_proj.push(tzz_proj);
        result.contrast.push(contrast);
        result.sigma_acc.push(sigma_acc);
        if g_proj <= 0.0 {
            result.degenerate_cycles.push(i);
            result.sigma_eta.push(f64::INFINITY);
        } else {
            result.sigma_eta.push(sigma_acc / g_proj);
        }
    }
    if result.degenerate_cycles.len() == n {
        return Err(MissionError::AllCyclesDegenerate);
    }
    result.pass_sigma_eta = accumulate_inverse_variance(&result.sigma_eta);

    if let Some(ctx) = &plan.systematics {
        let budget = assemble_budget(&BudgetInputs {
            tzz_proj: tzz_mid,
            free_evolution_s: cfg.free_evolution_s,
            overlap: &ctx.overlap,
            environment: &ctx.environment,
            species_pair: &cfg.species_pair,
            suppression: &ctx.suppression,
            mean_field: &ctx.mean_field,
        })?;
        result.pass_bias_eta = Some(crate::systematics::eotvos_from_bias(
            combine_budget(&budget),
            g_mid,
        )?);
    }
    Ok(result)
}

/// Accumulate the whole mission by inverse variance over the revolutions.
pub fn simulate_mission(plan: &MissionPlan) -> Result<MissionResult, MissionError> {
    plan.validate()?;
    let mut per_revolution = Vec::with_capacity(plan.revolutions);
    let mut inv_sum = 0.0;
    for rev in 0..plan.revolutions {
        let pass = simulate_pass(plan, rev)?;
        inv_sum += 1.0 / (pass.pass_sigma_eta * pass.pass_sigma_eta);
        per_revolution.push(RevolutionRecord {
            revolution: rev,
            perigee_altitude_m: pass.perigee_altitude_m,
            pass_sigma_eta: pass.pass_sigma_eta,
            cumulative_sigma_eta: inv_sum.sqrt().recip(),
        });
    }
    Ok(MissionResult {
        sigma_eta: inv_sum.sqrt().recip(),
        per_revolution,
    })
}

/// Systematic η-error profile across the science window: the full bias
/// budget divided by the gravity projection, cycle by cycle. Minimal near
/// perigee, growing toward the window edges as the projection falls.
pub fn pass_edge_eta_uncertainty(
    plan: &MissionPlan,
    revolution: usize,
) -> Result<Vec<EtaPoint>, MissionError> {
    plan.validate()?;
    let ctx = plan
        .systematics
        .as_ref()
        .ok_or(MissionError::MissingSystematics)?;
    let altitude = plan.profile.altitude_at(revolution, plan.revolutions);
    let elements = elements_from_period_perigee(plan.period_s, altitude, &plan.gravity)?;
    let attitude = Attitude::inertial_at_perigee(&elements, plan.rotation_rate_rad_s);
    let cfg = &plan.interferometer;

    let mut points = Vec::with_capacity(plan.cycles_per_pass);
    for i in 0..plan.cycles_per_pass {
        let t = -0.5 * plan.window_duration_s + (i as f64 + 0.5) * cfg.cycle_time_s;
        let state = propagate(&elements, t, &plan.gravity)?;
        let (g_proj, tzz_proj) = project_onto_axis(&state, &attitude, &plan.gravity);
        let budget = assemble_budget(&BudgetInputs {
            tzz_proj,
            free_evolution_s: cfg.free_evolution_s,
            overlap: &ctx.overlap,
            environment: &ctx.environment,
            species_pair: &cfg.species_pair,
            suppression: &ctx.suppression,
            mean_field: &ctx.mean_field,
        })?;
        let total = combine_budget(&budget);
        let eta_error = crate::systematics::eotvos_from_bias(total, g_proj)?;
        points.push(EtaPoint {
            time_s: t,
            g_proj,
            tzz_proj,
            total_bias_m_s2: total,
            eta_error,
        });
    }
    Ok(points)
}
