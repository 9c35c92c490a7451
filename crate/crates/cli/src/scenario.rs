//! Scenario configuration: a nested key-value document with explicit units
//! in the key names. Every omitted field falls back to the nominal mission
//! value; the shipped `scenarios/nominal.toml` lists them all with their
//! provenance.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use uffsim_core::geodesy::{Attitude, GravityModel, OrbitElements};
use uffsim_core::interferometer::{
    common_mode_suppression, DiffractionScheme, InterferometerConfig, Species, SuppressionSpec,
};
use uffsim_core::mission::{ContrastPolicy, MissionPlan, PerigeeProfile, SystematicsContext};
use uffsim_core::nominal;
use uffsim_core::systematics::{EnvironmentSpec, MeanFieldModel, OverlapState};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file: {0}")]
    Io(#[from] std::io::Error),
    #[error("scenario parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("scenario validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
}

/// Fully resolved scenario; every field is concrete.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub gravity: GravitySection,
    pub orbit: OrbitSection,
    pub attitude: AttitudeSection,
    pub interferometer: InterferometerSection,
    pub suppression: SuppressionSection,
    pub environment: EnvironmentSection,
    pub overlap: OverlapSection,
    pub mission: MissionSection,
    pub noise: NoiseSection,
    pub ellipse: EllipseSection,
    /// Master seed for every Monte-Carlo path.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GravitySection {
    pub mu_m3_s2: f64,
    pub earth_radius_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSection {
    pub period_s: f64,
    pub perigee_altitude_m: f64,
    pub inclination_rad: f64,
    pub raan_rad: f64,
    pub arg_perigee_rad: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttitudeSection {
    /// "inertial" (science) or "nadir" (calibration).
    pub mode: String,
    pub rotation_rate_rad_s: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterferometerSection {
    pub free_evolution_time_s: f64,
    pub cycle_time_s: f64,
    pub atoms_per_species: u64,
    pub initial_size_m: f64,
    pub expansion_rate_m_s: f64,
    pub pulse_duration_s: f64,
    pub wavelength_m: f64,
    /// "double" or "single".
    pub diffraction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuppressionSection {
    pub dk_over_k: f64,
    pub drabi_over_rabi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvironmentSection {
    pub bias_field_gauss: f64,
    pub field_gradient_gauss_m: f64,
    pub background_acceleration_m_s2: f64,
    pub mirror_curvature_m: f64,
    pub collimation_curvature_m: f64,
    pub com_distance_m: f64,
    pub self_gravity_bias_m_s2: f64,
    pub state_reversal_suppression: f64,
    pub beam_splitting_accuracy: f64,
    pub detection_imbalance: f64,
    pub dkc_temperature_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapSection {
    pub dx_m: f64,
    pub dy_m: f64,
    pub dz_m: f64,
    pub dvx_m_s: f64,
    pub dvy_m_s: f64,
    pub dvz_m_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissionSection {
    pub revolutions: u64,
    pub cycles_per_pass: u64,
    pub window_duration_s: f64,
    /// "sinusoidal", "constant", or "tabulated".
    pub perigee_profile: String,
    pub perigee_max_altitude_m: f64,
    /// One perigee altitude per revolution for the tabulated profile
    /// (reused cyclically when shorter than the mission) [m].
    pub perigee_altitudes_m: Vec<f64>,
    /// "perigee-reference" or "per-cycle".
    pub contrast_policy: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseSection {
    pub vibration_rms_m_s2: f64,
    pub vibration_band_lo_hz: f64,
    pub vibration_band_hi_hz: f64,
    pub laser_linewidth_hz: f64,
    pub retro_delay_s: f64,
    pub ratio_fluctuation_sigma: f64,
    pub b0_fluctuation_fraction: f64,
    pub noise_field_gradient_gauss_m: f64,
    pub overlap_fluctuation_fraction: f64,
    pub shot_noise_contrast: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipseSection {
    pub n_cycles: u64,
    pub differential_phase_rad: f64,
    pub common_noise_rms_rad: f64,
    pub contrast: f64,
    pub imbalance_epsilon: f64,
    pub repetitions: u64,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            gravity: GravitySection {
                mu_m3_s2: uffsim_core::constants::EARTH_MU,
                earth_radius_m: uffsim_core::constants::EARTH_RADIUS,
            },
            orbit: OrbitSection {
                period_s: nominal::ORBIT_PERIOD_S,
                perigee_altitude_m: nominal::PERIGEE_ALTITUDE_MIN_M,
                inclination_rad: 0.0,
                raan_rad: 0.0,
                arg_perigee_rad: 0.0,
            },
            attitude: AttitudeSection {
                mode: "inertial".into(),
                rotation_rate_rad_s: [
                    nominal::ROTATION_RATE_RAD_S,
                    nominal::ROTATION_RATE_RAD_S,
                    nominal::ROTATION_RATE_RAD_S,
                ],
            },
            interferometer: InterferometerSection {
                free_evolution_time_s: 5.0,
                cycle_time_s: 20.0,
                atoms_per_species: 1_000_000,
                initial_size_m: 300e-6,
                expansion_rate_m_s: 82e-6,
                pulse_duration_s: 100e-6,
                wavelength_m: 780e-9,
                diffraction: "double".into(),
            },
            suppression: SuppressionSection {
                dk_over_k: 1e-9,
                drabi_over_rabi: 1e-4,
            },
            environment: EnvironmentSection {
                bias_field_gauss: 1e-3,
                field_gradient_gauss_m: 1e-6,
                background_acceleration_m_s2: nominal::BACKGROUND_ACCELERATION_M_S2,
                mirror_curvature_m: nominal::MIRROR_CURVATURE_M,
                collimation_curvature_m: nominal::COLLIMATION_CURVATURE_M,
                com_distance_m: 2.0,
                self_gravity_bias_m_s2: 1e-15,
                state_reversal_suppression: nominal::STATE_REVERSAL_SUPPRESSION,
                beam_splitting_accuracy: 1e-3,
                detection_imbalance: 1.003,
                dkc_temperature_k: nominal::DKC_TEMPERATURE_K,
            },
            overlap: OverlapSection {
                dx_m: 1.1e-9,
                dy_m: 1.1e-9,
                dz_m: 1.1e-9,
                dvx_m_s: 3.1e-10,
                dvy_m_s: 3.1e-10,
                dvz_m_s: 3.1e-10,
            },
            mission: MissionSection {
                revolutions: nominal::MISSION_REVOLUTIONS as u64,
                cycles_per_pass: 90,
                window_duration_s: nominal::WINDOW_DURATION_S,
                perigee_profile: "sinusoidal".into(),
                perigee_max_altitude_m: nominal::PERIGEE_ALTITUDE_MAX_M,
                perigee_altitudes_m: Vec::new(),
                contrast_policy: "perigee-reference".into(),
            },
            noise: NoiseSection {
                vibration_rms_m_s2: nominal::VIBRATION_RMS_M_S2,
                vibration_band_lo_hz: nominal::VIBRATION_BAND_HZ.0,
                vibration_band_hi_hz: nominal::VIBRATION_BAND_HZ.1,
                laser_linewidth_hz: nominal::LASER_LINEWIDTH_HZ,
                retro_delay_s: nominal::RETRO_DELAY_S,
                ratio_fluctuation_sigma: nominal::RATIO_FLUCTUATION_SIGMA,
                b0_fluctuation_fraction: nominal::B0_FLUCTUATION_FRACTION,
                noise_field_gradient_gauss_m: nominal::NOISE_GRADIENT_G_M,
                overlap_fluctuation_fraction: nominal::OVERLAP_FLUCTUATION_FRACTION,
                shot_noise_contrast: 0.6,
            },
            ellipse: EllipseSection {
                n_cycles: 90,
                differential_phase_rad: std::f64::consts::FRAC_PI_2,
                common_noise_rms_rad: 30.0,
                contrast: 0.6,
                imbalance_epsilon: 1.0,
                repetitions: 1000,
            },
            seed: 20260810,
        }
    }
}

/// Serde view with every field optional; unset fields resolve to nominal.
#[derive(Debug, Default, Deserialize)]
struct RawScenario {
    #[serde(default)]
    gravity: RawTable,
    #[serde(default)]
    orbit: RawTable,
    #[serde(default)]
    attitude: RawTable,
    #[serde(default)]
    interferometer: RawTable,
    #[serde(default)]
    suppression: RawTable,
    #[serde(default)]
    environment: RawTable,
    #[serde(default)]
    overlap: RawTable,
    #[serde(default)]
    mission: RawTable,
    #[serde(default)]
    noise: RawTable,
    #[serde(default)]
    ellipse: RawTable,
    seed: Option<u64>,
}

type RawTable = toml::value::Table;

fn take_f64(
    table: &RawTable,
    section: &str,
    key: &str,
    default: f64,
    errors: &mut Vec<String>,
) -> f64 {
    match table.get(key) {
        None => default,
        Some(v) => match v.as_float().or_else(|| v.as_integer().map(|i| i as f64)) {
            Some(x) => x,
            None => {
                errors.push(format!("{section}.{key}: expected a number, got {v}"));
                default
            }
        },
    }
}

fn take_u64(
    table: &RawTable,
    section: &str,
    key: &str,
    default: u64,
    errors: &mut Vec<String>,
) -> u64 {
    match table.get(key) {
        None => default,
        Some(v) => match v.as_integer() {
            Some(x) if x >= 0 => x as u64,
            _ => {
                errors.push(format!(
                    "{section}.{key}: expected a non-negative integer, got {v}"
                ));
                default
            }
        },
    }
}

fn take_str(
    table: &RawTable,
    section: &str,
    key: &str,
    default: &str,
    errors: &mut Vec<String>,
) -> String {
    match table.get(key) {
        None => default.to_string(),
        Some(v) => match v.as_str() {
            Some(x) => x.to_string(),
            None => {
                errors.push(format!("{section}.{key}: expected a string, got {v}"));
                default.to_string()
            }
        },
    }
}

fn take_vec3(
    table: &RawTable,
    section: &str,
    key: &str,
    default: [f64; 3],
    errors: &mut Vec<String>,
) -> [f64; 3] {
    match table.get(key) {
        None => default,
        Some(v) => {
            let arr = v.as_array().and_then(|a| {
                if a.len() != 3 {
                    return None;
                }
                let mut out = [0.0; 3];
                for (i, item) in a.iter().enumerate() {
                    out[i] = item
                        .as_float()
                        .or_else(|| item.as_integer().map(|x| x as f64))?;
                }
                Some(out)
            });
            match arr {
                Some(x) => x,
                None => {
                    errors.push(format!("{section}.{key}: expected an array of 3 numbers"));
                    default
                }
            }
        }
    }
}

fn take_f64_array(
    table: &RawTable,
    section: &str,
    key: &str,
    errors: &mut Vec<String>,
) -> Vec<f64> {
    match table.get(key) {
        None => Vec::new(),
        Some(v) => {
            let parsed = v.as_array().and_then(|a| {
                a.iter()
                    .map(|item| {
                        item.as_float()
                            .or_else(|| item.as_integer().map(|x| x as f64))
                    })
                    .collect::<Option<Vec<f64>>>()
            });
            match parsed {
                Some(x) => x,
                None => {
                    errors.push(format!("{section}.{key}: expected an array of numbers"));
                    Vec::new()
                }
            }
        }
    }
}

/// Names known to each section, used for unknown-key warnings.
const SECTION_KEYS: &[(&str, &[&str])] = &[
    ("gravity", &["mu_m3_s2", "earth_radius_m"]),
    (
        "orbit",
        &[
            "period_s",
            "perigee_altitude_m",
            "inclination_rad",
            "raan_rad",
            "arg_perigee_rad",
        ],
    ),
    ("attitude", &["mode", "rotation_rate_rad_s"]),
    (
        "interferometer",
        &[
            "free_evolution_time_s",
            "cycle_time_s",
            "atoms_per_species",
            "initial_size_m",
            "expansion_rate_m_s",
            "pulse_duration_s",
            "wavelength_m",
            "diffraction",
        ],
    ),
    ("suppression", &["dk_over_k", "drabi_over_rabi"]),
    (
        "environment",
        &[
            "bias_field_gauss",
            "field_gradient_gauss_m",
            "background_acceleration_m_s2",
            "mirror_curvature_m",
            "collimation_curvature_m",
            "com_distance_m",
            "self_gravity_bias_m_s2",
            "state_reversal_suppression",
            "beam_splitting_accuracy",
            "detection_imbalance",
            "dkc_temperature_k",
        ],
    ),
    (
        "overlap",
        &["dx_m", "dy_m", "dz_m", "dvx_m_s", "dvy_m_s", "dvz_m_s"],
    ),
    (
        "mission",
        &[
            "revolutions",
            "cycles_per_pass",
            "window_duration_s",
            "perigee_profile",
            "perigee_max_altitude_m",
            "perigee_altitudes_m",
            "contrast_policy",
        ],
    ),
    (
        "noise",
        &[
            "vibration_rms_m_s2",
            "vibration_band_lo_hz",
            "vibration_band_hi_hz",
            "laser_linewidth_hz",
            "retro_delay_s",
            "ratio_fluctuation_sigma",
            "b0_fluctuation_fraction",
            "noise_field_gradient_gauss_m",
            "overlap_fluctuation_fraction",
            "shot_noise_contrast",
        ],
    ),
    (
        "ellipse",
        &[
            "n_cycles",
            "differential_phase_rad",
            "common_noise_rms_rad",
            "contrast",
            "imbalance_epsilon",
            "repetitions",
        ],
    ),
];

/// Load a scenario from TOML text; unknown keys are reported as warnings,
/// validation failures as errors.
pub fn load_scenario_str(text: &str) -> Result<(Scenario, Vec<String>), ScenarioError> {
    let value: toml::Value = toml::from_str(text)?;
    let mut warnings = Vec::new();
    if let Some(root) = value.as_table() {
        for (k, v) in root {
            match SECTION_KEYS.iter().find(|(name, _)| name == k) {
                None if k == "seed" => {}
                None => warnings.push(format!("unknown section [{k}] ignored")),
                Some((name, keys)) => {
                    if let Some(t) = v.as_table() {
                        for key in t.keys() {
                            if !keys.contains(&key.as_str()) {
                                warnings.push(format!("unknown key {name}.{key} ignored"));
                            }
                        }
                    }
                }
            }
        }
    }
    let raw: RawScenario = toml::from_str(text)?;
    let defaults = Scenario::default();
    let mut errors = Vec::new();

    let scenario = Scenario {
        gravity: GravitySection {
            mu_m3_s2: take_f64(
                &raw.gravity,
                "gravity",
                "mu_m3_s2",
                defaults.gravity.mu_m3_s2,
                &mut errors,
            ),
            earth_radius_m: take_f64(
                &raw.gravity,
                "gravity",
                "earth_radius_m",
                defaults.gravity.earth_radius_m,
                &mut errors,
            ),
        },
        orbit: OrbitSection {
            period_s: take_f64(
                &raw.orbit,
                "orbit",
                "period_s",
                defaults.orbit.period_s,
                &mut errors,
            ),
            perigee_altitude_m: take_f64(
                &raw.orbit,
                "orbit",
                "perigee_altitude_m",
                defaults.orbit.perigee_altitude_m,
                &mut errors,
            ),
            inclination_rad: take_f64(
                &raw.orbit,
                "orbit",
                "inclination_rad",
                defaults.orbit.inclination_rad,
                &mut errors,
            ),
            raan_rad: take_f64(
                &raw.orbit,
                "orbit",
                "raan_rad",
                defaults.orbit.raan_rad,
                &mut errors,
            ),
            arg_perigee_rad: take_f64(
                &raw.orbit,
                "orbit",
                "arg_perigee_rad",
                defaults.orbit.arg_perigee_rad,
                &mut errors,
            ),
        },
        attitude: AttitudeSection {
            mode: take_str(
                &raw.attitude,
                "attitude",
                "mode",
                &defaults.attitude.mode,
                &mut errors,
            ),
            rotation_rate_rad_s: take_vec3(
                &raw.attitude,
                "attitude",
                "rotation_rate_rad_s",
                defaults.attitude.rotation_rate_rad_s,
                &mut errors,
            ),
        },
        interferometer: InterferometerSection {
            free_evolution_time_s: take_f64(
                &raw.interferometer,
                "interferometer",
                "free_evolution_time_s",
                defaults.interferometer.free_evolution_time_s,
                &mut errors,
            ),
            cycle_time_s: take_f64(
                &raw.interferometer,
                "interferometer",
                "cycle_time_s",
                defaults.interferometer.cycle_time_s,
                &mut errors,
            ),
            atoms_per_species: take_u64(
                &raw.interferometer,
                "interferometer",
                "atoms_per_species",
                defaults.interferometer.atoms_per_species,
                &mut errors,
            ),
            initial_size_m: take_f64(
                &raw.interferometer,
                "interferometer",
                "initial_size_m",
                defaults.interferometer.initial_size_m,
                &mut errors,
            ),
            expansion_rate_m_s: take_f64(
                &raw.interferometer,
                "interferometer",
                "expansion_rate_m_s",
                defaults.interferometer.expansion_rate_m_s,
                &mut errors,
            ),
            pulse_duration_s: take_f64(
                &raw.interferometer,
                "interferometer",
                "pulse_duration_s",
                defaults.interferometer.pulse_duration_s,
                &mut errors,
            ),
            wavelength_m: take_f64(
                &raw.interferometer,
                "interferometer",
                "wavelength_m",
                defaults.interferometer.wavelength_m,
                &mut errors,
            ),
            diffraction: take_str(
                &raw.interferometer,
                "interferometer",
                "diffraction",
                &defaults.interferometer.diffraction,
                &mut errors,
            ),
        },
        suppression: SuppressionSection {
            dk_over_k: take_f64(
                &raw.suppression,
                "suppression",
                "dk_over_k",
                defaults.suppression.dk_over_k,
                &mut errors,
            ),
            drabi_over_rabi: take_f64(
                &raw.suppression,
                "suppression",
                "drabi_over_rabi",
                defaults.suppression.drabi_over_rabi,
                &mut errors,
            ),
        },
        environment: EnvironmentSection {
            bias_field_gauss: take_f64(
                &raw.environment,
                "environment",
                "bias_field_gauss",
                defaults.environment.bias_field_gauss,
                &mut errors,
            ),
            field_gradient_gauss_m: take_f64(
                &raw.environment,
                "environment",
                "field_gradient_gauss_m",
                defaults.environment.field_gradient_gauss_m,
                &mut errors,
            ),
            background_acceleration_m_s2: take_f64(
                &raw.environment,
                "environment",
                "background_acceleration_m_s2",
                defaults.environment.background_acceleration_m_s2,
                &mut errors,
            ),
            mirror_curvature_m: take_f64(
                &raw.environment,
                "environment",
                "mirror_curvature_m",
                defaults.environment.mirror_curvature_m,
                &mut errors,
            ),
            collimation_curvature_m: take_f64(
                &raw.environment,
                "environment",
                "collimation_curvature_m",
                defaults.environment.collimation_curvature_m,
                &mut errors,
            ),
            com_distance_m: take_f64(
                &raw.environment,
                "environment",
                "com_distance_m",
                defaults.environment.com_distance_m,
                &mut errors,
            ),
            self_gravity_bias_m_s2: take_f64(
                &raw.environment,
                "environment",
                "self_gravity_bias_m_s2",
                defaults.environment.self_gravity_bias_m_s2,
                &mut errors,
            ),
            state_reversal_suppression: take_f64(
                &raw.environment,
                "environment",
                "state_reversal_suppression",
                defaults.environment.state_reversal_suppression,
                &mut errors,
            ),
            beam_splitting_accuracy: take_f64(
                &raw.environment,
                "environment",
                "beam_splitting_accuracy",
                defaults.environment.beam_splitting_accuracy,
                &mut errors,
            ),
            detection_imbalance: take_f64(
                &raw.environment,
                "environment",
                "detection_imbalance",
                defaults.environment.detection_imbalance,
                &mut errors,
            ),
            dkc_temperature_k: take_f64(
                &raw.environment,
                "environment",
                "dkc_temperature_k",
                defaults.environment.dkc_temperature_k,
                &mut errors,
            ),
        },
        overlap: OverlapSection {
            dx_m: take_f64(
                &raw.overlap,
                "overlap",
                "dx_m",
                defaults.overlap.dx_m,
                &mut errors,
            ),
            dy_m: take_f64(
                &raw.overlap,
                "overlap",
                "dy_m",
                defaults.overlap.dy_m,
                &mut errors,
            ),
            dz_m: take_f64(
                &raw.overlap,
                "overlap",
                "dz_m",
                defaults.overlap.dz_m,
                &mut errors,
            ),
            dvx_m_s: take_f64(
                &raw.overlap,
                "overlap",
                "dvx_m_s",
                defaults.overlap.dvx_m_s,
                &mut errors,
            ),
            dvy_m_s: take_f64(
                &raw.overlap,
                "overlap",
                "dvy_m_s",
                defaults.overlap.dvy_m_s,
                &mut errors,
            ),
            dvz_m_s: take_f64(
                &raw.overlap,
                "overlap",
                "dvz_m_s",
                defaults.overlap.dvz_m_s,
                &mut errors,
            ),
        },
        mission: MissionSection {
            revolutions: take_u64(
                &raw.mission,
                "mission",
                "revolutions",
                defaults.mission.revolutions,
                &mut errors,
            ),
            cycles_per_pass: take_u64(
                &raw.mission,
                "mission",
                "cycles_per_pass",
                defaults.mission.cycles_per_pass,
                &mut errors,
            ),
            window_duration_s: take_f64(
                &raw.mission,
                "mission",
                "window_duration_s",
                defaults.mission.window_duration_s,
                &mut errors,
            ),
            perigee_profile: take_str(
                &raw.mission,
                "mission",
                "perigee_profile",
                &defaults.mission.perigee_profile,
                &mut errors,
            ),
            perigee_max_altitude_m: take_f64(
                &raw.mission,
                "mission",
                "perigee_max_altitude_m",
                defaults.mission.perigee_max_altitude_m,
                &mut errors,
            ),
            perigee_altitudes_m: take_f64_array(
                &raw.mission,
                "mission",
                "perigee_altitudes_m",
                &mut errors,
            ),
            contrast_policy: take_str(
                &raw.mission,
                "mission",
                "contrast_policy",
                &defaults.mission.contrast_policy,
                &mut errors,
            ),
        },
        noise: NoiseSection {
            vibration_rms_m_s2: take_f64(
                &raw.noise,
                "noise",
                "vibration_rms_m_s2",
                defaults.noise.vibration_rms_m_s2,
                &mut errors,
            ),
            vibration_band_lo_hz: take_f64(
                &raw.noise,
                "noise",
                "vibration_band_lo_hz",
                defaults.noise.vibration_band_lo_hz,
                &mut errors,
            ),
            vibration_band_hi_hz: take_f64(
                &raw.noise,
                "noise",
                "vibration_band_hi_hz",
                defaults.noise.vibration_band_hi_hz,
                &mut errors,
            ),
            laser_linewidth_hz: take_f64(
                &raw.noise,
                "noise",
                "laser_linewidth_hz",
                defaults.noise.laser_linewidth_hz,
                &mut errors,
            ),
            retro_delay_s: take_f64(
                &raw.noise,
                "noise",
                "retro_delay_s",
                defaults.noise.retro_delay_s,
                &mut errors,
            ),
            ratio_fluctuation_sigma: take_f64(
                &raw.noise,
                "noise",
                "ratio_fluctuation_sigma",
                defaults.noise.ratio_fluctuation_sigma,
                &mut errors,
            ),
            b0_fluctuation_fraction: take_f64(
                &raw.noise,
                "noise",
                "b0_fluctuation_fraction",
                defaults.noise.b0_fluctuation_fraction,
                &mut errors,
            ),
            noise_field_gradient_gauss_m: take_f64(
                &raw.noise,
                "noise",
                "noise_field_gradient_gauss_m",
                defaults.noise.noise_field_gradient_gauss_m,
                &mut errors,
            ),
            overlap_fluctuation_fraction: take_f64(
                &raw.noise,
                "noise",
                "overlap_fluctuation_fraction",
                defaults.noise.overlap_fluctuation_fraction,
                &mut errors,
            ),
            shot_noise_contrast: take_f64(
                &raw.noise,
                "noise",
                "shot_noise_contrast",
                defaults.noise.shot_noise_contrast,
                &mut errors,
            ),
        },
        ellipse: EllipseSection {
            n_cycles: take_u64(
                &raw.ellipse,
                "ellipse",
                "n_cycles",
                defaults.ellipse.n_cycles,
                &mut errors,
            ),
            differential_phase_rad: take_f64(
                &raw.ellipse,
                "ellipse",
                "differential_phase_rad",
                defaults.ellipse.differential_phase_rad,
                &mut errors,
            ),
            common_noise_rms_rad: take_f64(
                &raw.ellipse,
                "ellipse",
                "common_noise_rms_rad",
                defaults.ellipse.common_noise_rms_rad,
                &mut errors,
            ),
            contrast: take_f64(
                &raw.ellipse,
                "ellipse",
                "contrast",
                defaults.ellipse.contrast,
                &mut errors,
            ),
            imbalance_epsilon: take_f64(
                &raw.ellipse,
                "ellipse",
                "imbalance_epsilon",
                defaults.ellipse.imbalance_epsilon,
                &mut errors,
            ),
            repetitions: take_u64(
                &raw.ellipse,
                "ellipse",
                "repetitions",
                defaults.ellipse.repetitions,
                &mut errors,
            ),
        },
        seed: raw.seed.unwrap_or(defaults.seed),
    };

    errors.extend(scenario.validate());
    if !errors.is_empty() {
        return Err(ScenarioError::Validation(errors));
    }
    Ok((scenario, warnings))
}

pub fn load_scenario_file(
    path: &std::path::Path,
) -> Result<(Scenario, Vec<String>), ScenarioError> {
    let text = std::fs::read_to_string(path)?;
    load_scenario_str(&text)
}

impl Scenario {
    /// Field-by-field bound checks; returns violations naming the fields.
    pub fn validate(&self) -> Vec<String> {
        let mut errors = Vec::new();
        if self.orbit.period_s <= 0.0 {
            errors.push("orbit.period_s must be positive".into());
        }
        if self.orbit.perigee_altitude_m <= 0.0 {
            errors.push("orbit.perigee_altitude_m must be positive".into());
        }
        if !matches!(self.attitude.mode.as_str(), "inertial" | "nadir") {
            errors.push(format!(
                "attitude.mode must be \"inertial\" or \"nadir\", got \"{}\"",
                self.attitude.mode
            ));
        }
        if self.interferometer.free_evolution_time_s <= 0.0 {
            errors.push("interferometer.free_evolution_time_s must be positive".into());
        }
        if self.interferometer.wavelength_m <= 0.0 {
            errors.push("interferometer.wavelength_m must be positive".into());
        }
        if !matches!(
            self.interferometer.diffraction.as_str(),
            "double" | "single"
        ) {
            errors.push(format!(
                "interferometer.diffraction must be \"double\" or \"single\", got \"{}\"",
                self.interferometer.diffraction
            ));
        }
        for (name, v) in [
            ("suppression.dk_over_k", self.suppression.dk_over_k),
            (
                "suppression.drabi_over_rabi",
                self.suppression.drabi_over_rabi,
            ),
            (
                "environment.bias_field_gauss",
                self.environment.bias_field_gauss,
            ),
            (
                "environment.field_gradient_gauss_m",
                self.environment.field_gradient_gauss_m,
            ),
            (
                "environment.dkc_temperature_k",
                self.environment.dkc_temperature_k,
            ),
            ("noise.vibration_rms_m_s2", self.noise.vibration_rms_m_s2),
        ] {
            if v < 0.0 {
                errors.push(format!("{name} must be non-negative"));
            }
        }
        if self.environment.mirror_curvature_m <= 0.0 {
            errors.push("environment.mirror_curvature_m must be positive".into());
        }
        if !(0.0 < self.noise.shot_noise_contrast && self.noise.shot_noise_contrast <= 1.0) {
            errors.push("noise.shot_noise_contrast must be in (0, 1]".into());
        }
        if !(0.0 < self.ellipse.contrast && self.ellipse.contrast <= 1.0) {
            errors.push("ellipse.contrast must be in (0, 1]".into());
        }
        if self.ellipse.n_cycles < 5 {
            errors.push("ellipse.n_cycles must be at least 5".into());
        }
        if self.mission.revolutions < 1 {
            errors.push("mission.revolutions must be at least 1".into());
        }
        match self.mission.perigee_profile.as_str() {
            "sinusoidal" | "constant" => {}
            "tabulated" => {
                if self.mission.perigee_altitudes_m.is_empty() {
                    errors.push(
                        "mission.perigee_altitudes_m must be non-empty for the tabulated profile"
                            .into(),
                    );
                }
                if self.mission.perigee_altitudes_m.iter().any(|a| *a <= 0.0) {
                    errors.push("mission.perigee_altitudes_m entries must be positive".into());
                }
            }
            other => errors.push(format!(
                "mission.perigee_profile must be \"sinusoidal\", \"constant\", or \"tabulated\", got \"{other}\""
            )),
        }
        if !matches!(
            self.mission.contrast_policy.as_str(),
            "perigee-reference" | "per-cycle"
        ) {
            errors.push(format!(
                "mission.contrast_policy must be \"perigee-reference\" or \"per-cycle\", got \"{}\"",
                self.mission.contrast_policy
            ));
        }
        let expected_window =
            self.mission.cycles_per_pass as f64 * self.interferometer.cycle_time_s;
        if (self.mission.window_duration_s - expected_window).abs() > 1e-9 * expected_window {
            errors.push(format!(
                "mission.window_duration_s = {} must equal cycles_per_pass × cycle_time_s = {}",
                self.mission.window_duration_s, expected_window
            ));
        }
        errors.extend(
            self.interferometer_config()
                .validate()
                .into_iter()
                .map(|e| format!("interferometer: {e}")),
        );
        errors
    }

    pub fn gravity_model(&self) -> GravityModel {
        GravityModel {
            mu: self.gravity.mu_m3_s2,
            earth_radius: self.gravity.earth_radius_m,
        }
    }

    pub fn orbit_elements(&self) -> Result<OrbitElements, uffsim_core::geodesy::GeodesyError> {
        let mut el = uffsim_core::geodesy::elements_from_period_perigee(
            self.orbit.period_s,
            self.orbit.perigee_altitude_m,
            &self.gravity_model(),
        )?;
        el.inclination_rad = self.orbit.inclination_rad;
        el.raan_rad = self.orbit.raan_rad;
        el.arg_perigee_rad = self.orbit.arg_perigee_rad;
        Ok(el)
    }

    pub fn rotation_rate(&self) -> Vector3<f64> {
        Vector3::from(self.attitude.rotation_rate_rad_s)
    }

    pub fn attitude(&self, elements: &OrbitElements) -> Attitude {
        match self.attitude.mode.as_str() {
            "nadir" => Attitude::nadir(self.rotation_rate()),
            _ => Attitude::inertial_at_perigee(elements, self.rotation_rate()),
        }
    }

    pub fn species_pair(&self) -> (Species, Species) {
        let mut pair = nominal::species_pair();
        pair.0.wavelength_m = self.interferometer.wavelength_m;
        pair.1.wavelength_m = self.interferometer.wavelength_m;
        pair
    }

    pub fn interferometer_config(&self) -> InterferometerConfig {
        InterferometerConfig {
            species_pair: self.species_pair(),
            free_evolution_s: self.interferometer.free_evolution_time_s,
            cycle_time_s: self.interferometer.cycle_time_s,
            atoms_per_species: self.interferometer.atoms_per_species,
            initial_size_m: self.interferometer.initial_size_m,
            expansion_rate_m_s: self.interferometer.expansion_rate_m_s,
            pulse_duration_s: self.interferometer.pulse_duration_s,
            scheme: if self.interferometer.diffraction == "single" {
                DiffractionScheme::Single
            } else {
                DiffractionScheme::Double
            },
        }
    }

    pub fn suppression_spec(&self) -> SuppressionSpec {
        common_mode_suppression(self.suppression.dk_over_k, self.suppression.drabi_over_rabi)
    }

    pub fn environment_spec(&self) -> EnvironmentSpec {
        EnvironmentSpec {
            bias_field_g: self.environment.bias_field_gauss,
            field_gradient_g_m: self.environment.field_gradient_gauss_m,
            rotation_rate_rad_s: self.rotation_rate(),
            bias_acceleration_m_s2: self.environment.background_acceleration_m_s2,
            mirror_curvature_m: self.environment.mirror_curvature_m,
            collimation_curvature_m: self.environment.collimation_curvature_m,
            com_distance_m: self.environment.com_distance_m,
            self_gravity_bias_m_s2: self.environment.self_gravity_bias_m_s2,
            state_reversal_suppression: self.environment.state_reversal_suppression,
            beam_splitting_accuracy: self.environment.beam_splitting_accuracy,
            detection_imbalance: self.environment.detection_imbalance,
            dkc_temperature_k: self.environment.dkc_temperature_k,
        }
    }

    pub fn overlap_state(&self) -> OverlapState {
        OverlapState {
            dx_m: self.overlap.dx_m,
            dy_m: self.overlap.dy_m,
            dz_m: self.overlap.dz_m,
            dvx_m_s: self.overlap.dvx_m_s,
            dvy_m_s: self.overlap.dvy_m_s,
            dvz_m_s: self.overlap.dvz_m_s,
        }
    }

    pub fn mean_field_model(
        &self,
    ) -> Result<MeanFieldModel, uffsim_core::systematics::SystematicsError> {
        MeanFieldModel::calibrated(
            &self.species_pair(),
            uffsim_core::systematics::RB85_RB87_INTER_SCATTERING_A0,
            1e-3,
            self.environment.beam_splitting_accuracy,
            2e-15,
        )
    }

    pub fn systematics_context(
        &self,
    ) -> Result<SystematicsContext, uffsim_core::systematics::SystematicsError> {
        Ok(SystematicsContext {
            environment: self.environment_spec(),
            overlap: self.overlap_state(),
            mean_field: self.mean_field_model()?,
            suppression: self.suppression_spec(),
        })
    }

    pub fn mission_plan(&self) -> Result<MissionPlan, uffsim_core::systematics::SystematicsError> {
        let profile = match self.mission.perigee_profile.as_str() {
            "constant" => PerigeeProfile::Constant {
                altitude_m: self.orbit.perigee_altitude_m,
            },
            "tabulated" => PerigeeProfile::Tabulated(self.mission.perigee_altitudes_m.clone()),
            _ => PerigeeProfile::Sinusoidal {
                min_altitude_m: self.orbit.perigee_altitude_m,
                max_altitude_m: self.mission.perigee_max_altitude_m,
            },
        };
        Ok(MissionPlan {
            gravity: self.gravity_model(),
            period_s: self.orbit.period_s,
            revolutions: self.mission.revolutions as usize,
            cycles_per_pass: self.mission.cycles_per_pass as usize,
            window_duration_s: self.mission.window_duration_s,
            profile,
            interferometer: self.interferometer_config(),
            rotation_rate_rad_s: self.rotation_rate(),
            contrast_policy: if self.mission.contrast_policy == "per-cycle" {
                ContrastPolicy::PerCycle
            } else {
                ContrastPolicy::PerigeeReference
            },
            systematics: Some(self.systematics_context()?),
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("scenario serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_the_nominal_scenario() {
        let (s, warnings) = load_scenario_str("").unwrap();
        assert_eq!(s, Scenario::default());
        assert!(warnings.is_empty());
    }

    #[test]
    fn override_keeps_other_defaults() {
        let (s, _) = load_scenario_str("[orbit]\nperigee_altitude_m = 2.2e6\n").unwrap();
        assert_eq!(s.orbit.perigee_altitude_m, 2.2e6);
        assert_eq!(s.orbit.period_s, Scenario::default().orbit.period_s);
        assert_eq!(s.interferometer.free_evolution_time_s, 5.0);
    }

    #[test]
    fn negative_free_evolution_names_the_field() {
        let err = load_scenario_str("[interferometer]\nfree_evolution_time_s = -1.0\n[mission]\nwindow_duration_s = 1800.0\n")
            .unwrap_err();
        let ScenarioError::Validation(errors) = err else {
            panic!("expected validation error, got {err}")
        };
        assert!(errors.iter().any(|e| e.contains("free_evolution_time_s")));
    }

    #[test]
    fn unknown_keys_warn_but_load() {
        let (s, warnings) =
            load_scenario_str("[orbit]\nperiod_s = 57600.0\nbogus_key = 1\n[nonsense]\nx = 2\n")
                .unwrap();
        assert_eq!(s.orbit.period_s, 57600.0);
        assert_eq!(warnings.len(), 2);
        assert!(warnings[0].contains("bogus_key") || warnings[1].contains("bogus_key"));
    }

    #[test]
    fn parse_error_carries_position() {
        let err = load_scenario_str("[orbit\nperiod_s = 1").unwrap_err();
        assert!(matches!(err, ScenarioError::Parse(_)));
        assert!(err.to_string().contains("line"));
    }

    #[test]
    fn tabulated_profile_loads_and_requires_altitudes() {
        let (s, _) = load_scenario_str(
            "[mission]\nperigee_profile = \"tabulated\"\nperigee_altitudes_m = [700e3, 1200e3, 2200e3]\n",
        )
        .unwrap();
        assert_eq!(s.mission.perigee_altitudes_m.len(), 3);
        let plan = s.mission_plan().unwrap();
        assert!(matches!(
            plan.profile,
            uffsim_core::mission::PerigeeProfile::Tabulated(_)
        ));
        assert_eq!(plan.profile.altitude_at(4, 625), 1200e3); // cyclic reuse

        let err = load_scenario_str("[mission]\nperigee_profile = \"tabulated\"\n").unwrap_err();
        let ScenarioError::Validation(errors) = err else {
            panic!("expected validation error")
        };
        assert!(errors.iter().any(|e| e.contains("perigee_altitudes_m")));
    }

    #[test]
    fn roundtrip_is_idempotent() {
        let (s, _) =
            load_scenario_str("[orbit]\nperigee_altitude_m = 1.5e6\n[mission]\nrevolutions = 10\n")
                .unwrap();
        let text = s.to_toml();
        let (s2, warnings) = load_scenario_str(&text).unwrap();
        assert!(warnings.is_empty(), "roundtrip warnings: {warnings:?}");
        assert_eq!(s, s2);
        // fixed point after one trip
        assert_eq!(s2.to_toml(), text);
    }

    #[test]
    fn section_key_lists_match_the_serialized_schema() {
        // keep the unknown-key schema in lock-step with the struct fields
        let text = Scenario::default().to_toml();
        let value: toml::Value = toml::from_str(&text).unwrap();
        let root = value.as_table().unwrap();
        for (section, keys) in SECTION_KEYS {
            let table = root
                .get(*section)
                .and_then(|v| v.as_table())
                .unwrap_or_else(|| panic!("section {section} missing from serialization"));
            let mut serialized: Vec<&str> = table.keys().map(|s| s.as_str()).collect();
            serialized.sort_unstable();
            let mut listed: Vec<&str> = keys.to_vec();
            listed.sort_unstable();
            assert_eq!(serialized, listed, "schema drift in section {section}");
        }
    }
}
