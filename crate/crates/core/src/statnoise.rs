//! Per-cycle statistical noise terms of the differential-acceleration
//! measurement and their root-sum-square combination.

use crate::interferometer::{
    vibration_phase_variance, AccelerationSpectrum, InterferometerConfig, PulseTiming, Species,
    SuppressionSpec,
};
use crate::systematics::{
    zeeman_bias, Budget, CorrelationGroup, MeanFieldModel, RowCheck, SystematicsError,
};

/// One named per-cycle noise contribution.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseTerm {
    pub name: &'static str,
    /// Acceleration noise per cycle [m/s²].
    pub sigma_m_s2: f64,
    pub conditions: String,
    pub check: Option<RowCheck>,
}

impl NoiseTerm {
    pub fn deviation_frac(&self) -> Option<f64> {
        match self.check {
            Some(RowCheck::Within { reference_m_s2, .. }) => {
                Some((self.sigma_m_s2 - reference_m_s2) / reference_m_s2)
            }
            _ => None,
        }
    }

    pub fn within_tolerance(&self) -> bool {
        match self.check {
            Some(RowCheck::Within {
                reference_m_s2,
                frac,
            }) => ((self.sigma_m_s2 - reference_m_s2) / reference_m_s2).abs() <= frac,
            Some(RowCheck::AtMost { bound_m_s2 }) => self.sigma_m_s2 <= bound_m_s2,
            None => true,
        }
    }
}

/// Beam-splitter frequency-noise contribution per shot.
///
/// One of the two Raman beams reaches the atoms retro-reflected, delayed by
/// t_d; white frequency noise of a Lorentzian line of FWHM Γ then imprints a
/// phase jitter of variance 2πΓ·t_d per sample, averaged down over the pulse
/// duration and summed over the three pulses with weights (1, −2, 1):
/// σ_φ² = 6·2π·Γ·t_d²/τ, converted by 1/(kT²).
pub fn linewidth_noise(
    lorentzian_fwhm_hz: f64,
    pulse_duration_s: f64,
    retro_delay_s: f64,
    k: f64,
    free_evolution_s: f64,
) -> f64 {
    let phase_variance =
        6.0 * 2.0 * std::f64::consts::PI * lorentzian_fwhm_hz * retro_delay_s * retro_delay_s
            / pulse_duration_s;
    phase_variance.sqrt() / (k * free_evolution_s * free_evolution_s)
}

/// Per-cycle noise from a fluctuating bias: |∂bias/∂parameter| × fluctuation
/// amplitude.
pub fn fluctuating_bias_noise(bias_sensitivity: f64, fluctuation_amplitude: f64) -> f64 {
    (bias_sensitivity * fluctuation_amplitude).abs()
}

/// Mean-field noise from per-cycle fluctuations of the population ratio
/// around the nulling point.
pub fn mean_field_noise(
    model: &MeanFieldModel,
    splitting_accuracy: f64,
    ratio_sigma: f64,
) -> Result<f64, SystematicsError> {
    Ok(fluctuating_bias_noise(
        model.bias_slope_per_ratio(splitting_accuracy)?,
        ratio_sigma,
    ))
}

/// Magnetic-field noise from per-cycle fluctuations of the offset field
/// against the interferometry-region gradient; input-state reversal does not
/// relieve cycle-to-cycle noise, so the raw Zeeman slope applies.
pub fn magnetic_field_noise(
    pair: &(Species, Species),
    bias_field_g: f64,
    b0_fluctuation_fraction: f64,
    gradient_g_m: f64,
) -> Result<f64, SystematicsError> {
    zeeman_bias(
        b0_fluctuation_fraction * bias_field_g,
        gradient_g_m,
        pair,
        1.0,
    )
}

/// Overlap noise: a fractional per-cycle fluctuation of every
/// overlap-dependent bias line.
pub fn overlap_noise(budget: &Budget, fluctuation_fraction: f64) -> f64 {
    let overlap_sum: f64 = budget
        .terms
        .iter()
        .filter(|t| t.group == CorrelationGroup::Overlap)
        .map(|t| t.value_m_s2)
        .sum();
    fluctuation_fraction * overlap_sum
}

/// Residual differential acceleration noise of the platform vibration
/// spectrum after common-mode suppression, weighted by the pulse transfer
/// function.
pub fn vibration_noise_per_cycle(
    spectrum: &AccelerationSpectrum,
    suppression: &SuppressionSpec,
    k: f64,
    timing: &PulseTiming,
) -> f64 {
    let phase_rms = vibration_phase_variance(spectrum, k, timing).sqrt();
    let t = timing.free_evolution_s;
    suppression.suppression_ratio * phase_rms / (k * t * t)
}

/// Root-sum-square of the noise terms.
pub fn combine_noise(terms: &[NoiseTerm]) -> f64 {
    terms
        .iter()
        .map(|t| t.sigma_m_s2 * t.sigma_m_s2)
        .sum::<f64>()
        .sqrt()
}

/// Everything needed to evaluate the per-cycle noise table.
#[derive(Debug, Clone)]
pub struct NoiseInputs<'a> {
    pub config: &'a InterferometerConfig,
    /// Contrast at the published operating point.
    pub contrast: f64,
    pub suppression: &'a SuppressionSpec,
    pub vibration_spectrum: AccelerationSpectrum,
    pub laser_linewidth_hz: f64,
    pub retro_delay_s: f64,
    pub mean_field: &'a MeanFieldModel,
    pub splitting_accuracy: f64,
    pub ratio_fluctuation_sigma: f64,
    pub bias_field_g: f64,
    pub b0_fluctuation_fraction: f64,
    pub noise_gradient_g_m: f64,
    /// Bias budget whose overlap-dependent lines fluctuate per cycle.
    pub budget: &'a Budget,
    pub overlap_fluctuation_fraction: f64,
}

/// Evaluate the six per-cycle noise lines at the given conditions.
pub fn assemble_noise_table(inputs: &NoiseInputs) -> Result<Vec<NoiseTerm>, SystematicsError> {
    let cfg = inputs.config;
    let k = cfg.wavevector();
    let timing = cfg.timing();
    let mut terms = Vec::new();

    terms.push(NoiseTerm {
        name: "shot noise",
        sigma_m_s2: cfg.shot_noise_at(inputs.contrast),
        conditions: format!("{} atoms, C = {}", cfg.atoms_per_species, inputs.contrast),
        check: Some(RowCheck::Within {
            reference_m_s2: 2.93e-12,
            frac: 0.005,
        }),
    });
    terms.push(NoiseTerm {
        name: "linear vibrations",
        sigma_m_s2: vibration_noise_per_cycle(
            &inputs.vibration_spectrum,
            inputs.suppression,
            k,
            &timing,
        ),
        conditions: format!(
            "suppression ratio {:.2e}, calibrated white spectrum",
            inputs.suppression.suppression_ratio
        ),
        check: Some(RowCheck::Within {
            reference_m_s2: 1.0e-12,
            frac: 0.05,
        }),
    });
    terms.push(NoiseTerm {
        name: "beam-splitter linewidth",
        sigma_m_s2: linewidth_noise(
            inputs.laser_linewidth_hz,
            cfg.pulse_duration_s,
            inputs.retro_delay_s,
            k,
            cfg.free_evolution_s,
        ),
        conditions: format!(
            "linewidth {:.0} kHz over {:.0} µs pulses, retro delay {:.2} ns",
            inputs.laser_linewidth_hz / 1e3,
            cfg.pulse_duration_s * 1e6,
            inputs.retro_delay_s * 1e9
        ),
        check: Some(RowCheck::Within {
            reference_m_s2: 0.8e-12,
            frac: 0.02,
        }),
    });
    terms.push(NoiseTerm {
        name: "magnetic fields",
        sigma_m_s2: magnetic_field_noise(
            &cfg.species_pair,
            inputs.bias_field_g,
            inputs.b0_fluctuation_fraction,
            inputs.noise_gradient_g_m,
        )?,
        conditions: format!(
            "{:.0} % of B₀ = {:.0e} G per cycle against ∇B = {:.1e} G/m",
            inputs.b0_fluctuation_fraction * 100.0,
            inputs.bias_field_g,
            inputs.noise_gradient_g_m
        ),
        check: Some(RowCheck::Within {
            reference_m_s2: 0.11e-12,
            frac: 0.05,
        }),
    });
    terms.push(NoiseTerm {
        name: "mean field",
        sigma_m_s2: mean_field_noise(
            inputs.mean_field,
            inputs.splitting_accuracy,
            inputs.ratio_fluctuation_sigma,
        )?,
        conditions: format!(
            "splitting accuracy {:.0e}, ratio fluctuation σ = {:.3}",
            inputs.splitting_accuracy, inputs.ratio_fluctuation_sigma
        ),
        check: Some(RowCheck::Within {
            reference_m_s2: 0.3e-12,
            frac: 0.15,
        }),
    });
    terms.push(NoiseTerm {
        name: "overlap",
        sigma_m_s2: overlap_noise(inputs.budget, inputs.overlap_fluctuation_fraction),
        conditions: format!(
            "{:.0} % fluctuation of the overlap-dependent biases per cycle",
            inputs.overlap_fluctuation_fraction * 100.0
        ),
        check: Some(RowCheck::AtMost {
            bound_m_s2: 0.1e-12,
        }),
    });
    Ok(terms)
}

/// Noise table at the nominal operating point.
pub fn nominal_noise_table() -> Result<Vec<NoiseTerm>, SystematicsError> {
    let cfg = crate::nominal::interferometer_config();
    let sup = crate::nominal::suppression();
    let mf = crate::nominal::mean_field_model();
    let budget = crate::nominal::budget_at_700km()?;
    let (f_lo, f_hi) = crate::nominal::VIBRATION_BAND_HZ;
    assemble_noise_table(&NoiseInputs {
        config: &cfg,
        contrast: 0.6,
        suppression: &sup,
        vibration_spectrum: AccelerationSpectrum::BandLimitedWhite {
            rms_m_s2: crate::nominal::VIBRATION_RMS_M_S2,
            f_lo_hz: f_lo,
            f_hi_hz: f_hi,
        },
        laser_linewidth_hz: crate::nominal::LASER_LINEWIDTH_HZ,
        retro_delay_s: crate::nominal::RETRO_DELAY_S,
        mean_field: &mf,
        splitting_accuracy: 1e-3,
        ratio_fluctuation_sigma: crate::nominal::RATIO_FLUCTUATION_SIGMA,
        bias_field_g: 1e-3,
        b0_fluctuation_fraction: crate::nominal::B0_FLUCTUATION_FRACTION,
        noise_gradient_g_m: crate::nominal::NOISE_GRADIENT_G_M,
        budget: &budget,
        overlap_fluctuation_fraction: crate::nominal::OVERLAP_FLUCTUATION_FRACTION,
    })
}
