//! Dual-species double-diffraction Mach-Zehnder interferometer model:
//! scale factor, gradient-limited contrast, quantum-projection noise,
//! the three-pulse sensitivity/transfer function, and common-mode
//! suppression of platform accelerations.

use crate::constants::BOHR_MAGNETON_HZ_PER_GAUSS;
use crate::numeric::{integrate_log, sin_over, versin_over};

/// Atomic species entering one arm of the dual interferometer.
#[derive(Debug, Clone, PartialEq)]
pub struct Species {
    pub name: &'static str,
    pub mass_kg: f64,
    /// Beam-splitter light wavelength [m].
    pub wavelength_m: f64,
    pub hyperfine_splitting_hz: f64,
    /// Second-order Zeeman coefficient of the m_F = 0 clock transition
    /// [Hz/G²]; `None` when the species data does not carry one.
    pub quadratic_zeeman_hz_per_g2: Option<f64>,
    /// Intra-species s-wave scattering length during interferometry [Bohr radii].
    pub scattering_length_intra_a0: f64,
}

/// Second-order (Breit-Rabi) coefficient of the clock-transition shift,
/// ((g_J − g_I) µ_B)² / (2 h² ν_hfs), in Hz/G².
pub fn clock_zeeman_coefficient(g_j: f64, g_i: f64, hyperfine_hz: f64) -> f64 {
    let linear = (g_j - g_i) * BOHR_MAGNETON_HZ_PER_GAUSS; // Hz/G
    linear * linear / (2.0 * hyperfine_hz)
}

impl Species {
    pub fn rubidium_87() -> Self {
        let hyperfine = 6.83468261090429e9;
        Species {
            name: "Rb-87",
            mass_kg: 86.909180527 * crate::constants::ATOMIC_MASS_UNIT,
            wavelength_m: 780e-9,
            hyperfine_splitting_hz: hyperfine,
            quadratic_zeeman_hz_per_g2: Some(clock_zeeman_coefficient(
                2.00233113,
                -0.0009951414,
                hyperfine,
            )),
            scattering_length_intra_a0: 98.98,
        }
    }

    pub fn rubidium_85() -> Self {
        let hyperfine = 3.0357324390e9;
        Species {
            name: "Rb-85",
            mass_kg: 84.911789738 * crate::constants::ATOMIC_MASS_UNIT,
            wavelength_m: 780e-9,
            hyperfine_splitting_hz: hyperfine,
            quadratic_zeeman_hz_per_g2: Some(clock_zeeman_coefficient(
                2.00233113,
                -0.00029364,
                hyperfine,
            )),
            // Free-space value once the tuning field is off.
            scattering_length_intra_a0: -443.0,
        }
    }
}

/// Beam-splitting geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffractionScheme {
    /// Symmetric ±2ħk_s splitting: effective momentum separation 4ħk_s.
    Double,
    /// Conventional two-photon splitting: 2ħk_s.
    Single,
}

/// Effective wavevector of the beam splitter [1/m]:
/// 8π/λ in double diffraction, 4π/λ in single diffraction.
pub fn effective_wavevector(species: &Species, scheme: DiffractionScheme) -> f64 {
    let base = 4.0 * std::f64::consts::PI / species.wavelength_m;
    match scheme {
        DiffractionScheme::Double => 2.0 * base,
        DiffractionScheme::Single => base,
    }
}

/// Leading-order interferometer phase φ = k·a·T² [rad].
pub fn acceleration_phase(k: f64, a_proj_m_s2: f64, free_evolution_s: f64) -> f64 {
    k * a_proj_m_s2 * free_evolution_s * free_evolution_s
}

/// Gradient-dephasing contrast
/// C = exp(−(k w_r T_gg T²)²/2) · exp(−(k w_v T_gg T³)²/2).
///
/// `tzz_proj` is the gravity-gradient projection on the sensitive axis; only
/// its magnitude matters.
pub fn contrast(k: f64, w_r_m: f64, w_v_m_s: f64, tzz_proj: f64, free_evolution_s: f64) -> f64 {
    let t2 = free_evolution_s * free_evolution_s;
    let pos = k * w_r_m * tzz_proj * t2;
    let vel = k * w_v_m_s * tzz_proj * t2 * free_evolution_s;
    (-0.5 * (pos * pos + vel * vel)).exp()
}

/// Quantum-projection-noise-limited acceleration sensitivity per cycle,
/// σ_Δa = √(2/N) / (C k T²) [m/s² per cycle].
pub fn shot_noise_per_cycle(atoms: u64, contrast: f64, k: f64, free_evolution_s: f64) -> f64 {
    (2.0 / atoms as f64).sqrt() / (contrast * k * free_evolution_s * free_evolution_s)
}

/// Pulse timing of the π/2 – π – π/2 sequence.
///
/// The π pulse lasts 2τ and is centred at t = 0; the π/2 pulses last τ each,
/// separated from it by the free-evolution time T. Rabi frequency and pulse
/// duration satisfy Ω_R τ = π/2 for the calibrated sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseTiming {
    pub free_evolution_s: f64,
    pub pulse_duration_s: f64,
    pub rabi_frequency_rad_s: f64,
}

impl PulseTiming {
    /// Calibrated Mach-Zehnder timing: Ω_R = π/(2τ).
    pub fn mach_zehnder(free_evolution_s: f64, pulse_duration_s: f64) -> Self {
        PulseTiming {
            free_evolution_s,
            pulse_duration_s,
            rabi_frequency_rad_s: std::f64::consts::FRAC_PI_2 / pulse_duration_s,
        }
    }

    /// Half-span of the pulse sequence, T + 2τ.
    pub fn half_span_s(&self) -> f64 {
        self.free_evolution_s + 2.0 * self.pulse_duration_s
    }
}

/// Three-pulse sensitivity function g(t).
///
/// Antisymmetric about the centre of the π pulse, +1 on the first
/// free-evolution plateau, −1 on the second, sinusoidal ramps of duration τ
/// during the pulses, zero outside the sequence. Its integral over the full
/// sequence vanishes.
pub fn sensitivity_function(t: f64, timing: &PulseTiming) -> f64 {
    let tau = timing.pulse_duration_s;
    let big_t = timing.free_evolution_s;
    let omega = timing.rabi_frequency_rad_s;
    let u = t.abs();
    let v = if u <= tau {
        (omega * u).sin()
    } else if u <= big_t + tau {
        1.0
    } else if u <= big_t + 2.0 * tau {
        (omega * (u - big_t - tau)).cos()
    } else {
        0.0
    };
    -t.signum() * v
}

/// Quasi-static scale factor ∫ g(t)·t dt [s²]: the phase per unit
/// acceleration divided by k. Equals (T+2τ)(T+4τ/π) for the calibrated
/// sequence and reduces to T² as τ → 0.
pub fn scale_factor(timing: &PulseTiming) -> f64 {
    let tau = timing.pulse_duration_s;
    let big_t = timing.free_evolution_s;
    let om = timing.rabi_frequency_rad_s;
    let (sin_ot, cos_ot) = (om * tau).sin_cos();
    // ∫₀^τ sin(Ωt)·t dt
    let ramp_up = sin_ot / (om * om) - tau * cos_ot / om;
    // ∫_τ^{T+τ} t dt
    let plateau = ((big_t + tau).powi(2) - tau * tau) / 2.0;
    // ∫₀^τ cos(Ωu)·(u + T + τ) du
    let ramp_down = (cos_ot - 1.0) / (om * om) + (big_t + 2.0 * tau) * sin_ot / om;
    2.0 * (ramp_up + plateau + ramp_down)
}

/// Fourier sine moment ∫₀^{T+2τ} g(t) sin(ωt) dt of the positive half of the
/// sequence, evaluated piecewise in closed form.
fn sine_moment(omega: f64, timing: &PulseTiming) -> f64 {
    let tau = timing.pulse_duration_s;
    let big_t = timing.free_evolution_s;
    let om_r = timing.rabi_frequency_rad_s;
    let end1 = big_t + tau;

    // ∫₀^τ sin(Ω t) sin(ω t) dt
    let i1 = 0.5 * (sin_over(om_r - omega, tau) - sin_over(om_r + omega, tau));
    // ∫_τ^{T+τ} sin(ω t) dt
    let i2 = versin_over(omega, end1) - versin_over(omega, tau);
    // ∫₀^τ cos(Ω u) sin(ω(u + T + τ)) du
    let j1 = 0.5 * (versin_over(omega + om_r, tau) + versin_over(omega - om_r, tau));
    let j2 = 0.5 * (sin_over(omega + om_r, tau) + sin_over(omega - om_r, tau));
    let (sin_e, cos_e) = (omega * end1).sin_cos();
    let i3 = cos_e * j1 + sin_e * j2;

    -(i1 + i2 + i3)
}

/// Magnitude of the acceleration transfer weight |W(ω)| [s²]: the response
/// of the interferometer phase to a unit acceleration at angular frequency
/// ω is k·|W(ω)|. |W| → scale factor as ω → 0 and has zeros near ω = 2πn/T.
pub fn transfer_magnitude(omega: f64, timing: &PulseTiming) -> f64 {
    if omega * timing.half_span_s() < 1e-4 {
        return scale_factor(timing);
    }
    2.0 * sine_moment(omega, timing).abs() / omega
}

/// One-sided acceleration power spectral density [m²s⁻⁴/Hz] seen by the
/// instrument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AccelerationSpectrum {
    /// Flat PSD between the band edges, with the given total RMS.
    BandLimitedWhite {
        rms_m_s2: f64,
        f_lo_hz: f64,
        f_hi_hz: f64,
    },
    /// Sinusoidal tone of the given amplitude at a single frequency,
    /// random phase.
    Tone {
        amplitude_m_s2: f64,
        frequency_hz: f64,
    },
}

/// Phase variance σ_φ² = k² ∫ |W(2πf)|² S_a(f) df [rad²] accumulated from an
/// acceleration spectrum through the pulse sequence.
pub fn vibration_phase_variance(
    spectrum: &AccelerationSpectrum,
    k: f64,
    timing: &PulseTiming,
) -> f64 {
    match *spectrum {
        AccelerationSpectrum::Tone {
            amplitude_m_s2,
            frequency_hz,
        } => {
            let w = transfer_magnitude(2.0 * std::f64::consts::PI * frequency_hz, timing);
            0.5 * (k * w * amplitude_m_s2).powi(2)
        }
        AccelerationSpectrum::BandLimitedWhite {
            rms_m_s2,
            f_lo_hz,
            f_hi_hz,
        } => {
            let psd = rms_m_s2 * rms_m_s2 / (f_hi_hz - f_lo_hz);
            k * k * psd * vibration_psd_integral(|_| 1.0, f_lo_hz, f_hi_hz, timing)
        }
    }
}

/// ∫ |W(2πf)|² S(f) df for an arbitrary PSD shape over [f_lo, f_hi],
/// log-spaced quadrature with relative tolerance 1e-6.
pub fn vibration_psd_integral<F: Fn(f64) -> f64>(
    psd_shape: F,
    f_lo_hz: f64,
    f_hi_hz: f64,
    timing: &PulseTiming,
) -> f64 {
    integrate_log(
        |f| {
            let w = transfer_magnitude(2.0 * std::f64::consts::PI * f, timing);
            w * w * psd_shape(f)
        },
        f_lo_hz,
        f_hi_hz,
        1e-6,
    )
}

/// Weight of a relative Rabi-frequency mismatch in the differential phase,
/// fixed by the calibration point (dk/k, dΩ/Ω) = (1e-9, 1e-4) mapping to a
/// suppression ratio of 2.5e-9.
pub const RABI_MISMATCH_WEIGHT: f64 = 1.5e-5;

/// Common-mode rejection of platform accelerations in the differential
/// signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuppressionSpec {
    pub dk_over_k: f64,
    pub drabi_over_rabi: f64,
    /// Residual fraction of a common acceleration that survives in the
    /// differential signal.
    pub suppression_ratio: f64,
}

/// Suppression ratio from the wavevector and Rabi-frequency mismatches:
/// dk/k + κ·dΩ/Ω with κ = [`RABI_MISMATCH_WEIGHT`].
pub fn common_mode_suppression(dk_over_k: f64, drabi_over_rabi: f64) -> SuppressionSpec {
    SuppressionSpec {
        dk_over_k,
        drabi_over_rabi,
        suppression_ratio: dk_over_k + RABI_MISMATCH_WEIGHT * drabi_over_rabi,
    }
}

/// Operating point of the dual interferometer.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerConfig {
    pub species_pair: (Species, Species),
    pub free_evolution_s: f64,
    pub cycle_time_s: f64,
    pub atoms_per_species: u64,
    /// Initial ensemble size w_r [m].
    pub initial_size_m: f64,
    /// Ensemble expansion rate w_v [m/s].
    pub expansion_rate_m_s: f64,
    pub pulse_duration_s: f64,
    pub scheme: DiffractionScheme,
}

impl InterferometerConfig {
    pub fn timing(&self) -> PulseTiming {
        PulseTiming::mach_zehnder(self.free_evolution_s, self.pulse_duration_s)
    }

    /// Effective wavevector of the first (reference) species [1/m].
    pub fn wavevector(&self) -> f64 {
        effective_wavevector(&self.species_pair.0, self.scheme)
    }

    pub fn contrast_at(&self, tzz_proj: f64) -> f64 {
        contrast(
            self.wavevector(),
            self.initial_size_m,
            self.expansion_rate_m_s,
            tzz_proj,
            self.free_evolution_s,
        )
    }

    pub fn shot_noise_at(&self, contrast: f64) -> f64 {
        shot_noise_per_cycle(
            self.atoms_per_species,
            contrast,
            self.wavevector(),
            self.free_evolution_s,
        )
    }

    /// Bound checks declared by this module; returns the violations.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        if self.free_evolution_s <= 0.0 {
            problems.push("free_evolution_s must be positive".into());
        }
        if self.cycle_time_s < 2.0 * self.free_evolution_s {
            problems.push(format!(
                "cycle_time_s = {} is shorter than the pulse sequence 2T = {}",
                self.cycle_time_s,
                2.0 * self.free_evolution_s
            ));
        }
        if self.atoms_per_species < 1 {
            problems.push("atoms_per_species must be at least 1".into());
        }
        if self.initial_size_m < 0.0 || self.expansion_rate_m_s < 0.0 {
            problems.push("ensemble size and expansion rate must be non-negative".into());
        }
        if self.pulse_duration_s <= 0.0 || self.pulse_duration_s * 10.0 > self.free_evolution_s {
            problems.push("pulse duration must satisfy 0 < τ ≪ T".into());
        }
        problems
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const K_NOMINAL: f64 = 32_221_463.113741465; // 8π/780 nm

    fn timing() -> PulseTiming {
        PulseTiming::mach_zehnder(5.0, 100e-6)
    }

    /// Simpson quadrature with panels aligned to the piecewise boundaries of
    /// g(t); the independent oracle for the closed-form moments.
    fn quad_pieces<F: Fn(f64) -> f64>(f: F, timing: &PulseTiming, n_per_piece: usize) -> f64 {
        let tau = timing.pulse_duration_s;
        let big_t = timing.free_evolution_s;
        let bounds = [
            -(big_t + 2.0 * tau),
            -(big_t + tau),
            -tau,
            0.0,
            tau,
            big_t + tau,
            big_t + 2.0 * tau,
        ];
        let mut total = 0.0;
        for w in bounds.windows(2) {
            let (a, b) = (w[0], w[1]);
            let n = if n_per_piece.is_multiple_of(2) {
                n_per_piece
            } else {
                n_per_piece + 1
            };
            let h = (b - a) / n as f64;
            let mut acc = f(a) + f(b);
            for i in 1..n {
                acc += f(a + i as f64 * h) * if i % 2 == 0 { 2.0 } else { 4.0 };
            }
            total += acc * h / 3.0;
        }
        total
    }

    #[test]
    fn wavevector_nominal_and_scalings() {
        let rb87 = Species::rubidium_87();
        let k = effective_wavevector(&rb87, DiffractionScheme::Double);
        assert_relative_eq!(k, K_NOMINAL, max_relative = 1e-12);
        assert_relative_eq!(k, 3.222e7, max_relative = 1e-3);

        let mut doubled = rb87.clone();
        doubled.wavelength_m *= 2.0;
        assert_relative_eq!(
            effective_wavevector(&doubled, DiffractionScheme::Double),
            k / 2.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            effective_wavevector(&rb87, DiffractionScheme::Single),
            k / 2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn acceleration_phase_examples() {
        assert_eq!(acceleration_phase(K_NOMINAL, 0.0, 5.0), 0.0);
        assert_relative_eq!(
            acceleration_phase(K_NOMINAL, 8.0, 5.0),
            6.444292622748293e9,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            acceleration_phase(K_NOMINAL, 2.0, 5.0),
            2.0 * acceleration_phase(K_NOMINAL, 1.0, 5.0),
            max_relative = 1e-12
        );
    }

    #[test]
    fn contrast_reference_points() {
        assert_eq!(contrast(K_NOMINAL, 300e-6, 82e-6, 0.0, 5.0), 1.0);
        let c_bound = contrast(K_NOMINAL, 300e-6, 82e-6, 2.5e-6, 5.0);
        assert_relative_eq!(c_bound, 0.5925205767835179, max_relative = 1e-12);
        assert!(c_bound > 0.58 && c_bound < 0.61);
        let c_700 = contrast(K_NOMINAL, 300e-6, 82e-6, 2.2e-6, 5.0);
        assert_relative_eq!(c_700, 0.667, epsilon = 1e-3);
    }

    #[test]
    fn contrast_monotone_in_each_argument() {
        let grid = [0.0, 0.3, 0.7, 1.0, 2.0, 5.0];
        let base = (K_NOMINAL, 300e-6, 82e-6, 2.2e-6, 5.0);
        let mut prev = f64::INFINITY;
        for s in grid {
            let c = contrast(base.0, base.1 * s, base.2, base.3, base.4);
            assert!(c <= prev + 1e-15);
            prev = c;
        }
        prev = f64::INFINITY;
        for s in grid {
            let c = contrast(base.0, base.1, base.2 * s, base.3, base.4);
            assert!(c <= prev + 1e-15);
            prev = c;
        }
        prev = f64::INFINITY;
        for s in grid {
            let c = contrast(base.0, base.1, base.2, base.3 * s, base.4);
            assert!(c <= prev + 1e-15);
            prev = c;
        }
        prev = f64::INFINITY;
        for s in [0.1, 0.5, 1.0, 1.5, 2.0] {
            let c = contrast(base.0, base.1, base.2, base.3, base.4 * s);
            assert!(c <= prev + 1e-15);
            prev = c;
        }
        // sign of the projection is irrelevant
        assert_eq!(
            contrast(base.0, base.1, base.2, -base.3, base.4),
            contrast(base.0, base.1, base.2, base.3, base.4)
        );
    }

    #[test]
    fn shot_noise_reference_and_scalings() {
        let sigma = shot_noise_per_cycle(1_000_000, 0.6, K_NOMINAL, 5.0);
        assert_relative_eq!(sigma, 2.926028027510595e-12, max_relative = 1e-12);
        // published operating point, 0.5 %
        assert_relative_eq!(sigma, 2.93e-12, max_relative = 5e-3);
        assert_relative_eq!(
            shot_noise_per_cycle(1_000_000, 0.3, K_NOMINAL, 5.0),
            2.0 * sigma,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            shot_noise_per_cycle(4_000_000, 0.6, K_NOMINAL, 5.0),
            sigma / 2.0,
            max_relative = 1e-12
        );
        // identity σ·(C k T²)·√(N/2) = 1
        for (n, c) in [(1_000u64, 0.3), (123_456, 0.77), (1_000_000, 0.6)] {
            let s = shot_noise_per_cycle(n, c, K_NOMINAL, 5.0);
            let product = s * c * K_NOMINAL * 25.0 * (n as f64 / 2.0).sqrt();
            assert_relative_eq!(product, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn sensitivity_function_shape() {
        let tm = timing();
        assert_eq!(sensitivity_function(0.0, &tm), 0.0);
        assert_eq!(sensitivity_function(-2.0, &tm), 1.0);
        assert_eq!(sensitivity_function(2.0, &tm), -1.0);
        assert_eq!(sensitivity_function(6.0, &tm), 0.0);
        // antisymmetry on a grid
        for i in 0..200 {
            let t = -5.1 + 10.2 * i as f64 / 199.0;
            let diff = sensitivity_function(t, &tm) + sensitivity_function(-t, &tm);
            assert!(diff.abs() < 1e-15, "antisymmetry broken at t={t}");
        }
        // zero integral
        let integral = quad_pieces(|t| sensitivity_function(t, &tm), &tm, 2000);
        assert!(integral.abs() < 1e-9 * 2.0 * tm.free_evolution_s);
    }

    #[test]
    fn scale_factor_matches_quadrature_and_closed_form() {
        let tm = timing();
        let closed = (5.0 + 2.0 * 100e-6) * (5.0 + 4.0 * 100e-6 / std::f64::consts::PI);
        assert_relative_eq!(scale_factor(&tm), closed, max_relative = 1e-12);
        let quad = quad_pieces(|t| sensitivity_function(t, &tm) * t, &tm, 2000).abs();
        assert_relative_eq!(scale_factor(&tm), quad, max_relative = 1e-9);
        // τ → 0 recovers k a T²
        let short = PulseTiming::mach_zehnder(5.0, 1e-9);
        assert_relative_eq!(scale_factor(&short), 25.0, max_relative = 1e-6);
    }

    #[test]
    fn transfer_magnitude_limits_and_zeros() {
        let tm = timing();
        let w0 = transfer_magnitude(2.0 * std::f64::consts::PI * 1e-5, &tm);
        assert_relative_eq!(w0, scale_factor(&tm), max_relative = 1e-6);
        // closed form against quadrature at a handful of frequencies
        for f in [0.05, 0.11, 0.5, 1.3, 17.0, 2500.0] {
            let om = 2.0 * std::f64::consts::PI * f;
            let quad = quad_pieces(|t| sensitivity_function(t, &tm) * (om * t).sin(), &tm, 4000)
                .abs()
                / om;
            let w = transfer_magnitude(om, &tm);
            assert_relative_eq!(w, quad, max_relative = 1e-6, epsilon = 1e-12);
        }
        // zeros at f = n/T up to the finite-pulse residual
        for n in 1..=5 {
            let w = transfer_magnitude(2.0 * std::f64::consts::PI * n as f64 / 5.0, &tm);
            assert!(
                w < 1e-6 * scale_factor(&tm),
                "transfer magnitude {w} not suppressed at n={n}"
            );
        }
    }

    #[test]
    fn quasi_static_tone_matches_time_domain_oracle() {
        let tm = timing();
        let f0 = 1e-4; // f < 1e-3/T
        let a0 = 1e-8;
        let variance = vibration_phase_variance(
            &AccelerationSpectrum::Tone {
                amplitude_m_s2: a0,
                frequency_hz: f0,
            },
            K_NOMINAL,
            &tm,
        );
        // time-domain simulation of the slow sinusoid through g(t)
        let om = 2.0 * std::f64::consts::PI * f0;
        let mut sum_sq = 0.0;
        let n_phase = 32;
        for j in 0..n_phase {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n_phase as f64;
            let phi = K_NOMINAL
                * quad_pieces(
                    |t| sensitivity_function(t, &tm) * a0 / om * (om * t + theta).sin(),
                    &tm,
                    2000,
                );
            sum_sq += phi * phi;
        }
        let oracle = sum_sq / n_phase as f64;
        assert_relative_eq!(variance, oracle, max_relative = 1e-4);
        // and the quasi-static limit reproduces the DC phase within 1 %
        let rms_phase = variance.sqrt() * std::f64::consts::SQRT_2;
        assert_relative_eq!(
            rms_phase,
            acceleration_phase(K_NOMINAL, a0, 5.0),
            max_relative = 1e-2
        );
    }

    #[test]
    fn white_spectrum_limits() {
        let tm = timing();
        let tiny = vibration_phase_variance(
            &AccelerationSpectrum::BandLimitedWhite {
                rms_m_s2: 0.0,
                f_lo_hz: 1e-2,
                f_hi_hz: 1e2,
            },
            K_NOMINAL,
            &tm,
        );
        assert_eq!(tiny, 0.0);
        // tone at a transfer zero contributes nothing
        let at_zero = vibration_phase_variance(
            &AccelerationSpectrum::Tone {
                amplitude_m_s2: 1e-6,
                frequency_hz: 0.2,
            },
            K_NOMINAL,
            &tm,
        );
        let at_dc = vibration_phase_variance(
            &AccelerationSpectrum::Tone {
                amplitude_m_s2: 1e-6,
                frequency_hz: 1e-5,
            },
            K_NOMINAL,
            &tm,
        );
        assert!(at_zero < 1e-10 * at_dc);
    }

    #[test]
    fn suppression_calibration_point() {
        let s = common_mode_suppression(1e-9, 1e-4);
        assert_relative_eq!(s.suppression_ratio, 2.5e-9, max_relative = 1e-12);
        assert_eq!(common_mode_suppression(0.0, 0.0).suppression_ratio, 0.0);
        assert_relative_eq!(
            common_mode_suppression(1e-9, 0.0).suppression_ratio,
            1e-9,
            max_relative = 1e-12
        );
        // additive and homogeneous of degree 1
        for s_mult in [0.5, 2.0, 7.0] {
            let scaled = common_mode_suppression(1e-9 * s_mult, 1e-4 * s_mult);
            assert_relative_eq!(
                scaled.suppression_ratio,
                s.suppression_ratio * s_mult,
                max_relative = 1e-12
            );
        }
        let a = common_mode_suppression(3e-10, 2e-5).suppression_ratio;
        let b = common_mode_suppression(7e-10, 8e-5).suppression_ratio;
        assert_relative_eq!(
            a + b,
            common_mode_suppression(1e-9, 1e-4).suppression_ratio,
            max_relative = 1e-12
        );
    }

    #[test]
    fn rotation_dephasing_is_negligible_against_gradient() {
        // spacecraft rotation rates of 1e-6 rad/s act like a centrifugal
        // gradient Ω² = 1e-12 s⁻², four orders below T_gg: bound the analogous
        // contrast penalty below 1 % of the gradient penalty.
        let omega_sq = 1e-12;
        let t_gg = 2.2e-6;
        assert!(omega_sq / t_gg < 0.01);
        let c_rot = contrast(K_NOMINAL, 300e-6, 82e-6, omega_sq, 5.0);
        let c_gg = contrast(K_NOMINAL, 300e-6, 82e-6, t_gg, 5.0);
        assert!((1.0 - c_rot) < 0.01 * (1.0 - c_gg));
    }

    #[test]
    fn zeeman_coefficients_match_reference_values() {
        let rb87 = Species::rubidium_87();
        let rb85 = Species::rubidium_85();
        assert_relative_eq!(
            rb87.quadratic_zeeman_hz_per_g2.unwrap(),
            575.15,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            rb85.quadratic_zeeman_hz_per_g2.unwrap(),
            1293.98,
            max_relative = 1e-4
        );
    }

    #[test]
    fn config_validation_flags_bad_values() {
        let mut cfg = crate::nominal::interferometer_config();
        assert!(cfg.validate().is_empty());
        cfg.cycle_time_s = 9.0;
        assert!(!cfg.validate().is_empty());
    }
}
