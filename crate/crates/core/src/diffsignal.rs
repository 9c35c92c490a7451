//! Differential-phase extraction: Monte-Carlo generation of paired
//! two-species fringes under common-mode phase noise, and recovery of the
//! differential phase from the Lissajous figure by direct constrained
//! conic least squares.

use crate::numeric::splitmix64;
use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use thiserror::Error;

/// Paired normalized output-port populations of the two isotope
/// interferometers for one cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeSample {
    pub p87: f64,
    pub p85: f64,
}

/// Parameters of one simulated fringe set.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeParams {
    pub n_cycles: usize,
    /// Differential phase between the two species [rad].
    pub differential_phase_rad: f64,
    /// RMS of the common phase drawn per cycle [rad]; values well above 2π
    /// wash the fringes out completely.
    pub common_noise_rms_rad: f64,
    pub contrast_87: f64,
    pub contrast_85: f64,
    /// Atoms per species for binomial detection noise; `None` switches the
    /// detection noise off.
    pub atoms: Option<u64>,
    /// Detection balance factor ε applied to the second species' amplitude.
    pub imbalance_epsilon: f64,
    pub seed: u64,
}

impl FringeParams {
    /// Washed-out operating point at the given differential phase.
    pub fn washed_out(phi_d: f64, atoms: Option<u64>, seed: u64) -> Self {
        FringeParams {
            n_cycles: 90,
            differential_phase_rad: phi_d,
            common_noise_rms_rad: 30.0,
            contrast_87: 0.6,
            contrast_85: 0.6,
            atoms,
            imbalance_epsilon: 1.0,
            seed,
        }
    }
}

/// Result of the conic fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseFitResult {
    /// Differential phase recovered from the conic cross term, in [0, π].
    pub differential_phase_rad: f64,
    /// Peak-to-peak fringe amplitude of the first species.
    pub contrast_87: f64,
    /// Observed peak-to-peak amplitude of the second species (detection
    /// imbalance folded in).
    pub contrast_85: f64,
    /// Amplitude ratio of the two axes; equals ε when the underlying
    /// contrasts match.
    pub imbalance: f64,
    /// RMS algebraic distance of the samples to the fitted conic.
    pub residual: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("samples are degenerate (collinear or coincident); no ellipse can be fitted")]
    DegenerateSamples,
    #[error("best conic fit is not an ellipse")]
    NotAnEllipse,
    #[error("numerical failure in the conic fit: {0}")]
    NumericalFailure(&'static str),
}

/// Per-cycle RNG seed: one SplitMix64 step over the master seed and the
/// cycle index, so cycles are independent streams and the set can be
/// generated in any order.
fn cycle_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ (index + 1).wrapping_mul(0x9e3779b97f4a7c15))
}

/// Generate one fringe set: pᵢ = ½[1 + εᵢ·Cᵢ·cos(φ_common + δᵢ)] with the
/// common phase drawn per cycle and binomial detection noise at the given
/// atom number. Deterministic for a fixed seed.
pub fn simulate_fringe_set(params: &FringeParams) -> Vec<FringeSample> {
    let mut samples = Vec::with_capacity(params.n_cycles);
    for i in 0..params.n_cycles {
        let mut rng = ChaCha8Rng::seed_from_u64(cycle_seed(params.seed, i as u64));
        let phi_common = if params.common_noise_rms_rad > 0.0 {
            let gauss: f64 = rng.sample(rand_distr::StandardNormal);
            params.common_noise_rms_rad * gauss
        } else {
            0.0
        };
        let ideal_87 = 0.5 * (1.0 + params.contrast_87 * phi_common.cos());
        let ideal_85 = 0.5
            * (1.0
                + params.imbalance_epsilon
                    * params.contrast_85
                    * (phi_common + params.differential_phase_rad).cos());
        let detect = |rng: &mut ChaCha8Rng, p: f64| -> f64 {
            match params.atoms {
                Some(n) if n > 0 => {
                    let p = p.clamp(0.0, 1.0);
                    Binomial::new(n, p).expect("valid probability").sample(rng) as f64 / n as f64
                }
                _ => p,
            }
        };
        samples.push(FringeSample {
            p87: detect(&mut rng, ideal_87),
            p85: detect(&mut rng, ideal_85),
        });
    }
    samples
}

/// Roots of a real cubic x³ + bx² + cx + d (monic), one or three real.
fn cubic_roots(b: f64, c: f64, d: f64) -> Vec<f64> {
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let disc = -4.0 * p * p * p - 27.0 * q * q;
    if disc >= 0.0 {
        let r = (-p / 3.0).max(0.0).sqrt();
        let cos_arg = if r.abs() < 1e-300 {
            0.0
        } else {
            (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0)
        };
        let theta = cos_arg.acos();
        (0..3)
            .map(|k| {
                2.0 * r * ((theta + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() + shift
            })
            .collect()
    } else {
        let s = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        vec![(-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt() + shift]
    }
}

/// Null vector of a near-singular 3×3 matrix: the largest row of the
/// adjugate (each row of the adjugate of a rank-2 matrix is proportional to
/// the null vector).
fn null_vector(m: &Matrix3<f64>) -> Option<Vector3<f64>> {
    let cof = |r1: usize, c1: usize, r2: usize, c2: usize| {
        m[(r1, c1)] * m[(r2, c2)] - m[(r1, c2)] * m[(r2, c1)]
    };
    let rows = [
        Vector3::new(cof(1, 1, 2, 2), -cof(1, 0, 2, 2), cof(1, 0, 2, 1)),
        Vector3::new(-cof(0, 1, 2, 2), cof(0, 0, 2, 2), -cof(0, 0, 2, 1)),
        Vector3::new(cof(0, 1, 1, 2), -cof(0, 0, 1, 2), cof(0, 0, 1, 1)),
    ];
    let best = rows
        .iter()
        .max_by(|a, b| a.norm_squared().total_cmp(&b.norm_squared()))?;
    if best.norm_squared() < 1e-60 {
        return None;
    }
    Some(best / best.norm())
}

/// Direct ellipse-constrained least-squares conic fit (partitioned form of
/// the Fitzgibbon method) and extraction of the differential phase from the
/// conic coefficients.
///
/// The algebraic estimator is known to develop a bias as the ellipse
/// degenerates toward a line, i.e. for differential phases near 0 or π;
/// operate near quadrature where the estimator is unbiased to within its
/// statistical spread.
pub fn fit_ellipse(samples: &[FringeSample]) -> Result<EllipseFitResult, FitError> {
    let n = samples.len();
    if n < 5 {
        return Err(FitError::TooFewSamples { needed: 5, got: n });
    }

    // normalize for conditioning: centroid shift, RMS-distance scale
    let mx = samples.iter().map(|s| s.p87).sum::<f64>() / n as f64;
    let my = samples.iter().map(|s| s.p85).sum::<f64>() / n as f64;
    let mean_dist = samples
        .iter()
        .map(|s| ((s.p87 - mx).powi(2) + (s.p85 - my).powi(2)).sqrt())
        .sum::<f64>()
        / n as f64;
    if mean_dist < 1e-12 {
        return Err(FitError::DegenerateSamples);
    }
    let scale = std::f64::consts::SQRT_2 / mean_dist;

    // scatter blocks of the design [x², xy, y² | x, y, 1]
    let mut s1 = Matrix3::zeros();
    let mut s2 = Matrix3::zeros();
    let mut s3 = Matrix3::zeros();
    for s in samples {
        let x = (s.p87 - mx) * scale;
        let y = (s.p85 - my) * scale;
        let d1 = Vector3::new(x * x, x * y, y * y);
        let d2 = Vector3::new(x, y, 1.0);
        s1 += d1 * d1.transpose();
        s2 += d1 * d2.transpose();
        s3 += d2 * d2.transpose();
    }
    let s3_inv = s3.try_inverse().ok_or(FitError::DegenerateSamples)?;
    let t = -s3_inv * s2.transpose();
    let m = s1 + s2 * t;
    // constraint matrix C1 = [[0,0,2],[0,-1,0],[2,0,0]]; its inverse applied
    let c1_inv = Matrix3::new(0.0, 0.0, 0.5, 0.0, -1.0, 0.0, 0.5, 0.0, 0.0);
    let reduced = c1_inv * m;

    let tr = reduced.trace();
    let minor_sum = reduced[(0, 0)] * reduced[(1, 1)] - reduced[(0, 1)] * reduced[(1, 0)]
        + reduced[(0, 0)] * reduced[(2, 2)]
        - reduced[(0, 2)] * reduced[(2, 0)]
        + reduced[(1, 1)] * reduced[(2, 2)]
        - reduced[(1, 2)] * reduced[(2, 1)];
    let det = reduced.determinant();
    let eigenvalues = cubic_roots(-tr, minor_sum, -det);

    // among eigenvectors satisfying the ellipse constraint, keep the one
    // with the smallest algebraic residual
    let mut best: Option<(f64, Vector3<f64>)> = None;
    for lambda in eigenvalues {
        let shifted = reduced - Matrix3::identity() * lambda;
        let Some(a1) = null_vector(&shifted) else {
            continue;
        };
        if 4.0 * a1[0] * a1[2] - a1[1] * a1[1] <= 0.0 {
            continue;
        }
        let a2 = t * a1;
        let mut residual = 0.0;
        for s in samples {
            let x = (s.p87 - mx) * scale;
            let y = (s.p85 - my) * scale;
            let v = a1[0] * x * x + a1[1] * x * y + a1[2] * y * y + a2[0] * x + a2[1] * y + a2[2];
            residual += v * v;
        }
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, a1));
        }
    }
    let (_, a1) = best.ok_or(FitError::NotAnEllipse)?;
    let a2 = t * a1;

    // denormalize x' = s(x−mx), y' = s(y−my) back to port coordinates
    let (na, nb, nc, nd, ne, nf) = (a1[0], a1[1], a1[2], a2[0], a2[1], a2[2]);
    let s2_ = scale * scale;
    let mut conic = [
        na * s2_,
        nb * s2_,
        nc * s2_,
        -2.0 * na * s2_ * mx - nb * s2_ * my + nd * scale,
        -nb * s2_ * mx - 2.0 * nc * s2_ * my + ne * scale,
        na * s2_ * mx * mx + nb * s2_ * mx * my + nc * s2_ * my * my
            - nd * scale * mx
            - ne * scale * my
            + nf,
    ];
    if conic[0] < 0.0 {
        for v in &mut conic {
            *v = -*v;
        }
    }
    let [a, b, c, d, e, f] = conic;
    let disc = 4.0 * a * c - b * b;
    if disc <= 0.0 || a <= 0.0 || c <= 0.0 {
        return Err(FitError::NotAnEllipse);
    }

    // differential phase from the cross term
    let cos_phi = (-b / (2.0 * (a * c).sqrt())).clamp(-1.0, 1.0);
    let phi = cos_phi.acos();

    // centre, axis extents, residual
    let cx = (b * e - 2.0 * c * d) / disc;
    let cy = (b * d - 2.0 * a * e) / disc;
    let value_at_centre = a * cx * cx + b * cx * cy + c * cy * cy + d * cx + e * cy + f;
    let f_bar = -value_at_centre;
    if f_bar <= 0.0 {
        return Err(FitError::NumericalFailure("conic has no real interior"));
    }
    let x_half = (4.0 * c * f_bar / disc).sqrt();
    let y_half = (4.0 * a * f_bar / disc).sqrt();

    let trace = a + c;
    let mut residual = 0.0;
    for s in samples {
        let v =
            (a * s.p87 * s.p87 + b * s.p87 * s.p85 + c * s.p85 * s.p85 + d * s.p87 + e * s.p85 + f)
                / trace;
        residual += v * v;
    }
    Ok(EllipseFitResult {
        differential_phase_rad: phi,
        contrast_87: 2.0 * x_half,
        contrast_85: 2.0 * y_half,
        imbalance: y_half / x_half,
        residual: (residual / n as f64).sqrt(),
    })
}

/// Spread of the phase estimator over repeated fringe sets (the seed is
/// re-derived per repetition).
#[derive(Debug, Clone, Copy)]
pub struct PhaseSpread {
    pub mean_rad: f64,
    pub std_rad: f64,
    pub repetitions: usize,
}

pub fn monte_carlo_phase_spread(
    params: &FringeParams,
    repetitions: usize,
) -> Result<PhaseSpread, FitError> {
    let mut estimates = Vec::with_capacity(repetitions);
    for rep in 0..repetitions {
        let mut p = params.clone();
        p.seed = splitmix64(params.seed.wrapping_add(rep as u64));
        let fit = fit_ellipse(&simulate_fringe_set(&p))?;
        estimates.push(fit.differential_phase_rad);
    }
    let n = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / n;
    let var = estimates
        .iter()
        .map(|p| (p - mean) * (p - mean))
        .sum::<f64>()
        / (n - 1.0);
    Ok(PhaseSpread {
        mean_rad: mean,
        std_rad: var.sqrt(),
        repetitions,
    })
}

/// Quantum-projection bound on the per-pass differential-phase estimate:
/// √(2/N) / (C √n).
pub fn projection_noise_phase_bound(atoms: u64, contrast: f64, n_cycles: usize) -> f64 {
    (2.0 / atoms as f64).sqrt() / (contrast * (n_cycles as f64).sqrt())
}
