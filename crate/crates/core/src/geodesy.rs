//! Two-body orbit propagation, local gravity, the gravity-gradient tensor,
//! and their projection onto the interferometer's sensitive axis.
//!
//! A point-mass Earth is used throughout: every budget number in the mission
//! analysis is driven by the monopole term, and perturbations (J2, drag,
//! lunisolar) act far below the tolerances of interest here.

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

/// Point-mass gravity field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityModel {
    /// Gravitational parameter GM [m³/s²].
    pub mu: f64,
    /// Reference body radius used for altitude bookkeeping [m].
    pub earth_radius: f64,
}

impl Default for GravityModel {
    fn default() -> Self {
        Self {
            mu: crate::constants::EARTH_MU,
            earth_radius: crate::constants::EARTH_RADIUS,
        }
    }
}

/// Classical Keplerian elements of a closed orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitElements {
    pub semi_major_axis_m: f64,
    pub eccentricity: f64,
    pub inclination_rad: f64,
    pub raan_rad: f64,
    pub arg_perigee_rad: f64,
    /// Epoch of perigee passage [s].
    pub perigee_epoch_s: f64,
}

impl OrbitElements {
    pub fn period_s(&self, model: &GravityModel) -> f64 {
        2.0 * std::f64::consts::PI * (self.semi_major_axis_m.powi(3) / model.mu).sqrt()
    }

    pub fn perigee_radius_m(&self) -> f64 {
        self.semi_major_axis_m * (1.0 - self.eccentricity)
    }

    pub fn apogee_radius_m(&self) -> f64 {
        self.semi_major_axis_m * (1.0 + self.eccentricity)
    }

    /// Rotation from the perifocal frame (x toward perigee, z along angular
    /// momentum) to the inertial frame.
    fn perifocal_to_inertial(&self) -> Matrix3<f64> {
        let rz_raan = Matrix3::from(nalgebra::Rotation3::from_axis_angle(
            &Vector3::z_axis(),
            self.raan_rad,
        ));
        let rx_inc = Matrix3::from(nalgebra::Rotation3::from_axis_angle(
            &Vector3::x_axis(),
            self.inclination_rad,
        ));
        let rz_argp = Matrix3::from(nalgebra::Rotation3::from_axis_angle(
            &Vector3::z_axis(),
            self.arg_perigee_rad,
        ));
        rz_raan * rx_inc * rz_argp
    }

    /// Unit vector from Earth's center to the perigee point, inertial frame.
    pub fn perigee_direction(&self) -> Vector3<f64> {
        self.perifocal_to_inertial() * Vector3::x()
    }
}

/// Instantaneous orbital state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitState {
    pub time_s: f64,
    pub position_m: Vector3<f64>,
    pub velocity_m_s: Vector3<f64>,
    pub true_anomaly_rad: f64,
}

impl OrbitState {
    pub fn radius_m(&self) -> f64 {
        self.position_m.norm()
    }

    pub fn altitude_m(&self, model: &GravityModel) -> f64 {
        self.radius_m() - model.earth_radius
    }

    /// Specific orbital energy v²/2 − µ/r [J/kg].
    pub fn specific_energy(&self, model: &GravityModel) -> f64 {
        0.5 * self.velocity_m_s.norm_squared() - model.mu / self.radius_m()
    }
}

/// Spacecraft pointing during a measurement arc.
///
/// In inertial mode the sensitive axis is frozen in the inertial frame (the
/// science configuration around perigee); in nadir mode it tracks the radial
/// direction (the apogee calibration configuration).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Attitude {
    Inertial {
        /// Unit vector of the sensitive axis in the inertial frame.
        sensitive_axis: Vector3<f64>,
        /// Residual spacecraft rotation rates [rad/s].
        rotation_rate: Vector3<f64>,
    },
    Nadir {
        rotation_rate: Vector3<f64>,
    },
}

impl Attitude {
    /// Inertial pointing with the axis aligned with the (nadir) radial
    /// direction at the instant of perigee, so the gravity projection is
    /// maximal mid-pass.
    pub fn inertial_at_perigee(elements: &OrbitElements, rotation_rate: Vector3<f64>) -> Self {
        Attitude::Inertial {
            sensitive_axis: -elements.perigee_direction(),
            rotation_rate,
        }
    }

    pub fn nadir(rotation_rate: Vector3<f64>) -> Self {
        Attitude::Nadir { rotation_rate }
    }

    /// Sensitive-axis unit vector for the given state.
    pub fn sensitive_axis(&self, state: &OrbitState) -> Vector3<f64> {
        match self {
            Attitude::Inertial { sensitive_axis, .. } => sensitive_axis.normalize(),
            Attitude::Nadir { .. } => -state.position_m.normalize(),
        }
    }

    pub fn rotation_rate(&self) -> Vector3<f64> {
        match self {
            Attitude::Inertial { rotation_rate, .. } | Attitude::Nadir { rotation_rate } => {
                *rotation_rate
            }
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GeodesyError {
    #[error("perigee radius {perigee_m} m is below the surface radius {surface_m} m")]
    PerigeeBelowSurface { perigee_m: f64, surface_m: f64 },
    #[error("parameters imply a non-elliptic orbit (eccentricity {0})")]
    NonElliptic(f64),
    #[error(
        "Kepler iteration did not converge: |residual| = {residual} rad after {iterations} steps"
    )]
    KeplerDivergence { residual: f64, iterations: usize },
}

/// Build orbit elements from the orbital period and the perigee altitude.
///
/// Kepler's third law fixes the semi-major axis, the perigee radius fixes the
/// eccentricity. Orientation angles are zero (equatorial, perigee on +x);
/// callers needing a specific geometry set them afterwards.
pub fn elements_from_period_perigee(
    period_s: f64,
    perigee_altitude_m: f64,
    model: &GravityModel,
) -> Result<OrbitElements, GeodesyError> {
    let a = (model.mu * (period_s / (2.0 * std::f64::consts::PI)).powi(2)).cbrt();
    let r_p = model.earth_radius + perigee_altitude_m;
    if perigee_altitude_m < 0.0 {
        return Err(GeodesyError::PerigeeBelowSurface {
            perigee_m: r_p,
            surface_m: model.earth_radius,
        });
    }
    let e = 1.0 - r_p / a;
    if !(0.0..1.0).contains(&e) {
        return Err(GeodesyError::NonElliptic(e));
    }
    Ok(OrbitElements {
        semi_major_axis_m: a,
        eccentricity: e,
        inclination_rad: 0.0,
        raan_rad: 0.0,
        arg_perigee_rad: 0.0,
        perigee_epoch_s: 0.0,
    })
}

/// Solve Kepler's equation M = E − e·sin E for the eccentric anomaly.
///
/// Newton iteration seeded near the root with a bisection fallback on
/// [−π, π]; residual target 1e-13 rad, iteration cap 64. Robust for
/// e up to at least 0.95.
pub fn solve_kepler(mean_anomaly: f64, eccentricity: f64) -> Result<f64, GeodesyError> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut m = mean_anomaly.rem_euclid(two_pi);
    if m > std::f64::consts::PI {
        m -= two_pi;
    }
    let e = eccentricity;
    let f = |big_e: f64| big_e - e * big_e.sin() - m;

    // Bracket always valid on [−π, π] for M in (−π, π].
    let mut lo = -std::f64::consts::PI;
    let mut hi = std::f64::consts::PI;
    let mut x = if e < 0.8 {
        m
    } else {
        std::f64::consts::PI * m.signum()
    };
    if x == 0.0 {
        x = m;
    }
    let mut residual = f(x);
    for iter in 0..64 {
        if residual.abs() < 1e-13 {
            let wraps = (mean_anomaly - m) / two_pi;
            return Ok(x + wraps * two_pi);
        }
        if residual > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let derivative = 1.0 - e * x.cos();
        let newton = x - residual / derivative;
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        residual = f(x);
        if iter == 63 {
            break;
        }
    }
    if residual.abs() < 1e-12 {
        let wraps = (mean_anomaly - m) / two_pi;
        return Ok(x + wraps * two_pi);
    }
    Err(GeodesyError::KeplerDivergence {
        residual: residual.abs(),
        iterations: 64,
    })
}

/// Propagate the orbit to time `t` (closed-form Kepler propagation).
pub fn propagate(
    elements: &OrbitElements,
    t: f64,
    model: &GravityModel,
) -> Result<OrbitState, GeodesyError> {
    let a = elements.semi_major_axis_m;
    let e = elements.eccentricity;
    let n = (model.mu / a.powi(3)).sqrt();
    let mean_anomaly = n * (t - elements.perigee_epoch_s);
    let big_e = solve_kepler(mean_anomaly, e)?;
    let (sin_e, cos_e) = big_e.sin_cos();
    let r = a * (1.0 - e * cos_e);
    let one_minus_e2 = (1.0 - e * e).sqrt();

    let pos_pf = Vector3::new(a * (cos_e - e), a * one_minus_e2 * sin_e, 0.0);
    let v_scale = (model.mu * a).sqrt() / r;
    let vel_pf = Vector3::new(-v_scale * sin_e, v_scale * one_minus_e2 * cos_e, 0.0);

    let rot = elements.perifocal_to_inertial();
    let true_anomaly = (one_minus_e2 * sin_e).atan2(cos_e - e);
    Ok(OrbitState {
        time_s: t,
        position_m: rot * pos_pf,
        velocity_m_s: rot * vel_pf,
        true_anomaly_rad: true_anomaly,
    })
}

/// Local gravitational acceleration −µ r̂ / r² [m/s²].
pub fn local_gravity(state: &OrbitState, model: &GravityModel) -> Vector3<f64> {
    let r = state.radius_m();
    -model.mu / (r * r) * state.position_m / r
}

/// Gravity-gradient tensor T = (µ/r³)(3 r̂ r̂ᵀ − I) [1/s²].
///
/// Symmetric and traceless; radial eigenvalue 2µ/r³, transverse −µ/r³.
pub fn gravity_gradient_tensor(state: &OrbitState, model: &GravityModel) -> Matrix3<f64> {
    let r = state.radius_m();
    let r_hat = state.position_m / r;
    let scale = model.mu / (r * r * r);
    scale * (3.0 * r_hat * r_hat.transpose() - Matrix3::identity())
}

/// Project gravity and the gradient tensor onto the sensitive axis.
///
/// Returns `(g_proj, tzz_proj)`: the magnitude of the gravity projection
/// |g⃗·ê| [m/s²] (the axis is a line, its sign is not physical) and the
/// signed quadratic form êᵀ T ê [1/s²].
pub fn project_onto_axis(
    state: &OrbitState,
    attitude: &Attitude,
    model: &GravityModel,
) -> (f64, f64) {
    let axis = attitude.sensitive_axis(state);
    let g_proj = local_gravity(state, model).dot(&axis).abs();
    let tensor = gravity_gradient_tensor(state, model);
    let tzz_proj = (axis.transpose() * tensor * axis)[(0, 0)];
    (g_proj, tzz_proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn model() -> GravityModel {
        GravityModel::default()
    }

    fn nominal_elements() -> OrbitElements {
        elements_from_period_perigee(57_600.0, 700e3, &model()).unwrap()
    }

    #[test]
    fn elements_match_keplers_third_law() {
        let m = model();
        let el = nominal_elements();
        // Independent closed-form evaluation of the oracle.
        let a_expected = (m.mu * (57_600.0 / (2.0 * std::f64::consts::PI)).powi(2)).cbrt();
        assert_relative_eq!(el.semi_major_axis_m, a_expected, max_relative = 1e-12);
        assert_relative_eq!(el.semi_major_axis_m, 3.223599e7, max_relative = 1e-5);
        assert_relative_eq!(el.eccentricity, 0.780427, epsilon = 1e-5);
        assert_relative_eq!(el.period_s(&m), 57_600.0, max_relative = 1e-12);

        let el_22 = elements_from_period_perigee(57_600.0, 2200e3, &m).unwrap();
        assert_relative_eq!(el_22.eccentricity, 0.733896, epsilon = 1e-5);
    }

    #[test]
    fn circular_limit_has_zero_eccentricity() {
        let m = model();
        let a = (m.mu * (6000.0 / (2.0 * std::f64::consts::PI)).powi(2)).cbrt();
        let el = elements_from_period_perigee(6000.0, a - m.earth_radius, &m).unwrap();
        assert!(el.eccentricity.abs() < 1e-12);
    }

    #[test]
    fn rejects_unphysical_parameters() {
        let m = model();
        assert!(matches!(
            elements_from_period_perigee(57_600.0, -10.0, &m),
            Err(GeodesyError::PerigeeBelowSurface { .. })
        ));
        // Perigee radius above the semi-major axis: not an ellipse.
        assert!(matches!(
            elements_from_period_perigee(6000.0, 5.0e7, &m),
            Err(GeodesyError::NonElliptic(_))
        ));
    }

    #[test]
    fn perigee_and_apogee_radii_are_closed_form() {
        let m = model();
        let el = nominal_elements();
        let sp = propagate(&el, 0.0, &m).unwrap();
        assert_relative_eq!(sp.radius_m(), el.perigee_radius_m(), max_relative = 1e-9);
        assert!(sp.true_anomaly_rad.abs() < 1e-9);

        let sa = propagate(&el, 28_800.0, &m).unwrap();
        assert_relative_eq!(sa.radius_m(), el.apogee_radius_m(), max_relative = 1e-9);

        // Apogee altitude ≈ 5.1e4 km for the 16 h / 700 km orbit.
        assert_relative_eq!(sa.altitude_m(&m), 5.1016e7, max_relative = 1e-4);
    }

    #[test]
    fn kepler_residual_small_over_eccentricity_grid() {
        for i in 0..20 {
            let e = 0.05 * i as f64;
            for j in 0..48 {
                let m_anom = -3.1 + 6.2 * j as f64 / 47.0;
                let big_e = solve_kepler(m_anom, e).unwrap();
                let residual = big_e - e * big_e.sin() - m_anom;
                assert!(
                    residual.abs() < 1e-12,
                    "residual {residual} at e={e} M={m_anom}"
                );
            }
        }
    }

    #[test]
    fn energy_and_momentum_conserved_over_one_period() {
        let m = model();
        let el = nominal_elements();
        let reference = propagate(&el, 0.0, &m).unwrap();
        let e0 = reference.specific_energy(&m);
        let h0 = reference.position_m.cross(&reference.velocity_m_s).norm();
        for i in 1..=64 {
            let t = 57_600.0 * i as f64 / 64.0;
            let s = propagate(&el, t, &m).unwrap();
            assert_relative_eq!(s.specific_energy(&m), e0, max_relative = 1e-9);
            let h = s.position_m.cross(&s.velocity_m_s).norm();
            assert_relative_eq!(h, h0, max_relative = 1e-9);
            // vis-viva
            let v2 = s.velocity_m_s.norm_squared();
            let vis_viva = m.mu * (2.0 / s.radius_m() - 1.0 / el.semi_major_axis_m);
            assert_relative_eq!(v2, vis_viva, max_relative = 1e-9);
        }
    }

    #[test]
    fn gravity_magnitude_at_quoted_altitudes() {
        let m = model();
        let r700 = m.earth_radius + 700e3;
        let state = OrbitState {
            time_s: 0.0,
            position_m: Vector3::new(r700, 0.0, 0.0),
            velocity_m_s: Vector3::zeros(),
            true_anomaly_rad: 0.0,
        };
        let g = local_gravity(&state, &m);
        assert_relative_eq!(g.norm(), m.mu / (r700 * r700), max_relative = 1e-12);
        assert_relative_eq!(g.norm(), 7.956, epsilon = 1e-3);
        // points toward the center
        assert!(g.x < 0.0);

        let r22 = m.earth_radius + 2200e3;
        assert_relative_eq!(m.mu / (r22 * r22), 5.4169, epsilon = 1e-4);

        // inverse-square: doubling r quarters g
        let state2 = OrbitState {
            position_m: Vector3::new(2.0 * r700, 0.0, 0.0),
            ..state
        };
        assert_relative_eq!(
            local_gravity(&state2, &m).norm(),
            g.norm() / 4.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gradient_tensor_is_symmetric_traceless_with_radial_eigenvalue() {
        let m = model();
        let r700 = m.earth_radius + 700e3;
        let state = OrbitState {
            time_s: 0.0,
            position_m: Vector3::new(r700, 0.0, 0.0),
            velocity_m_s: Vector3::zeros(),
            true_anomaly_rad: 0.0,
        };
        let t = gravity_gradient_tensor(&state, &m);
        let tzz = 2.0 * m.mu / r700.powi(3);
        assert_relative_eq!(t[(0, 0)], tzz, max_relative = 1e-12);
        assert_relative_eq!(t[(0, 0)], 2.2481e-6, max_relative = 1e-4);
        assert_relative_eq!(t[(1, 1)], -tzz / 2.0, max_relative = 1e-12);
        assert_relative_eq!(t[(2, 2)], -tzz / 2.0, max_relative = 1e-12);

        // symmetry + tracelessness at arbitrary states
        let el = nominal_elements();
        for i in 0..16 {
            let s = propagate(&el, 57_600.0 * i as f64 / 16.0, &m).unwrap();
            let t = gravity_gradient_tensor(&s, &m);
            let scale = t.norm();
            assert!((t - t.transpose()).norm() < 1e-15 * scale.max(1e-30));
            assert!(t.trace().abs() < 1e-15 * scale.max(1e-30));
        }
    }

    #[test]
    fn projection_aligned_and_orthogonal_cases() {
        let m = model();
        let r700 = m.earth_radius + 700e3;
        let state = OrbitState {
            time_s: 0.0,
            position_m: Vector3::new(r700, 0.0, 0.0),
            velocity_m_s: Vector3::zeros(),
            true_anomaly_rad: 0.0,
        };
        let aligned = Attitude::Inertial {
            sensitive_axis: Vector3::new(-1.0, 0.0, 0.0),
            rotation_rate: Vector3::zeros(),
        };
        let (g_proj, tzz) = project_onto_axis(&state, &aligned, &m);
        assert_relative_eq!(g_proj, m.mu / (r700 * r700), max_relative = 1e-12);
        assert_relative_eq!(tzz, 2.0 * m.mu / r700.powi(3), max_relative = 1e-12);

        let orthogonal = Attitude::Inertial {
            sensitive_axis: Vector3::new(0.0, 1.0, 0.0),
            rotation_rate: Vector3::zeros(),
        };
        let (g_proj, tzz) = project_onto_axis(&state, &orthogonal, &m);
        assert!(g_proj.abs() < 1e-15);
        assert_relative_eq!(tzz, -m.mu / r700.powi(3), max_relative = 1e-12);

        // |tzz_proj| bounded by the radial eigenvalue for arbitrary axes
        for i in 0..32 {
            let theta = i as f64 * 0.196;
            let axis = Vector3::new(theta.cos(), theta.sin() * 0.6, theta.sin() * 0.8);
            let att = Attitude::Inertial {
                sensitive_axis: axis.normalize(),
                rotation_rate: Vector3::zeros(),
            };
            let (_, tzz) = project_onto_axis(&state, &att, &m);
            assert!(tzz.abs() <= 2.0 * m.mu / r700.powi(3) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn inertial_axis_tracks_gravity_through_the_pass() {
        // ±0.25 h around perigee: the projection falls with the swept true
        // anomaly; values used downstream by the mission module.
        let m = model();
        let el = nominal_elements();
        let att = Attitude::inertial_at_perigee(&el, Vector3::zeros());
        let (g_mid, _) = project_onto_axis(&propagate(&el, 0.0, &m).unwrap(), &att, &m);
        assert_relative_eq!(g_mid, 7.956, epsilon = 1e-3);
        let edge = propagate(&el, 890.0, &m).unwrap();
        let (g_edge, tzz_edge) = project_onto_axis(&edge, &att, &m);
        let expected = local_gravity(&edge, &m).norm() * edge.true_anomaly_rad.cos();
        assert_relative_eq!(g_edge, expected, max_relative = 1e-12);
        assert!(g_edge < 0.4 * g_mid);
        assert!(tzz_edge.abs() < 2.0 * m.mu / el.perigee_radius_m().powi(3));
    }

    #[test]
    fn nadir_mode_keeps_full_projection() {
        let m = model();
        let el = nominal_elements();
        let att = Attitude::nadir(Vector3::zeros());
        for t in [0.0, 3000.0, 14_400.0] {
            let s = propagate(&el, t, &m).unwrap();
            let (g_proj, tzz) = project_onto_axis(&s, &att, &m);
            assert_relative_eq!(g_proj, local_gravity(&s, &m).norm(), max_relative = 1e-12);
            assert_relative_eq!(tzz, 2.0 * m.mu / s.radius_m().powi(3), max_relative = 1e-12);
        }
    }

    #[test]
    fn inclined_orbit_geometry_is_consistent() {
        let m = model();
        let mut el = nominal_elements();
        el.inclination_rad = 0.5;
        el.raan_rad = 0.3;
        el.arg_perigee_rad = 0.7;
        // radii and conservation survive the frame rotation
        let perigee = propagate(&el, 0.0, &m).unwrap();
        assert_relative_eq!(
            perigee.radius_m(),
            el.perigee_radius_m(),
            max_relative = 1e-9
        );
        assert!(perigee.true_anomaly_rad.abs() < 1e-9);
        let e0 = perigee.specific_energy(&m);
        for i in 1..=16 {
            let s = propagate(&el, 57_600.0 * i as f64 / 16.0, &m).unwrap();
            assert_relative_eq!(s.specific_energy(&m), e0, max_relative = 1e-9);
            // position stays in the orbital plane
            let normal = perigee.position_m.cross(&perigee.velocity_m_s).normalize();
            assert!(s.position_m.normalize().dot(&normal).abs() < 1e-9);
        }
        // the inertial axis still lines up with the perigee radial
        let att = Attitude::inertial_at_perigee(&el, Vector3::zeros());
        let (g_proj, tzz) = project_onto_axis(&perigee, &att, &m);
        assert_relative_eq!(
            g_proj,
            local_gravity(&perigee, &m).norm(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            tzz,
            2.0 * m.mu / el.perigee_radius_m().powi(3),
            max_relative = 1e-12
        );
    }
}
