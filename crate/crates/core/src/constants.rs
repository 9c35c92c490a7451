//! Physical constants (CODATA 2018) and shared unit helpers.
//!
//! All quantities are SI unless the name says otherwise. Magnetic fields are
//! handled in gauss throughout the crate because every field spec in the
//! mission documents is quoted in mG / µG; the gauss factors cancel in all
//! ratios we form.

/// Planck constant [J s].
pub const PLANCK: f64 = 6.62607015e-34;

/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant [J/K].
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Speed of light in vacuum [m/s].
pub const SPEED_OF_LIGHT: f64 = 299792458.0;

/// Atomic mass unit [kg].
pub const ATOMIC_MASS_UNIT: f64 = 1.66053906660e-27;

/// Bohr magneton [J/T].
pub const BOHR_MAGNETON: f64 = 9.2740100783e-24;

/// Bohr magneton in frequency units per gauss [Hz/G].
pub const BOHR_MAGNETON_HZ_PER_GAUSS: f64 = BOHR_MAGNETON / PLANCK * 1.0e-4;

/// Bohr radius [m].
pub const BOHR_RADIUS: f64 = 0.529177210903e-10;

/// Geocentric gravitational parameter GM of Earth [m^3/s^2].
pub const EARTH_MU: f64 = 3.986004418e14;

/// Earth equatorial radius [m].
pub const EARTH_RADIUS: f64 = 6.378137e6;
