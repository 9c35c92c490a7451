//! Dual-species atom-interferometer mission analysis library.
//!
//! Models a satellite test of the universality of free fall with a
//! ⁸⁵Rb/⁸⁷Rb double-diffraction Mach-Zehnder interferometer on a highly
//! elliptical orbit:
//!
//! - [`geodesy`] — Kepler propagation, local gravity and gravity-gradient
//!   tensor, projection onto the inertially fixed sensitive axis.
//! - [`interferometer`] — scale factor, contrast, quantum-projection noise,
//!   pulse sensitivity/transfer function, common-mode suppression.
//! - [`systematics`] — the differential-acceleration bias budget and its
//!   correlated combination into an Eötvös-ratio error.
//! - [`statnoise`] — per-cycle statistical noise terms and their
//!   root-sum-square combination.
//! - [`mission`] — per-pass and mission-integrated Eötvös sensitivity.
//! - [`diffsignal`] — Monte-Carlo fringe generation and differential-phase
//!   extraction by constrained conic least squares.
//! - [`source_timeline`] — the condensate preparation sequence with
//!   duration / atom-number / temperature bookkeeping.

pub mod constants;
pub mod diffsignal;
pub mod geodesy;
pub mod interferometer;
pub mod mission;
pub mod nominal;
pub mod source_timeline;
pub mod statnoise;
pub mod systematics;

mod numeric;

pub use geodesy::{Attitude, GravityModel, OrbitElements, OrbitState};
pub use interferometer::{InterferometerConfig, PulseTiming, Species, SuppressionSpec};
pub use mission::{MissionPlan, PassResult};
pub use systematics::{Budget, BudgetTerm, EnvironmentSpec, OverlapState};
