//! Space-charge effects in field emission, one-dimensional theory.
//!
//! The crate is organised bottom-up:
//!
//! * [`units`] holds the emission unit system (eV, nm, fs, q) and the diode
//!   configuration that produces the current scale `J_o`.
//! * [`diode`] is the dimensionless 1D diode: the universal current-field
//!   relation `j(f)`, exact solvers for linear, quadratic and Fowler-Nordheim
//!   emission laws, the potential profile and the limiting-regime expansions.
//! * [`emission`] carries the dimensioned Fowler-Nordheim physics: the `(a, b)`
//!   coefficients, the transition voltage, Schottky lowering, the effective
//!   work function and full current-voltage curves with space charge.
//! * [`lattice`] sums the potential and field of a periodic emitter array with
//!   analytic tails and measures how quickly the array looks one-dimensional.
//! * [`saturn`] is the gated emitter (point charge plus ring) multipole series.
//! * [`oracle`] contains verification engines that share no code path with
//!   the closed forms: shooting integration of the diode ODE, brute-force and
//!   reciprocal-space lattice sums.

pub mod diode;
pub mod emission;
mod error;
pub mod lattice;
pub mod oracle;
pub mod roots;
pub mod saturn;
pub mod units;

pub use diode::{EmissionModel, SolvedState};
pub use emission::{FnCoefficients, SchottkyState, WorkFunctionModel};
pub use error::{Error, Result};
pub use lattice::{ArrayModel, FieldPoint, LatticeGeometry, Truncation};
pub use saturn::SaturnConfig;
pub use units::{DiodeConfig, Material, PhysicalConstants, TABLE1};
