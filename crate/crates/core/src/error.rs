use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain where the formula is defined.
    #[error("{name} = {value} is outside the allowed domain ({allowed})")]
    Domain {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },

    /// The Schottky-lowered barrier would drop below the Fermi level.
    #[error("field {field} eV/nm exceeds F_max = {max} eV/nm for this work function")]
    FieldTooLarge { field: f64, max: f64 },

    /// A bracketing root finder ran out of iterations.
    #[error("{what}: no convergence after {iterations} iterations, last bracket [{lo}, {hi}]")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
    },

    /// A bracket did not straddle a sign change.
    #[error("{what}: no sign change on [{lo}, {hi}]")]
    NoBracket {
        what: &'static str,
        lo: f64,
        hi: f64,
    },

    /// The fixed-point iteration for the transition voltage did not settle.
    #[error(
        "transition voltage iteration did not converge after {iterations} steps (last {last} eV)"
    )]
    TransitionVoltage { iterations: usize, last: f64 },

    #[error("ODE integration exceeded {cap} steps at y = {y}")]
    StepCap { cap: usize, y: f64 },

    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, allowed: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            allowed,
        }
    }
}
