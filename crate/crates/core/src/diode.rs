//! The dimensionless planar diode.
//!
//! With `φ = V/V_o`, `y = x/L`, `j = J/J_o` and the cathode field written as
//! `F = f V_o/L`, Poisson's equation becomes `φ'' = j/√φ`. Its first integral
//! with `φ(0) = 0`, `φ'(0) = f` and the anode condition `φ(1) = 1` fix `j` as a
//! function of `f` alone:
//!
//! ```text
//! j(f) = [2 + (2 − 3f)·sqrt(1 + 3f)] / 9,      0 ≤ f ≤ 1
//! ```
//!
//! That relation is the single source of truth here. Emission laws `j(f)` at
//! the cathode (linear, quadratic, Fowler-Nordheim) are intersected with it.

use crate::units::{DiodeConfig, TABLE1};
use crate::{roots, Error, Result};

/// Child-Langmuir limit in `J_o` units.
pub const J_CL: f64 = 4.0 / 9.0;

/// Inputs above `1 + FIELD_CLAMP` are rejected, inputs in `(1, 1 + FIELD_CLAMP]`
/// are read as 1.
pub const FIELD_CLAMP: f64 = 1e-12;

const FN_FLOOR: f64 = 1e-12;
const FN_SCAN_POINTS: usize = 64;
const FN_TOL: f64 = 1e-14;
const MAX_BISECTIONS: usize = 200;

/// Self-consistent cathode field and current density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolvedState {
    /// Cathode field in units of the vacuum field `V_o/L`.
    pub f: f64,
    /// Current density in units of `J_o`.
    pub j: f64,
}

impl SolvedState {
    pub fn new(f: f64, j: f64) -> Result<Self> {
        let f = clamp_field(f)?;
        if !(0.0..=J_CL * (1.0 + 1e-12)).contains(&j) {
            return Err(Error::domain("j", j, "0 <= j <= 4/9"));
        }
        if f == 0.0 && j == 0.0 {
            return Err(Error::Invalid {
                what: "state",
                reason: "f and j cannot both vanish".into(),
            });
        }
        Ok(Self { f, j })
    }

    /// `9j/4`, the fraction of the Child-Langmuir limit.
    pub fn cl_fraction(&self) -> f64 {
        self.j / J_CL
    }

    /// Dimensioned cathode field (eV/nm).
    pub fn field(&self, cfg: &DiodeConfig) -> f64 {
        self.f * cfg.vacuum_field()
    }

    /// Dimensioned current density (q·nm⁻²·fs⁻¹).
    pub fn current_density(&self, cfg: &DiodeConfig) -> f64 {
        self.j * cfg.j_scale()
    }
}

/// Current-field law at the cathode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EmissionModel {
    /// `j = a f`
    Linear { a: f64 },
    /// `j = a f²`
    Quadratic { a: f64 },
    /// `j = a f² exp(−b/f)`
    FowlerNordheim { a: f64, b: f64 },
}

impl EmissionModel {
    pub fn a(&self) -> f64 {
        match *self {
            Self::Linear { a } | Self::Quadratic { a } | Self::FowlerNordheim { a, .. } => a,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.a();
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::domain("a", a, "a >= 0"));
        }
        if let Self::FowlerNordheim { b, .. } = *self {
            if !(b >= 0.0 && b.is_finite()) {
                return Err(Error::domain("b", b, "b >= 0"));
            }
        }
        Ok(())
    }

    /// Emitted current `j(f)` in `J_o` units.
    pub fn current(&self, f: f64) -> f64 {
        match *self {
            Self::Linear { a } => a * f,
            Self::Quadratic { a } => a * f * f,
            Self::FowlerNordheim { a, b } => {
                if f <= 0.0 {
                    0.0
                } else {
                    a * f * f * (-b / f).exp()
                }
            }
        }
    }

    /// `dj/df`.
    pub fn derivative(&self, f: f64) -> f64 {
        match *self {
            Self::Linear { a } => a,
            Self::Quadratic { a } => 2.0 * a * f,
            Self::FowlerNordheim { a, b } => {
                if f <= 0.0 {
                    0.0
                } else {
                    a * (2.0 * f + b) * (-b / f).exp()
                }
            }
        }
    }
}

fn clamp_field(f: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&f) {
        Ok(f)
    } else if f > 1.0 && f <= 1.0 + FIELD_CLAMP {
        Ok(1.0)
    } else {
        Err(Error::domain("f", f, "0 <= f <= 1"))
    }
}

/// Universal current-field relation of the diode.
pub fn universal_j(f: f64) -> Result<f64> {
    let f = clamp_field(f)?;
    Ok(universal_j_unchecked(f))
}

pub(crate) fn universal_j_unchecked(f: f64) -> f64 {
    let s = (1.0 + 3.0 * f).sqrt();
    if f < 2.0 / 3.0 {
        (2.0 + (2.0 - 3.0 * f) * s) / 9.0
    } else {
        // 2 + (2 − 3f)s = 27 f²(1 − f) / (2 − (2 − 3f)s); avoids cancellation as f → 1.
        3.0 * f * f * (1.0 - f) / (2.0 + (3.0 * f - 2.0) * s)
    }
}

/// Residuals of the exact diode relation and of its square-root-free form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactResiduals {
    /// `(4j + f²)^{1/2}(2j − f²) + f³ − 6j²`
    pub exact: f64,
    /// `3f²(1 − f) − j(4 − 9j)`; also vanishes on a spurious branch.
    pub rationalized: f64,
}

pub fn verify_exact_relation(f: f64, j: f64) -> ExactResiduals {
    ExactResiduals {
        exact: (4.0 * j + f * f).sqrt() * (2.0 * j - f * f) + f * f * f - 6.0 * j * j,
        rationalized: 3.0 * f * f * (1.0 - f) - j * (4.0 - 9.0 * j),
    }
}

/// Self-consistent state for an emission law.
pub fn solve(model: EmissionModel) -> Result<SolvedState> {
    model.validate()?;
    let (f, j) = match model {
        EmissionModel::Linear { a } => {
            let f = linear_field(a);
            (f, a * f)
        }
        EmissionModel::Quadratic { a } => {
            let f = quadratic_field(a);
            (f, a * f * f)
        }
        EmissionModel::FowlerNordheim { .. } => {
            let f = fowler_nordheim_field(&model)?;
            (f, model.current(f))
        }
    };
    Ok(SolvedState { f, j })
}

/// Physical root of `3f²(1 − f) = af(4 − 9af)`.
fn linear_field(a: f64) -> f64 {
    let s = (1.0 + 2.0 * a / 3.0 + a * a).sqrt();
    let p = 1.0 + 3.0 * a * a;
    let q = (1.0 - 3.0 * a) * s;
    if a <= 1.0 / 3.0 {
        0.5 * (p + q)
    } else {
        // p² − q² = 16a/3
        (8.0 * a / 3.0) / (p - q)
    }
}

/// Physical root of `3(1 − f) = a(4 − 9af²)`.
fn quadratic_field(a: f64) -> f64 {
    let s = (1.0 + 4.0 * a).sqrt();
    if a < 0.5 {
        // [1 − (1 − 2a)s]/(6a²) with the 0/0 at a = 0 removed
        2.0 * (3.0 - 4.0 * a) / (3.0 * (1.0 + (1.0 - 2.0 * a) * s))
    } else {
        (1.0 + (2.0 * a - 1.0) * s) / (6.0 * a * a)
    }
}

fn fowler_nordheim_field(model: &EmissionModel) -> Result<f64> {
    let g = |f: f64| universal_j_unchecked(f) - model.current(f);
    if g(1.0) >= 0.0 {
        // only when a·e^{−b} underflows or a = 0
        return Ok(1.0);
    }
    let grid = roots::log_space(FN_FLOOR, 1.0, FN_SCAN_POINTS);
    let values: Vec<f64> = grid.iter().map(|&f| g(f)).collect();
    let k = (0..grid.len() - 1)
        .rev()
        .find(|&i| values[i] > 0.0 && values[i + 1] <= 0.0)
        .ok_or(Error::NoBracket {
            what: "Fowler-Nordheim field",
            lo: FN_FLOOR,
            hi: 1.0,
        })?;
    roots::bisect(
        "Fowler-Nordheim field",
        g,
        grid[k],
        grid[k + 1],
        FN_TOL,
        MAX_BISECTIONS,
    )
}

/// Small-current approximation of `j`.
///
/// Linear and quadratic laws use their closed expansions; Fowler-Nordheim
/// uses `j(1)/(1 + (4/3) j'(1))`.
pub fn solve_small_a(model: EmissionModel) -> f64 {
    match model {
        EmissionModel::Linear { a } => a / (1.0 + 4.0 * a / 3.0 + 5.0 * a * a / 9.0),
        EmissionModel::Quadratic { a } => a / (1.0 + 8.0 * a / 3.0 - 2.0 * a * a / 3.0),
        EmissionModel::FowlerNordheim { .. } => {
            model.current(1.0) / (1.0 + small_current_epsilon(&model))
        }
    }
}

/// `ε = (4/3) j'(1)`, the denominator correction for small currents.
pub fn small_current_epsilon(model: &EmissionModel) -> f64 {
    4.0 / 3.0 * model.derivative(1.0)
}

/// Second-order expansion of `j(f)` about `f = 1`.
pub fn small_current_expansion(f: f64) -> f64 {
    let d = 1.0 - f;
    0.75 * d - 15.0 / 64.0 * d * d
}

/// Large-current approximation of `j`.
///
/// Linear and quadratic laws have closed forms. Fowler-Nordheim needs the
/// solved field, then `j ≈ 4/9 − (3/4) f²`.
pub fn solve_large_a(model: EmissionModel) -> Result<f64> {
    match model {
        EmissionModel::Linear { a } => Ok(4.0 / (9.0 + 3.0 / (a * a))),
        EmissionModel::Quadratic { a } => Ok(4.0 / (9.0 + 27.0 / (4.0 * a))),
        EmissionModel::FowlerNordheim { .. } => Ok(large_current_leading(solve(model)?.f)),
    }
}

/// `4/9 − (3/4) f²`
pub fn large_current_leading(f: f64) -> f64 {
    J_CL - 0.75 * f * f
}

/// `4/9 − f²(2 + s)/(1 + s)²` with `s = sqrt(3f + 1)`; identical to
/// [`universal_j`] on `[0, 1]`.
pub fn large_current_exact(f: f64) -> f64 {
    let s = (3.0 * f + 1.0).sqrt();
    J_CL - f * f * (2.0 + s) / ((1.0 + s) * (1.0 + s))
}

/// Leading-order field for weak emission, `1 − 4a/3`, valid for `a ≪ 1`.
pub fn small_f_leading(a: f64) -> f64 {
    1.0 - 4.0 * a / 3.0
}

/// Normalised potential `φ(y)` across the gap for a solved state.
///
/// Solves the second integral of the field equation for `u = √φ`. Written as
/// `(4/3) u² (s + 2f)/(s + f)² = y` with `s = sqrt(f² + 4ju)`, which is the
/// same relation divided through by `6j²` and has no cancellation at small `j`.
pub fn potential_profile(state: &SolvedState, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain("y", y, "0 <= y <= 1"));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y == 1.0 {
        return Ok(1.0);
    }
    let (f, j) = (state.f, state.j);
    let lambda = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        let s = (f * f + 4.0 * j * u).sqrt();
        4.0 / 3.0 * u * u * (s + 2.0 * f) / ((s + f) * (s + f))
    };
    if lambda(1.0) <= y {
        return Ok(1.0);
    }
    let u = roots::bisect(
        "potential profile",
        |u| lambda(u) - y,
        0.0,
        1.0,
        1e-16,
        MAX_BISECTIONS,
    )?;
    Ok(u * u)
}

/// `∂j/∂a` at fixed cathode field.
pub fn partial_j_partial_a(model: EmissionModel, f: f64) -> f64 {
    match model {
        EmissionModel::Linear { .. } => f,
        EmissionModel::Quadratic { .. } => f * f,
        EmissionModel::FowlerNordheim { b, .. } => {
            if f <= 0.0 {
                0.0
            } else {
                f * f * (-b / f).exp()
            }
        }
    }
}

/// Cathode field (eV/nm) just below the Child-Langmuir limit, from
/// `F² ≈ sqrt(8 m q²/(9 ε0²)) V_o^{1/2} [J_cl − J]`.
pub fn near_cl_field(cfg: &DiodeConfig, current_density: f64) -> Result<f64> {
    let j_cl = cfg.j_child_langmuir();
    if current_density > j_cl * (1.0 + 1e-12) {
        return Err(Error::domain("J", current_density, "J <= J_cl(V_o, L)"));
    }
    let k = &TABLE1;
    let coeff = (8.0 * k.mass() * k.q * k.q / (9.0 * k.eps0 * k.eps0)).sqrt();
    let deficit = (j_cl - current_density).max(0.0);
    Ok((coeff * cfg.v_o.sqrt() * deficit).sqrt())
}
