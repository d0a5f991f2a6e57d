//! Dimensioned Fowler-Nordheim emission.
//!
//! In diode units the FN law is `j = a f² exp(−b/f)` with
//!
//! ```text
//! a = sqrt(μ R∞ V_o / Φ) / (π (μ + Φ))
//! b = (4/3) (L/a_o) (Φ/V_o) sqrt(Φ/R∞)
//! ```
//!
//! Image-charge lowering of the barrier enters through the effective work
//! function `Φ_eff = Φ v(y)^{2/3}` and the prefactor scale `C`.

use crate::diode::{self, EmissionModel, SolvedState, J_CL};
use crate::units::{DiodeConfig, Material, TABLE1, T_OF_Y0};
use crate::{Error, Result};
use std::f64::consts::PI;

const VTRANS_TOL: f64 = 0.5;
const VTRANS_MAX_ITER: usize = 100;
const PHI_EFF_TOL: f64 = 1e-6;
const PHI_EFF_MAX_ITER: usize = 50;

/// Dimensionless FN coefficients of `j = a f² exp(−b/f)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FnCoefficients {
    pub a: f64,
    pub b: f64,
}

impl FnCoefficients {
    pub fn model(&self) -> EmissionModel {
        EmissionModel::FowlerNordheim {
            a: self.a,
            b: self.b,
        }
    }

    /// `a e^{−b}`, the emission current at the vacuum field.
    pub fn vacuum_current(&self) -> f64 {
        self.a * (-self.b).exp()
    }
}

pub fn fn_coefficients(cfg: &DiodeConfig, mat: &Material) -> FnCoefficients {
    let k = &TABLE1;
    let (mu, phi, v) = (mat.mu, mat.phi, cfg.v_o);
    FnCoefficients {
        a: (mu * k.rydberg * v / phi).sqrt() / (PI * (mu + phi)),
        b: 4.0 / 3.0 * (cfg.gap / k.a_o) * (phi / v) * (phi / k.rydberg).sqrt(),
    }
}

/// Converged transition voltage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionVoltage {
    /// eV
    pub v_trans: f64,
    /// Number of fixed-point updates performed.
    pub iterations: usize,
}

/// Voltage at which the FN root sits on the degenerate point `f = 2/3`.
///
/// Iterates `V ← 2Φ (L/a_o) sqrt(Φ/R∞) / ln(2a(V))` until successive values
/// differ by less than 0.5 eV.
pub fn transition_voltage(gap: f64, mat: &Material, guess: f64) -> Result<TransitionVoltage> {
    if !(guess > 0.0 && guess.is_finite()) {
        return Err(Error::domain("guess", guess, "guess > 0"));
    }
    DiodeConfig::new(guess, gap)?;
    let k = &TABLE1;
    let numerator = 2.0 * mat.phi * (gap / k.a_o) * (mat.phi / k.rydberg).sqrt();
    let mut v = guess;
    for i in 1..=VTRANS_MAX_ITER {
        let a = fn_coefficients(&DiodeConfig { v_o: v, gap }, mat).a;
        let log = (2.0 * a).ln();
        if !(log > 0.0) {
            return Err(Error::TransitionVoltage {
                iterations: i,
                last: v,
            });
        }
        let next = numerator / log;
        if (next - v).abs() < VTRANS_TOL {
            return Ok(TransitionVoltage {
                v_trans: next,
                iterations: i,
            });
        }
        v = next;
    }
    Err(Error::TransitionVoltage {
        iterations: VTRANS_MAX_ITER,
        last: v,
    })
}

/// Image-charge lowering at a given cathode field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchottkyState {
    /// Cathode field (eV/nm).
    pub field: f64,
    /// `sqrt(4Q F)/Φ`
    pub y: f64,
    /// `(1 − y) Φ` (eV)
    pub phi_barrier: f64,
}

/// Largest field at which the lowered barrier stays above the Fermi level.
pub fn max_field(phi: f64) -> f64 {
    phi * phi / TABLE1.alpha_hbar_c()
}

pub fn schottky(field: f64, phi: f64) -> Result<SchottkyState> {
    if !(field >= 0.0 && field.is_finite()) {
        return Err(Error::domain("F", field, "F >= 0"));
    }
    if !(phi > 0.0) {
        return Err(Error::domain("Phi", phi, "Phi > 0"));
    }
    let max = max_field(phi);
    if field > max {
        return Err(Error::FieldTooLarge { field, max });
    }
    let y = (TABLE1.alpha_hbar_c() * field).sqrt() / phi;
    Ok(SchottkyState {
        field,
        y,
        phi_barrier: (1.0 - y) * phi,
    })
}

/// Approximation for the barrier function `v(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WorkFunctionModel {
    /// `1 − y²(1 − ln(y)/3)`
    #[default]
    Standard,
    /// `1 − y^{1.69}`
    PowerLaw,
}

impl WorkFunctionModel {
    pub fn v(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 1.0;
        }
        match self {
            Self::Standard => 1.0 - y * y * (1.0 - y.ln() / 3.0),
            Self::PowerLaw => 1.0 - y.powf(1.69),
        }
    }
}

/// `Φ v(y)^{2/3}` (eV).
pub fn effective_work_function(phi: f64, field: f64, model: WorkFunctionModel) -> Result<f64> {
    let s = schottky(field, phi)?;
    Ok(phi * model.v(s.y).max(0.0).powf(2.0 / 3.0))
}

/// Prefactor scale `C = sqrt(Φ_eff/μ)(μ + Φ_eff) / (4Φ t²)` with `t = 1.061`.
pub fn c_scale_factor(mat: &Material, field: f64, model: WorkFunctionModel) -> Result<f64> {
    let phi_eff = effective_work_function(mat.phi, field, model)?;
    Ok(c_from_phi_eff(mat, phi_eff, T_OF_Y0))
}

pub(crate) fn c_from_phi_eff(mat: &Material, phi_eff: f64, t: f64) -> f64 {
    (phi_eff / mat.mu).sqrt() * (mat.mu + phi_eff) / (4.0 * mat.phi * t * t)
}

/// Options for [`space_charge_fn_curve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveOptions {
    /// Replace `Φ` by `Φ_eff(F)` at the self-consistent cathode field.
    pub phi_eff: Option<WorkFunctionModel>,
    /// Multiplier applied to the space-charge current.
    pub c: f64,
}

impl Default for CurveOptions {
    fn default() -> Self {
        Self {
            phi_eff: None,
            c: 1.0,
        }
    }
}

/// One voltage of a current-voltage curve. Current densities in q·nm⁻²·fs⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// eV
    pub v: f64,
    /// FN current at the vacuum field `V/L`, no space charge.
    pub j_fn: f64,
    /// `C j J_o` with `j` from the self-consistent diode.
    pub j_sc: f64,
    /// Child-Langmuir limit.
    pub j_cl: f64,
    pub state: SolvedState,
    pub coefficients: FnCoefficients,
    /// Work function used for the coefficients (eV).
    pub phi_used: f64,
    /// Self-consistency iterations (1 without `Φ_eff`).
    pub iterations: usize,
}

/// Failure at a particular voltage of a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveError {
    pub v: f64,
    pub error: Error,
}

impl std::fmt::Display for CurveError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at V = {} eV: {}", self.v, self.error)
    }
}

impl std::error::Error for CurveError {}

/// Solve the space-charge limited FN diode at one voltage.
pub fn space_charge_fn_point(
    v: f64,
    gap: f64,
    mat: &Material,
    opts: &CurveOptions,
) -> Result<CurvePoint> {
    let cfg = DiodeConfig::new(v, gap)?;
    let j_scale = cfg.j_scale();
    let vacuum = cfg.vacuum_field();

    let (coefficients, state, phi_used, iterations) = match opts.phi_eff {
        None => {
            let c = fn_coefficients(&cfg, mat);
            (c, diode::solve(c.model())?, mat.phi, 1)
        }
        Some(model) => self_consistent_phi_eff(&cfg, mat, model)?,
    };
    let bare = match opts.phi_eff {
        None => coefficients,
        Some(model) => {
            let phi = effective_work_function(mat.phi, vacuum, model)?;
            fn_coefficients(&cfg, &Material { mu: mat.mu, phi })
        }
    };
    Ok(CurvePoint {
        v,
        j_fn: bare.vacuum_current() * j_scale,
        j_sc: opts.c * state.j * j_scale,
        j_cl: J_CL * j_scale,
        state,
        coefficients,
        phi_used,
        iterations,
    })
}

fn self_consistent_phi_eff(
    cfg: &DiodeConfig,
    mat: &Material,
    model: WorkFunctionModel,
) -> Result<(FnCoefficients, SolvedState, f64, usize)> {
    let vacuum = cfg.vacuum_field();
    let mut field = vacuum;
    let mut last_step = 0.0_f64;
    let mut damping = 1.0;
    for i in 1..=PHI_EFF_MAX_ITER {
        let phi = effective_work_function(mat.phi, field, model)?;
        let coeff = fn_coefficients(cfg, &Material { mu: mat.mu, phi });
        let state = diode::solve(coeff.model())?;
        let next = state.f * vacuum;
        let step = next - field;
        if step.abs() <= PHI_EFF_TOL * next.abs().max(f64::MIN_POSITIVE) {
            return Ok((coeff, state, phi, i));
        }
        if step * last_step < 0.0 {
            damping = 0.5;
        }
        field += damping * step;
        last_step = step;
    }
    Err(Error::NoConvergence {
        what: "effective work function",
        iterations: PHI_EFF_MAX_ITER,
        lo: field,
        hi: field,
    })
}

/// Current-voltage curve over a caller-supplied voltage grid (eV).
pub fn space_charge_fn_curve(
    voltages: &[f64],
    gap: f64,
    mat: &Material,
    opts: &CurveOptions,
) -> std::result::Result<Vec<CurvePoint>, CurveError> {
    voltages
        .iter()
        .map(|&v| space_charge_fn_point(v, gap, mat, opts).map_err(|error| CurveError { v, error }))
        .collect()
}

/// Fowler-Nordheim plot coordinates: `(1/V` in keV⁻¹, `ln(J/V²))` with `J`
/// in A/cm² and `V` in keV.
pub fn fn_plot_coordinates(v_ev: f64, j_emission: f64) -> (f64, f64) {
    let kev = v_ev / 1000.0;
    let j = crate::units::current_density_to_si(j_emission);
    (1.0 / kev, (j / (kev * kev)).ln())
}

/// Small-current correction `ε` in `j ≈ j(1)/(1 + ε)` for an FN diode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonReport {
    /// `j(1) = a e^{−b}`
    pub j1: f64,
    /// `(4/3) j'(1) = (4/3)(2 + b) a e^{−b}`
    pub epsilon: f64,
    /// `(8/3) a e^{−b}`, the form that drops `b` from `j'(1)`.
    pub epsilon_without_b: f64,
    /// `(1/3)(b + 2) J_FN/J_CL = (3/4)(b + 2) a e^{−b}`.
    pub epsilon_cl_ratio: f64,
    /// `j(1) > 0.1`: the expansion is outside its regime.
    pub regime_warning: bool,
}

pub fn epsilon_fn(cfg: &DiodeConfig, mat: &Material) -> EpsilonReport {
    let c = fn_coefficients(cfg, mat);
    let model = c.model();
    let j1 = c.vacuum_current();
    EpsilonReport {
        j1,
        epsilon: diode::small_current_epsilon(&model),
        epsilon_without_b: 8.0 / 3.0 * j1,
        epsilon_cl_ratio: (c.b + 2.0) / 3.0 * j1 / J_CL,
        regime_warning: j1 > 0.1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const MAT: Material = Material { mu: 7.0, phi: 4.0 };

    #[test]
    fn coefficients_example_and_scaling() {
        let cfg = DiodeConfig::new(1000.0, 1000.0).unwrap();
        let c = fn_coefficients(&cfg, &MAT);
        assert_abs_diff_eq!(c.a, 4.465_158_8, epsilon = 1e-6);
        let c2 = fn_coefficients(&DiodeConfig::new(2000.0, 1000.0).unwrap(), &MAT);
        assert_abs_diff_eq!(c2.a / c.a, 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(c2.b / c.b, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn transition_voltage_example() {
        let t = transition_voltage(1000.0, &MAT, 10_000.0).unwrap();
        assert!((t.v_trans - 21_953.0).abs() < 1.0, "{}", t.v_trans);
        assert!(t.iterations <= 12);
        let c = fn_coefficients(&DiodeConfig::new(t.v_trans, 1000.0).unwrap(), &MAT);
        let s = diode::solve(c.model()).unwrap();
        assert_abs_diff_eq!(s.f, 2.0 / 3.0, epsilon = 1e-3);
        assert_abs_diff_eq!(s.j, 2.0 / 9.0, epsilon = 1e-3);

        let longer = transition_voltage(2000.0, &MAT, 10_000.0).unwrap();
        assert!(longer.v_trans > t.v_trans);
        assert!(transition_voltage(1000.0, &MAT, -1.0).is_err());
    }

    #[test]
    fn schottky_examples() {
        let s = schottky(0.0, 4.0).unwrap();
        assert_eq!((s.y, s.phi_barrier), (0.0, 4.0));
        let s = schottky(1.0, 4.0).unwrap();
        assert_abs_diff_eq!(s.y, 0.3, epsilon = 1e-5);
        let edge = schottky(10.0, 3.8).unwrap();
        assert_abs_diff_eq!(edge.y, 1.0, epsilon = 2e-3);
        assert!(matches!(
            schottky(11.0, 3.8),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(schottky(-1.0, 4.0).is_err());
    }

    #[test]
    fn effective_work_function_examples() {
        assert_eq!(
            effective_work_function(4.0, 0.0, WorkFunctionModel::Standard).unwrap(),
            4.0
        );
        let fmax = max_field(4.0);
        let pl = effective_work_function(4.0, fmax, WorkFunctionModel::PowerLaw).unwrap();
        assert_abs_diff_eq!(pl, 0.0, epsilon = 1e-9);
        let e = effective_work_function(4.0, 3.0, WorkFunctionModel::Standard).unwrap();
        assert_abs_diff_eq!(e, 3.066_050_1, epsilon = 1e-6);
    }

    #[test]
    fn c_factor_symmetric_point() {
        let m = Material { mu: 5.0, phi: 5.0 };
        assert_abs_diff_eq!(c_from_phi_eff(&m, 5.0, 1.0), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn epsilon_properties() {
        let cfg = DiodeConfig::new(5000.0, 1000.0).unwrap();
        let e1 = epsilon_fn(&cfg, &MAT);
        // fixed F = V/L: quadruple V and L
        let e4 = epsilon_fn(&DiodeConfig::new(20_000.0, 4000.0).unwrap(), &MAT);
        assert_abs_diff_eq!(e4.epsilon / e1.epsilon, 2.0, epsilon = 1e-12);
        assert!(!e1.regime_warning);
        let report = epsilon_fn(&DiodeConfig::new(1e5, 1000.0).unwrap(), &MAT);
        assert!(report.regime_warning);
        // b = 0
        let m = EmissionModel::FowlerNordheim { a: 0.01, b: 0.0 };
        assert_abs_diff_eq!(
            diode::small_current_epsilon(&m),
            8.0 / 3.0 * 0.01,
            epsilon = 1e-16
        );
    }

    #[test]
    fn curve_limits() {
        let opts = CurveOptions::default();
        let low = space_charge_fn_point(3000.0, 1000.0, &MAT, &opts).unwrap();
        assert!(low.j_sc / low.j_fn > 0.99 && low.j_sc <= low.j_fn);
        let high = space_charge_fn_point(1e6, 1000.0, &MAT, &opts).unwrap();
        assert!(high.j_sc / high.j_cl > 0.9);
        let t = transition_voltage(1000.0, &MAT, 10_000.0).unwrap();
        let mid = space_charge_fn_point(t.v_trans, 1000.0, &MAT, &opts).unwrap();
        assert_abs_diff_eq!(mid.state.j, 2.0 / 9.0, epsilon = 1e-3);
    }

    #[test]
    fn phi_eff_loop_converges() {
        let opts = CurveOptions {
            phi_eff: Some(WorkFunctionModel::PowerLaw),
            c: 0.5,
        };
        for &v in &[2000.0, 5000.0, 8000.0, 11_000.0] {
            let p = space_charge_fn_point(v, 1000.0, &MAT, &opts).unwrap();
            assert!(p.iterations < PHI_EFF_MAX_ITER);
            assert!(p.phi_used < MAT.phi);
            let check = effective_work_function(
                MAT.phi,
                p.state.f * v / 1000.0,
                WorkFunctionModel::PowerLaw,
            )
            .unwrap();
            assert!((check / p.phi_used - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn curve_error_carries_voltage() {
        let opts = CurveOptions {
            phi_eff: Some(WorkFunctionModel::Standard),
            c: 1.0,
        };
        assert!(space_charge_fn_curve(&[1000.0, 5000.0], 1000.0, &MAT, &opts).is_ok());
        // vacuum field 20 eV/nm exceeds F_max for Φ = 4
        let err = space_charge_fn_curve(&[1000.0, 20_000.0], 1000.0, &MAT, &opts).unwrap_err();
        assert_eq!(err.v, 20_000.0);
        assert!(matches!(err.error, Error::FieldTooLarge { .. }));
    }

    #[test]
    fn fn_plot_axes() {
        let (x, y) = fn_plot_coordinates(2000.0, 1e-10);
        assert_abs_diff_eq!(x, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(y, (1.602_177f64 / 4.0).ln(), epsilon = 1e-12);
    }
}
