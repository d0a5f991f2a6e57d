//! Emission unit system: energies in eV, lengths in nm, times in fs, charge
//! in units of the elementary charge `q`. SI appears only at I/O boundaries.

use crate::{Error, Result};

/// Fundamental constants in emission units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Electron rest energy `m c²` (eV).
    pub m: f64,
    /// Speed of light (nm/fs).
    pub c: f64,
    /// Reduced Planck constant (eV·fs).
    pub hbar: f64,
    /// Unit charge (1 in these units).
    pub q: f64,
    /// Rydberg energy `R∞` (eV).
    pub rydberg: f64,
    /// Fine structure constant.
    pub alpha_fs: f64,
    /// Bohr radius (nm).
    pub a_o: f64,
    /// Vacuum permittivity (q²/(eV·nm)).
    pub eps0: f64,
    /// Image-charge constant `α ħ c / 4` (eV·nm).
    pub q_image: f64,
}

/// The constant set used throughout the crate.
///
/// `c` is 299.792 nm/fs; the value 2997.92 that sometimes appears in tables
/// is off by a factor of ten and breaks `a_o = ħ/(α m c)`.
pub const TABLE1: PhysicalConstants = PhysicalConstants {
    m: 510_999.0,
    c: 299.792,
    hbar: 0.658_212,
    q: 1.0,
    rydberg: 13.6057,
    alpha_fs: 1.0 / 137.036,
    a_o: 0.052_917_7,
    eps0: 5.526_35e-2,
    q_image: 0.359_991,
};

/// `t(y)` frozen at `t(y_o)`, `y_o = e^{-1/2}`.
pub const T_OF_Y0: f64 = 1.061;

/// 1 q·nm⁻²·fs⁻¹ expressed in A/cm².
pub const EMISSION_CURRENT_TO_A_PER_CM2: f64 = 1.602_177e10;

impl PhysicalConstants {
    /// Electron mass in eV·fs²/nm².
    pub fn mass(&self) -> f64 {
        self.m / (self.c * self.c)
    }

    /// `α ħ c = 4Q` (eV·nm), the Schottky lowering constant.
    pub fn alpha_hbar_c(&self) -> f64 {
        4.0 * self.q_image
    }

    /// Relative mismatch of the derived entries (`a_o` and `Q`) against
    /// their defining formulas.
    pub fn self_consistency(&self) -> (f64, f64) {
        let a_o = self.hbar * self.c / (self.alpha_fs * self.m);
        let q = self.alpha_fs * self.hbar * self.c / 4.0;
        (
            (a_o - self.a_o).abs() / self.a_o,
            (q - self.q_image).abs() / self.q_image,
        )
    }
}

/// Anode potential energy `V_o` (eV, i.e. q × volts) and gap `L` (nm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiodeConfig {
    pub v_o: f64,
    pub gap: f64,
}

impl DiodeConfig {
    pub fn new(v_o: f64, gap: f64) -> Result<Self> {
        if !(v_o > 0.0 && v_o.is_finite()) {
            return Err(Error::domain("V_o", v_o, "V_o > 0"));
        }
        if !(gap > 0.0 && gap.is_finite()) {
            return Err(Error::domain("L", gap, "L > 0"));
        }
        Ok(Self { v_o, gap })
    }

    /// Vacuum field `V_o/L` (eV/nm).
    pub fn vacuum_field(&self) -> f64 {
        self.v_o / self.gap
    }

    /// Current scale `J_o = (9/4) J_cl` (q·nm⁻²·fs⁻¹).
    pub fn j_scale(&self) -> f64 {
        j_scale(self)
    }

    /// Child-Langmuir current density `(4/9) J_o`.
    pub fn j_child_langmuir(&self) -> f64 {
        4.0 / 9.0 * self.j_scale()
    }
}

/// Chemical potential `μ` and work function `Φ` (both eV).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub mu: f64,
    pub phi: f64,
}

impl Material {
    pub const COPPER_LIKE: Material = Material { mu: 7.0, phi: 4.5 };

    pub fn new(mu: f64, phi: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::domain("mu", mu, "mu > 0"));
        }
        if !(phi > 0.0 && phi.is_finite()) {
            return Err(Error::domain("Phi", phi, "Phi > 0"));
        }
        Ok(Self { mu, phi })
    }
}

/// `J_o = sqrt(2/m) ε0 V_o^{3/2} / (q L²)` in q·nm⁻²·fs⁻¹.
pub fn j_scale(cfg: &DiodeConfig) -> f64 {
    let k = &TABLE1;
    (2.0 / k.mass()).sqrt() * k.eps0 * cfg.v_o.powf(1.5) / (k.q * cfg.gap * cfg.gap)
}

pub fn current_density_to_si(j_emission: f64) -> f64 {
    j_emission * EMISSION_CURRENT_TO_A_PER_CM2
}

pub fn current_density_from_si(j_a_per_cm2: f64) -> f64 {
    j_a_per_cm2 / EMISSION_CURRENT_TO_A_PER_CM2
}
