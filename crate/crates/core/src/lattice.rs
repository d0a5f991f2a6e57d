//! Periodic square array of emitter tips.
//!
//! Each tip is a point charge with an image of opposite sign. All lengths are
//! in units of the pitch `a_tt`. Potentials are returned in units of
//! `λ/(ε0 a_tt)` and fields in units of `F_o = λ/(ε0 a_tt²)` before the
//! geometry scales are applied, so a uniform sheet of tips gives `F_z = 1`.
//!
//! Two charge layouts share one kernel. For a charge at height `0` and an
//! image term at distance `far` from the field point, with `near` the distance
//! to the charge plane:
//!
//! * monopole: `near = z`, `far = N − z` (anode plane at `N/2`)
//! * dipole: `near = z + d`, `far = d − z`
//!
//! The infinite sum is cut at disk radius `M`. [`Truncation::SharpDisk`] adds
//! the continuum integral beyond `M`. [`Truncation::SmoothDisk`] rolls the sum
//! off with an error-function window and integrates the complementary weight
//! exactly, which removes the disk-edge error that otherwise swamps small
//! ripples.

use crate::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

/// How the lattice sum is cut off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Sites with `j² + k² < M²`, then the analytic integral beyond `M`.
    SharpDisk,
    /// Same sites weighted by a smooth radial window, plus the continuum
    /// integral of the complementary weight.
    #[default]
    SmoothDisk,
}

/// Charge layout of a tip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArrayModel {
    /// Point charge at the cathode with an image at `z = N`.
    #[default]
    Monopole,
    /// `±` pair at `z = ∓d` in a background field.
    Dipole,
}

/// The lattice quantity being summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Potential,
    FieldZ,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeGeometry {
    /// Image index; the anode plane sits at `z = N/2`.
    pub n: f64,
    /// Disk radius.
    pub m: f64,
    /// Dipole half-spacing.
    pub d: f64,
    pub truncation: Truncation,
    /// `a_tt` (nm).
    pub pitch: f64,
    /// `F_o = λ/(ε0 a_tt²)`; 1 gives outputs in `F_o` units.
    pub field_scale: f64,
}

impl LatticeGeometry {
    pub fn monopole(n: f64, m: f64) -> Result<Self> {
        if !(n >= 1.0 && n.is_finite()) {
            return Err(Error::domain("N", n, "N >= 1"));
        }
        Self::with_radius(m).map(|g| Self { n, ..g })
    }

    pub fn dipole(m: f64, d: f64) -> Result<Self> {
        if !(d > 0.0 && d < 1.0) {
            return Err(Error::domain("d", d, "0 < d < 1"));
        }
        Self::with_radius(m).map(|g| Self { d, n: 2.0 * d, ..g })
    }

    fn with_radius(m: f64) -> Result<Self> {
        if !(m >= 1.0 && m.is_finite()) {
            return Err(Error::domain("M", m, "M >= 1"));
        }
        Ok(Self {
            n: 1.0,
            m,
            d: 0.5,
            truncation: Truncation::default(),
            pitch: 1.0,
            field_scale: 1.0,
        })
    }

    pub fn with_truncation(self, truncation: Truncation) -> Self {
        Self { truncation, ..self }
    }

    pub fn with_scales(self, pitch: f64, field_scale: f64) -> Self {
        Self {
            pitch,
            field_scale,
            ..self
        }
    }

    /// `F_o a_tt`, the potential unit.
    pub fn potential_scale(&self) -> f64 {
        self.field_scale * self.pitch
    }

    /// Lattice sites `j² + k² < M²`, ordered by shell then `(j, k)`.
    pub fn sites(&self) -> Vec<(i64, i64)> {
        let r = self.m.ceil() as i64;
        let m2 = self.m * self.m;
        let mut sites: Vec<(i64, i64)> = (-r..=r)
            .flat_map(|j| (-r..=r).map(move |k| (j, k)))
            .filter(|&(j, k)| ((j * j + k * k) as f64) < m2)
            .collect();
        sites.sort_by_key(|&(j, k)| (j * j + k * k, j, k));
        sites
    }
}

/// Observation point in units of `a_tt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FieldPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn on_axis(z: f64) -> Self {
        Self::new(0.0, 0.0, z)
    }

    /// Cell corner `(1/2, 1/2, z)`, halfway between four tips.
    pub fn corner(z: f64) -> Self {
        Self::new(0.5, 0.5, z)
    }

    /// `x` and `y` folded into `[−1/2, 1/2]`.
    pub fn reduced(&self) -> Self {
        Self {
            x: self.x - self.x.round(),
            y: self.y - self.y.round(),
            z: self.z,
        }
    }
}

/// Vertical distances defining the pair kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairKernel {
    pub near: f64,
    pub far: f64,
}

impl PairKernel {
    pub fn new(geom: &LatticeGeometry, model: ArrayModel, z: f64) -> Self {
        match model {
            ArrayModel::Monopole => Self {
                near: z,
                far: geom.n - z,
            },
            ArrayModel::Dipole => Self {
                near: z + geom.d,
                far: geom.d - z,
            },
        }
    }

    /// `1/R_c − 1/R_a` in the form `(far² − near²)/(R_c R_a (R_c + R_a))`.
    pub fn potential(&self, rho2: f64) -> f64 {
        let (n2, f2) = (self.near * self.near, self.far * self.far);
        let rc = (rho2 + n2).sqrt();
        let ra = (rho2 + f2).sqrt();
        (f2 - n2) / (rc * ra * (rc + ra))
    }

    /// `near/R_c³ + far/R_a³`
    pub fn field(&self, rho2: f64) -> f64 {
        let rc2 = rho2 + self.near * self.near;
        let ra2 = rho2 + self.far * self.far;
        self.near / (rc2 * rc2.sqrt()) + self.far / (ra2 * ra2.sqrt())
    }

    pub fn eval(&self, q: Quantity, rho2: f64) -> f64 {
        match q {
            Quantity::Potential => self.potential(rho2),
            Quantity::FieldZ => self.field(rho2),
        }
    }

    /// `P(ρ)` with `dP/dρ = ρ K(ρ²)` and `P(∞) = 0`.
    pub fn antiderivative(&self, q: Quantity, rho: f64) -> f64 {
        let (n2, f2) = (self.near * self.near, self.far * self.far);
        let rc = (rho * rho + n2).sqrt();
        let ra = (rho * rho + f2).sqrt();
        match q {
            Quantity::Potential => (n2 - f2) / (rc + ra),
            Quantity::FieldZ => -self.near / rc - self.far / ra,
        }
    }

    /// Continuum contribution beyond radius `M`: `−P(M)/2`.
    pub fn sharp_tail(&self, q: Quantity, m: f64) -> f64 {
        -0.5 * self.antiderivative(q, m)
    }
}

fn validate_height(geom: &LatticeGeometry, model: ArrayModel, z: f64) -> Result<()> {
    match model {
        ArrayModel::Monopole if !(z > 0.0 && z <= 0.5 * geom.n) => {
            Err(Error::domain("z", z, "0 < z <= N/2"))
        }
        ArrayModel::Dipole if !(z >= 0.0 && z.is_finite()) => Err(Error::domain("z", z, "z >= 0")),
        _ => Ok(()),
    }
}

/// `(1/4π) Σ K + tail` at `p`, in `λ/(ε0 a_tt)` or `F_o` units.
pub fn lattice_sum(
    geom: &LatticeGeometry,
    model: ArrayModel,
    p: &FieldPoint,
    q: Quantity,
) -> Result<f64> {
    validate_height(geom, model, p.z)?;
    let p = p.reduced();
    let kernel = PairKernel::new(geom, model, p.z);
    let sites = geom.sites();
    let rho2 = |j: i64, k: i64| {
        let dx = j as f64 - p.x;
        let dy = k as f64 - p.y;
        dx * dx + dy * dy
    };
    let total = match geom.truncation {
        Truncation::SharpDisk => {
            let s: f64 = sites.iter().map(|&(j, k)| kernel.eval(q, rho2(j, k))).sum();
            s / (4.0 * PI) + kernel.sharp_tail(q, geom.m)
        }
        Truncation::SmoothDisk => {
            let window = Window::new(geom.m);
            let s: f64 = sites
                .iter()
                .map(|&(j, k)| {
                    let r = ((j * j + k * k) as f64).sqrt();
                    window.weight(r) * kernel.eval(q, rho2(j, k))
                })
                .sum();
            (s + window.complement(&kernel, q, p.x, p.y)) / (4.0 * PI)
        }
    };
    Ok(total)
}

/// Radial roll-off `w(r) = erfc((r − r_mid)/(√2 σ))/2` for `r < M`, 0 beyond.
#[derive(Debug, Clone, Copy)]
struct Window {
    m: f64,
    sigma: f64,
    r_mid: f64,
}

const WINDOW_WIDTHS: f64 = 16.0;
const WINDOW_OFFSET: f64 = 7.0;
const WINDOW_INNER: f64 = 8.5;
const ANGULAR_POINTS: usize = 64;
const GAUSS_NODES: usize = 16;

impl Window {
    fn new(m: f64) -> Self {
        let sigma = m / WINDOW_WIDTHS;
        Self {
            m,
            sigma,
            r_mid: m - WINDOW_OFFSET * sigma,
        }
    }

    fn weight(&self, r: f64) -> f64 {
        if r >= self.m {
            0.0
        } else {
            0.5 * libm::erfc((r - self.r_mid) * FRAC_1_SQRT_2 / self.sigma)
        }
    }

    /// `∫ (1 − w(|s|)) K(|s − p|) d²s` over the plane.
    fn complement(&self, kernel: &PairKernel, q: Quantity, x: f64, y: f64) -> f64 {
        let offset = x.hypot(y);
        let lo = (self.r_mid - WINDOW_INNER * self.sigma - offset).max(0.0);
        let hi = self.m + offset;
        let (nodes, weights) = gauss_legendre();
        let panels = ((hi - lo) / (0.5 * self.sigma)).ceil().max(1.0) as usize;
        let width = (hi - lo) / panels as f64;
        let dtheta = 2.0 * PI / ANGULAR_POINTS as f64;
        let mut integral = 0.0;
        for i in 0..panels {
            let a = lo + i as f64 * width;
            for (t, wt) in nodes.iter().zip(weights) {
                let rho = a + 0.5 * width * (t + 1.0);
                let omega: f64 = (0..ANGULAR_POINTS)
                    .map(|k| {
                        let th = k as f64 * dtheta;
                        let r = (x + rho * th.cos()).hypot(y + rho * th.sin());
                        1.0 - self.weight(r)
                    })
                    .sum::<f64>()
                    * dtheta;
                integral += 0.5 * width * wt * rho * kernel.eval(q, rho * rho) * omega;
            }
        }
        integral - 2.0 * PI * kernel.antiderivative(q, hi)
    }
}

fn gauss_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(GAUSS_NODES))
}

/// Nodes and weights on `[−1, 1]` by Newton iteration on `P_n`.
pub(crate) fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

/// Potential of the monopole array (eV): `V_0 + F_o a_tt · Σ`.
pub fn monopole_potential(geom: &LatticeGeometry, p: &FieldPoint, v_0: f64) -> Result<f64> {
    let s = lattice_sum(geom, ArrayModel::Monopole, p, Quantity::Potential)?;
    Ok(v_0 + geom.potential_scale() * s)
}

/// `F_z` of the monopole array, in units of `geom.field_scale`.
pub fn monopole_field_z(geom: &LatticeGeometry, p: &FieldPoint) -> Result<f64> {
    Ok(geom.field_scale * lattice_sum(geom, ArrayModel::Monopole, p, Quantity::FieldZ)?)
}

/// Dipole array in a background field: `background · z a_tt + F_o a_tt · Σ`.
pub fn dipole_potential(geom: &LatticeGeometry, p: &FieldPoint, background: f64) -> Result<f64> {
    let s = lattice_sum(geom, ArrayModel::Dipole, p, Quantity::Potential)?;
    Ok(background * p.z * geom.pitch + geom.potential_scale() * s)
}

/// `F_z` of the dipole array plus the background field.
pub fn dipole_field_z(geom: &LatticeGeometry, p: &FieldPoint, background: f64) -> Result<f64> {
    Ok(background + geom.field_scale * lattice_sum(geom, ArrayModel::Dipole, p, Quantity::FieldZ)?)
}

/// On-axis field of a uniformly charged disk of radius `M` with its image,
/// `1 − z/(2 sqrt(M² + z²)) − (N − z)/(2 sqrt(M² + (N − z)²))`.
pub fn disk_field_closed_form(n: f64, m: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < n) {
        return Err(Error::domain("z", z, "0 < z < N"));
    }
    let w = n - z;
    Ok(1.0 - z / (2.0 * (m * m + z * z).sqrt()) - w / (2.0 * (m * m + w * w).sqrt()))
}

/// On-axis versus cell-corner contrast.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ripple {
    pub r_phi: f64,
    pub r_f: f64,
}

/// `R = S(0, 0, z)/S(1/2, 1/2, z) − 1` for potential and field.
///
/// For the dipole model the field includes the unit background; the
/// potential is the lattice term alone.
pub fn ripple_metrics(geom: &LatticeGeometry, z: f64, model: ArrayModel) -> Result<Ripple> {
    let centre = FieldPoint::on_axis(z);
    let corner = FieldPoint::corner(z);
    let background = match model {
        ArrayModel::Monopole => 0.0,
        ArrayModel::Dipole => 1.0,
    };
    let pot = |p: &FieldPoint| lattice_sum(geom, model, p, Quantity::Potential);
    let field = |p: &FieldPoint| {
        Ok::<_, Error>(background + lattice_sum(geom, model, p, Quantity::FieldZ)?)
    };
    Ok(Ripple {
        r_phi: pot(&centre)? / pot(&corner)? - 1.0,
        r_f: field(&centre)? / field(&corner)? - 1.0,
    })
}

/// One sample of a diagonal scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalSample {
    /// Position along `x = y` as a fraction of the half-diagonal `√2 M`.
    pub s: f64,
    pub x: f64,
    /// Normalised `F_z` (background included for the dipole model).
    pub f_z: f64,
}

/// `F_z` along `x = y` from `−M` to `M` at height `z`.
pub fn diagonal_scan(
    geom: &LatticeGeometry,
    model: ArrayModel,
    z: f64,
    samples: usize,
) -> Result<Vec<DiagonalSample>> {
    let background = match model {
        ArrayModel::Monopole => 0.0,
        ArrayModel::Dipole => 1.0,
    };
    crate::roots::lin_space(-geom.m, geom.m, samples)
        .into_iter()
        .map(|x| {
            let f = lattice_sum(geom, model, &FieldPoint::new(x, x, z), Quantity::FieldZ)?;
            Ok(DiagonalSample {
                s: x / geom.m,
                x,
                f_z: background + f,
            })
        })
        .collect()
}

/// Normalised potential on an `n × n` grid over the unit cell `[−1/2, 1/2]²`,
/// as `(x, y, value)` in row-major order.
pub fn potential_map(
    geom: &LatticeGeometry,
    model: ArrayModel,
    z: f64,
    n: usize,
) -> Result<Vec<(f64, f64, f64)>> {
    let axis = crate::roots::lin_space(-0.5, 0.5, n);
    let mut out = Vec::with_capacity(n * n);
    for &y in &axis {
        for &x in &axis {
            let v = lattice_sum(geom, model, &FieldPoint::new(x, y, z), Quantity::Potential)?;
            out.push((x, y, v));
        }
    }
    Ok(out)
}
