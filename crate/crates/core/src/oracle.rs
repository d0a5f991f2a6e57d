//! Verification engines that share no code with the closed forms.
//!
//! * [`shoot`] integrates `dφ/dy = sqrt(4j√φ + f²)` from the cathode with an
//!   adaptive Dormand-Prince 5(4) pair and reports `φ(1)`.
//! * [`brute_lattice_sum`] is the naive double sum `1/R_c − 1/R_a` over a disk.
//! * [`fourier_lattice_sum`] evaluates the infinite lattice in reciprocal space.

use crate::lattice::{ArrayModel, FieldPoint, LatticeGeometry};
use crate::{Error, Result};
use std::f64::consts::PI;

const STEP_CAP: usize = 1_000_000;
const SINGULAR_START: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingResult {
    /// `φ(1)`
    pub phi_end: f64,
    /// Accepted steps.
    pub steps: usize,
    /// Largest accepted local error estimate.
    pub max_residual: f64,
}

/// Shooting integration with the default tolerance `1e-12`.
pub fn shoot(f: f64, j: f64) -> Result<ShootingResult> {
    shoot_with_tol(f, j, 1e-12)
}

pub fn shoot_with_tol(f: f64, j: f64, tol: f64) -> Result<ShootingResult> {
    if !(f >= 0.0 && j >= 0.0) || (f == 0.0 && j == 0.0) {
        return Err(Error::Invalid {
            what: "shooting input",
            reason: format!("need f >= 0, j >= 0, not both zero (f = {f}, j = {j})"),
        });
    }
    if j == 0.0 {
        // no charge in the gap: φ' = f throughout
        return Ok(ShootingResult {
            phi_end: f,
            steps: 0,
            max_residual: 0.0,
        });
    }
    let rhs = |phi: f64| (4.0 * j * phi.max(0.0).sqrt() + f * f).sqrt();
    let (mut y, mut phi) = if f == 0.0 {
        // φ^{3/4} = (3/2)√j y is exact when f = 0
        let y0 = SINGULAR_START;
        (y0, (1.5 * j.sqrt() * y0).powf(4.0 / 3.0))
    } else {
        (0.0, 0.0)
    };

    let mut h: f64 = 1e-4;
    let mut steps = 0;
    let mut max_err: f64 = 0.0;
    while y < 1.0 {
        if steps >= STEP_CAP {
            return Err(Error::StepCap { cap: STEP_CAP, y });
        }
        h = h.min(1.0 - y);
        let (next, err) = dormand_prince_step(&rhs, phi, h);
        let scale = tol * (1.0 + phi.abs().max(next.abs()));
        if err <= scale {
            y = if h == 1.0 - y { 1.0 } else { y + h };
            phi = next;
            steps += 1;
            max_err = max_err.max(err);
        }
        let ratio = if err == 0.0 {
            5.0
        } else {
            0.9 * (scale / err).powf(0.2)
        };
        h *= ratio.clamp(0.2, 5.0);
    }
    Ok(ShootingResult {
        phi_end: phi,
        steps,
        max_residual: max_err,
    })
}

/// One step of the autonomous Dormand-Prince pair; returns the fifth-order
/// value and the embedded error.
fn dormand_prince_step<F: Fn(f64) -> f64>(g: &F, u: f64, h: f64) -> (f64, f64) {
    let k1 = g(u);
    let k2 = g(u + h * (k1 / 5.0));
    let k3 = g(u + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    let k4 = g(u + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
    let k5 = g(u + h
        * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3
            - 212.0 / 729.0 * k4));
    let k6 = g(u + h
        * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4
            - 5103.0 / 18656.0 * k5));
    let u5 = u + h
        * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5
            + 11.0 / 84.0 * k6);
    let k7 = g(u5);
    let u4 = u + h
        * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 + 393.0 / 640.0 * k4
            - 92097.0 / 339200.0 * k5
            + 187.0 / 2100.0 * k6
            + 1.0 / 40.0 * k7);
    (u5, (u5 - u4).abs())
}

/// Naive monopole sum over `j² + k² < M_big²` with no tail, normalised by
/// `1/(4π)`. Returns `(potential, F_z)`.
pub fn brute_lattice_sum(n: f64, p: &FieldPoint, m_big: f64) -> (f64, f64) {
    let x = p.x - p.x.round();
    let y = p.y - p.y.round();
    let z = p.z;
    let r = m_big.ceil() as i64;
    let mut pot = 0.0;
    let mut field = 0.0;
    for jj in -r..=r {
        for kk in -r..=r {
            if ((jj * jj + kk * kk) as f64) >= m_big * m_big {
                continue;
            }
            let rho2 = (jj as f64 - x).powi(2) + (kk as f64 - y).powi(2);
            let rc = (rho2 + z * z).sqrt();
            let ra = (rho2 + (n - z) * (n - z)).sqrt();
            pot += 1.0 / rc - 1.0 / ra;
            field += z / rc.powi(3) + (n - z) / ra.powi(3);
        }
    }
    (pot / (4.0 * PI), field / (4.0 * PI))
}

/// Infinite lattice in reciprocal space, `|g_x|, |g_y| ≤ shells`.
/// Returns `(potential, F_z)` in the same units as the lattice module.
pub fn fourier_lattice_sum(
    geom: &LatticeGeometry,
    model: ArrayModel,
    p: &FieldPoint,
    shells: i64,
) -> (f64, f64) {
    let (near, far) = match model {
        ArrayModel::Monopole => (p.z, geom.n - p.z),
        ArrayModel::Dipole => (p.z + geom.d, geom.d - p.z),
    };
    let (an, af) = (near.abs(), far.abs());
    let mut pot = 2.0 * PI * (af - an);
    let mut field = 2.0 * PI * (near.signum() + far.signum());
    for gx in -shells..=shells {
        for gy in -shells..=shells {
            if gx == 0 && gy == 0 {
                continue;
            }
            let g = 2.0 * PI * ((gx * gx + gy * gy) as f64).sqrt();
            let phase = (2.0 * PI * (gx as f64 * p.x + gy as f64 * p.y)).cos();
            let (en, ef) = ((-g * an).exp(), (-g * af).exp());
            pot += 2.0 * PI / g * (en - ef) * phase;
            field += 2.0 * PI * (near.signum() * en + far.signum() * ef) * phase;
        }
    }
    (pot / (4.0 * PI), field / (4.0 * PI))
}

/// Van der Corput radical inverse of `index` in `base`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    out
}

/// First `n` points of the base-`base` Halton sequence, starting at index 1.
pub fn halton(n: usize, base: u64) -> Vec<f64> {
    (1..=n as u64).map(|i| radical_inverse(i, base)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vacuum_and_child_langmuir() {
        let r = shoot(1.0, 0.0).unwrap();
        assert_abs_diff_eq!(r.phi_end, 1.0, epsilon = 1e-12);
        let r = shoot(0.0, 4.0 / 9.0).unwrap();
        assert_abs_diff_eq!(r.phi_end, 1.0, epsilon = 1e-8);
        let r = shoot(2.0 / 3.0, 2.0 / 9.0).unwrap();
        assert_abs_diff_eq!(r.phi_end, 1.0, epsilon = 1e-8);
        assert!(r.steps < 10_000);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(shoot(0.0, 0.0).is_err());
        assert!(shoot(-0.1, 0.2).is_err());
    }

    #[test]
    fn halton_base_two() {
        assert_eq!(halton(4, 2), vec![0.5, 0.25, 0.75, 0.125]);
        assert_abs_diff_eq!(radical_inverse(5, 3), 7.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn brute_single_site_is_two_charge_potential() {
        let (n, z) = (5.0, 1.3);
        let (v, f) = brute_lattice_sum(n, &FieldPoint::on_axis(z), 0.5);
        let rc = z;
        let ra = n - z;
        assert_abs_diff_eq!(
            v * 4.0 * PI,
            n * (n - 2.0 * z) / (rc * ra * (rc + ra)),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            f * 4.0 * PI,
            1.0 / (rc * rc) + 1.0 / (ra * ra),
            epsilon = 1e-14
        );
        let (v, _) = brute_lattice_sum(n, &FieldPoint::new(0.2, 0.1, 2.5), 30.0);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn fourier_sheet_limits() {
        let g = LatticeGeometry::monopole(6.0, 10.0).unwrap();
        let (_, f) = fourier_lattice_sum(&g, ArrayModel::Monopole, &FieldPoint::on_axis(3.0), 8);
        assert_abs_diff_eq!(f, 1.0, epsilon = 1e-7);
        let d = LatticeGeometry::dipole(10.0, 0.3).unwrap();
        let (v, _) =
            fourier_lattice_sum(&d, ArrayModel::Dipole, &FieldPoint::new(0.1, 0.2, 0.0), 8);
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
    }
}
