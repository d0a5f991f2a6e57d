//! Gated emitter as a point charge (the tip) and a coplanar ring of opposite
//! sign (the gate aperture).
//!
//! Distances are in units of the ring radius `a_g` and potentials in units of
//! `q/(4π ε0 a_g)`. Outside the ring the ring potential is the exterior
//! multipole series
//!
//! ```text
//! (1/r) Σ_l (−1)^l c_l P_{2l}(cos θ) r^{−2l},   c_l = (2l)!/(2^{2l} (l!)²)
//! ```

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturnConfig {
    pub q_tip: f64,
    pub q_ring: f64,
    /// Highest `l`; terms run over `P_0 … P_{2 l_max}`.
    pub l_max: usize,
    /// Stop once a term falls below this magnitude.
    pub tol: f64,
}

impl Default for SaturnConfig {
    fn default() -> Self {
        Self {
            q_tip: 1.0,
            q_ring: 1.0,
            l_max: 40,
            tol: 1e-12,
        }
    }
}

impl SaturnConfig {
    pub fn new(q_tip: f64, q_ring: f64) -> Result<Self> {
        Self {
            q_tip,
            q_ring,
            ..Self::default()
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.q_tip >= 0.0 && self.q_tip.is_finite()) {
            return Err(Error::domain("q_tip", self.q_tip, "q_tip >= 0"));
        }
        if !(self.q_ring >= 0.0 && self.q_ring.is_finite()) {
            return Err(Error::domain("q_ring", self.q_ring, "q_ring >= 0"));
        }
        if self.l_max < 1 {
            return Err(Error::Invalid {
                what: "l_max",
                reason: "must be at least 1".into(),
            });
        }
        if !(self.tol >= 0.0) {
            return Err(Error::domain("tol", self.tol, "tol >= 0"));
        }
        Ok(self)
    }

    /// A message when the charges are far from comparable, where the model
    /// stops describing a gated tip.
    pub fn warning(&self) -> Option<String> {
        let ratio = self.q_tip / self.q_ring;
        (!(0.1..=10.0).contains(&ratio))
            .then(|| format!("charge ratio q_tip/q_ring = {ratio} is outside [0.1, 10]"))
    }
}

/// `P_n(x)` by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return p0;
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// `c_l = (2l)!/(2^{2l}(l!)²)` for `l = 0..=l_max`.
pub fn ring_coefficients(l_max: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(l_max + 1);
    let mut v = 1.0;
    c.push(v);
    for l in 1..=l_max {
        let l = l as f64;
        v *= (2.0 * l - 1.0) / (2.0 * l);
        c.push(v);
    }
    c
}

/// Truncated series for the ring alone at distance `r`, polar angle `theta`.
pub fn ring_potential(cfg: &SaturnConfig, r: f64, theta: f64) -> Result<f64> {
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::domain(
            "r",
            r,
            "r > 1 (series diverges inside the ring)",
        ));
    }
    let x = theta.cos();
    let inv_r2 = 1.0 / (r * r);
    let mut c = 1.0;
    let mut radial = 1.0;
    let mut sum = 0.0;
    for l in 0..=cfg.l_max {
        if l > 0 {
            let lf = l as f64;
            c *= (2.0 * lf - 1.0) / (2.0 * lf);
            radial *= -inv_r2;
        }
        let term = c * radial * legendre(2 * l, x);
        sum += term;
        if l > 0 && term.abs() < cfg.tol {
            break;
        }
    }
    Ok(cfg.q_ring * sum / r)
}

/// `q_tip/r − q_ring·(ring series)`.
pub fn saturn_potential(cfg: &SaturnConfig, r: f64, theta: f64) -> Result<f64> {
    Ok(cfg.q_tip / r - ring_potential(cfg, r, theta)?)
}

/// Exact on-axis potential of the point plus unit ring.
pub fn axial_exact(cfg: &SaturnConfig, r: f64) -> f64 {
    cfg.q_tip / r - cfg.q_ring / (1.0 + r * r).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecaySample {
    pub r: f64,
    /// Gated potential on the axis.
    pub saturn: f64,
    /// Ungated tip, `q_tip/r`.
    pub bare: f64,
}

/// On-axis gated versus ungated potential.
pub fn decay_comparison(cfg: &SaturnConfig, r_grid: &[f64]) -> Result<Vec<DecaySample>> {
    r_grid
        .iter()
        .map(|&r| {
            Ok(DecaySample {
                r,
                saturn: saturn_potential(cfg, r, 0.0)?,
                bare: cfg.q_tip / r,
            })
        })
        .collect()
}
