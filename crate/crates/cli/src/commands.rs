//! Table builders behind each subcommand. Every function is pure apart from
//! optional rayon parallelism over grid points, which preserves row order.

use crate::table::{Cell, Table, YScale};
use anyhow::Result;
use clap::ValueEnum;
use rayon::prelude::*;
use sce_core::diode::{self, EmissionModel, J_CL};
use sce_core::emission::{self, CurveOptions, WorkFunctionModel};
use sce_core::lattice::{self, ArrayModel, FieldPoint, LatticeGeometry, Quantity, Truncation};
use sce_core::roots::{lin_space, log_space};
use sce_core::saturn::{self, SaturnConfig};
use sce_core::units::current_density_to_si;
use sce_core::{oracle, Material};
use std::fmt;

/// Bad input from the caller; maps to exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Domain violations are the caller's fault; everything else is numerical.
pub fn core(e: sce_core::Error) -> anyhow::Error {
    match e {
        sce_core::Error::Domain { .. } | sce_core::Error::Invalid { .. } => usage(e.to_string()),
        other => other.into(),
    }
}

fn grid_map<T, F>(xs: &[f64], parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64) -> T + Sync + Send,
{
    if parallel {
        xs.par_iter().map(|&x| f(x)).collect()
    } else {
        xs.iter().map(|&x| f(x)).collect()
    }
}

fn grid(lo: f64, hi: f64, points: usize, log: bool, name: &str) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(usage(format!(
            "{name} range needs min < max, got [{lo}, {hi}]"
        )));
    }
    if points < 2 {
        return Err(usage(format!("{name} grid needs at least 2 points")));
    }
    if log {
        if lo <= 0.0 {
            return Err(usage(format!("log-spaced {name} needs a positive minimum")));
        }
        Ok(log_space(lo, hi, points))
    } else {
        Ok(lin_space(lo, hi, points))
    }
}

fn status(r: &std::result::Result<(), String>) -> Cell {
    match r {
        Ok(()) => Cell::text("ok"),
        Err(e) => Cell::text(e.clone()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Linear,
    Quadratic,
    Fn,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Linear => "linear",
            ModelKind::Quadratic => "quadratic",
            ModelKind::Fn => "fn",
        }
    }

    pub fn build(self, a: f64, b: Option<f64>) -> Result<EmissionModel> {
        let model = match (self, b) {
            (ModelKind::Linear, _) => EmissionModel::Linear { a },
            (ModelKind::Quadratic, _) => EmissionModel::Quadratic { a },
            (ModelKind::Fn, Some(b)) => EmissionModel::FowlerNordheim { a, b },
            (ModelKind::Fn, None) => return Err(usage("the fn model requires --b")),
        };
        model.validate().map_err(core)?;
        Ok(model)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhiEffModel {
    Standard,
    #[value(name = "power-law")]
    PowerLaw,
}

impl From<PhiEffModel> for WorkFunctionModel {
    fn from(m: PhiEffModel) -> Self {
        match m {
            PhiEffModel::Standard => WorkFunctionModel::Standard,
            PhiEffModel::PowerLaw => WorkFunctionModel::PowerLaw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArrayQuantity {
    Field,
    Potential,
    Ripple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArrayKind {
    Monopole,
    Dipole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scan {
    Axis,
    Diagonal,
    Map,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TruncationKind {
    Smooth,
    Sharp,
}

// ---------------------------------------------------------------- universal

pub struct UniversalParams {
    pub f_min: f64,
    pub f_max: f64,
    pub steps: usize,
    pub a: f64,
    pub b: f64,
}

pub fn universal(p: &UniversalParams, parallel: bool) -> Result<Table> {
    if !(p.f_min >= 0.0 && p.f_max <= 1.0) {
        return Err(usage("f range must lie in [0, 1]"));
    }
    let fs = grid(p.f_min, p.f_max, p.steps, false, "f")?;
    let mut t = Table::new(["f", "j", "j_over_jcl", "j_linear", "j_quadratic", "j_fn"]);
    let rows = grid_map(&fs, parallel, |f| {
        let j = diode::universal_j(f).map_err(core)?;
        let fnl = if f == 0.0 {
            0.0
        } else {
            p.a * f * f * (-p.b / f).exp()
        };
        Ok::<_, anyhow::Error>(vec![
            f.into(),
            j.into(),
            (j / J_CL).into(),
            (p.a * f).into(),
            (p.a * f * f).into(),
            fnl.into(),
        ])
    });
    for r in rows {
        t.push(r?);
    }
    Ok(t.with_plot(
        "universal relation and emission laws",
        "f",
        &["j_over_jcl", "j_linear", "j_quadratic", "j_fn"],
        YScale::Linear,
    ))
}

// ---------------------------------------------------------------- solve / sweep

fn solve_row(kind: ModelKind, a: f64, b: Option<f64>) -> Result<Vec<Cell>> {
    let model = kind.build(a, b)?;
    let s = diode::solve(model).map_err(core)?;
    let large = diode::solve_large_a(model).map_err(core)?;
    Ok(vec![
        s.f.into(),
        s.j.into(),
        s.cl_fraction().into(),
        diode::solve_small_a(model).into(),
        large.into(),
    ])
}

pub fn solve(kind: ModelKind, a: f64, b: Option<f64>) -> Result<Table> {
    let mut t = Table::new([
        "model",
        "a",
        "b",
        "f",
        "j",
        "j_over_jcl",
        "j_small_a",
        "j_large_a",
    ]);
    let mut row = vec![
        Cell::text(kind.name()),
        a.into(),
        b.map_or(Cell::Empty, Cell::Num),
    ];
    row.extend(solve_row(kind, a, b)?);
    t.push(row);
    Ok(t)
}

pub struct SweepParams {
    pub kind: ModelKind,
    pub a_min: f64,
    pub a_max: f64,
    pub points: usize,
    pub log: bool,
    pub b: Option<f64>,
}

pub fn sweep(p: &SweepParams, parallel: bool) -> Result<Table> {
    if p.kind == ModelKind::Fn && p.b.is_none() {
        return Err(usage("the fn model requires --b"));
    }
    if p.a_min < 0.0 {
        return Err(usage("a must be non-negative"));
    }
    let as_ = grid(p.a_min, p.a_max, p.points, p.log, "a")?;
    let mut cols = vec!["a"];
    if p.log {
        cols.push("log10_a");
    }
    cols.extend(["f", "j", "j_over_jcl", "j_small_a", "j_large_a", "status"]);
    let mut t = Table::new(cols);
    let rows = grid_map(&as_, parallel, |a| {
        solve_row(p.kind, a, p.b).map_err(|e| e.to_string())
    });
    for (a, r) in as_.iter().zip(rows) {
        let mut row: Vec<Cell> = vec![(*a).into()];
        if p.log {
            row.push(a.log10().into());
        }
        let outcome = r.as_ref().map(|_| ()).map_err(Clone::clone);
        row.extend(r.unwrap_or_else(|_| vec![Cell::Num(f64::NAN); 5]));
        row.push(status(&outcome));
        t.push(row);
    }
    let x = if p.log { "log10_a" } else { "a" };
    Ok(t.with_plot(
        &format!("{} emission: j/j_CL against a", p.kind.name()),
        x,
        &["j_over_jcl"],
        YScale::Linear,
    ))
}

// ---------------------------------------------------------------- fncurve / vtrans

pub struct FnCurveParams {
    /// nm
    pub gap: f64,
    pub mu: f64,
    pub phi: f64,
    /// eV
    pub v_min: f64,
    pub v_max: f64,
    pub points: usize,
    pub log: bool,
    pub fnplot: bool,
    pub c: f64,
    pub phi_eff: Option<PhiEffModel>,
}

pub fn fncurve(p: &FnCurveParams, parallel: bool) -> Result<Table> {
    let mat = Material::new(p.mu, p.phi).map_err(core)?;
    if !(p.gap > 0.0 && p.gap.is_finite()) {
        return Err(usage(format!("gap must be positive, got {}", p.gap)));
    }
    if !(p.c > 0.0 && p.c.is_finite()) {
        return Err(usage(format!("C must be positive, got {}", p.c)));
    }
    if p.v_min <= 0.0 {
        return Err(usage("voltages must be positive"));
    }
    let volts = grid(p.v_min, p.v_max, p.points, p.log, "V")?;
    let opts = CurveOptions {
        phi_eff: p.phi_eff.map(Into::into),
        c: p.c,
    };
    let points = grid_map(&volts, parallel, |v| {
        emission::space_charge_fn_point(v, p.gap, &mat, &opts)
    });

    if p.fnplot {
        let mut t = Table::new([
            "inv_v_kev",
            "ln_jfn_over_v2",
            "ln_jsc_over_v2",
            "ln_jcl_over_v2",
            "status",
        ]);
        for (&v, r) in volts.iter().zip(&points) {
            let inv = 1000.0 / v;
            match r {
                Ok(pt) => {
                    let y = |j| emission::fn_plot_coordinates(v, j).1;
                    t.push(vec![
                        inv.into(),
                        y(pt.j_fn).into(),
                        y(pt.j_sc).into(),
                        y(pt.j_cl).into(),
                        Cell::text("ok"),
                    ]);
                }
                Err(e) => t.push(vec![
                    inv.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    f64::NAN.into(),
                    Cell::text(e.to_string()),
                ]),
            }
        }
        return Ok(t.with_plot(
            "Fowler-Nordheim plot: ln(J/V^2) against 1/V (keV)",
            "inv_v_kev",
            &["ln_jfn_over_v2", "ln_jsc_over_v2", "ln_jcl_over_v2"],
            YScale::Linear,
        ));
    }

    let mut t = Table::new([
        "v_ev",
        "j_fn",
        "j_sc",
        "j_cl",
        "f",
        "j",
        "phi_used",
        "iterations",
        "status",
    ]);
    for (&v, r) in volts.iter().zip(&points) {
        match r {
            Ok(pt) => t.push(vec![
                v.into(),
                current_density_to_si(pt.j_fn).into(),
                current_density_to_si(pt.j_sc).into(),
                current_density_to_si(pt.j_cl).into(),
                pt.state.f.into(),
                pt.state.j.into(),
                pt.phi_used.into(),
                pt.iterations.into(),
                Cell::text("ok"),
            ]),
            Err(e) => {
                let mut row = vec![Cell::Num(v)];
                row.extend(vec![Cell::Num(f64::NAN); 6]);
                row.push(Cell::Int(0));
                row.push(Cell::text(e.to_string()));
                t.push(row);
            }
        }
    }
    Ok(t.with_plot(
        "current density (A/cm^2) against V (eV)",
        "v_ev",
        &["j_fn", "j_sc", "j_cl"],
        YScale::LogAbs,
    ))
}

pub fn vtrans(gap: f64, mu: f64, phi: f64, guess: f64) -> Result<Table> {
    let mat = Material::new(mu, phi).map_err(core)?;
    let t = emission::transition_voltage(gap, &mat, guess).map_err(core)?;
    let mut out = Table::new(["v_trans_ev", "v_trans_kev", "iterations"]);
    out.push(vec![
        t.v_trans.into(),
        (t.v_trans / 1000.0).into(),
        t.iterations.into(),
    ]);
    Ok(out)
}

// ---------------------------------------------------------------- array

pub struct ArrayParams {
    pub quantity: ArrayQuantity,
    pub kind: ArrayKind,
    pub n: f64,
    pub m: f64,
    pub d: Option<f64>,
    pub zs: Vec<f64>,
    pub scan: Scan,
    pub samples: usize,
    pub truncation: TruncationKind,
}

impl ArrayParams {
    fn geometry(&self) -> Result<(LatticeGeometry, ArrayModel)> {
        let trunc = match self.truncation {
            TruncationKind::Smooth => Truncation::SmoothDisk,
            TruncationKind::Sharp => Truncation::SharpDisk,
        };
        let (g, model) = match self.kind {
            ArrayKind::Monopole => (
                LatticeGeometry::monopole(self.n, self.m),
                ArrayModel::Monopole,
            ),
            ArrayKind::Dipole => {
                let d = self
                    .d
                    .ok_or_else(|| usage("the dipole model requires --d"))?;
                (LatticeGeometry::dipole(self.m, d), ArrayModel::Dipole)
            }
        };
        Ok((g.map_err(core)?.with_truncation(trunc), model))
    }
}

fn z_label(prefix: &str, z: f64) -> String {
    format!("{prefix}_z{z}")
}

pub fn array(p: &ArrayParams, parallel: bool) -> Result<Table> {
    let (geom, model) = p.geometry()?;
    if p.zs.is_empty() {
        return Err(usage("no heights given"));
    }
    let background = match model {
        ArrayModel::Monopole => 0.0,
        ArrayModel::Dipole => 1.0,
    };
    let quantity = match p.quantity {
        ArrayQuantity::Ripple => return ripple_table(&geom, model, &p.zs, parallel),
        ArrayQuantity::Field => Quantity::FieldZ,
        ArrayQuantity::Potential => Quantity::Potential,
    };
    let offset = if quantity == Quantity::FieldZ {
        background
    } else {
        0.0
    };
    let eval = |pt: FieldPoint| {
        lattice::lattice_sum(&geom, model, &pt, quantity)
            .map(|v| v + offset)
            .map_err(core)
    };
    let name = match quantity {
        Quantity::FieldZ => "f_z",
        Quantity::Potential => "phi",
    };

    match p.scan {
        Scan::Axis => {
            let cols = [
                "z".to_string(),
                format!("{name}_axis"),
                format!("{name}_corner"),
            ];
            let mut t = Table::new(cols.clone());
            let rows = grid_map(&p.zs, parallel, |z| {
                Ok::<_, anyhow::Error>(vec![
                    z.into(),
                    eval(FieldPoint::on_axis(z))?.into(),
                    eval(FieldPoint::corner(z))?.into(),
                ])
            });
            for r in rows {
                t.push(r?);
            }
            Ok(t.with_plot(
                &format!("{name} on the tip axis and at the cell corner"),
                "z",
                &[&cols[1], &cols[2]],
                YScale::Linear,
            ))
        }
        Scan::Diagonal => {
            if p.samples < 2 {
                return Err(usage("a diagonal scan needs at least 2 samples"));
            }
            let xs = lin_space(-geom.m, geom.m, p.samples);
            let labels: Vec<String> = p.zs.iter().map(|&z| z_label(name, z)).collect();
            let mut cols = vec!["s".to_string(), "x".to_string()];
            cols.extend(labels.iter().cloned());
            let mut t = Table::new(cols);
            let rows = grid_map(&xs, parallel, |x| {
                let mut row: Vec<Cell> = vec![(x / geom.m).into(), x.into()];
                for &z in &p.zs {
                    row.push(eval(FieldPoint::new(x, x, z))?.into());
                }
                Ok::<_, anyhow::Error>(row)
            });
            for r in rows {
                t.push(r?);
            }
            let ys: Vec<&str> = labels.iter().map(String::as_str).collect();
            Ok(t.with_plot(
                &format!("{name} along the diagonal x = y"),
                "s",
                &ys,
                YScale::Linear,
            ))
        }
        Scan::Map => {
            let [z] = p.zs[..] else {
                return Err(usage("a map takes exactly one height"));
            };
            if p.samples < 2 {
                return Err(usage("a map needs at least 2 samples per side"));
            }
            let axis = lin_space(-0.5, 0.5, p.samples);
            let mut t = Table::new(["x", "y", name]);
            let rows = grid_map(&axis, parallel, |y| {
                axis.iter()
                    .map(|&x| {
                        Ok(vec![
                            x.into(),
                            y.into(),
                            eval(FieldPoint::new(x, y, z))?.into(),
                        ])
                    })
                    .collect::<Result<Vec<Vec<Cell>>>>()
            });
            for r in rows {
                for row in r? {
                    t.push(row);
                }
            }
            Ok(t.with_heatmap(
                &format!("{name} over the unit cell at z = {z}"),
                "x",
                "y",
                name,
            ))
        }
    }
}

fn ripple_table(
    geom: &LatticeGeometry,
    model: ArrayModel,
    zs: &[f64],
    parallel: bool,
) -> Result<Table> {
    let dipole = model == ArrayModel::Dipole;
    let mut cols = vec!["z"];
    if dipole {
        cols.push("z_minus_d");
    }
    cols.extend(["r_phi", "r_f"]);
    let mut t = Table::new(cols);
    let rows = grid_map(zs, parallel, |z| {
        lattice::ripple_metrics(geom, z, model).map_err(core)
    });
    for (&z, r) in zs.iter().zip(rows) {
        let r = r?;
        let mut row: Vec<Cell> = vec![z.into()];
        if dipole {
            row.push((z - geom.d).into());
        }
        row.extend([r.r_phi.into(), r.r_f.into()]);
        t.push(row);
    }
    let x = if dipole { "z_minus_d" } else { "z" };
    Ok(t.with_plot(
        "ripple R_phi, R_F against height",
        x,
        &["r_phi", "r_f"],
        YScale::LogAbs,
    ))
}

// ---------------------------------------------------------------- saturn / oracle

pub struct SaturnParams {
    pub cfg: SaturnConfig,
    pub rs: Vec<f64>,
    pub theta: f64,
}

pub fn saturn(p: &SaturnParams) -> Result<Table> {
    let cfg = p.cfg.validated().map_err(core)?;
    let mut t = Table::new(["r", "phi_saturn", "phi_bare", "ratio"]);
    for &r in &p.rs {
        let gated = saturn::saturn_potential(&cfg, r, p.theta).map_err(core)?;
        let bare = cfg.q_tip / r;
        t.push(vec![
            r.into(),
            gated.into(),
            bare.into(),
            (gated / bare).into(),
        ]);
    }
    Ok(t.with_plot(
        "gated and bare tip potentials",
        "r",
        &["phi_saturn", "phi_bare"],
        YScale::LogAbs,
    ))
}

pub fn oracle(f: f64, tol: f64) -> Result<Table> {
    if !(f > 0.0 && f <= 1.0) {
        return Err(usage(format!("f must lie in (0, 1], got {f}")));
    }
    if !(tol > 0.0) {
        return Err(usage("tol must be positive"));
    }
    let j = diode::universal_j(f).map_err(core)?;
    let r = oracle::shoot_with_tol(f, j, tol).map_err(core)?;
    let res = diode::verify_exact_relation(f, j);
    let mut t = Table::new([
        "f",
        "j",
        "phi_end",
        "deviation",
        "steps",
        "max_local_error",
        "residual_exact",
        "residual_rationalized",
    ]);
    t.push(vec![
        f.into(),
        j.into(),
        r.phi_end.into(),
        (r.phi_end - 1.0).into(),
        r.steps.into(),
        r.max_residual.into(),
        res.exact.into(),
        res.rationalized.into(),
    ]);
    Ok(t)
}

pub fn z_grid(zs: Option<Vec<f64>>, z_min: f64, z_max: f64, z_points: usize) -> Result<Vec<f64>> {
    match zs {
        Some(v) => Ok(v),
        None => grid(z_min, z_max, z_points, false, "z"),
    }
}

pub fn r_grid(r_min: f64, r_max: f64, points: usize, log: bool) -> Result<Vec<f64>> {
    grid(r_min, r_max, points, log, "r")
}
