//! `reproduce-figures`: every figure dataset, its SVG and a manifest.

use crate::commands::{
    self, ArrayKind, ArrayParams, ArrayQuantity, FnCurveParams, ModelKind, PhiEffModel,
    SaturnParams, Scan, SweepParams, TruncationKind, UniversalParams,
};
use crate::plot;
use crate::table::{Cell, Table, YScale};
use anyhow::{Context, Result};
use sce_core::roots::lin_space;
use sce_core::saturn::SaturnConfig;
use serde_json::{json, Value};
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::Path;

pub struct Options {
    pub svg: bool,
    pub quick: bool,
    pub parallel: bool,
}

struct Figure {
    id: &'static str,
    description: &'static str,
    parameters: Value,
    build: Box<dyn Fn() -> Result<Table>>,
}

fn sweep(
    kind: ModelKind,
    log: bool,
    points: usize,
    parallel: bool,
) -> (Value, Box<dyn Fn() -> Result<Table>>) {
    let (a_min, a_max) = if log { (1e-3, 1e3) } else { (0.0, 10.0) };
    let params =
        json!({"model": kind.name(), "a_min": a_min, "a_max": a_max, "points": points, "log": log});
    let p = SweepParams {
        kind,
        a_min,
        a_max,
        points,
        log,
        b: None,
    };
    (params, Box::new(move || commands::sweep(&p, parallel)))
}

fn fn_curve(p: FnCurveParams, parallel: bool) -> (Value, Box<dyn Fn() -> Result<Table>>) {
    let params = json!({
        "gap_nm": p.gap, "mu": p.mu, "phi": p.phi, "v_min_ev": p.v_min, "v_max_ev": p.v_max,
        "points": p.points, "log": p.log, "fnplot": p.fnplot, "c": p.c,
    });
    (params, Box::new(move || commands::fncurve(&p, parallel)))
}

fn array(p: ArrayParams, parallel: bool) -> (Value, Box<dyn Fn() -> Result<Table>>) {
    let params = json!({
        "quantity": format!("{:?}", p.quantity).to_lowercase(),
        "model": format!("{:?}", p.kind).to_lowercase(),
        "n": p.n, "m": p.m, "d": p.d, "z": p.zs, "scan": format!("{:?}", p.scan).to_lowercase(),
        "samples": p.samples, "truncation": "smooth",
    });
    (params, Box::new(move || commands::array(&p, parallel)))
}

/// Bare FN, and the effective-work-function diode with and without the C scale,
/// against the applied field V/L.
fn phi_eff_comparison(points: usize, parallel: bool) -> (Value, Box<dyn Fn() -> Result<Table>>) {
    let (gap, mu, phi, c) = (1000.0, 7.0, 4.5, 0.5);
    let (f_min, f_max) = (1.0, 12.0);
    let params = json!({
        "gap_nm": gap, "mu": mu, "phi": phi, "field_min_v_per_nm": f_min, "field_max_v_per_nm": f_max,
        "points": points, "phi_eff": "power-law", "c_scaled": c,
    });
    let run = move || {
        let base = FnCurveParams {
            gap,
            mu,
            phi,
            v_min: f_min * gap,
            v_max: f_max * gap,
            points,
            log: false,
            fnplot: false,
            c: 1.0,
            phi_eff: Some(PhiEffModel::PowerLaw),
        };
        let unscaled = commands::fncurve(&base, parallel)?;
        let scaled = commands::fncurve(&FnCurveParams { c, ..base }, parallel)?;
        let col = |t: &Table, name: &str| t.column(name).expect("fncurve column");
        let (v, jfn, jsc, st) = (
            col(&unscaled, "v_ev"),
            col(&unscaled, "j_fn"),
            col(&unscaled, "j_sc"),
            col(&unscaled, "status"),
        );
        let mut t = Table::new(["field_v_per_nm", "j_fn", "j_unscaled", "j_scaled", "status"]);
        for (u, s) in unscaled.rows.iter().zip(&scaled.rows) {
            let field = u[v].as_f64().unwrap_or(f64::NAN) / gap;
            t.push(vec![
                Cell::Num(field),
                u[jfn].clone(),
                u[jsc].clone(),
                s[jsc].clone(),
                u[st].clone(),
            ]);
        }
        Ok(t.with_plot(
            "effective work function diode, unscaled and scaled by C",
            "field_v_per_nm",
            &["j_fn", "j_unscaled", "j_scaled"],
            YScale::LogAbs,
        ))
    };
    (params, Box::new(run))
}

fn ripple_pair(zs: Vec<f64>, parallel: bool) -> (Value, Box<dyn Fn() -> Result<Table>>) {
    let params =
        json!({"model": "monopole", "n": 10.0, "m": [10.0, 20.0], "z": zs, "truncation": "smooth"});
    let run = move || {
        let mut wide = Table::new(["z", "r_phi_m10", "r_f_m10", "r_phi_m20", "r_f_m20"]);
        let tables = [10.0, 20.0]
            .iter()
            .map(|&m| {
                commands::array(
                    &ArrayParams {
                        quantity: ArrayQuantity::Ripple,
                        kind: ArrayKind::Monopole,
                        n: 10.0,
                        m,
                        d: None,
                        zs: zs.clone(),
                        scan: Scan::Axis,
                        samples: 0,
                        truncation: TruncationKind::Smooth,
                    },
                    parallel,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        for (a, b) in tables[0].rows.iter().zip(&tables[1].rows) {
            wide.push(vec![
                a[0].clone(),
                a[1].clone(),
                a[2].clone(),
                b[1].clone(),
                b[2].clone(),
            ]);
        }
        Ok(wide.with_plot(
            "monopole ripple, N = 10",
            "z",
            &["r_phi_m10", "r_f_m10", "r_phi_m20", "r_f_m20"],
            YScale::LogAbs,
        ))
    };
    (params, Box::new(run))
}

fn catalogue(opts: &Options) -> Vec<Figure> {
    let q = |full: usize, quick: usize| if opts.quick { quick } else { full };
    let par = opts.parallel;
    let mut figs = Vec::new();
    let mut add =
        |id, description, (parameters, build): (Value, Box<dyn Fn() -> Result<Table>>)| {
            figs.push(Figure {
                id,
                description,
                parameters,
                build,
            })
        };

    add(
        "fig01_linear_sweep_lin",
        "linear emission, j/j_CL against a (linear a)",
        sweep(ModelKind::Linear, false, q(201, 11), par),
    );
    add(
        "fig01_linear_sweep_log",
        "linear emission, j/j_CL against a (log a)",
        sweep(ModelKind::Linear, true, q(121, 13), par),
    );
    add(
        "fig02_quadratic_sweep_lin",
        "quadratic emission, j/j_CL against a (linear a)",
        sweep(ModelKind::Quadratic, false, q(201, 11), par),
    );
    add(
        "fig02_quadratic_sweep_log",
        "quadratic emission, j/j_CL against a (log a)",
        sweep(ModelKind::Quadratic, true, q(121, 13), par),
    );

    let fig3 = |fnplot, phi, mu, v_min, v_max| FnCurveParams {
        gap: 1000.0,
        mu,
        phi,
        v_min,
        v_max,
        points: q(96, 12),
        log: true,
        fnplot,
        c: 1.0,
        phi_eff: None,
    };
    add(
        "fig03_fncurve_phi4",
        "FN current with and without space charge, phi = 4 eV, L = 1 um",
        fn_curve(fig3(false, 4.0, 7.0, 5e3, 1e5), par),
    );
    add(
        "fig04_fnplot_phi4",
        "FN plot of the phi = 4 eV curve",
        fn_curve(fig3(true, 4.0, 7.0, 5e3, 1e5), par),
    );
    add(
        "fig05_fnplot_phi2",
        "FN plot, phi = 2 eV",
        fn_curve(fig3(true, 2.0, 7.0, 2e3, 5e4), par),
    );
    add(
        "fig06_fnplot_phi05",
        "FN plot, phi = 0.5 eV, mu = 0.5 eV",
        fn_curve(fig3(true, 0.5, 0.5, 1e2, 1e4), par),
    );
    add(
        "fig07_phi_eff_scaled",
        "effective work function diode, C = 1 and C = 1/2",
        phi_eff_comparison(q(45, 6), par),
    );

    for (id, n, m) in [
        ("fig09_diagonal_n5_m10", 5.0, 10.0),
        ("fig09_diagonal_n10_m40", 10.0, 40.0),
    ] {
        let p = ArrayParams {
            quantity: ArrayQuantity::Field,
            kind: ArrayKind::Monopole,
            n,
            m,
            d: None,
            zs: vec![0.4, 0.8, 1.6],
            scan: Scan::Diagonal,
            samples: q(401, 21),
            truncation: TruncationKind::Smooth,
        };
        add(id, "F_z along x = y for z = 0.4, 0.8, 1.6", array(p, par));
    }
    for (id, z) in [
        ("fig10_potential_map_z0.4", 0.4),
        ("fig10_potential_map_z1.6", 1.6),
    ] {
        let p = ArrayParams {
            quantity: ArrayQuantity::Potential,
            kind: ArrayKind::Monopole,
            n: 4.0,
            m: 8.0,
            d: None,
            zs: vec![z],
            scan: Scan::Map,
            samples: q(41, 5),
            truncation: TruncationKind::Smooth,
        };
        add(
            id,
            "lattice potential over the unit cell, (N, M) = (4, 8)",
            array(p, par),
        );
    }
    add(
        "fig11_ripple_monopole",
        "monopole ripple R_phi, R_F against z, N = 10, M = 10 and 20",
        ripple_pair(lin_space(0.2, 4.8, q(47, 6)), par),
    );
    let d = 0.25;
    let dip = ArrayParams {
        quantity: ArrayQuantity::Ripple,
        kind: ArrayKind::Dipole,
        n: 2.0 * d,
        m: 20.0,
        d: Some(d),
        zs: lin_space(d + 0.05, 3.0, q(56, 6)),
        scan: Scan::Axis,
        samples: 0,
        truncation: TruncationKind::Smooth,
    };
    add(
        "fig12_ripple_dipole",
        "dipole ripple R_phi, R_F against z - d, M = 20, d = 0.25",
        array(dip, par),
    );
    let uni = UniversalParams {
        f_min: 0.0,
        f_max: 1.0,
        steps: q(201, 11),
        a: 1.0,
        b: 1.0,
    };
    add(
        "fig13_universal",
        "9j/4 against f with the linear, quadratic and FN laws at a = b = 1",
        (
            json!({"f_min": 0.0, "f_max": 1.0, "steps": uni.steps, "a": 1.0, "b": 1.0}),
            Box::new(move || commands::universal(&uni, par)),
        ),
    );
    let rs = sce_core::roots::log_space(1.5, 100.0, q(60, 6));
    add(
        "gated_decay",
        "on-axis potential of a gated tip (equal tip and ring charges) against the bare tip",
        (
            json!({"q_tip": 1.0, "q_ring": 1.0, "l_max": 40, "r_min": 1.5, "r_max": 100.0, "points": rs.len(), "log": true, "theta": 0.0}),
            Box::new(move || {
                commands::saturn(&SaturnParams {
                    cfg: SaturnConfig::default(),
                    rs: rs.clone(),
                    theta: 0.0,
                })
            }),
        ),
    );
    figs
}

/// Write all datasets into `dir`; returns how many were written.
pub fn reproduce(dir: &Path, opts: &Options) -> Result<usize> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut entries = Vec::new();
    let figs = catalogue(opts);
    for fig in &figs {
        let table = (fig.build)().with_context(|| format!("building {}", fig.id))?;
        let csv = format!("{}.csv", fig.id);
        let file = File::create(dir.join(&csv)).with_context(|| format!("creating {csv}"))?;
        table.write_csv(BufWriter::new(file))?;
        let svg = if opts.svg {
            let name = format!("{}.svg", fig.id);
            fs::write(dir.join(&name), plot::render(&table)?)?;
            Value::from(name)
        } else {
            Value::Null
        };
        entries.push(json!({
            "id": fig.id,
            "description": fig.description,
            "csv": csv,
            "svg": svg,
            "rows": table.rows.len(),
            "columns": table.columns,
            "parameters": fig.parameters,
        }));
    }
    let manifest = json!({
        "generator": "sce reproduce-figures",
        "version": env!("CARGO_PKG_VERSION"),
        "quick": opts.quick,
        "units": {"length": "nm", "energy": "eV", "current_density": "A/cm^2", "fnplot_voltage": "keV"},
        "datasets": entries,
    });
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    fs::write(dir.join("manifest.json"), text)?;
    Ok(figs.len())
}
