//! Minimal SVG line plots and heatmaps of table columns.

use crate::table::{format_float, PlotKind, PlotSpec, Table, YScale};
use anyhow::{anyhow, Result};
use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLOURS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#7f7f7f",
];

struct Series {
    name: String,
    points: Vec<Option<(f64, f64)>>,
}

fn extent(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return None;
    }
    if hi > lo {
        Some((lo, hi))
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.05 * lo.abs() };
        Some((lo - pad, hi + pad))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn collect(table: &Table, spec: &PlotSpec) -> Result<Vec<Series>> {
    let xi = table
        .column(&spec.x)
        .ok_or_else(|| anyhow!("plot column {} not in table", spec.x))?;
    let mut series = Vec::new();
    for name in &spec.ys {
        let yi = table
            .column(name)
            .ok_or_else(|| anyhow!("plot column {name} not in table"))?;
        let points = table
            .rows
            .iter()
            .map(|row| {
                let x = row[xi].as_f64()?;
                let mut y = row[yi].as_f64()?;
                if spec.y_scale == YScale::LogAbs {
                    y = y.abs().log10();
                }
                (x.is_finite() && y.is_finite()).then_some((x, y))
            })
            .collect();
        series.push(Series {
            name: name.clone(),
            points,
        });
    }
    Ok(series)
}

/// Render the table's plot hint as an SVG document.
pub fn render(table: &Table) -> Result<String> {
    let spec = table
        .plot
        .as_ref()
        .ok_or_else(|| anyhow!("this output has no plot layout"))?;
    if spec.kind == PlotKind::Heatmap {
        return heatmap(table, spec);
    }
    let series = collect(table, spec)?;
    let all = || series.iter().flat_map(|s| s.points.iter().flatten());
    let (x0, x1) = extent(all().map(|p| p.0)).ok_or_else(|| anyhow!("nothing finite to plot"))?;
    let (y0, y1) = extent(all().map(|p| p.1)).ok_or_else(|| anyhow!("nothing finite to plot"))?;
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut svg = String::new();
    header(&mut svg, &spec.title, pw)?;
    writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    )?;
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let (x, y) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        writeln!(
            svg,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/><text x="{0}" y="{3}" text-anchor="middle">{4}</text>"#,
            sx(x),
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 18.0,
            tick(x)
        )?;
        writeln!(
            svg,
            r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/><text x="{3}" y="{4}" text-anchor="end">{5}</text>"#,
            LEFT - 5.0,
            sy(y),
            LEFT,
            LEFT - 8.0,
            sy(y) + 4.0,
            tick(y)
        )?;
    }
    writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        escape(&spec.x)
    )?;
    if spec.y_scale == YScale::LogAbs {
        writeln!(
            svg,
            r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">log10 |y|</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0
        )?;
    }

    for (i, s) in series.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        // a missing point breaks the line
        for run in s.points.split(|p| p.is_none()) {
            if run.len() < 2 {
                continue;
            }
            let pts: Vec<String> = run
                .iter()
                .flatten()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            writeln!(
                svg,
                r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            )?;
        }
        let ly = TOP + 16.0 + 18.0 * i as f64;
        writeln!(
            svg,
            r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="{colour}" stroke-width="2"/><text x="{3}" y="{4}">{5}</text>"#,
            LEFT + pw + 12.0,
            ly,
            LEFT + pw + 36.0,
            LEFT + pw + 42.0,
            ly + 4.0,
            escape(&s.name)
        )?;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn header(svg: &mut String, title: &str, pw: f64) -> Result<()> {
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )?;
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        svg,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + pw / 2.0,
        escape(title)
    )?;
    Ok(())
}

/// Blue-white-red ramp on `t ∈ [0, 1]`.
fn ramp(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = if t < 0.5 {
        let s = 2.0 * t;
        (s, s, 1.0)
    } else {
        let s = 2.0 * (1.0 - t);
        (1.0, s, s)
    };
    let c = |v: f64| (255.0 * v).round() as u8;
    format!("#{:02x}{:02x}{:02x}", c(r), c(g), c(b))
}

fn heatmap(table: &Table, spec: &PlotSpec) -> Result<String> {
    let col = |name: &str| {
        table
            .column(name)
            .ok_or_else(|| anyhow!("plot column {name} not in table"))
    };
    let (xi, yi, vi) = (col(&spec.x)?, col(&spec.ys[0])?, col(&spec.ys[1])?);
    let cells: Vec<(f64, f64, f64)> = table
        .rows
        .iter()
        .filter_map(|r| Some((r[xi].as_f64()?, r[yi].as_f64()?, r[vi].as_f64()?)))
        .filter(|c| c.0.is_finite() && c.1.is_finite() && c.2.is_finite())
        .collect();
    let mut xs: Vec<f64> = cells.iter().map(|c| c.0).collect();
    let mut ys: Vec<f64> = cells.iter().map(|c| c.1).collect();
    for v in [&mut xs, &mut ys] {
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    let (v0, v1) =
        extent(cells.iter().map(|c| c.2)).ok_or_else(|| anyhow!("nothing finite to plot"))?;
    let side = (HEIGHT - TOP - BOTTOM).min(WIDTH - LEFT - RIGHT);
    let (cw, ch) = (side / xs.len() as f64, side / ys.len() as f64);
    let mut svg = String::new();
    header(&mut svg, &spec.title, side)?;
    for &(x, y, v) in &cells {
        let i = xs.partition_point(|&a| a < x) as f64;
        let j = ys.partition_point(|&a| a < y) as f64;
        writeln!(
            svg,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            LEFT + i * cw,
            TOP + side - (j + 1.0) * ch,
            cw + 0.05,
            ch + 0.05,
            ramp((v - v0) / (v1 - v0))
        )?;
    }
    writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{side}" height="{side}" fill="none" stroke="black"/>"#
    )?;
    let lx = LEFT + side + 30.0;
    for k in 0..=10 {
        let t = k as f64 / 10.0;
        writeln!(
            svg,
            r#"<rect x="{lx}" y="{:.2}" width="20" height="{:.2}" fill="{}"/>"#,
            TOP + side * (1.0 - t) - side / 11.0,
            side / 11.0,
            ramp(t)
        )?;
    }
    for (t, v) in [(0.0, v0), (1.0, v1)] {
        writeln!(
            svg,
            r#"<text x="{}" y="{:.2}">{}</text>"#,
            lx + 26.0,
            TOP + side * (1.0 - t) - side / 22.0 + 4.0,
            tick(v)
        )?;
    }
    for (label, x, y) in [
        (&spec.x, LEFT + side / 2.0, TOP + side + 30.0),
        (&spec.ys[0], LEFT - 30.0, TOP + side / 2.0),
        (&spec.ys[1], lx + 10.0, TOP - 8.0),
    ] {
        writeln!(
            svg,
            r#"<text x="{x}" y="{y}" text-anchor="middle">{}</text>"#,
            escape(label)
        )?;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn tick(v: f64) -> String {
    let rounded = format!("{v:.4e}").parse::<f64>().unwrap_or(v);
    format_float(rounded)
}
