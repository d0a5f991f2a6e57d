//! `sce`: space-charge limited emission solvers and figure datasets.

mod commands;
mod figures;
mod plot;
mod table;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{
    ArrayKind, ArrayParams, ArrayQuantity, FnCurveParams, ModelKind, PhiEffModel, SaturnParams,
    Scan, SweepParams, TruncationKind, UniversalParams, UsageError,
};
use sce_core::saturn::SaturnConfig;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use table::Table;

#[derive(Parser)]
#[command(
    name = "sce",
    version,
    about = "Space-charge limited field emission: solvers and figure data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the table as an SVG plot.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Evaluate grid points in parallel (row order is unchanged).
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct Gap {
    /// Gap length, nm unless --um is given.
    #[arg(long, default_value_t = 1000.0)]
    gap: f64,
    /// Read --gap in μm.
    #[arg(long)]
    um: bool,
}

impl Gap {
    fn nm(&self) -> f64 {
        if self.um {
            1000.0 * self.gap
        } else {
            self.gap
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the universal relation j(f) with the emission laws at given a, b.
    Universal {
        #[arg(long, default_value_t = 0.0)]
        f_min: f64,
        #[arg(long, default_value_t = 1.0)]
        f_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Solve one emission law for its self-consistent state.
    Solve {
        #[arg(long, value_enum)]
        model: ModelKind,
        #[arg(long)]
        a: f64,
        /// Required for the fn model.
        #[arg(long)]
        b: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Solve an emission law across a range of a.
    Sweep {
        #[arg(long, value_enum)]
        model: ModelKind,
        #[arg(long)]
        a_min: f64,
        #[arg(long)]
        a_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Log-spaced a.
        #[arg(long)]
        log: bool,
        #[arg(long)]
        b: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Space-charge limited Fowler-Nordheim current against voltage.
    Fncurve {
        #[command(flatten)]
        gap: Gap,
        #[arg(long, default_value_t = 7.0)]
        mu: f64,
        #[arg(long, default_value_t = 4.0)]
        phi: f64,
        /// eV
        #[arg(long)]
        v_min: f64,
        /// eV
        #[arg(long)]
        v_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Log-spaced voltages.
        #[arg(long)]
        log: bool,
        /// Emit Fowler-Nordheim plot coordinates: 1/V in keV⁻¹ and ln(J/V²).
        #[arg(long)]
        fnplot: bool,
        /// Scale factor applied to the space-charge current.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Use a field-lowered work function.
        #[arg(long, value_enum)]
        phi_eff: Option<PhiEffModel>,
        #[command(flatten)]
        output: Output,
    },
    /// Voltage where the FN root reaches f = 2/3.
    Vtrans {
        #[command(flatten)]
        gap: Gap,
        #[arg(long, default_value_t = 7.0)]
        mu: f64,
        #[arg(long, default_value_t = 4.0)]
        phi: f64,
        /// Starting voltage, eV.
        #[arg(long, default_value_t = 10_000.0)]
        guess: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Lattice sums for tip arrays.
    Array {
        #[arg(value_enum)]
        quantity: ArrayQuantity,
        #[arg(long, value_enum, default_value_t = ArrayKind::Monopole)]
        model: ArrayKind,
        /// Image index; the anode sits at z = N/2.
        #[arg(long, default_value_t = 10.0)]
        n: f64,
        /// Truncation radius in lattice spacings.
        #[arg(long, default_value_t = 20.0)]
        m: f64,
        /// Dipole half-spacing, required for the dipole model.
        #[arg(long)]
        d: Option<f64>,
        /// Comma-separated heights; overrides the z grid.
        #[arg(long, value_delimiter = ',')]
        z: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.5)]
        z_min: f64,
        #[arg(long, default_value_t = 4.0)]
        z_max: f64,
        #[arg(long, default_value_t = 36)]
        z_points: usize,
        #[arg(long, value_enum, default_value_t = Scan::Axis)]
        scan: Scan,
        /// Points along a diagonal scan, or per side of a map.
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = TruncationKind::Smooth)]
        truncation: TruncationKind,
        #[command(flatten)]
        output: Output,
    },
    /// Gated tip: point charge inside a ring, against the bare tip.
    Saturn {
        #[arg(long, default_value_t = 1.0)]
        q_tip: f64,
        #[arg(long, default_value_t = 1.0)]
        q_ring: f64,
        #[arg(long, default_value_t = 40)]
        l_max: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// In ring radii; must exceed 1.
        #[arg(long, default_value_t = 1.5)]
        r_min: f64,
        #[arg(long, default_value_t = 50.0)]
        r_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long)]
        log: bool,
        /// Polar angle from the axis, radians.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Integrate the gap potential from the cathode and report φ(1).
    Oracle {
        #[arg(long)]
        f: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Write every figure dataset, its plot and a manifest into a directory.
    ReproduceFigures {
        #[arg(long, env = "SCE_OUT_DIR", default_value = "figures")]
        out_dir: PathBuf,
        /// Skip SVG plots.
        #[arg(long)]
        no_svg: bool,
        /// Coarser grids, for smoke tests.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        parallel: bool,
    },
}

fn emit(table: &Table, output: &Output) -> Result<()> {
    match &output.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_table(table, output.format, BufWriter::new(file))?;
        }
        None => write_table(table, output.format, io::stdout().lock())?,
    }
    if let Some(path) = &output.plot {
        let svg = plot::render(table).map_err(|e| commands::usage(e.to_string()))?;
        std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn write_table<W: Write>(table: &Table, format: Format, mut w: W) -> Result<()> {
    match format {
        Format::Csv => table.write_csv(&mut w)?,
        Format::Json => table.write_json(&mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Universal {
            f_min,
            f_max,
            steps,
            a,
            b,
            output,
        } => {
            let p = UniversalParams {
                f_min,
                f_max,
                steps,
                a,
                b,
            };
            emit(&commands::universal(&p, output.parallel)?, &output)
        }
        Command::Solve {
            model,
            a,
            b,
            output,
        } => emit(&commands::solve(model, a, b)?, &output),
        Command::Sweep {
            model,
            a_min,
            a_max,
            points,
            log,
            b,
            output,
        } => {
            let p = SweepParams {
                kind: model,
                a_min,
                a_max,
                points,
                log,
                b,
            };
            emit(&commands::sweep(&p, output.parallel)?, &output)
        }
        Command::Fncurve {
            gap,
            mu,
            phi,
            v_min,
            v_max,
            points,
            log,
            fnplot,
            c,
            phi_eff,
            output,
        } => {
            let p = FnCurveParams {
                gap: gap.nm(),
                mu,
                phi,
                v_min,
                v_max,
                points,
                log,
                fnplot,
                c,
                phi_eff,
            };
            emit(&commands::fncurve(&p, output.parallel)?, &output)
        }
        Command::Vtrans {
            gap,
            mu,
            phi,
            guess,
            output,
        } => emit(&commands::vtrans(gap.nm(), mu, phi, guess)?, &output),
        Command::Array {
            quantity,
            model,
            n,
            m,
            d,
            z,
            z_min,
            z_max,
            z_points,
            scan,
            samples,
            truncation,
            output,
        } => {
            let p = ArrayParams {
                quantity,
                kind: model,
                n,
                m,
                d,
                zs: commands::z_grid(z, z_min, z_max, z_points)?,
                scan,
                samples,
                truncation,
            };
            emit(&commands::array(&p, output.parallel)?, &output)
        }
        Command::Saturn {
            q_tip,
            q_ring,
            l_max,
            tol,
            r_min,
            r_max,
            points,
            log,
            theta,
            output,
        } => {
            let cfg = SaturnConfig {
                q_tip,
                q_ring,
                l_max,
                tol,
            };
            if let Some(w) = cfg.warning() {
                eprintln!("warning: {w}");
            }
            let p = SaturnParams {
                cfg,
                rs: commands::r_grid(r_min, r_max, points, log)?,
                theta,
            };
            emit(&commands::saturn(&p)?, &output)
        }
        Command::Oracle { f, tol, output } => emit(&commands::oracle(f, tol)?, &output),
        Command::ReproduceFigures {
            out_dir,
            no_svg,
            quick,
            parallel,
        } => {
            let opts = figures::Options {
                svg: !no_svg,
                quick,
                parallel,
            };
            let written = figures::reproduce(&out_dir, &opts)?;
            eprintln!("wrote {written} datasets to {}", out_dir.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on its own usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
