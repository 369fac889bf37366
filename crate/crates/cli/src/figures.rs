//! Reproduction of the comparison figures as data tables.
//!
//! Each figure id maps to the curve the original plot shows, sampled on a
//! uniform grid (200 points by default) at the plot's parameters:
//!
//! * `xo1`      — ln[P_40(x)/40!] against the singularity-analysis estimate;
//! * `x0`       — the ratio ln[P_40(y/40)/40!] / ln[Psi2(y,40)/40!];
//! * `xlarge`   — ln[P_40(x)/40!] against the uniform estimate (and psi1
//!   for reference);
//! * `rays`     — the characteristic fan x(t,s), n(t,s) for s in [-2, 2];
//! * `ray0`     — ln[P_4(x)/4!] against the ray sum on 0 < x < 10;
//! * `raylarge` — the same comparison on -1 < x < 1.

use clap::ValueEnum;
use inverf_poly::asymptotics::{psi1, psi2, psi3, psi4};
use inverf_poly::poly::poly_sequence;
use inverf_poly::ray::ray_xn;
use inverf_poly::LogValue;
use num_rational::BigRational;
use std::path::PathBuf;

use crate::output::{fmt_float, OutputFormat, Table};
use crate::CliError;

const MAX_GRID_COUNT: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Xo1,
    X0,
    Xlarge,
    Rays,
    Ray0,
    Raylarge,
}

impl FigureId {
    fn stem(self) -> &'static str {
        match self {
            FigureId::Xo1 => "xo1",
            FigureId::X0 => "x0",
            FigureId::Xlarge => "xlarge",
            FigureId::Rays => "rays",
            FigureId::Ray0 => "ray0",
            FigureId::Raylarge => "raylarge",
        }
    }

    fn default_n(self) -> u64 {
        match self {
            FigureId::Xo1 | FigureId::X0 | FigureId::Xlarge => 40,
            FigureId::Rays => 0, // unused
            FigureId::Ray0 | FigureId::Raylarge => 4,
        }
    }

    fn default_grid(self) -> GridSpec {
        let (lo, hi) = match self {
            FigureId::Xo1 => (0.05, 3.0),
            FigureId::X0 => (0.0, 4.0),
            FigureId::Xlarge => (1.0, 6.0),
            FigureId::Rays => (-2.0, 2.0),
            FigureId::Ray0 => (0.05, 10.0),
            FigureId::Raylarge => (-1.0, 1.0),
        };
        GridSpec { lo, hi, count: 200 }
    }
}

/// Uniform abscissa grid, `lo:hi:count` on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn parse_arg(text: &str) -> Result<GridSpec, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err("expected lo:hi:count".to_string());
        }
        let lo: f64 = parts[0].parse().map_err(|_| "bad lo".to_string())?;
        let hi: f64 = parts[1].parse().map_err(|_| "bad hi".to_string())?;
        let count: usize = parts[2].parse().map_err(|_| "bad count".to_string())?;
        let spec = GridSpec { lo, hi, count };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), String> {
        if self.lo.is_nan() || self.hi.is_nan() || self.lo >= self.hi {
            return Err(format!("grid needs lo < hi, got {}:{}", self.lo, self.hi));
        }
        if self.count < 2 || self.count > MAX_GRID_COUNT {
            return Err(format!(
                "grid count must be in [2, {MAX_GRID_COUNT}], got {}",
                self.count
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(move |i| self.lo + i as f64 * step)
    }
}

/// Log column entry, `ln|value|`; the sign-0 value renders as "nan" and is
/// excluded from any error statistics downstream.
fn log_cell(v: LogValue) -> String {
    match finite_log(v) {
        Some(l) => fmt_float(l),
        None => "nan".to_string(),
    }
}

fn finite_log(v: LogValue) -> Option<f64> {
    if v.is_zero() {
        None
    } else {
        Some(v.log_magnitude())
    }
}

pub fn cmd_figure(
    id: FigureId,
    n_override: Option<u64>,
    grid_override: Option<GridSpec>,
    out: Option<PathBuf>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let n = n_override.unwrap_or_else(|| id.default_n());
    let grid = grid_override.unwrap_or_else(|| id.default_grid());
    grid.validate().map_err(CliError::Usage)?;

    let table = match id {
        FigureId::Xo1 => figure_psi_vs_exact(n, &grid, PsiColumn::Psi1)?,
        FigureId::X0 => figure_ratio(n, &grid)?,
        FigureId::Xlarge => figure_psi_vs_exact(n, &grid, PsiColumn::Psi3AndPsi1)?,
        FigureId::Rays => figure_rays(&grid),
        FigureId::Ray0 | FigureId::Raylarge => figure_psi_vs_exact(n, &grid, PsiColumn::Psi4)?,
    };

    let path = out.unwrap_or_else(|| PathBuf::from(format!("{}.{}", id.stem(), format.extension())));
    let file = std::fs::File::create(&path)?;
    table.write_to(std::io::BufWriter::new(file), format)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

enum PsiColumn {
    Psi1,
    Psi3AndPsi1,
    Psi4,
}

/// Exact log column from the integer recurrence next to estimate columns.
fn figure_psi_vs_exact(n: u64, grid: &GridSpec, which: PsiColumn) -> Result<Table, CliError> {
    let seq = poly_sequence(n as usize)?;
    let p = &seq[n as usize];
    let mut table = Table::new(match which {
        PsiColumn::Psi1 => vec!["x", "ln_exact", "ln_psi1"],
        PsiColumn::Psi3AndPsi1 => vec!["x", "ln_exact", "ln_psi3", "ln_psi1"],
        PsiColumn::Psi4 => vec!["x", "ln_exact", "ln_psi4"],
    });
    for x in grid.points() {
        let exact = p.eval_log_scaled(&dyadic(x)?);
        let mut row = vec![fmt_float(x), log_cell(exact)];
        match which {
            PsiColumn::Psi1 => row.push(log_cell(psi1(x, n)?.value)),
            PsiColumn::Psi3AndPsi1 => {
                row.push(log_cell(psi3(x, n)?.value));
                row.push(log_cell(psi1(x, n)?.value));
            }
            PsiColumn::Psi4 => row.push(log_cell(psi4(x, n)?.value)),
        }
        table.push(row);
    }
    Ok(table)
}

/// The ratio figure: ln exact over ln psi2 on the y = n x scale.
fn figure_ratio(n: u64, grid: &GridSpec) -> Result<Table, CliError> {
    let seq = poly_sequence(n as usize)?;
    let p = &seq[n as usize];
    let mut table = Table::new(vec!["y", "ratio"]);
    for y in grid.points() {
        let exact = p.eval_log_scaled(&dyadic(y / n as f64)?);
        let est = psi2(y, n).value;
        let cell = match (finite_log(exact), finite_log(est)) {
            (Some(le), Some(lp)) if lp != 0.0 => fmt_float(le / lp),
            _ => "nan".to_string(),
        };
        table.push(vec![fmt_float(y), cell]);
    }
    Ok(table)
}

/// The characteristic fan: 17 launch values s in [-2, 2] (step 1/4,
/// including the degenerate s = 0 ray that stays on n = 0).
fn figure_rays(grid: &GridSpec) -> Table {
    let mut table = Table::new(vec!["t", "s", "x", "n"]);
    for k in 0..17 {
        let s = -2.0 + k as f64 * 0.25;
        for t in grid.points() {
            let (x, n) = ray_xn(t, s);
            table.push(vec![
                fmt_float(t),
                fmt_float(s),
                fmt_float(x),
                fmt_float(n),
            ]);
        }
    }
    table
}

/// Exact dyadic rational denoted by a grid float.
fn dyadic(x: f64) -> Result<BigRational, CliError> {
    BigRational::from_float(x)
        .ok_or_else(|| CliError::Usage(format!("non-finite grid point {x}")))
}
