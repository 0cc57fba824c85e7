use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use super::grid::{build_grid, Grid};
use super::lipschitz::{lipschitz_bounds, BracketRule};
use super::{GridReport, Zone};
use crate::closed_form::ndf_at;
use crate::error::{CertifyError, Error};

/// Where the Lipschitz constants of a sweep come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LipSource {
    /// The published constant table.
    #[default]
    Reference,
    /// The interval assembly of `lipschitz_bounds`.
    Computed(BracketRule),
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub lip_source: LipSource,
    /// Worker threads; 0 means the rayon default.
    pub workers: usize,
    /// Rounding allowance per evaluation of F, added to the certified bound.
    pub slack: f64,
    /// Factor applied to the error budget; 1 except in sabotage experiments.
    pub budget_scale: f64,
    /// Keep every F value in grid order.
    pub keep_values: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            lip_source: LipSource::Reference,
            workers: 0,
            slack: 1e-9,
            budget_scale: 1.0,
            keep_values: false,
        }
    }
}

/// Outcome of a sweep together with the grid and, optionally, all values.
#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub report: GridReport,
    pub grid: Grid,
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy)]
struct Best {
    f: f64,
    a: f64,
    c: f64,
}

/// Larger F wins; ties go to the lexicographically smaller (a, c), which
/// makes the reduction independent of how the grid is split.
fn better(x: Best, y: Best) -> Best {
    match x.f.partial_cmp(&y.f) {
        Some(std::cmp::Ordering::Greater) => x,
        Some(std::cmp::Ordering::Less) => y,
        _ => {
            if (x.a, x.c) <= (y.a, y.c) {
                x
            } else {
                y
            }
        }
    }
}

fn eval(k: f64, a: f64, c: f64) -> Result<Best, CertifyError> {
    let f = ndf_at(k, a, c).f;
    if f.is_finite() {
        Ok(Best { f, a, c })
    } else {
        Err(CertifyError::NonFinite { a, c })
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, CertifyError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CertifyError::Pool(e.to_string()))
}

pub fn sweep(z: &Zone, cfg: &SweepConfig) -> Result<SweepOutput, CertifyError> {
    let start = Instant::now();
    let grid = build_grid(z);
    let points = grid.points();
    let (lip_a, lip_c) = match cfg.lip_source {
        LipSource::Reference => (z.lip_a, z.lip_c),
        LipSource::Computed(rule) => lipschitz_bounds(z, rule),
    };
    let k = z.k;
    let pool = pool(cfg.workers)?;
    let (best, values) = pool.install(|| -> Result<(Best, Option<Vec<f64>>), CertifyError> {
        if cfg.keep_values {
            let vals: Vec<Best> = points.par_iter().map(|&(a, c)| eval(k, a, c)).collect::<Result<_, _>>()?;
            let best = vals.iter().copied().reduce(better).expect("grid is never empty");
            Ok((best, Some(vals.into_iter().map(|b| b.f).collect())))
        } else {
            let best = points.par_iter().map(|&(a, c)| eval(k, a, c)).try_reduce(
                || Best {
                    f: f64::NEG_INFINITY,
                    a: f64::INFINITY,
                    c: f64::INFINITY,
                },
                |x, y| Ok(better(x, y)),
            )?;
            Ok((best, None))
        }
    })?;
    let (da, dc) = (z.delta_a(), z.delta_c());
    let budget = cfg.budget_scale * (lip_a * da / 2.0 + lip_c * dc / 2.0);
    let certified = best.f + budget + cfg.slack;
    let report = GridReport {
        zone: z.name,
        k,
        points_evaluated: points.len(),
        max_f: best.f,
        argmax: (best.a, best.c),
        delta_a: da,
        delta_c: dc,
        lip_a,
        lip_c,
        error_budget: budget,
        slack: cfg.slack,
        certified_upper: certified,
        verdict: certified < 0.0,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    Ok(SweepOutput { report, grid, values })
}

/// Writes "a,c,F" rows with 17 significant digits, the outputs one after
/// another under a single header.
pub fn write_csv(path: &Path, outs: &[SweepOutput]) -> Result<(), Error> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "a,c,F")?;
    for out in outs {
        let values = out
            .values
            .as_ref()
            .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "sweep was run without keep_values"))?;
        for (&(a, c), f) in out.grid.points().iter().zip(values) {
            writeln!(w, "{a:.16e},{c:.16e},{f:.16e}")?;
        }
    }
    w.flush()?;
    Ok(())
}
