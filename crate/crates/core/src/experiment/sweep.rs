//! The `1/σ²` sweep and its CSV output.

use std::io::Write;
use std::path::Path;

use crate::solver::{biquadratic_discriminant, quartic_of};
use crate::{
    arl_closed_form, arl_low_noise, linear_coeffs, select_arl_root, smith_numeric,
    solve_biquadratic, ArlError, ExecutionMode, LinearCoeffs, Scenario, SmithOptions,
};

use super::config::{ExperimentConfig, SweepConfig};

/// Exact CSV header.
pub const CSV_HEADER: &str = "inv_sigma2,sigma2,arl_closed,arl_low_noise,arl_numeric,root_R_1,root_R_2,root_R_3,root_R_4,root_Rp_1,root_Rp_2,discriminant,status";

/// Multiplies one quartic coefficient `g_index` by `1 + relative`.
///
/// Only used to check that the validation suite notices a corrupted quartic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GPerturbation {
    pub index: usize,
    pub relative: f64,
}

impl GPerturbation {
    pub fn apply(&self, coeffs: &LinearCoeffs) -> LinearCoeffs {
        let mut out = *coeffs;
        let g = match self.index {
            0 => &mut out.g0,
            1 => &mut out.g1,
            2 => &mut out.g2,
            _ => &mut out.g3,
        };
        *g *= 1.0 + self.relative;
        out
    }
}

/// One row of sweep output.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub inv_sigma2: f64,
    pub sigma2: f64,
    pub arl_closed: Option<f64>,
    pub arl_low_noise: Option<f64>,
    pub arl_numeric: Option<f64>,
    /// Positive real roots of `R(x)`, ascending.
    pub roots_r: Vec<f64>,
    /// Positive real roots of `R′(x)`, ascending.
    pub roots_rp: Vec<f64>,
    pub discriminant: Option<f64>,
    /// Noise-dependent positive root of `R(x)`.
    pub selected_root: Option<f64>,
    /// `ok`, or `;`-joined error codes of the steps that failed.
    pub status: String,
}

/// `1/σ²` values of the sweep, ascending, endpoints exact.
pub fn inv_sigma2_grid(sweep: &SweepConfig) -> Vec<f64> {
    let n = sweep.num_points;
    let (a, b) = (sweep.inv_sigma2_start, sweep.inv_sigma2_stop);
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i + 1 == n {
                b
            } else {
                let t = i as f64 / (n - 1) as f64;
                if sweep.log_spacing {
                    a * (b / a).powf(t)
                } else {
                    a + t * (b - a)
                }
            }
        })
        .collect()
}

/// Evaluates every ARL route at one noise level; failures land in `status`.
pub fn evaluate_point(
    base: &Scenario,
    inv_sigma2: f64,
    smith: &SmithOptions,
    perturb: Option<GPerturbation>,
) -> SweepRecord {
    let sigma2 = 1.0 / inv_sigma2;
    let mut record = SweepRecord {
        inv_sigma2,
        sigma2,
        arl_closed: None,
        arl_low_noise: None,
        arl_numeric: None,
        roots_r: Vec::new(),
        roots_rp: Vec::new(),
        discriminant: None,
        selected_root: None,
        status: String::new(),
    };
    let mut failures: Vec<&'static str> = Vec::new();
    let mut note = |r: Result<f64, ArlError>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            if !failures.contains(&e.code()) {
                failures.push(e.code());
            }
            None
        }
    };

    let scenario = base.with_sigma2(sigma2);
    let coeffs = scenario
        .as_ref()
        .map_err(Clone::clone)
        .and_then(linear_coeffs)
        .map(|c| perturb.map_or(c, |p| p.apply(&c)));
    match coeffs {
        Ok(c) => {
            let quartic = quartic_of(&c);
            record.roots_r = quartic.positive_real_roots.clone();
            record.discriminant = Some(biquadratic_discriminant(&c));
            if let Ok(b) = solve_biquadratic(&c) {
                record.roots_rp = b.positive_x_roots();
            }
            record.arl_closed = note(arl_closed_form(&c));
            record.arl_low_noise = note(arl_low_noise(&c));
            record.selected_root = note(select_arl_root(&quartic, &c));
        }
        Err(e) => {
            note(Err(e));
        }
    }
    if let Ok(sc) = &scenario {
        record.arl_numeric = note(smith_numeric(sc, smith));
    }
    record.status = if failures.is_empty() {
        "ok".to_string()
    } else {
        failures.join(";")
    };
    record
}

/// Sweep with an explicit execution mode; output order is the grid order.
pub fn run_sweep_with(
    config: &ExperimentConfig,
    mode: ExecutionMode,
    perturb: Option<GPerturbation>,
) -> Result<Vec<SweepRecord>, ArlError> {
    let grid = inv_sigma2_grid(&config.sweep);
    // signals are drawn once and shared by every point
    let base = config.setup(1.0 / grid[0])?.scenario;
    let smith = config.smith_options();
    Ok(mode.map_indexed(grid.len(), |i| {
        evaluate_point(&base, grid[i], &smith, perturb)
    }))
}

pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<SweepRecord>, ArlError> {
    run_sweep_with(config, ExecutionMode::Parallel, None)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

fn fmt_slot(v: &[f64], i: usize) -> String {
    fmt_opt(v.get(i).copied())
}

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error("no sweep records to write")]
    Empty,
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub fn write_csv_to<W: Write>(records: &[SweepRecord], out: W) -> Result<(), CsvError> {
    if records.is_empty() {
        return Err(CsvError::Empty);
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        let row = [
            format!("{:e}", r.inv_sigma2),
            format!("{:e}", r.sigma2),
            fmt_opt(r.arl_closed),
            fmt_opt(r.arl_low_noise),
            fmt_opt(r.arl_numeric),
            fmt_slot(&r.roots_r, 0),
            fmt_slot(&r.roots_r, 1),
            fmt_slot(&r.roots_r, 2),
            fmt_slot(&r.roots_r, 3),
            fmt_slot(&r.roots_rp, 0),
            fmt_slot(&r.roots_rp, 1),
            fmt_opt(r.discriminant),
            r.status.clone(),
        ];
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| CsvError::Csv(e.into()))?;
    Ok(())
}

pub fn csv_bytes(records: &[SweepRecord]) -> Result<Vec<u8>, CsvError> {
    let mut buf = Vec::new();
    write_csv_to(records, &mut buf)?;
    Ok(buf)
}

pub fn write_csv(records: &[SweepRecord], path: impl AsRef<Path>) -> Result<(), CsvError> {
    let path = path.as_ref();
    let bytes = csv_bytes(records)?;
    std::fs::write(path, bytes).map_err(|source| CsvError::Io {
        path: path.display().to_string(),
        source,
    })
}
