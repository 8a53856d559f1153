//! Command-line front end: run one experiment from a JSON config and write
//! its table as CSV.
//!
//! Rows are written as soon as they are computed. On a mathematical or
//! budget error the rows produced so far are flushed before the error is
//! returned.

pub mod config;
pub mod format;

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use num_bigint::BigUint;
use orbitlab_core::error::ErrorKind;
use orbitlab_core::heights::TargetHeight;
use orbitlab_core::mult1::for_each_e_minus;
use orbitlab_core::orbits::{self, for_each_record, OrbitCache, Ratio};
use orbitlab_core::ppd::{b_sum_series, for_each_ppd, PrimitivePrimes};
use orbitlab_core::Error;
use thiserror::Error as ThisError;

pub use config::{Experiment, ExperimentConfig, TargetConfig};
use format::{fmt_float, fmt_log};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Orbit,
    Heights,
    Alpha,
    Ratio,
    Ppd,
    Bsum,
    Mult,
    DmlProbe,
}

#[derive(Debug, ThisError)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("output: {0}")]
    Io(String),
}

impl From<csv::Error> for RunError {
    fn from(e: csv::Error) -> Self {
        RunError::Io(e.to_string())
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e.to_string())
    }
}

impl RunError {
    /// 1 usage/parse, 2 mathematical, 3 budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io(_) => 1,
            RunError::Core(e) => match e.kind() {
                ErrorKind::Usage => 1,
                ErrorKind::Math => 2,
                ErrorKind::Budget => 3,
            },
        }
    }
}

fn core_err(e: RunError) -> Error {
    match e {
        RunError::Core(e) => e,
        RunError::Io(msg) => Error::Invalid(msg),
    }
}

/// Writes one row and flushes it, so rows survive a later failure.
fn write_flush<W: Write, I>(wtr: &mut csv::Writer<W>, row: I) -> Result<(), Error>
where
    I: IntoIterator,
    I::Item: AsRef<[u8]>,
{
    wtr.write_record(row)
        .and_then(|_| wtr.flush().map_err(csv::Error::from))
        .map_err(|e| core_err(e.into()))
}

fn header(command: Command, exp: &Experiment) -> Vec<String> {
    let cols: &[&str] = match command {
        Command::Orbit => {
            let mut v = vec!["n".to_string()];
            v.extend((0..exp.map.num_vars()).map(|i| format!("coord{i}")));
            v.push("h_naive".into());
            return v;
        }
        Command::Heights | Command::Ratio => &["n", "label", "arch", "finite_mult", "total", "ratio"],
        Command::Alpha => &["n", "root", "ratio"],
        // the factorization column only appears when values are factored
        Command::Ppd if exp.factor => &["n", "exists", "primes", "b_value", "method", "factorization"],
        Command::Ppd | Command::Bsum => &["n", "exists", "primes", "b_value", "method"],
        Command::Mult => &["n", "sup_mult", "nth_root"],
        Command::DmlProbe => &["n", "img0", "img1", "h_img", "ratio"],
    };
    cols.iter().map(|s| s.to_string()).collect()
}

fn fmt_primes(primes: &[(BigUint, u32)]) -> String {
    primes
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(";")
}

/// Runs `command` and writes CSV to `out`.
pub fn run(command: Command, config: &ExperimentConfig, out: impl Write) -> Result<(), RunError> {
    let exp = config.build()?;
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(header(command, &exp))?;
    let result = write_rows(command, &exp, &mut wtr);
    wtr.flush()?;
    result
}

fn write_rows<W: Write>(command: Command, exp: &Experiment, wtr: &mut csv::Writer<W>) -> Result<(), RunError> {
    let n_max = exp.n_max;
    match command {
        Command::Orbit | Command::Heights | Command::Ratio => {
            let mut cache = match &exp.cache {
                Some(path) => Some(OrbitCache::open(path)?),
                None => None,
            };
            let targets = if command == Command::Orbit { &[][..] } else { &exp.targets[..] };
            for_each_record(&exp.map, &exp.point, targets, n_max, cache.as_mut(), |r| {
                if command == Command::Orbit {
                    let mut row = vec![r.n.to_string()];
                    row.extend(r.point.coords().iter().map(|c| c.to_string()));
                    row.push(fmt_log(r.h_naive));
                    wtr.write_record(&row).map_err(|e| core_err(e.into()))?;
                } else {
                    for (label, h) in &r.target_heights {
                        let ratio = match Ratio::of(h, r.h_naive) {
                            Ratio::Finite(x) => fmt_float(x),
                            Ratio::Infinite => "inf".into(),
                            Ratio::Undefined => String::new(),
                        };
                        let row = match h {
                            TargetHeight::Finite(g) => [
                                r.n.to_string(),
                                label.clone(),
                                fmt_log(g.arch),
                                g.finite_mult.to_string(),
                                fmt_log(g.total),
                                ratio,
                            ],
                            TargetHeight::Infinite => [
                                r.n.to_string(),
                                label.clone(),
                                "inf".into(),
                                String::new(),
                                "inf".into(),
                                ratio,
                            ],
                        };
                        wtr.write_record(&row).map_err(|e| core_err(e.into()))?;
                    }
                }
                wtr.flush().map_err(|e| core_err(e.into()))?;
                Ok(())
            })?;
        }
        Command::Alpha => {
            orbits::for_each_alpha(&exp.map, &exp.point, n_max, |a| {
                write_flush(
                    wtr,
                    [
                        a.n.to_string(),
                        fmt_float(a.root_estimate),
                        a.ratio_estimate.map(fmt_float).unwrap_or_default(),
                    ],
                )
            })?;
        }
        Command::Ppd => {
            let budget = exp.factor.then_some(exp.budget);
            for_each_ppd(&exp.map, &exp.point, &exp.form, &exp.excluded, n_max, budget, |r| {
                let primes = match &r.primitive_primes {
                    PrimitivePrimes::Known(v) => fmt_primes(v),
                    PrimitivePrimes::Unknown => "unknown".into(),
                };
                let mut row = vec![
                    r.n.to_string(),
                    r.exists.to_string(),
                    primes,
                    fmt_log(r.b_value),
                    r.method.as_str().to_string(),
                ];
                if let Some(fac) = &r.factorization {
                    row.push(fac.to_string());
                }
                write_flush(wtr, row)
            })?;
        }
        Command::Bsum => {
            let series = b_sum_series(&exp.map, &exp.point, &exp.form, &exp.excluded, n_max, exp.window)?;
            for (n, b) in series.into_iter().skip(exp.window + 1) {
                wtr.write_record([
                    n.to_string(),
                    (b.value() > 0.0).to_string(),
                    "unknown".into(),
                    fmt_log(b),
                    "coprime-part".into(),
                ])?;
            }
        }
        Command::Mult => {
            for_each_e_minus(&exp.map, &exp.point, n_max, exp.budget.degree_cap, |e| {
                write_flush(wtr, [e.n.to_string(), e.sup_mult.to_string(), fmt_float(e.nth_root)])
            })?;
        }
        Command::DmlProbe => {
            let (phi0, phi1) = exp
                .phi
                .as_ref()
                .ok_or_else(|| Error::Invalid("dml-probe needs \"phi\": [phi0, phi1]".into()))?;
            orbits::for_each_dml(&exp.map, &exp.point, phi0, phi1, n_max, |r| {
                let c = r.image.coords();
                write_flush(
                    wtr,
                    [
                        r.n.to_string(),
                        c[0].to_string(),
                        c[1].to_string(),
                        fmt_log(r.h_image),
                        r.ratio.map(fmt_float).unwrap_or_default(),
                    ],
                )
            })?;
        }
    }
    Ok(())
}

/// Loads a config file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("reading {}: {e}", path.display())))?;
    Ok(ExperimentConfig::from_json(&text)?)
}
