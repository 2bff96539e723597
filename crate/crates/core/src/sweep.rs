//! Tables of component counts over ranges of models.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::compactification::{component_count, delta};
use crate::error::{Error, Result};
use crate::laurent::ModelSpec;
use crate::period::{check_period_condition, default_order};

/// All models with torus dimension in `min_torus_dim..=max_torus_dim`, ambient dimension
/// at most `max_ambient` and every degree at most `max_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepRange {
    pub max_ambient: u32,
    pub min_torus_dim: usize,
    pub max_torus_dim: usize,
    pub max_degree: u32,
}

impl SweepRange {
    pub fn new(max_ambient: u32, min_torus_dim: usize, max_torus_dim: usize, max_degree: u32) -> Result<Self> {
        if max_ambient == 0 || min_torus_dim == 0 || max_torus_dim == 0 || max_degree == 0 {
            return Err(Error::InvalidArgument("sweep bounds must be positive".into()));
        }
        Ok(Self {
            max_ambient,
            min_torus_dim,
            max_torus_dim,
            max_degree,
        })
    }

    /// Specs ordered by torus dimension, then ambient dimension, then degrees.
    pub fn specs(&self) -> Vec<ModelSpec> {
        (self.min_torus_dim..=self.max_torus_dim)
            .flat_map(ModelSpec::with_torus_dim)
            .filter(|s| s.ambient() <= self.max_ambient && s.degrees().iter().all(|&d| d <= self.max_degree))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTableRow {
    pub degrees: Vec<u32>,
    #[serde(rename = "N")]
    pub ambient: u32,
    pub iota: u32,
    pub n: usize,
    /// present only for reflexive Δ
    pub k: Option<usize>,
    pub reflexive: bool,
    /// the period condition was checked up to order `3ι` and holds
    #[serde(rename = "periodChecked")]
    pub period_checked: bool,
}

pub fn k_table_row(spec: &ModelSpec, check_periods: bool) -> Result<KTableRow> {
    let reflexive = delta(spec)?.is_reflexive()?;
    let k = if reflexive { Some(component_count(spec)?) } else { None };
    let period_checked = check_periods && check_period_condition(spec, default_order(spec)).matches;
    Ok(KTableRow {
        degrees: spec.degrees().to_vec(),
        ambient: spec.ambient(),
        iota: spec.index(),
        n: spec.torus_dim(),
        k,
        reflexive,
        period_checked,
    })
}

/// Rows in the canonical order of [`SweepRange::specs`], computed on `jobs` threads.
pub fn sweep(range: &SweepRange, check_periods: bool, jobs: usize) -> Result<Vec<KTableRow>> {
    let specs = range.specs();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| specs.par_iter().map(|s| k_table_row(s, check_periods)).collect())
}

pub const CSV_HEADER: [&str; 7] = ["degrees", "N", "iota", "n", "k", "reflexive", "period_checked"];

pub fn write_csv<W: Write>(rows: &[KTableRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let degrees = r.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(";");
        w.write_record([
            degrees,
            r.ambient.to_string(),
            r.iota.to_string(),
            r.n.to_string(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            r.reflexive.to_string(),
            r.period_checked.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<KTableRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::InvalidArgument(format!("unexpected table header {}", header.join(","))));
    }
    let bad = |field: &str, v: &str| Error::InvalidArgument(format!("bad {field} value {v:?}"));
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let degrees = if rec[0].is_empty() {
            Vec::new()
        } else {
            rec[0]
                .split(';')
                .map(|d| d.parse().map_err(|_| bad("degrees", &rec[0])))
                .collect::<Result<_>>()?
        };
        let k = if rec[4].is_empty() {
            None
        } else {
            Some(rec[4].parse().map_err(|_| bad("k", &rec[4]))?)
        };
        rows.push(KTableRow {
            degrees,
            ambient: rec[1].parse().map_err(|_| bad("N", &rec[1]))?,
            iota: rec[2].parse().map_err(|_| bad("iota", &rec[2]))?,
            n: rec[3].parse().map_err(|_| bad("n", &rec[3]))?,
            k,
            reflexive: rec[5].parse().map_err(|_| bad("reflexive", &rec[5]))?,
            period_checked: rec[6].parse().map_err(|_| bad("period_checked", &rec[6]))?,
        });
    }
    Ok(rows)
}

pub fn to_json(rows: &[KTableRow]) -> Value {
    serde_json::to_value(rows).expect("rows serialize")
}
