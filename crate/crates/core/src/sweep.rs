//! Parameter sweeps: every (attacker ratio, seed, scheme) combination is an
//! independent run, and results are averaged per (ratio, scheme).

use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{parse_json, read_file, ScenarioConfig, Scheme};
use crate::error::ConfigError;
use crate::metrics::{mean_defined, ConfusionMatrix, Scores};
use crate::sim;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSpec {
    pub base: ScenarioConfig,
    pub attacker_ratios: Vec<f64>,
    pub seeds: Vec<u64>,
    pub schemes: Vec<Scheme>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            base: ScenarioConfig::default(),
            attacker_ratios: vec![0.15, 0.25, 0.35],
            seeds: (1..=5).collect(),
            schemes: vec![Scheme::Ipek],
        }
    }
}

impl SweepSpec {
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let spec: SweepSpec = parse_json(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        Self::from_json_str(&read_file(path.as_ref())?)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.attacker_ratios.is_empty() {
            return Err(ConfigError::invalid("attacker_ratios", "must not be empty"));
        }
        if self.seeds.is_empty() {
            return Err(ConfigError::invalid("seeds", "must not be empty"));
        }
        if self.schemes.is_empty() {
            return Err(ConfigError::invalid("schemes", "must not be empty"));
        }
        for cell in self.cells() {
            cell.validate()?;
        }
        Ok(())
    }

    /// Configs for every cell, ratio-major, then seed, then scheme.
    pub fn cells(&self) -> Vec<ScenarioConfig> {
        let mut out = Vec::new();
        for &ratio in &self.attacker_ratios {
            for &seed in &self.seeds {
                for &scheme in &self.schemes {
                    out.push(ScenarioConfig {
                        attacker_ratio: ratio,
                        seed,
                        scheme,
                        ..self.base.clone()
                    });
                }
            }
        }
        out
    }
}

/// Final outcome of one sweep cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub attacker_ratio: f64,
    pub seed: u64,
    pub scheme: Scheme,
    pub cm: ConfusionMatrix,
    pub scores: Scores,
}

impl CellResult {
    pub fn from_trace(trace: &sim::SimulationTrace) -> Self {
        CellResult {
            attacker_ratio: trace.attacker_ratio,
            seed: trace.seed,
            scheme: trace.scheme,
            cm: trace.final_cm,
            scores: trace.final_scores(),
        }
    }
}

/// Mean metrics over the seeds of one (ratio, scheme) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub attacker_ratio: f64,
    pub scheme: Scheme,
    pub runs: usize,
    pub recall: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
    pub fpr: Option<f64>,
    pub tp: f64,
    pub fp: f64,
    pub tn: f64,
    #[serde(rename = "fn")]
    pub fn_: f64,
}

impl SummaryRow {
    pub fn radar(&self) -> [Option<f64>; 4] {
        [
            self.recall,
            self.precision,
            self.f1,
            self.fpr.map(|f| 1.0 - f),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub cells: Vec<CellResult>,
    pub rows: Vec<SummaryRow>,
}

/// Runs every cell on a pool of `jobs` threads. Results do not depend on `jobs`.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<SweepResult, ConfigError> {
    spec.validate()?;
    let configs = spec.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let cells: Vec<CellResult> = pool.install(|| {
        configs
            .par_iter()
            .map(|cfg| sim::run(cfg).map(|t| CellResult::from_trace(&t)))
            .collect::<Result<_, _>>()
    })?;
    let rows = summarize(spec, &cells);
    Ok(SweepResult { cells, rows })
}

pub fn summarize(spec: &SweepSpec, cells: &[CellResult]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for &ratio in &spec.attacker_ratios {
        for &scheme in &spec.schemes {
            let group: Vec<&CellResult> = cells
                .iter()
                .filter(|c| c.attacker_ratio == ratio && c.scheme == scheme)
                .collect();
            let n = group.len().max(1) as f64;
            let mean_count = |f: fn(&ConfusionMatrix) -> u32| {
                group.iter().map(|c| f64::from(f(&c.cm))).sum::<f64>() / n
            };
            rows.push(SummaryRow {
                attacker_ratio: ratio,
                scheme,
                runs: group.len(),
                recall: mean_defined(group.iter().map(|c| c.scores.recall)),
                precision: mean_defined(group.iter().map(|c| c.scores.precision)),
                f1: mean_defined(group.iter().map(|c| c.scores.f1)),
                fpr: mean_defined(group.iter().map(|c| c.scores.fpr)),
                tp: mean_count(|cm| cm.tp),
                fp: mean_count(|cm| cm.fp),
                tn: mean_count(|cm| cm.tn),
                fn_: mean_count(|cm| cm.fn_),
            });
        }
    }
    rows
}

#[derive(Serialize)]
struct CellRow {
    attacker_ratio: f64,
    seed: u64,
    scheme: Scheme,
    tp: u32,
    fp: u32,
    tn: u32,
    #[serde(rename = "fn")]
    fn_: u32,
    recall: Option<f64>,
    precision: Option<f64>,
    f1: Option<f64>,
    fpr: Option<f64>,
}

pub const SUMMARY_COLUMNS: [&str; 11] = [
    "attacker_ratio",
    "scheme",
    "runs",
    "recall",
    "precision",
    "f1",
    "fpr",
    "tp",
    "fp",
    "tn",
    "fn",
];

pub fn write_summary<W: io::Write>(rows: &[SummaryRow], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(io::Error::other)?;
    }
    w.flush()
}

pub fn write_cells<W: io::Write>(cells: &[CellResult], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for c in cells {
        w.serialize(CellRow {
            attacker_ratio: c.attacker_ratio,
            seed: c.seed,
            scheme: c.scheme,
            tp: c.cm.tp,
            fp: c.cm.fp,
            tn: c.cm.tn,
            fn_: c.cm.fn_,
            recall: c.scores.recall,
            precision: c.scores.precision,
            f1: c.scores.f1,
            fpr: c.scores.fpr,
        })
        .map_err(io::Error::other)?;
    }
    w.flush()
}
