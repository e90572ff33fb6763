//! Writing traces to disk: a metrics time series as CSV, a JSON summary, and
//! the event schedule as JSON for exact replay.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use crate::config::{parse_json, read_file};
use crate::context::Event;
use crate::error::ConfigError;
use crate::metrics::{ConfusionMatrix, Scores};
use crate::sim::{Revocation, RunStats, SimulationTrace, VehicleSummary};

pub const TIMESERIES_FILE: &str = "timeseries.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const SCHEDULE_FILE: &str = "schedule.json";

pub const TIMESERIES_COLUMNS: [&str; 9] = [
    "time_s",
    "tp",
    "fp",
    "tn",
    "fn",
    "recall",
    "precision",
    "f1",
    "fpr",
];

#[derive(Serialize)]
struct SeriesRow {
    time_s: f64,
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

/// Writes one row per snapshot. Undefined metrics are empty cells.
pub fn write_timeseries<W: io::Write>(trace: &SimulationTrace, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in &trace.series {
        let sc = s.scores();
        w.serialize(SeriesRow {
            time_s: s.time_s,
            tp: s.cm.tp,
            fp: s.cm.fp,
            tn: s.cm.tn,
            fn_: s.cm.fn_,
            recall: sc.recall,
            precision: sc.precision,
            f1: sc.f1,
            fpr: sc.fpr,
        })?;
    }
    if trace.series.is_empty() {
        w.write_record(TIMESERIES_COLUMNS)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Summary<'a> {
    scheme: String,
    seed: u64,
    attacker_ratio: f64,
    final_confusion: &'a ConfusionMatrix,
    final_scores: Scores,
    revocations: &'a [Revocation],
    vehicles: &'a [VehicleSummary],
    stats: &'a RunStats,
}

pub fn summary_json(trace: &SimulationTrace) -> String {
    let summary = Summary {
        scheme: trace.scheme.to_string(),
        seed: trace.seed,
        attacker_ratio: trace.attacker_ratio,
        final_confusion: &trace.final_cm,
        final_scores: trace.final_scores(),
        revocations: &trace.revocations,
        vehicles: &trace.vehicles,
        stats: &trace.stats,
    };
    serde_json::to_string_pretty(&summary).expect("summary is serialisable")
}

/// Writes the time series, summary, and schedule into `dir`.
pub fn write_trace(trace: &SimulationTrace, dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let file = fs::File::create(dir.join(TIMESERIES_FILE))?;
    write_timeseries(trace, io::BufWriter::new(file)).map_err(io::Error::other)?;
    fs::write(dir.join(SUMMARY_FILE), summary_json(trace) + "\n")?;
    let schedule = serde_json::to_string_pretty(&trace.events).expect("events are serialisable");
    fs::write(dir.join(SCHEDULE_FILE), schedule + "\n")?;
    Ok(())
}

pub fn load_schedule(path: &Path) -> Result<Vec<Event>, ConfigError> {
    parse_json(&read_file(path)?)
}
