//! Confusion-matrix bookkeeping and detection metrics.
//!
//! A positive prediction is a revocation; a positive truth is an attacker.
//! Metrics with a zero denominator are `None` rather than a fabricated 0 or 1.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u32,
    pub fp: u32,
    pub tn: u32,
    #[serde(rename = "fn")]
    pub fn_: u32,
}

fn ratio(num: u32, den: u32) -> Option<f64> {
    (den > 0).then(|| f64::from(num) / f64::from(den))
}

impl ConfusionMatrix {
    pub fn new(tp: u32, fp: u32, tn: u32, fn_: u32) -> Self {
        ConfusionMatrix { tp, fp, tn, fn_ }
    }

    /// Adds one classified vehicle.
    pub fn record(&mut self, is_attacker: bool, flagged: bool) {
        match (is_attacker, flagged) {
            (true, true) => self.tp += 1,
            (false, true) => self.fp += 1,
            (false, false) => self.tn += 1,
            (true, false) => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> u32 {
        self.tp + self.fp + self.tn + self.fn_
    }

    pub fn recall(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn precision(&self) -> Option<f64> {
        ratio(self.tp, self.tp + self.fp)
    }

    /// `2TP / (2TP + FP + FN)`, the harmonic mean of precision and recall.
    /// Unlike the harmonic-mean form it is defined (as 0) when both are 0.
    pub fn f1(&self) -> Option<f64> {
        ratio(2 * self.tp, 2 * self.tp + self.fp + self.fn_)
    }

    pub fn fpr(&self) -> Option<f64> {
        ratio(self.fp, self.fp + self.tn)
    }

    pub fn scores(&self) -> Scores {
        Scores {
            recall: self.recall(),
            precision: self.precision(),
            f1: self.f1(),
            fpr: self.fpr(),
        }
    }
}

/// The four headline metrics of one confusion matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Scores {
    pub recall: Option<f64>,
    pub precision: Option<f64>,
    pub f1: Option<f64>,
    pub fpr: Option<f64>,
}

impl Scores {
    /// Radar-chart axes: recall, precision, F1 and `1 - FPR`.
    pub fn radar(&self) -> [Option<f64>; 4] {
        [
            self.recall,
            self.precision,
            self.f1,
            self.fpr.map(|f| 1.0 - f),
        ]
    }
}

/// Confusion matrix taken at one instant of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub time_s: f64,
    pub cm: ConfusionMatrix,
}

impl Snapshot {
    pub fn scores(&self) -> Scores {
        self.cm.scores()
    }
}

/// Classifies a population of `(is_attacker, revoked)` pairs.
pub fn classify<I>(population: I) -> ConfusionMatrix
where
    I: IntoIterator<Item = (bool, bool)>,
{
    let mut cm = ConfusionMatrix::default();
    for (is_attacker, flagged) in population {
        cm.record(is_attacker, flagged);
    }
    cm
}

/// Mean of the defined values, or `None` if there are none.
pub fn mean_defined<I: IntoIterator<Item = Option<f64>>>(values: I) -> Option<f64> {
    let (sum, n) = values
        .into_iter()
        .flatten()
        .fold((0.0, 0u32), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / f64::from(n))
}

/// Median of the defined values, or `None` if there are none.
pub fn median_defined<I: IntoIterator<Item = Option<f64>>>(values: I) -> Option<f64> {
    let mut v: Vec<f64> = values.into_iter().flatten().collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        (v[mid - 1] + v[mid]) / 2.0
    } else {
        v[mid]
    })
}
