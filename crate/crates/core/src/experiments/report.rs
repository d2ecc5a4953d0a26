//! Trial reports and their CSV, JSON and plot-data renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::config::{Claim, ExperimentConfig};
use crate::experiments::stats::{Bound, Check, Frequency, Verdict};

/// Per-trial integer outcomes, one row per trial. The first two columns are
/// always `instance` and `trial`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcomes {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

impl Outcomes {
    pub(crate) fn new<S: Into<String>>(extra: impl IntoIterator<Item = S>) -> Self {
        let mut columns = vec!["instance".to_string(), "trial".to_string()];
        columns.extend(extra.into_iter().map(Into::into));
        Outcomes { columns, rows: Vec::new() }
    }

    pub(crate) fn push(&mut self, instance: usize, trial: u64, values: Vec<i64>) {
        debug_assert_eq!(values.len() + 2, self.columns.len());
        let mut row = vec![instance as i64, trial as i64];
        row.extend(values);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<impl Iterator<Item = i64> + '_> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(move |r| r[j]))
    }
}

/// A finished run. Everything except `outcomes` and `wall_clock` goes into
/// the JSON summary; `outcomes` is the CSV. Wall-clock time is kept out of
/// both so reruns are byte-identical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub claim: Claim,
    pub seed: u64,
    pub config_hash: String,
    pub config: ExperimentConfig,
    pub trials: u64,
    pub frequencies: Vec<Frequency>,
    pub bounds: Vec<Bound>,
    pub verdicts: Vec<Check>,
    pub flags: BTreeMap<String, bool>,
    pub passed: bool,
    #[serde(skip)]
    pub outcomes: Outcomes,
    #[serde(skip)]
    pub wall_clock: Duration,
    /// `(x, y)` series for the plot file.
    #[serde(skip)]
    pub series: Vec<(f64, f64)>,
    #[serde(skip)]
    pub series_labels: (String, String),
}

impl TrialReport {
    pub(crate) fn new(cfg: &ExperimentConfig) -> Self {
        TrialReport {
            claim: cfg.claim,
            seed: cfg.seed,
            config_hash: cfg.hash(),
            config: cfg.clone(),
            trials: cfg.trials,
            frequencies: Vec::new(),
            bounds: Vec::new(),
            verdicts: Vec::new(),
            flags: BTreeMap::new(),
            passed: false,
            outcomes: Outcomes::default(),
            wall_clock: Duration::ZERO,
            series: Vec::new(),
            series_labels: (String::new(), String::new()),
        }
    }

    pub(crate) fn frequency(&mut self, name: impl Into<String>, count: u64, trials: u64) -> Frequency {
        let f = Frequency::new(name, count, trials);
        self.frequencies.push(f.clone());
        f
    }

    pub(crate) fn finish(mut self) -> Self {
        self.passed = self.verdicts.iter().all(|c| c.verdict != Verdict::Fail);
        self
    }

    pub fn frequency_named(&self, name: &str) -> Option<&Frequency> {
        self.frequencies.iter().find(|f| f.name == name)
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.verdicts.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.verdicts.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.outcomes.columns).expect("in-memory write");
        for row in &self.outcomes.rows {
            w.write_record(row.iter().map(i64::to_string)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Two whitespace-separated columns with a `#` header line.
    pub fn plot_data(&self) -> String {
        let mut s = format!("# {} {}\n", self.series_labels.0, self.series_labels.1);
        for (x, y) in &self.series {
            writeln!(s, "{x} {y}").expect("string write");
        }
        s
    }

    /// Writes `<claim>.csv`, `<claim>.json` and `<claim>.dat` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let stem = self.claim.name();
        let mut written = Vec::new();
        for (ext, body) in [("csv", self.to_csv()), ("json", self.to_json()), ("dat", self.plot_data())] {
            let path = dir.join(format!("{stem}.{ext}"));
            std::fs::write(&path, body).map_err(|e| io_error(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))
}

/// Running frequency of `hits` after each trial.
pub(crate) fn running_rate(hits: impl IntoIterator<Item = bool>) -> Vec<(f64, f64)> {
    let mut count = 0u64;
    hits.into_iter()
        .enumerate()
        .map(|(t, h)| {
            count += h as u64;
            ((t + 1) as f64, count as f64 / (t + 1) as f64)
        })
        .collect()
}
