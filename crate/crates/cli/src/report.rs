//! JSON and CSV report types.
//!
//! Every optional value is written as `null` rather than omitted, so the key
//! set of a report depends only on the subcommand. Codewords are lowercase hex
//! with bit 0 as the most significant bit of the first digit.

use serde::{Deserialize, Serialize};

use mincw::bp::CalibrationReport;
use mincw::oracle::WeightSpectrumSlice;
use mincw::osd::{SearchConfig, SearchReport, TrialRecord};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub code_path: String,
    pub code: CodeInfo,
    pub started_at: String,
    pub finished_at: String,
    #[serde(flatten)]
    pub run: Run,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeInfo {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Run {
    Search {
        config: SearchEcho,
        result: SearchSummary,
    },
    Calibrate {
        config: CalibrateEcho,
        result: CalibrationSummary,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchEcho {
    #[serde(flatten)]
    pub search: SearchConfig,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub codeword: String,
    pub weight: usize,
    pub found_at_trial: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub best_weight: Option<usize>,
    pub multiplicity: usize,
    pub truncated: bool,
    /// First trial that produced a codeword of the final best weight.
    pub earliest_best_trial: Option<usize>,
    /// Trial by which every listed witness had been found.
    pub all_found_by_trial: Option<usize>,
    pub witnesses: Vec<Witness>,
    pub trials_run: usize,
    pub wall_time_s: f64,
    pub trials: Vec<TrialRecord>,
}

impl From<&SearchReport> for SearchSummary {
    fn from(r: &SearchReport) -> Self {
        let mut witnesses: Vec<Witness> = r
            .candidates
            .iter()
            .map(|(c, t)| Witness {
                codeword: c.to_hex(),
                weight: c.weight(),
                found_at_trial: t,
            })
            .collect();
        witnesses
            .sort_by(|a, b| (a.found_at_trial, &a.codeword).cmp(&(b.found_at_trial, &b.codeword)));
        Self {
            best_weight: r.best_weight(),
            multiplicity: r.multiplicity(),
            truncated: r.candidates.truncated(),
            earliest_best_trial: r.earliest_best_trial(),
            all_found_by_trial: r.candidates.completed_trial(),
            witnesses,
            trials_run: r.trials.len(),
            wall_time_s: r.wall_time_s,
            trials: r.trials.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrateEcho {
    pub sigma: f64,
    pub trials: usize,
    pub seed: u64,
    pub horizon: usize,
    pub llr_clip: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationSummary {
    pub recommended_iterations: usize,
    pub saturated_trials: usize,
    pub no_saturation: bool,
    pub low_confidence: bool,
    /// `(iteration, count)` pairs over the first saturating iteration.
    pub histogram: Vec<(usize, usize)>,
    pub saturation_iterations: Vec<Option<usize>>,
}

impl From<&CalibrationReport> for CalibrationSummary {
    fn from(r: &CalibrationReport) -> Self {
        Self {
            recommended_iterations: r.recommended_iterations,
            saturated_trials: r.saturated_trials,
            no_saturation: r.no_saturation,
            low_confidence: r.low_confidence,
            histogram: r.histogram(),
            saturation_iterations: r.saturation_iterations.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub d_min: Option<usize>,
    pub multiplicity: u64,
    pub dimension: usize,
    pub witnesses_truncated: bool,
    pub witnesses: Vec<String>,
}

impl OracleSummary {
    pub fn new(slice: &WeightSpectrumSlice, dimension: usize) -> Self {
        Self {
            d_min: slice.d_min,
            multiplicity: slice.multiplicity,
            dimension,
            witnesses_truncated: (slice.witnesses.len() as u64) < slice.multiplicity,
            witnesses: slice.witnesses.iter().map(|c| c.to_hex()).collect(),
        }
    }
}

pub const CSV_HEADER: &str =
    "trial,bp_iterations,saturated_at,syndrome_weight,basis_rank,pattern_count,harvested_weight,harvested_count,elapsed_us";

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Per-trial table, one header line then one line per trial.
pub fn trials_csv(trials: &[TrialRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for t in trials {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            t.trial,
            t.bp_iterations,
            opt(t.saturated_at),
            t.syndrome_weight,
            t.basis_rank,
            t.pattern_count,
            opt(t.harvested_weight),
            t.harvested_count,
            t.elapsed_us
        ));
    }
    out
}
