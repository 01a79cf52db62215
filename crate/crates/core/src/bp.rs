//! Flooding sum-product decoding on the Tanner graph of `H`.
//!
//! LLRs follow the `ln p(y|c=1) / p(y|c=0)` convention, so a positive value
//! favours bit 1 and the all-zero codeword drives posteriors towards
//! `-llr_clip`. Every message and every posterior is clamped to
//! `[-llr_clip, llr_clip]`; a posterior reaching the clamp is what counts as
//! "saturated" for [`calibrate_im`].

use serde::{Deserialize, Serialize};

use crate::channel::{initial_llr, transmit_all_zero, ChannelConfig};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, ParityCheckMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BpConfig {
    /// Iteration count after which reprocessing starts, `I_m`.
    pub max_iterations: usize,
    pub llr_clip: f64,
    pub early_stop_on_zero_syndrome: bool,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self {
            max_iterations: 5,
            llr_clip: 50.0,
            early_stop_on_zero_syndrome: true,
        }
    }
}

impl BpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.llr_clip.is_finite() && self.llr_clip > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "llr_clip must be positive, got {}",
                self.llr_clip
            )))
        }
    }
}

/// Posterior LLR history of one decode.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeTrace {
    /// Row `j` holds the posteriors after iteration `j`; row 0 is the clamped
    /// channel LLR. Exactly `iterations_run + 1` rows.
    pub llr_history: Vec<Vec<f64>>,
    pub final_hard: BitVector,
    pub final_syndrome: BitVector,
    pub iterations_run: usize,
    /// Configured `I_m`. When the decoder stopped early, rows
    /// `iterations_run + 1 ..= max_iterations` are taken to repeat the last
    /// stored row.
    pub max_iterations: usize,
    /// First iteration (>= 1) at which some posterior hit the clamp.
    pub saturated_at: Option<usize>,
}

impl DecodeTrace {
    /// Row `j` of the padded trace, `0 <= j <= max_iterations`.
    pub fn row(&self, j: usize) -> &[f64] {
        assert!(j <= self.max_iterations.max(self.iterations_run));
        &self.llr_history[j.min(self.llr_history.len() - 1)]
    }

    /// Trace with early-stop padding written out explicitly.
    pub fn padded_rows(&self) -> Vec<Vec<f64>> {
        (0..=self.max_iterations.max(self.iterations_run))
            .map(|j| self.row(j).to_vec())
            .collect()
    }

    pub fn stopped_early(&self) -> bool {
        self.iterations_run < self.max_iterations
    }
}

/// Hard decision: bit 1 iff the LLR is strictly positive.
pub fn hard_decision(llr: &[f64]) -> BitVector {
    let mut v = BitVector::zeros(llr.len());
    for (i, &l) in llr.iter().enumerate() {
        if l > 0.0 {
            v.set(i, true);
        }
    }
    v
}

/// Runs up to `cfg.max_iterations` flooding iterations from channel LLRs `l0`.
pub fn decode(h: &ParityCheckMatrix, l0: &[f64], cfg: &BpConfig) -> Result<DecodeTrace> {
    if l0.len() != h.cols() {
        return Err(Error::DimensionMismatch {
            context: "decode channel LLRs",
            expected: h.cols(),
            found: l0.len(),
        });
    }
    cfg.validate()?;
    let clip = cfg.llr_clip;
    let clamp = |x: f64| x.clamp(-clip, clip);
    let n = h.cols();

    // Edges are numbered row by row; `var_edges[v]` lists the edges of variable v.
    let mut edge_var = Vec::with_capacity(h.edge_count());
    let mut row_start = Vec::with_capacity(h.rows() + 1);
    for r in 0..h.rows() {
        row_start.push(edge_var.len());
        edge_var.extend_from_slice(h.row_support(r));
    }
    row_start.push(edge_var.len());
    let mut var_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &v) in edge_var.iter().enumerate() {
        var_edges[v].push(e);
    }

    let prior: Vec<f64> = l0.iter().map(|&l| clamp(l)).collect();
    let mut v2c: Vec<f64> = edge_var.iter().map(|&v| prior[v]).collect();
    let mut c2v = vec![0.0; edge_var.len()];
    let mut scratch: Vec<f64> = Vec::new();
    let mut suffix: Vec<f64> = Vec::new();

    let mut history = vec![prior.clone()];
    let mut hard = hard_decision(&prior);
    let mut synd = h.matrix().mul_vec(&hard)?;
    let mut saturated_at = None;
    let mut iterations_run = 0;

    if !(cfg.early_stop_on_zero_syndrome && synd.is_zero()) {
        for iter in 1..=cfg.max_iterations {
            // Check nodes: tanh rule in the ln p0/p1 convention, hence the sign flips.
            for r in 0..h.rows() {
                let edges = row_start[r]..row_start[r + 1];
                scratch.clear();
                scratch.extend(edges.clone().map(|e| (-v2c[e] * 0.5).tanh()));
                let d = scratch.len();
                suffix.clear();
                suffix.resize(d + 1, 1.0);
                for k in (0..d).rev() {
                    suffix[k] = suffix[k + 1] * scratch[k];
                }
                let mut prefix = 1.0;
                for (k, e) in edges.enumerate() {
                    let t = prefix * suffix[k + 1];
                    c2v[e] = clamp(-2.0 * t.atanh());
                    prefix *= scratch[k];
                }
            }
            // Variable nodes.
            let mut posterior = vec![0.0; n];
            for v in 0..n {
                let total = prior[v] + var_edges[v].iter().map(|&e| c2v[e]).sum::<f64>();
                for &e in &var_edges[v] {
                    v2c[e] = clamp(total - c2v[e]);
                }
                posterior[v] = clamp(total);
            }

            if saturated_at.is_none() && posterior.iter().any(|l| l.abs() >= clip) {
                saturated_at = Some(iter);
            }
            hard = hard_decision(&posterior);
            synd = h.matrix().mul_vec(&hard)?;
            history.push(posterior);
            iterations_run = iter;
            if cfg.early_stop_on_zero_syndrome && synd.is_zero() {
                break;
            }
        }
    }

    Ok(DecodeTrace {
        llr_history: history,
        final_hard: hard,
        final_syndrome: synd,
        iterations_run,
        max_iterations: cfg.max_iterations,
        saturated_at,
    })
}

/// Bit reliabilities `r_i = |Σ_{j=0..I_m} alpha^(I_m - j) · l_i^j|` over the
/// padded trace, channel row included.
pub fn accumulate_reliability(trace: &DecodeTrace, alpha: f64) -> Vec<f64> {
    assert!(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
    let last = trace.max_iterations.max(trace.iterations_run);
    let n = trace.llr_history[0].len();
    let mut acc = vec![0.0; n];
    for j in 0..=last {
        let w = alpha.powi((last - j) as i32);
        for (a, &l) in acc.iter_mut().zip(trace.row(j)) {
            *a += w * l;
        }
    }
    acc.iter_mut().for_each(|a| *a = a.abs());
    acc
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub recommended_iterations: usize,
    /// Per trial, the first saturating iteration `a + 1`, if any.
    pub saturation_iterations: Vec<Option<usize>>,
    pub saturated_trials: usize,
    /// No trial saturated within the horizon; the recommendation is the
    /// horizon itself.
    pub no_saturation: bool,
    /// Fewer than two saturating trials back the median.
    pub low_confidence: bool,
}

impl CalibrationReport {
    /// `(iteration, count)` pairs over saturating trials, ascending.
    pub fn histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        for s in self.saturation_iterations.iter().flatten() {
            *hist.entry(*s).or_insert(0) += 1;
        }
        hist.into_iter().collect()
    }
}

/// Picks `I_m = a` such that posteriors do not saturate by iteration `a` but
/// some posterior saturates at `a + 1`.
///
/// Runs `trials` all-zero transmissions at `sigma` (trial `t` uses channel
/// stream `t` under `seed`) with early stopping disabled, for at most
/// `cfg.max_iterations` iterations. Returns the lower median of `a` over the
/// trials that saturated, or `cfg.max_iterations` when none did.
pub fn calibrate_im(
    h: &ParityCheckMatrix,
    sigma: f64,
    cfg: &BpConfig,
    trials: usize,
    seed: u64,
) -> Result<CalibrationReport> {
    if trials == 0 {
        return Err(Error::InvalidConfig(
            "calibration needs at least one trial".into(),
        ));
    }
    let channel = ChannelConfig::new(sigma, seed)?;
    let run_cfg = BpConfig {
        early_stop_on_zero_syndrome: false,
        ..*cfg
    };
    let mut saturation_iterations = Vec::with_capacity(trials);
    for t in 0..trials {
        let y = transmit_all_zero(h.cols(), &channel, t as u64);
        let trace = decode(h, &initial_llr(&y, sigma), &run_cfg)?;
        saturation_iterations.push(trace.saturated_at);
    }
    let mut a: Vec<usize> = saturation_iterations
        .iter()
        .flatten()
        .map(|s| s - 1)
        .collect();
    a.sort_unstable();
    let recommended_iterations = if a.is_empty() {
        cfg.max_iterations
    } else {
        a[(a.len() - 1) / 2]
    };
    Ok(CalibrationReport {
        recommended_iterations,
        saturated_trials: a.len(),
        no_saturation: a.is_empty(),
        low_confidence: a.len() < 2,
        saturation_iterations,
    })
}
