use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bp::{accumulate_reliability, decode, BpConfig};
use crate::channel::{initial_llr, transmit_all_zero, ChannelConfig};
use crate::error::{Error, Result};
use crate::gf2::{rank, syndrome, systematic_reduce, BitVector, ParityCheckMatrix};
use crate::osd::{
    build_permutations, enumerate_patterns, harvest_codewords, harvest_pairs, CandidateList,
    ErrorPattern,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// OSD order `p`.
    pub order_p: usize,
    /// Number of all-zero transmissions, `L_c`.
    pub l_c: usize,
    pub channel: ChannelConfig,
    pub bp: BpConfig,
    pub alpha: f64,
    pub keep_top: usize,
    /// Progress callback period in trials; 0 disables progress.
    pub report_every: usize,
    /// Also combine every pair among the `T` lightest patterns.
    pub all_pairs_top: Option<usize>,
}

impl SearchConfig {
    pub fn new(sigma: f64, max_iterations: usize, l_c: usize, seed: u64) -> Self {
        Self {
            order_p: 2,
            l_c,
            channel: ChannelConfig { sigma, seed },
            bp: BpConfig {
                max_iterations,
                ..BpConfig::default()
            },
            alpha: 1.0,
            keep_top: 1024,
            report_every: 0,
            all_pairs_top: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.channel.validate()?;
        self.bp.validate()?;
        if self.l_c == 0 {
            return Err(Error::InvalidConfig(
                "trial count must be at least 1".into(),
            ));
        }
        if self.keep_top == 0 {
            return Err(Error::InvalidConfig("keep_top must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.all_pairs_top == Some(0) {
            return Err(Error::InvalidConfig(
                "all-pairs window must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One row of the per-trial table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub bp_iterations: usize,
    pub saturated_at: Option<usize>,
    pub syndrome_weight: usize,
    pub basis_rank: usize,
    pub pattern_count: usize,
    /// Weight of the lightest codewords this trial produced.
    pub harvested_weight: Option<usize>,
    pub harvested_count: usize,
    /// Wall time of the trial; excluded from determinism comparisons.
    pub elapsed_us: u64,
}

#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub record: TrialRecord,
    pub codewords: Vec<BitVector>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub code_length: usize,
    pub checks: usize,
    pub rank: usize,
    pub candidates: CandidateList,
    pub trials: Vec<TrialRecord>,
    pub wall_time_s: f64,
}

impl SearchReport {
    pub fn best_weight(&self) -> Option<usize> {
        self.candidates.best_weight()
    }

    pub fn multiplicity(&self) -> usize {
        self.candidates.multiplicity()
    }

    /// Trial that first produced a codeword of the final best weight.
    pub fn earliest_best_trial(&self) -> Option<usize> {
        self.candidates.earliest_trial()
    }
}

/// Snapshot handed to progress callbacks.
#[derive(Clone, Debug)]
pub struct Progress {
    pub trials_done: usize,
    pub trials_total: usize,
    pub best_weight: Option<usize>,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Default)]
pub struct RunOptions<'a> {
    /// Worker threads; 0 or 1 runs the sequential reference path.
    pub threads: usize,
    pub progress: Option<&'a (dyn Fn(&Progress) + Sync)>,
}

fn check_patterns(
    sys: &crate::gf2::SystematicForm,
    patterns: &[ErrorPattern],
    trial: usize,
) -> Result<()> {
    // Every pattern for small lists, about 1024 evenly spaced ones otherwise.
    let stride = patterns.len().div_ceil(1024).max(1);
    for p in patterns.iter().skip(trial % stride).step_by(stride) {
        if syndrome(&sys.matrix, &p.bits)? != sys.syndrome {
            return Err(Error::PatternCheck { trial });
        }
    }
    Ok(())
}

/// One decoding attempt: transmit, decode, reprocess, harvest.
pub fn run_trial(h: &ParityCheckMatrix, cfg: &SearchConfig, trial: usize) -> Result<TrialOutcome> {
    let start = Instant::now();
    let y = transmit_all_zero(h.cols(), &cfg.channel, trial as u64);
    let l0 = initial_llr(&y, cfg.channel.sigma);
    let trace = decode(h, &l0, &cfg.bp)?;
    let reliability = accumulate_reliability(&trace, cfg.alpha);
    let (perm, selection) = build_permutations(&reliability, h)?;
    // Column permutations leave H·e unchanged, so the decoder's syndrome is
    // already the right-hand side for the permuted system.
    let sys = systematic_reduce(&selection.matrix, &trace.final_syndrome)?;
    let patterns = enumerate_patterns(&sys, cfg.order_p);
    check_patterns(&sys, &patterns, trial)?;

    let syndrome_zero = trace.final_syndrome.is_zero();
    let mut codewords = harvest_codewords(&patterns, syndrome_zero, &perm);
    if let Some(top) = cfg.all_pairs_top {
        codewords.extend(harvest_pairs(&patterns, top, &perm));
        let lightest = codewords.iter().map(BitVector::weight).min();
        codewords.retain(|c| Some(c.weight()) == lightest);
        codewords.sort();
        codewords.dedup();
    }

    Ok(TrialOutcome {
        record: TrialRecord {
            trial,
            bp_iterations: trace.iterations_run,
            saturated_at: trace.saturated_at,
            syndrome_weight: trace.final_syndrome.weight(),
            basis_rank: sys.rank(),
            pattern_count: patterns.len(),
            harvested_weight: codewords.first().map(BitVector::weight),
            harvested_count: codewords.len(),
            elapsed_us: start.elapsed().as_micros() as u64,
        },
        codewords,
    })
}

/// Sequential reference search over `cfg.l_c` trials.
pub fn run_search(h: &ParityCheckMatrix, cfg: &SearchConfig) -> Result<SearchReport> {
    run_search_with(h, cfg, RunOptions::default())
}

/// Search with optional parallelism and progress reporting.
///
/// Trials are split into contiguous chunks, each folded into its own
/// [`CandidateList`], and the chunk lists are merged. The merged list does
/// not depend on the thread count.
pub fn run_search_with(
    h: &ParityCheckMatrix,
    cfg: &SearchConfig,
    opts: RunOptions<'_>,
) -> Result<SearchReport> {
    cfg.validate()?;
    let start = Instant::now();
    let done = AtomicUsize::new(0);

    let run_chunk = |range: std::ops::Range<usize>| -> Result<(CandidateList, Vec<TrialRecord>)> {
        let mut list = CandidateList::new(cfg.keep_top);
        let mut records = Vec::with_capacity(range.len());
        for t in range {
            let outcome = run_trial(h, cfg, t)?;
            list.update(h, &outcome.codewords, t)?;
            records.push(outcome.record);
            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(cb) = opts.progress {
                if cfg.report_every > 0 && finished.is_multiple_of(cfg.report_every) {
                    cb(&Progress {
                        trials_done: finished,
                        trials_total: cfg.l_c,
                        best_weight: list.best_weight(),
                        multiplicity: list.multiplicity(),
                    });
                }
            }
        }
        Ok((list, records))
    };

    let (candidates, trials) = if opts.threads <= 1 {
        run_chunk(0..cfg.l_c)?
    } else {
        let chunk = cfg.l_c.div_ceil(opts.threads * 4).max(1);
        let ranges: Vec<_> = (0..cfg.l_c)
            .step_by(chunk)
            .map(|s| s..(s + chunk).min(cfg.l_c))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot start thread pool: {e}")))?;
        let parts: Vec<(CandidateList, Vec<TrialRecord>)> =
            pool.install(|| ranges.into_par_iter().map(run_chunk).collect::<Result<_>>())?;
        let mut merged = CandidateList::new(cfg.keep_top);
        let mut records = Vec::with_capacity(cfg.l_c);
        for (list, recs) in parts {
            merged = merged.merge(list);
            records.extend(recs);
        }
        (merged, records)
    };

    Ok(SearchReport {
        config: cfg.clone(),
        code_length: h.cols(),
        checks: h.rows(),
        rank: rank(h.matrix()),
        candidates,
        trials,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
