use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, ParityCheckMatrix};

/// Distinct lightest codewords seen so far, in original coordinates.
///
/// When more than `keep_top` codewords share the best weight, the ones kept
/// are the smallest by `(first trial, bit content)`. That rule does not depend
/// on the order in which trials are merged, so sequential and parallel runs
/// keep the same set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateList {
    best_weight: Option<usize>,
    codewords: BTreeMap<BitVector, usize>,
    keep_top: usize,
    truncated: bool,
}

impl CandidateList {
    pub fn new(keep_top: usize) -> Self {
        assert!(keep_top >= 1, "keep_top must be at least 1");
        Self {
            best_weight: None,
            codewords: BTreeMap::new(),
            keep_top,
            truncated: false,
        }
    }

    pub fn best_weight(&self) -> Option<usize> {
        self.best_weight
    }

    /// Distinct codewords stored at the best weight.
    pub fn multiplicity(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Whether codewords of the best weight were dropped because of `keep_top`.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn keep_top(&self) -> usize {
        self.keep_top
    }

    /// `(codeword, trial index of first discovery)`, ordered by codeword.
    pub fn iter(&self) -> impl Iterator<Item = (&BitVector, usize)> {
        self.codewords.iter().map(|(c, &t)| (c, t))
    }

    pub fn codewords(&self) -> impl Iterator<Item = &BitVector> {
        self.codewords.keys()
    }

    pub fn found_at_trial(&self, c: &BitVector) -> Option<usize> {
        self.codewords.get(c).copied()
    }

    /// First trial that produced a codeword of the final best weight.
    pub fn earliest_trial(&self) -> Option<usize> {
        self.codewords.values().copied().min()
    }

    /// Trial by which every stored codeword had been seen.
    pub fn completed_trial(&self) -> Option<usize> {
        self.codewords.values().copied().max()
    }

    /// Folds one trial's harvest into the list.
    ///
    /// Every vector must be a nonzero codeword of `h`; anything else is a bug
    /// upstream and is reported as [`Error::NotACodeword`] without touching
    /// the list.
    pub fn update(
        &mut self,
        h: &ParityCheckMatrix,
        found: &[BitVector],
        trial: usize,
    ) -> Result<()> {
        for c in found {
            if c.is_zero() || !h.matrix().mul_vec(c)?.is_zero() {
                return Err(Error::NotACodeword { weight: c.weight() });
            }
        }
        let Some(weight) = found.iter().map(BitVector::weight).min() else {
            return Ok(());
        };
        let lighter = found.iter().filter(|c| c.weight() == weight);
        self.absorb(weight, lighter.map(|c| (c.clone(), trial)), false);
        Ok(())
    }

    /// Union of two lists under the same rules as [`update`](Self::update).
    pub fn merge(mut self, other: CandidateList) -> CandidateList {
        if let Some(w) = other.best_weight {
            self.absorb(w, other.codewords.into_iter(), other.truncated);
        }
        self
    }

    fn absorb(
        &mut self,
        weight: usize,
        items: impl Iterator<Item = (BitVector, usize)>,
        truncated: bool,
    ) {
        match self.best_weight {
            Some(best) if weight > best => return,
            Some(best) if weight == best => {}
            _ => {
                self.best_weight = Some(weight);
                self.codewords.clear();
                self.truncated = false;
            }
        }
        self.truncated |= truncated;
        for (c, trial) in items {
            self.codewords
                .entry(c)
                .and_modify(|t| *t = (*t).min(trial))
                .or_insert(trial);
        }
        self.enforce_cap();
    }

    fn enforce_cap(&mut self) {
        let excess = self.codewords.len().saturating_sub(self.keep_top);
        if excess == 0 {
            return;
        }
        let mut ranked: Vec<(usize, BitVector)> = self
            .codewords
            .iter()
            .map(|(c, &t)| (t, c.clone()))
            .collect();
        ranked.sort();
        for (_, c) in ranked.into_iter().rev().take(excess) {
            self.codewords.remove(&c);
        }
        self.truncated = true;
    }
}
