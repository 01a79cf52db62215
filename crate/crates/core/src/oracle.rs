//! Exhaustive minimum-distance ground truth for small codes.
//!
//! A generator basis is read off the reduced row echelon form of `H` and all
//! `2^K - 1` nonzero codewords are visited in Gray-code order, so each step is
//! a single basis-row XOR. The index space is split into shards that run on
//! the rayon pool; counts add up across shards.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{BitVector, ParityCheckMatrix};

pub const DEFAULT_MAX_DIM: usize = 25;
pub const WITNESS_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpectrumSlice {
    /// `None` for the trivial code `{0}`.
    pub d_min: Option<usize>,
    /// Number of codewords of weight `d_min`, exact even when witnesses are capped.
    pub multiplicity: u64,
    /// Up to [`WITNESS_CAP`] codewords of weight `d_min`, sorted.
    pub witnesses: Vec<BitVector>,
}

pub fn is_codeword(h: &ParityCheckMatrix, c: &BitVector) -> Result<bool> {
    Ok(h.matrix().mul_vec(c)?.is_zero())
}

/// Null-space basis of `H`, one vector per free column of the RREF.
pub fn generator_basis(h: &ParityCheckMatrix) -> Vec<BitVector> {
    let n = h.cols();
    let mut rows: Vec<BitVector> = h.matrix().row_iter().cloned().collect();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..n {
        let r = pivots.len();
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
    }
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVector::zeros(n);
            v.set(f, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if rows[r].get(f) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect()
}

/// Calls `visit` on every nonzero codeword once, in Gray-code order.
pub fn for_each_codeword(
    h: &ParityCheckMatrix,
    max_dim: usize,
    mut visit: impl FnMut(&BitVector),
) -> Result<()> {
    let basis = checked_basis(h, max_dim)?;
    let k = basis.len();
    let mut c = BitVector::zeros(h.cols());
    for i in 1u64..(1u64 << k) {
        c.xor_assign(&basis[i.trailing_zeros() as usize]);
        visit(&c);
    }
    Ok(())
}

fn checked_basis(h: &ParityCheckMatrix, max_dim: usize) -> Result<Vec<BitVector>> {
    let basis = generator_basis(h);
    if basis.len() > max_dim || basis.len() >= 63 {
        return Err(Error::DimensionTooLarge {
            dim: basis.len(),
            max: max_dim.min(62),
        });
    }
    Ok(basis)
}

#[derive(Default)]
struct Tally {
    d_min: Option<usize>,
    multiplicity: u64,
    witnesses: Vec<BitVector>,
}

impl Tally {
    fn offer(&mut self, c: &BitVector) {
        let w = c.weight();
        match self.d_min {
            Some(d) if w > d => return,
            Some(d) if w == d => {}
            _ => {
                self.d_min = Some(w);
                self.multiplicity = 0;
                self.witnesses.clear();
            }
        }
        self.multiplicity += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(c.clone());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        match (self.d_min, other.d_min) {
            (_, None) => self,
            (None, Some(_)) => other,
            (Some(a), Some(b)) if b < a => other,
            (Some(a), Some(b)) if b > a => self,
            _ => {
                self.multiplicity += other.multiplicity;
                self.witnesses.extend(other.witnesses);
                self.witnesses.truncate(WITNESS_CAP);
                self
            }
        }
    }
}

/// Exact minimum distance and its multiplicity by enumerating all codewords.
/// Refuses codes with dimension above `max_dim`.
pub fn exhaustive_min_weight(h: &ParityCheckMatrix, max_dim: usize) -> Result<WeightSpectrumSlice> {
    let basis = checked_basis(h, max_dim)?;
    let k = basis.len();
    let n = h.cols();
    let shard_bits = k.saturating_sub(14).min(8);
    let shard_len = 1u64 << (k - shard_bits);

    let tally = (0u64..(1u64 << shard_bits))
        .into_par_iter()
        .map(|shard| {
            let start = shard * shard_len;
            let gray = start ^ (start >> 1);
            let mut c = BitVector::zeros(n);
            for (b, v) in basis.iter().enumerate() {
                if (gray >> b) & 1 == 1 {
                    c.xor_assign(v);
                }
            }
            let mut t = Tally::default();
            if start != 0 {
                t.offer(&c);
            }
            for i in start + 1..start + shard_len {
                c.xor_assign(&basis[i.trailing_zeros() as usize]);
                t.offer(&c);
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    let mut witnesses = tally.witnesses;
    witnesses.sort();
    Ok(WeightSpectrumSlice {
        d_min: tally.d_min,
        multiplicity: tally.multiplicity,
        witnesses,
    })
}
