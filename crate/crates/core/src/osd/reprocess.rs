use crate::error::{Error, Result};
use crate::gf2::{
    select_independent_columns, BitVector, ColumnSelection, ParityCheckMatrix, Permutation,
    SystematicForm,
};

/// Reliability sort (`lambda1`) and independence repair (`lambda2`).
///
/// Original bit `i` sits at position `lambda2(lambda1(i))` in the reprocessing
/// coordinates, where positions `0..rank` are the least reliable basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationPair {
    pub lambda1: Permutation,
    pub lambda2: Permutation,
    combined: Permutation,
    combined_inverse: Permutation,
}

impl PermutationPair {
    pub fn new(lambda1: Permutation, lambda2: Permutation) -> Self {
        let combined = lambda1.then(&lambda2);
        let combined_inverse = combined.inverse();
        Self {
            lambda1,
            lambda2,
            combined,
            combined_inverse,
        }
    }

    pub fn combined(&self) -> &Permutation {
        &self.combined
    }

    pub fn to_permuted(&self, original: &BitVector) -> BitVector {
        self.combined.apply(original)
    }

    pub fn to_original(&self, permuted: &BitVector) -> BitVector {
        self.combined_inverse.apply(permuted)
    }
}

/// Sorts bits by ascending reliability (stable, ties by index) and moves an
/// independent set of columns to the front.
pub fn build_permutations(
    reliability: &[f64],
    h: &ParityCheckMatrix,
) -> Result<(PermutationPair, ColumnSelection)> {
    if reliability.len() != h.cols() {
        return Err(Error::DimensionMismatch {
            context: "reliability vector",
            expected: h.cols(),
            found: reliability.len(),
        });
    }
    let mut order: Vec<usize> = (0..h.cols()).collect();
    order.sort_by(|&a, &b| reliability[a].total_cmp(&reliability[b]));
    let lambda1 = Permutation::from_order(&order)?;
    let h1 = lambda1.apply_columns(h.matrix());
    let selection = select_independent_columns(&h1, &Permutation::identity(h.cols()))?;
    let pair = PermutationPair::new(lambda1, selection.permutation.clone());
    Ok((pair, selection))
}

/// Candidate error pattern in reprocessing coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorPattern {
    pub bits: BitVector,
    pub weight: usize,
    /// Flipped information-set positions, `0..K`, ascending.
    pub info_support: Vec<usize>,
}

/// `Σ_{i=0..min(p,K)} C(K, i)`.
pub fn pattern_count(info_len: usize, order: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for i in 0..=order.min(info_len) {
        total += binom;
        binom = binom * (info_len - i) as u128 / (i as u128 + 1);
    }
    total
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    first: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            first: true,
        }
    }

    fn next_combination(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if self.first {
            self.first = false;
            return (k <= self.n).then_some(&self.idx[..]);
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx[..]);
            }
        }
        None
    }
}

/// Every pattern with at most `order` ones on the information set, completed
/// on the basis as `e1 = P·e2 ⊕ s`.
///
/// The result is sorted by total weight; ties keep generation order, which is
/// fewer information bits first and then ascending lexicographic support.
pub fn enumerate_patterns(sys: &SystematicForm, order: usize) -> Vec<ErrorPattern> {
    let r = sys.rank();
    let n = sys.matrix.cols();
    let k = sys.info_len();
    let info_cols: Vec<BitVector> = (0..k).map(|j| sys.matrix.column(r + j)).collect();

    let capacity = usize::try_from(pattern_count(k, order)).unwrap_or(usize::MAX);
    let mut out = Vec::with_capacity(capacity.min(1 << 24));
    for size in 0..=order.min(k) {
        let mut combos = Combinations::new(k, size);
        while let Some(support) = combos.next_combination() {
            let mut basis_part = sys.syndrome.clone();
            for &j in support {
                basis_part.xor_assign(&info_cols[j]);
            }
            let mut bits = BitVector::zeros(n);
            for i in basis_part.ones() {
                bits.set(i, true);
            }
            for &j in support {
                bits.set(r + j, true);
            }
            out.push(ErrorPattern {
                weight: basis_part.weight() + support.len(),
                bits,
                info_support: support.to_vec(),
            });
        }
    }
    out.sort_by_key(|p| p.weight);
    out
}

/// Codewords obtained from one trial's sorted patterns, in original
/// coordinates, sorted and deduplicated.
///
/// With a zero decoding syndrome every nonzero pattern is a codeword and the
/// lightest ones are returned. Otherwise the first pattern is XORed with each
/// of the others and the lightest products are returned.
pub fn harvest_codewords(
    patterns: &[ErrorPattern],
    syndrome_zero: bool,
    perm: &PermutationPair,
) -> Vec<BitVector> {
    let Some(first) = patterns.first() else {
        return Vec::new();
    };
    let mut best = usize::MAX;
    let mut picked: Vec<BitVector> = Vec::new();
    let mut offer = |w: usize, make: &dyn Fn() -> BitVector| {
        if w == 0 || w > best {
            return;
        }
        if w < best {
            best = w;
            picked.clear();
        }
        picked.push(make());
    };
    if syndrome_zero {
        for p in patterns {
            offer(p.weight, &|| p.bits.clone());
        }
    } else {
        for p in &patterns[1..] {
            offer(first.bits.xor_weight(&p.bits), &|| {
                let mut c = first.bits.clone();
                c.xor_assign(&p.bits);
                c
            });
        }
    }
    finish(picked, perm)
}

/// Lightest nonzero XOR over all pairs among the first `top` patterns.
pub fn harvest_pairs(
    patterns: &[ErrorPattern],
    top: usize,
    perm: &PermutationPair,
) -> Vec<BitVector> {
    let head = &patterns[..top.min(patterns.len())];
    let mut best = usize::MAX;
    let mut picked = Vec::new();
    for (i, a) in head.iter().enumerate() {
        for b in &head[i + 1..] {
            let w = a.bits.xor_weight(&b.bits);
            if w == 0 || w > best {
                continue;
            }
            if w < best {
                best = w;
                picked.clear();
            }
            let mut c = a.bits.clone();
            c.xor_assign(&b.bits);
            picked.push(c);
        }
    }
    finish(picked, perm)
}

fn finish(picked: Vec<BitVector>, perm: &PermutationPair) -> Vec<BitVector> {
    let mut out: Vec<BitVector> = picked.iter().map(|c| perm.to_original(c)).collect();
    out.sort();
    out.dedup();
    out
}
