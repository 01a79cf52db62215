use crate::error::{Error, Result};
use crate::gf2::{BitVector, Gf2Matrix};

/// Bijection on `0..n`, stored as `forward[old] = new`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    forward: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            forward: (0..n).collect(),
        }
    }

    /// Builds from an old-to-new map, checking it is a bijection.
    pub fn from_forward(forward: Vec<usize>) -> Result<Self> {
        let n = forward.len();
        let mut seen = vec![false; n];
        for &f in &forward {
            if f >= n || std::mem::replace(&mut seen[f], true) {
                return Err(Error::InvalidPermutation(format!(
                    "target {f} is out of range or repeated (n = {n})"
                )));
            }
        }
        Ok(Self { forward })
    }

    /// Builds from a new-to-old listing: position `k` of the result holds
    /// element `order[k]` of the input.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut forward = vec![usize::MAX; n];
        for (new, &old) in order.iter().enumerate() {
            if old >= n || forward[old] != usize::MAX {
                return Err(Error::InvalidPermutation(format!(
                    "source {old} is out of range or repeated (n = {n})"
                )));
            }
            forward[old] = new;
        }
        Ok(Self { forward })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    #[inline]
    pub fn map(&self, old: usize) -> usize {
        self.forward[old]
    }

    /// New-to-old listing (the forward map of the inverse).
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.forward.len()];
        for (old, &new) in self.forward.iter().enumerate() {
            order[new] = old;
        }
        order
    }

    pub fn inverse(&self) -> Self {
        Self {
            forward: self.order(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, &f)| i == f)
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Permutation) -> Self {
        assert_eq!(
            self.len(),
            then.len(),
            "composing permutations of different sizes"
        );
        Self {
            forward: self.forward.iter().map(|&m| then.forward[m]).collect(),
        }
    }

    /// Moves bit `i` of `v` to position `forward[i]`.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.len(), "permutation and vector sizes differ");
        let mut out = BitVector::zeros(v.len());
        for i in v.ones() {
            out.set(self.forward[i], true);
        }
        out
    }

    pub fn apply_slice<T: Clone>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(
            values.len(),
            self.len(),
            "permutation and slice sizes differ"
        );
        let order = self.order();
        order.iter().map(|&old| values[old].clone()).collect()
    }

    /// Moves column `j` of `m` to column `forward[j]`.
    pub fn apply_columns(&self, m: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(m.cols(), self.len(), "permutation and column count differ");
        let rows = m.row_iter().map(|r| self.apply(r)).collect();
        Gf2Matrix::from_rows(rows).expect("permuted rows keep their shape")
    }
}
