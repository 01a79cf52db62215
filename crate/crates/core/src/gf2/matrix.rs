use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Dense bit-packed GF(2) matrix, one packed [`BitVector`] per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                context: "row length",
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Rows given as `0`/`1` strings.
    pub fn from_bit_strs(rows: &[&str]) -> Self {
        Self::from_rows(rows.iter().map(|r| BitVector::from_bit_str(r)).collect())
            .expect("rows of equal length")
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| BitVector::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
                .collect(),
        )
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVector> {
        self.rows.iter()
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    /// All columns as packed vectors of length `rows`.
    pub fn columns(&self) -> Vec<BitVector> {
        let mut cols = vec![BitVector::zeros(self.rows()); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                cols[c].set(r, true);
            }
        }
        cols
    }

    /// Number of set entries.
    pub fn weight(&self) -> usize {
        self.rows.iter().map(BitVector::weight).sum()
    }

    /// `self · v` over GF(2).
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }
}

impl std::fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        f.write_str("]")
    }
}

/// Parity-check matrix with both the packed rows and the sparse Tanner-graph
/// adjacency (row and column views).
#[derive(Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    dense: Gf2Matrix,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    pub fn new(dense: Gf2Matrix) -> Result<Self> {
        if dense.rows() == 0 || dense.cols() == 0 {
            return Err(Error::InvalidConfig(format!(
                "parity-check matrix must be at least 1x1, got {}x{}",
                dense.rows(),
                dense.cols()
            )));
        }
        let row_adj: Vec<Vec<usize>> = dense.row_iter().map(|r| r.ones().collect()).collect();
        let mut col_adj = vec![Vec::new(); dense.cols()];
        for (r, cols) in row_adj.iter().enumerate() {
            for &c in cols {
                col_adj[c].push(r);
            }
        }
        Ok(Self {
            dense,
            row_adj,
            col_adj,
        })
    }

    pub fn from_bit_strs(rows: &[&str]) -> Self {
        Self::new(Gf2Matrix::from_bit_strs(rows)).expect("non-empty matrix")
    }

    /// Number of checks, M.
    #[inline]
    pub fn rows(&self) -> usize {
        self.dense.rows()
    }

    /// Code length, N.
    #[inline]
    pub fn cols(&self) -> usize {
        self.dense.cols()
    }

    #[inline]
    pub fn matrix(&self) -> &Gf2Matrix {
        &self.dense
    }

    /// Variable indices in check `r`, ascending.
    #[inline]
    pub fn row_support(&self, r: usize) -> &[usize] {
        &self.row_adj[r]
    }

    /// Check indices touching variable `c`, ascending.
    #[inline]
    pub fn col_support(&self, c: usize) -> &[usize] {
        &self.col_adj[c]
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.row_adj.iter().map(Vec::len).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        self.col_adj.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }
}

impl std::fmt::Debug for ParityCheckMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.dense.fmt(f)
    }
}
