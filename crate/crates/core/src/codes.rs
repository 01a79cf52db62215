//! Small reference codes and a seeded regular LDPC construction.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf2::{Gf2Matrix, ParityCheckMatrix};

/// Hamming(7,4), column `j` (1-based) holding the binary expansion of `j`.
pub fn hamming74() -> ParityCheckMatrix {
    ParityCheckMatrix::from_bit_strs(&["1010101", "0110011", "0001111"])
}

/// (3,1) repetition code.
pub fn repetition3() -> ParityCheckMatrix {
    ParityCheckMatrix::from_bit_strs(&["110", "011"])
}

/// Random `(col_deg, row_deg)`-regular parity-check matrix with `n` columns.
///
/// Columns are filled one at a time; each picks `col_deg` distinct rows among
/// the least loaded ones, ties broken by a seeded shuffle. Row degrees end up
/// exactly `row_deg` whenever `n * col_deg` is a multiple of `row_deg`.
pub fn random_regular(n: usize, col_deg: usize, row_deg: usize, seed: u64) -> ParityCheckMatrix {
    assert!(
        (n * col_deg).is_multiple_of(row_deg),
        "n * col_deg must be a multiple of row_deg"
    );
    let m = n * col_deg / row_deg;
    assert!(col_deg <= m, "column degree exceeds row count");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut load = vec![0usize; m];
    let mut h = Gf2Matrix::zeros(m, n);
    let mut rows: Vec<usize> = (0..m).collect();
    for c in 0..n {
        rows.shuffle(&mut rng);
        rows.sort_by_key(|&r| load[r]);
        for &r in &rows[..col_deg] {
            h.set(r, c, true);
            load[r] += 1;
        }
    }
    ParityCheckMatrix::new(h).expect("non-empty matrix")
}
