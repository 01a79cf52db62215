//! Minimum-weight codeword search for LDPC codes.
//!
//! The search sends many noisy copies of the all-zero codeword through a
//! BPSK/AWGN channel, decodes each with sum-product BP, and runs order-`p`
//! OSD syndrome reprocessing on the least reliable basis of `H`. Pairs of
//! syndrome-consistent error patterns differ by a codeword; the lightest such
//! differences across all trials are the estimate of the minimum-weight
//! codewords and their multiplicity.

pub mod alist;
pub mod bp;
pub mod channel;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod osd;

pub use error::{Error, Result};
pub use gf2::{BitVector, Gf2Matrix, ParityCheckMatrix, Permutation};
