//! Exact computations around the type-B Hecke algebra at unequal parameters:
//! signed permutations and domino insertion, Kazhdan–Lusztig cells, the blob
//! algebra and its standard modules, and the level-2 Fock space.
//!
//! All arithmetic is exact. Laurent polynomials have integer coefficients and
//! specializations land in cyclotomic fields over the rationals.

pub mod blob;
pub mod coxeter;
pub mod domino;
pub mod error;
pub mod fock;
pub mod hecke;
pub mod knuth;
pub mod laurent;
pub mod matrix;
pub mod partitions;
pub mod tensor;
pub mod weylb;

pub use error::{Error, Result};
pub use laurent::{CycloNumber, LaurentPoly};
pub use partitions::{Bipartition, BlobWeight, Partition, PartialOrdering};
pub use weylb::SignedPermutation;

/// Default enumeration cap, overridable through `BLOBCELL_MAX_N`.
pub fn max_n(default: usize) -> usize {
    std::env::var("BLOBCELL_MAX_N")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(default)
}

/// Binomial coefficient as `u64`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
