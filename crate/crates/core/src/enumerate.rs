//! Deterministic enumeration and seeded sampling of Boolean functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetry::SymmetryProfile;
use crate::table::{check_vars, small_mask, TruthTable};

/// Largest `n` for which every table of `F_n` is enumerated.
pub const MAX_DENSE_ENUMERATION: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionFilter {
    All,
    Nondegenerate,
    SymmetricNondegenerate,
}

/// Worker `worker` of `total` takes a contiguous slice of the candidate index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub worker: u64,
    pub total: u64,
}

impl Partition {
    pub const WHOLE: Partition = Partition { worker: 0, total: 1 };

    pub fn new(worker: u64, total: u64) -> Result<Self> {
        if total == 0 || worker >= total {
            return Err(Error::InvalidPartition { worker, total });
        }
        Ok(Partition { worker, total })
    }

    /// This worker's half-open range of `0..len`.
    pub fn range(self, len: u64) -> std::ops::Range<u64> {
        let cut = |w: u64| (len as u128 * w as u128 / self.total as u128) as u64;
        cut(self.worker)..cut(self.worker + 1)
    }
}

/// Number of candidates the enumerator scans for `(n, filter)`.
pub fn candidate_count(n: usize, filter: FunctionFilter) -> Result<u64> {
    check_vars(n)?;
    match filter {
        FunctionFilter::All | FunctionFilter::Nondegenerate => {
            if n > MAX_DENSE_ENUMERATION {
                return Err(Error::EnumerationTooLarge { filter: "dense", n, max: MAX_DENSE_ENUMERATION });
            }
            Ok(1u64 << (1 << n))
        }
        FunctionFilter::SymmetricNondegenerate => Ok((1u64 << (n + 1)) - 2),
    }
}

/// Functions of `F_n` in increasing table order (or increasing profile code for the
/// symmetric filter), restricted to the given partition.
pub fn enumerate_functions(
    n: usize,
    filter: FunctionFilter,
    partition: Partition,
) -> Result<Box<dyn Iterator<Item = TruthTable> + Send>> {
    let range = partition.range(candidate_count(n, filter)?);
    Ok(match filter {
        FunctionFilter::All => Box::new(range.map(move |w| dense(n, w))),
        FunctionFilter::Nondegenerate => {
            Box::new(range.map(move |w| dense(n, w)).filter(|tt| tt.is_nondegenerate()))
        }
        FunctionFilter::SymmetricNondegenerate => {
            Box::new(range.map(move |c| profile_for_candidate(n, c).to_table()))
        }
    })
}

/// The nonconstant symmetry profiles of `n` variables, in increasing code order.
pub fn enumerate_symmetric_profiles(
    n: usize,
    partition: Partition,
) -> Result<impl Iterator<Item = SymmetryProfile>> {
    let range = partition.range(candidate_count(n, FunctionFilter::SymmetricNondegenerate)?);
    Ok(range.map(move |c| profile_for_candidate(n, c)))
}

// Codes 0 (constant 0) and 2^(n+1)-1 (constant 1) are skipped.
fn profile_for_candidate(n: usize, candidate: u64) -> SymmetryProfile {
    SymmetryProfile::from_code(n, candidate + 1).expect("n validated")
}

fn dense(n: usize, word: u64) -> TruthTable {
    TruthTable::from_u64(n, word).expect("n validated")
}

/// A uniformly random function of `F_n`, reproducible from `seed`.
pub fn random_function(n: usize, seed: u64) -> Result<TruthTable> {
    random_function_in_stream(n, seed, 0)
}

/// Independent draws indexed by `stream`, so parallel workers reproduce serial output.
pub fn random_function_in_stream(n: usize, seed: u64, stream: u64) -> Result<TruthTable> {
    let mut rng = seeded_rng(seed, stream);
    random_function_with(n, &mut rng)
}

pub fn random_function_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TruthTable> {
    check_vars(n)?;
    let len = if n <= 6 { 1 } else { 1 << (n - 6) };
    let mut words: Vec<u64> = (0..len).map(|_| rng.random()).collect();
    words[0] &= small_mask(n);
    TruthTable::from_words(n, words)
}

pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
