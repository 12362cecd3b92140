//! Finding a single-variable restriction that stays nondegenerate.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{candidate_count, FunctionFilter, Partition};
use crate::error::{Error, Result};
use crate::restriction::{Restriction, Subfunction};
use crate::table::{small_mask, TruthTable, LOW_HALF};

/// A pivot `x_i = b` whose restriction depends on all remaining variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoJuntaCertificate {
    pub pivot: usize,
    pub bit: bool,
    pub subfunction: Subfunction,
}

/// Scans `x_1 = 0, x_1 = 1, x_2 = 0, ...` and returns the first nondegenerate restriction.
pub fn find_nojunta_restriction(tt: &TruthTable) -> Result<NoJuntaCertificate> {
    if tt.num_vars() < 2 {
        return Err(Error::InvalidParameter("a pivot needs n >= 2".into()));
    }
    if !tt.is_nondegenerate() {
        return Err(Error::InputDegenerate);
    }
    for i in 1..=tt.num_vars() {
        for bit in [false, true] {
            let subfunction = tt.restrict(&Restriction::single(i, bit))?;
            if subfunction.table.is_nondegenerate() {
                return Ok(NoJuntaCertificate { pivot: i, bit, subfunction });
            }
        }
    }
    Err(Error::TheoremViolation { hex: tt.to_hex() })
}

/// Per-variable sensitivity words of a single-word table (`n <= 6`).
fn sensitivities(word: u64, n: usize) -> [u64; 6] {
    let mut out = [0u64; 6];
    for (j, d) in out.iter_mut().enumerate().take(n) {
        let m = LOW_HALF[j];
        let s = 1u32 << j;
        *d = (word ^ (((word & m) << s) | ((word >> s) & m))) & small_mask(n);
    }
    out
}

/// Word-level pivot search on `n <= 6` variables, used by the exhaustive verifier.
///
/// Returns `None` for degenerate input as well as when no pivot exists; the caller
/// distinguishes the two with [`is_nondegenerate_word`].
pub fn pivot_word(word: u64, n: usize) -> Option<(usize, bool)> {
    let sens = sensitivities(word, n);
    for i in 0..n {
        for b in [false, true] {
            let lit = if b { !LOW_HALF[i] } else { LOW_HALF[i] };
            if (0..n).filter(|&j| j != i).all(|j| sens[j] & lit != 0) {
                return Some((i + 1, b));
            }
        }
    }
    None
}

pub fn is_nondegenerate_word(word: u64, n: usize) -> bool {
    sensitivities(word, n)[..n].iter().all(|&d| d != 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoJuntaReport {
    pub n: usize,
    pub checked: u64,
    /// Hex tables of nondegenerate functions without a pivot.
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
}

pub const NOJUNTA_MIN_VARS: usize = 2;
pub const NOJUNTA_MAX_VARS: usize = 5;

fn check_range(n: usize) -> Result<()> {
    if !(NOJUNTA_MIN_VARS..=NOJUNTA_MAX_VARS).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "exhaustive no-junta verification supports n in {NOJUNTA_MIN_VARS}..={NOJUNTA_MAX_VARS}, got {n}"
        )));
    }
    Ok(())
}

fn scan(n: usize, range: std::ops::Range<u64>) -> (u64, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for word in range {
        if !is_nondegenerate_word(word, n) {
            continue;
        }
        checked += 1;
        if pivot_word(word, n).is_none() {
            failures.push(TruthTable::from_u64(n, word).expect("n validated").to_hex());
        }
    }
    (checked, failures)
}

/// Runs the pivot search on every nondegenerate function in this partition of `F_n`.
pub fn verify_theorem_nojunta(n: usize, partition: Partition) -> Result<NoJuntaReport> {
    check_range(n)?;
    let start = Instant::now();
    let range = partition.range(candidate_count(n, FunctionFilter::All)?);
    let (checked, failures) = scan(n, range);
    Ok(NoJuntaReport { n, checked, failures, elapsed_ms: start.elapsed().as_millis() as u64 })
}

/// Splits `F_n` into `chunks` partitions, runs them on `workers` threads and merges in order.
pub fn verify_theorem_nojunta_parallel(n: usize, workers: usize) -> Result<NoJuntaReport> {
    check_range(n)?;
    if workers == 0 {
        return Err(Error::InvalidParameter("workers must be at least 1".into()));
    }
    let start = Instant::now();
    let len = candidate_count(n, FunctionFilter::All)?;
    // Fixed chunking keeps the merged failure list independent of `workers`.
    let chunks = 256u64;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let parts: Vec<(u64, Vec<String>)> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|w| scan(n, Partition { worker: w, total: chunks }.range(len)))
            .collect()
    });
    let mut checked = 0;
    let mut failures = Vec::new();
    for (c, f) in parts {
        checked += c;
        failures.extend(f);
    }
    Ok(NoJuntaReport { n, checked, failures, elapsed_ms: start.elapsed().as_millis() as u64 })
}
