//! Enumeration of `R_{k,n}` and the count `I(f)` of symmetric no-junta subfunctions.

use std::ops::ControlFlow;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::moment::{expected_indicator, EmpiricalMoments, SecondMomentReport};
use crate::enumerate::{random_function_in_stream, seeded_rng};
use crate::error::{Error, Result};
use crate::restriction::{subcube_offsets, Restriction};
use crate::symmetry::SymmetryProfile;
use crate::table::TruthTable;
use crate::varset::VarSet;

/// Largest `|R_{k,n}|` accepted for exhaustive counting.
pub const MAX_EXHAUSTIVE_RESTRICTIONS: u128 = 100_000_000;

/// A restriction in `R_{k,n}` as a free-variable mask plus the point index of its base corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubcubeRef {
    pub free_mask: usize,
    pub base: usize,
}

impl SubcubeRef {
    pub fn free(&self) -> VarSet {
        VarSet::from_mask(self.free_mask as u32)
    }

    pub fn restriction(&self, n: usize) -> Restriction {
        Restriction::new(
            (1..=n)
                .filter(|i| self.free_mask >> (i - 1) & 1 == 0)
                .map(|i| (i, self.base >> (i - 1) & 1 == 1)),
        )
        .expect("distinct indices")
    }
}

pub(crate) fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("need 1 <= k < n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `|R_{k,n}|` as a machine integer.
pub fn restriction_total(n: usize, k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c << (n - k)
}

/// Next `k`-subset mask in increasing numeric (colex) order.
fn next_same_popcount(x: usize) -> usize {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Visits `R_{k,n}` with free sets in colex order and assignments in increasing binary order.
pub fn for_each_restriction<B>(
    n: usize,
    k: usize,
    mut visit: impl FnMut(SubcubeRef) -> ControlFlow<B>,
) -> Option<B> {
    let full = (1usize << n) - 1;
    let mut free = (1usize << k) - 1;
    while free <= full {
        let fixed = full & !free;
        let mut base = 0usize;
        loop {
            if let ControlFlow::Break(b) = visit(SubcubeRef { free_mask: free, base }) {
                return Some(b);
            }
            base = base.wrapping_sub(fixed) & fixed;
            if base == 0 {
                break;
            }
        }
        free = next_same_popcount(free);
    }
    None
}

/// Tests `f|_rho` for symmetry and nondegeneracy using precomputed subcube offsets.
pub struct SubcubeTester {
    k: usize,
    weights: Vec<u32>,
}

impl SubcubeTester {
    pub fn new(k: usize) -> Self {
        SubcubeTester { k, weights: (0..1u32 << k).map(u32::count_ones).collect() }
    }

    /// Symmetric and nonconstant, which for symmetric functions means nondegenerate.
    pub fn is_symmetric_nojunta(&self, tt: &TruthTable, offsets: &[usize], base: usize) -> bool {
        let mut by_weight = [None::<bool>; 25];
        for (y, &off) in offsets.iter().enumerate() {
            let v = tt.bit(base | off);
            let slot = &mut by_weight[self.weights[y] as usize];
            match *slot {
                None => *slot = Some(v),
                Some(u) if u != v => return false,
                _ => {}
            }
        }
        let first = by_weight[0];
        by_weight[1..=self.k].iter().any(|&v| v != first)
    }

    pub fn profile(&self, tt: &TruthTable, offsets: &[usize], base: usize) -> SymmetryProfile {
        let mut values = vec![false; self.k + 1];
        for (y, &off) in offsets.iter().enumerate() {
            values[self.weights[y] as usize] = tt.bit(base | off);
        }
        SymmetryProfile::new(values).expect("k <= 24")
    }
}

/// Uniform draw from `R_{k,n}`.
pub fn random_restriction<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> SubcubeRef {
    let free_mask = rand::seq::index::sample(rng, n, k).iter().fold(0usize, |m, i| m | 1 << i);
    let base = rng.random::<u64>() as usize & ((1usize << n) - 1) & !free_mask;
    SubcubeRef { free_mask, base }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum IndicatorMode {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorCount {
    pub n: usize,
    pub k: usize,
    pub mode: IndicatorMode,
    /// `|R_{k,n}|`.
    pub restrictions: u128,
    pub examined: u64,
    pub hits: u64,
    /// `I(f)` when exhaustive, otherwise `|R_{k,n}| hits / examined`.
    pub estimate: f64,
    /// Zero when exhaustive.
    pub stderr: f64,
}

fn exhaustive_count(tt: &TruthTable, k: usize) -> u64 {
    let n = tt.num_vars();
    let tester = SubcubeTester::new(k);
    let mut hits = 0u64;
    let mut offsets_for = 0usize;
    let mut offsets = Vec::new();
    for_each_restriction::<()>(n, k, |r| {
        if r.free_mask != offsets_for || offsets.is_empty() {
            offsets = subcube_offsets(r.free_mask);
            offsets_for = r.free_mask;
        }
        hits += tester.is_symmetric_nojunta(tt, &offsets, r.base) as u64;
        ControlFlow::Continue(())
    });
    hits
}

/// `I(f)`, exactly or by uniform sampling of `R_{k,n}`.
pub fn count_indicator(tt: &TruthTable, k: usize, mode: IndicatorMode) -> Result<IndicatorCount> {
    let n = tt.num_vars();
    check_k(n, k)?;
    let total = restriction_total(n, k);
    match mode {
        IndicatorMode::Exhaustive => {
            if total > MAX_EXHAUSTIVE_RESTRICTIONS {
                return Err(Error::InvalidParameter(format!(
                    "|R_{{k,n}}| = {total} exceeds {MAX_EXHAUSTIVE_RESTRICTIONS}; use sampling"
                )));
            }
            let hits = exhaustive_count(tt, k);
            Ok(IndicatorCount {
                n,
                k,
                mode,
                restrictions: total,
                examined: total as u64,
                hits,
                estimate: hits as f64,
                stderr: 0.0,
            })
        }
        IndicatorMode::Sample { count, seed } => {
            if count == 0 {
                return Err(Error::InvalidParameter("sample count must be positive".into()));
            }
            let mut rng = seeded_rng(seed, 0);
            let tester = SubcubeTester::new(k);
            let hits = (0..count)
                .filter(|_| {
                    let r = random_restriction(n, k, &mut rng);
                    tester.is_symmetric_nojunta(tt, &subcube_offsets(r.free_mask), r.base)
                })
                .count() as u64;
            let p = hits as f64 / count as f64;
            Ok(IndicatorCount {
                n,
                k,
                mode,
                restrictions: total,
                examined: count,
                hits,
                estimate: total as f64 * p,
                stderr: total as f64 * (p * (1.0 - p) / count as f64).sqrt(),
            })
        }
    }
}

/// Draws `samples` random functions, counts `I(f)` exactly for each and compares with `E[I(f)]`.
///
/// Sample `i` uses RNG stream `i`, so the report does not depend on `workers`.
pub fn monte_carlo_lemma4(
    n: usize,
    k: usize,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<SecondMomentReport> {
    check_k(n, k)?;
    if workers == 0 {
        return Err(Error::InvalidParameter("workers must be at least 1".into()));
    }
    if restriction_total(n, k) > MAX_EXHAUSTIVE_RESTRICTIONS {
        return Err(Error::InvalidParameter(format!("|R_{{k,n}}| too large for n = {n}, k = {k}")));
    }
    let mut report = SecondMomentReport::closed_form(n, k)?;
    if samples == 0 {
        return Ok(report);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let counts: Vec<u64> = pool.install(|| {
        (0..samples)
            .into_par_iter()
            .map(|i| random_function_in_stream(n, seed, i).map(|f| exhaustive_count(&f, k)))
            .collect::<Result<Vec<u64>>>()
    })?;
    report.empirical = EmpiricalMoments::from_counts(&counts, seed, &expected_indicator(n, k)?);
    Ok(report)
}
