//! The degree bound for arbitrary functions via a symmetric no-junta subfunction,
//! and the `d_max` corollaries of both bounds.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::bounds::indicator::{for_each_restriction, random_restriction, SubcubeRef, SubcubeTester};
use crate::bounds::symmetric::{profile_bits, SymBoundReport};
use crate::enumerate::seeded_rng;
use crate::error::{Error, Result};
use crate::modpoly::{prime_power_degrees, symmetric_spectrum, Modulus, PrimePower, Ring};
use crate::restriction::{subcube_offsets, Restriction};
use crate::table::TruthTable;
use crate::varset::VarSet;

pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "order", rename_all = "kebab-case")]
pub enum SearchMode {
    /// Colex free sets, assignments in increasing binary order, stopping after `cap` restrictions.
    Lexicographic { cap: u64 },
    /// `cap` uniform draws from `R_{k,n}`.
    Sampled { cap: u64, seed: u64 },
}

impl Default for SearchMode {
    fn default() -> Self {
        SearchMode::Lexicographic { cap: DEFAULT_SEARCH_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoundRestriction {
    pub free: VarSet,
    pub restriction: Restriction,
    /// Value vector of the subfunction.
    pub profile: String,
    /// `d_{p_i^{e_i}}(f|_rho)` in factor order.
    pub sub_degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonSymReport {
    pub n: usize,
    pub m: u64,
    pub factors: Vec<PrimePower>,
    pub k: usize,
    pub search: SearchMode,
    pub examined: u64,
    pub found: Option<FoundRestriction>,
    /// `d_{p_i^{e_i}}(f)` on the full function; present only when a restriction was found.
    pub degrees: Option<Vec<usize>>,
    pub product: Option<u128>,
    /// `m * prod d_i > lg n - 1`, decided exactly; absent when nothing was found.
    pub holds: Option<bool>,
    /// Full-function degrees dominate the subfunction degrees.
    pub monotone: Option<bool>,
}

/// `floor(lg n) - 1`, clamped to `[1, n - 1]`.
pub fn subfunction_arity(n: usize) -> usize {
    let lg = (usize::BITS - 1 - n.leading_zeros()) as usize;
    lg.saturating_sub(1).clamp(1, n - 1)
}

/// `x > lg n - 1` for a nonnegative integer `x`, i.e. `2^(x + 1) > n`.
pub(crate) fn exceeds_lg_minus_one(x: u128, n: usize) -> bool {
    x >= 126 || (1u128 << (x + 1)) > n as u128
}

fn search(tt: &TruthTable, k: usize, mode: SearchMode) -> (u64, Option<SubcubeRef>) {
    let n = tt.num_vars();
    let tester = SubcubeTester::new(k);
    let mut examined = 0u64;
    match mode {
        SearchMode::Lexicographic { cap } => {
            let mut offsets: Vec<usize> = Vec::new();
            let mut offsets_for = 0usize;
            let hit = for_each_restriction(n, k, |r| {
                if examined == cap {
                    return ControlFlow::Break(None);
                }
                examined += 1;
                if offsets.is_empty() || offsets_for != r.free_mask {
                    offsets = subcube_offsets(r.free_mask);
                    offsets_for = r.free_mask;
                }
                if tester.is_symmetric_nojunta(tt, &offsets, r.base) {
                    ControlFlow::Break(Some(r))
                } else {
                    ControlFlow::Continue(())
                }
            });
            (examined, hit.flatten())
        }
        SearchMode::Sampled { cap, seed } => {
            let mut rng = seeded_rng(seed, 0);
            let hit = (0..cap).find_map(|_| {
                examined += 1;
                let r = random_restriction(n, k, &mut rng);
                tester.is_symmetric_nojunta(tt, &subcube_offsets(r.free_mask), r.base).then_some(r)
            });
            (examined, hit)
        }
    }
}

/// Looks for a symmetric no-junta subfunction on `floor(lg n) - 1` variables and, if one
/// exists, checks `m * prod d_{p_i^{e_i}}(f) > lg n - 1` on the full function.
pub fn verify_nonsym_bound(tt: &TruthTable, modulus: &Modulus, mode: SearchMode) -> Result<NonSymReport> {
    let n = tt.num_vars();
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need n >= 4, got {n}")));
    }
    let k = subfunction_arity(n);
    let (examined, hit) = search(tt, k, mode);
    let mut report = NonSymReport {
        n,
        m: modulus.value(),
        factors: modulus.factors().to_vec(),
        k,
        search: mode,
        examined,
        found: None,
        degrees: None,
        product: None,
        holds: None,
        monotone: None,
    };
    let Some(r) = hit else {
        return Ok(report);
    };
    let profile = SubcubeTester::new(k).profile(tt, &subcube_offsets(r.free_mask), r.base);
    let sub_degrees: Vec<usize> = modulus
        .prime_power_moduli()
        .into_iter()
        .map(|q| symmetric_spectrum(&profile, &Ring::Mod(q)).degree)
        .collect();
    let degrees = prime_power_degrees(tt, modulus);
    let product = degrees.iter().fold(modulus.value() as u128, |acc, &d| acc * d as u128);
    report.monotone = Some(degrees.iter().zip(&sub_degrees).all(|(d, s)| d >= s));
    report.holds = Some(exceeds_lg_minus_one(product, n));
    report.product = Some(product);
    report.degrees = Some(degrees);
    report.found = Some(FoundRestriction {
        free: r.free(),
        restriction: r.restriction(n),
        profile: profile_bits(&profile),
        sub_degrees,
    });
    Ok(report)
}

#[derive(Debug, Clone, Copy)]
pub enum CorollaryInput<'a> {
    Symmetric(&'a SymBoundReport),
    NonSymmetric(&'a NonSymReport),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub n: usize,
    /// Number of distinct primes of `m`.
    pub r: usize,
    /// `M = max p_i^{e_i}`.
    pub largest_prime_power: u64,
    pub d_max: usize,
    /// `n` for the symmetric bound, `lg n - 1` otherwise.
    pub base: f64,
    /// `base^(1/r) / M`, for display.
    pub bound: f64,
    /// Whether the underlying degree bound held, which the corollary presupposes.
    pub premise: bool,
    /// `d_max > base^(1/r) / M`, decided as `(d_max M)^r > base`.
    pub holds: bool,
}

/// `d_max > base^(1/r) / M`, from `m <= M^r` and `prod d_i <= d_max^r`.
///
/// Returns `None` for a non-symmetric report without a found restriction.
pub fn corollary_dmax(input: CorollaryInput<'_>) -> Option<CorollaryReport> {
    let (n, r, big_m, d_max, premise, symmetric) = match input {
        CorollaryInput::Symmetric(s) => (s.n, s.factors.len(), s.largest_prime_power, s.d_max, s.holds, true),
        CorollaryInput::NonSymmetric(t) => {
            let degrees = t.degrees.as_ref()?;
            let big_m = t.factors.iter().map(|f| f.value()).max().unwrap_or(1);
            let d_max = degrees.iter().copied().max().unwrap_or(0);
            (t.n, t.factors.len(), big_m, d_max, t.holds.unwrap_or(false), false)
        }
    };
    let base = if symmetric { n as f64 } else { (n as f64).log2() - 1.0 };
    let scaled = (d_max as u128 * big_m as u128).checked_pow(r as u32);
    let holds = match scaled {
        None => true,
        Some(x) if symmetric => x > n as u128,
        Some(x) => exceeds_lg_minus_one(x, n),
    };
    Some(CorollaryReport {
        n,
        r,
        largest_prime_power: big_m,
        d_max,
        base,
        bound: base.max(0.0).powf(1.0 / r as f64) / big_m as f64,
        premise,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::symmetric::verify_sym_bound;
    use crate::enumerate::random_function;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    #[test]
    fn arity() {
        assert_eq!(subfunction_arity(16), 3);
        assert_eq!(subfunction_arity(4), 1);
        assert_eq!(subfunction_arity(7), 1);
        assert_eq!(subfunction_arity(8), 2);
        assert_eq!(subfunction_arity(24), 3);
    }

    #[test]
    fn lg_threshold() {
        assert!(exceeds_lg_minus_one(1, 3));
        assert!(!exceeds_lg_minus_one(1, 4));
        assert!(exceeds_lg_minus_one(4, 16) && exceeds_lg_minus_one(3, 15));
        assert!(!exceeds_lg_minus_one(3, 16));
    }

    #[test]
    fn parity_is_found_first() {
        let xor = TruthTable::parity(16).unwrap();
        let rep = verify_nonsym_bound(&xor, &md(6), SearchMode::default()).unwrap();
        assert_eq!(rep.examined, 1);
        let found = rep.found.unwrap();
        assert_eq!(found.free.to_vec(), vec![1, 2, 3]);
        assert_eq!(found.profile, "0101");
        assert_eq!(rep.degrees, Some(vec![1, 16]));
        assert_eq!(rep.product, Some(96));
        assert_eq!((rep.holds, rep.monotone), (Some(true), Some(true)));
    }

    #[test]
    fn and_needs_all_ones_elsewhere() {
        let and = TruthTable::and(16).unwrap();
        let rep = verify_nonsym_bound(&and, &md(6), SearchMode::default()).unwrap();
        let found = rep.found.unwrap();
        assert_eq!(found.profile, "0001");
        assert!(found.restriction.iter().all(|(_, b)| b));
        assert_eq!(rep.degrees, Some(vec![16, 16]));
        assert_eq!(rep.holds, Some(true));
        let capped = verify_nonsym_bound(&and, &md(6), SearchMode::Lexicographic { cap: 10 }).unwrap();
        assert_eq!((capped.examined, capped.found), (10, None));
        assert_eq!(capped.holds, None);
    }

    #[test]
    fn random_functions() {
        for seed in 0..5 {
            let f = random_function(16, seed).unwrap();
            let rep = verify_nonsym_bound(&f, &md(6), SearchMode::default()).unwrap();
            assert_eq!(rep.k, 3);
            assert!(rep.found.is_some());
            assert_eq!((rep.holds, rep.monotone), (Some(true), Some(true)));
            let sampled =
                verify_nonsym_bound(&f, &md(6), SearchMode::Sampled { cap: 100_000, seed }).unwrap();
            assert!(sampled.found.is_some());
        }
    }

    #[test]
    fn small_n_rejected() {
        let f = TruthTable::parity(3).unwrap();
        assert!(verify_nonsym_bound(&f, &md(6), SearchMode::default()).is_err());
    }

    #[test]
    fn corollary_examples() {
        let rep = verify_sym_bound(&TruthTable::parity(4).unwrap(), &md(6)).unwrap();
        let c = corollary_dmax(CorollaryInput::Symmetric(&rep)).unwrap();
        assert_eq!((c.r, c.largest_prime_power, c.d_max), (2, 3, 4));
        assert!((c.bound - 2.0 / 3.0).abs() < 1e-12);
        assert!(c.premise && c.holds);

        let xor = TruthTable::parity(16).unwrap();
        let t = verify_nonsym_bound(&xor, &md(6), SearchMode::default()).unwrap();
        let c = corollary_dmax(CorollaryInput::NonSymmetric(&t)).unwrap();
        assert!((c.bound - 3f64.sqrt() / 3.0).abs() < 1e-12);
        assert!(c.holds);

        let x4 = TruthTable::parity(4).unwrap();
        let t = verify_nonsym_bound(&x4, &md(6), SearchMode::default()).unwrap();
        let c = corollary_dmax(CorollaryInput::NonSymmetric(&t)).unwrap();
        assert!((c.bound - 1.0 / 3.0).abs() < 1e-12);

        let prime = verify_sym_bound(&TruthTable::or(16).unwrap(), &md(5)).unwrap();
        let c = corollary_dmax(CorollaryInput::Symmetric(&prime)).unwrap();
        assert!((c.bound - 16.0 / 5.0).abs() < 1e-12);
    }
}
