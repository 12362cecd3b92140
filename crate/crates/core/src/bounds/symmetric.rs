//! The degree lower bound for symmetric functions and its CRT witness.
//!
//! For a nondegenerate symmetric `f` and `m = prod p_i^{e_i}` with at least two
//! distinct primes, the witness is a set size `|A|` that agrees with the first
//! weight `tau` carrying value 1 modulo `L_1` and with 0 modulo every other `L_i`.
//! Evaluating the representing polynomials at `|A|` would give 1 modulo `p_1^{e_1}`
//! and 0 modulo the others, which no 0/1 value satisfies, so `|A| > n`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::crt::solve_crt;
use crate::enumerate::{enumerate_symmetric_profiles, Partition};
use crate::error::{Error, Result};
use crate::modpoly::binom::binom_mod_u64;
use crate::modpoly::{period_l, symmetric_spectrum, Modulus, PrimePower, Ring};
use crate::symmetry::SymmetryProfile;
use crate::table::TruthTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymBoundReport {
    pub n: usize,
    pub m: u64,
    pub factors: Vec<PrimePower>,
    /// `d_{p_i^{e_i}}(f)` in factor order.
    pub degrees: Vec<usize>,
    /// `m * prod d_i`.
    pub product: u128,
    pub holds: bool,
    pub d_min: usize,
    pub d_max: usize,
    /// `max p_i^{e_i}`.
    pub largest_prime_power: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrtWitness {
    pub n: usize,
    pub m: u64,
    /// True when the witness was built for the complement because `f(∅) = 1`.
    pub complemented: bool,
    /// Smallest weight with value 1 after normalization.
    pub tau: usize,
    pub degrees: Vec<usize>,
    pub d_min: usize,
    /// Factor index (0-based) playing the role of index 1 in the CRT system.
    pub primary: usize,
    /// `L_i = p_i^{e_i + floor(log_{p_i} d_i)}` in factor order.
    pub periods: Vec<u128>,
    /// `L = prod L_i`.
    pub period_product: u128,
    /// The CRT solution in `[1, L]`.
    pub a_size: u128,
    /// `P_i(A) mod p_i^{e_i}` from the symmetric expansion, in factor order.
    pub evaluations: Vec<i64>,
    /// `m * prod d_i`.
    pub degree_product: u128,
}

fn profile_of(tt: &TruthTable) -> Result<SymmetryProfile> {
    let profile = tt.symmetry_profile().ok_or(Error::NotSymmetric)?;
    if !profile.is_nondegenerate() {
        return Err(Error::InputDegenerate);
    }
    Ok(profile)
}

/// Integer spectrum reduced into each prime-power ring.
fn factor_spectra(profile: &SymmetryProfile, modulus: &Modulus) -> Vec<(Modulus, Vec<i64>, usize)> {
    let integral = symmetric_spectrum(profile, &Ring::Integers);
    modulus
        .prime_power_moduli()
        .into_iter()
        .map(|q| {
            let coeffs: Vec<i64> = integral.coeffs.iter().map(|&c| q.reduce(c)).collect();
            let degree = coeffs.iter().rposition(|&c| c != 0).unwrap_or(0);
            (q, coeffs, degree)
        })
        .collect()
}

fn report_from_degrees(n: usize, modulus: &Modulus, degrees: Vec<usize>) -> SymBoundReport {
    let product = degrees.iter().fold(modulus.value() as u128, |acc, &d| acc * d as u128);
    SymBoundReport {
        n,
        m: modulus.value(),
        factors: modulus.factors().to_vec(),
        d_min: degrees.iter().copied().min().unwrap_or(0),
        d_max: degrees.iter().copied().max().unwrap_or(0),
        degrees,
        product,
        holds: product > n as u128,
        largest_prime_power: modulus.largest_prime_power(),
    }
}

pub fn sym_bound_for_profile(profile: &SymmetryProfile, modulus: &Modulus) -> Result<SymBoundReport> {
    if !profile.is_nondegenerate() {
        return Err(Error::InputDegenerate);
    }
    let degrees = modulus
        .prime_power_moduli()
        .iter()
        .map(|q| symmetric_spectrum(profile, &Ring::Mod(q.clone())).degree)
        .collect();
    Ok(report_from_degrees(profile.num_vars(), modulus, degrees))
}

/// Evaluates `m * prod d_{p_i^{e_i}}(f) > n` for a symmetric nondegenerate `f`.
pub fn verify_sym_bound(tt: &TruthTable, modulus: &Modulus) -> Result<SymBoundReport> {
    sym_bound_for_profile(&profile_of(tt)?, modulus)
}

/// `C(N, k) mod q` for `k = 0..=d`, memoized per `(N, q)`.
#[derive(Default)]
pub(crate) struct BinomRows {
    rows: HashMap<(u64, u64), Vec<u64>>,
}

impl BinomRows {
    fn row(&mut self, size: u64, q: u64, d: usize) -> &[u64] {
        let row = self.rows.entry((size, q)).or_default();
        for k in row.len()..=d {
            row.push(binom_mod_u64(size, k as u64, q));
        }
        row
    }
}

fn witness_with(profile: &SymmetryProfile, modulus: &Modulus, cache: &mut BinomRows) -> Result<CrtWitness> {
    if !profile.is_nondegenerate() {
        return Err(Error::InputDegenerate);
    }
    if modulus.rank() < 2 {
        return Err(Error::PrimePowerModulus(modulus.value()));
    }
    let complemented = profile.value(0);
    let normalized = if complemented { profile.complement() } else { profile.clone() };
    let spectra = factor_spectra(&normalized, modulus);
    witness_from_spectra(profile, modulus, &spectra, cache)
}

fn witness_from_spectra(
    profile: &SymmetryProfile,
    modulus: &Modulus,
    spectra: &[(Modulus, Vec<i64>, usize)],
    cache: &mut BinomRows,
) -> Result<CrtWitness> {
    let n = profile.num_vars();
    let complemented = profile.value(0);
    let normalized = if complemented { profile.complement() } else { profile.clone() };
    let violation =
        |reason: String| Error::ClaimViolation { hex: format!("profile {}", profile_bits(profile)), reason };
    let degrees: Vec<usize> = spectra.iter().map(|s| s.2).collect();
    let d_min = *degrees.iter().min().expect("rank >= 2");
    // Ties go to the smallest prime power; factors are ordered by prime, so compare values.
    let primary = (0..spectra.len())
        .filter(|&i| degrees[i] == d_min)
        .min_by_key(|&i| spectra[i].0.value())
        .expect("rank >= 2");
    let tau = normalized.first_one().expect("nonconstant with v_0 = 0");
    if tau > d_min {
        return Err(violation(format!("tau = {tau} exceeds d_min = {d_min}")));
    }

    let periods = spectra.iter().map(|(q, _, d)| period_l(*d as u64, q)).collect::<Result<Vec<u128>>>()?;
    let congruences: Vec<(u128, u128)> = periods
        .iter()
        .enumerate()
        .map(|(i, &l)| (if i == primary { tau as u128 % l } else { 0 }, l))
        .collect();
    let (x, period_product) =
        solve_crt(&congruences).ok_or_else(|| Error::InvalidParameter("CRT moduli overflow".into()))?;
    let a_size = if x == 0 { period_product } else { x };

    let evaluations: Vec<i64> = spectra
        .iter()
        .map(|(q, coeffs, d)| {
            let qv = q.value();
            let row = cache.row(a_size as u64, qv, *d);
            let sum = (0..=*d).fold(0u64, |acc, k| (acc + coeffs[k] as u64 * row[k]) % qv);
            sum as i64
        })
        .collect();
    let degree_product = degrees.iter().fold(modulus.value() as u128, |acc, &d| acc * d as u128);

    for (i, &v) in evaluations.iter().enumerate() {
        let want = (i == primary) as i64;
        if v != want {
            return Err(violation(format!(
                "P_{}(A) = {v} mod {}, expected {want}",
                i + 1,
                spectra[i].0.value()
            )));
        }
    }
    if a_size <= n as u128 {
        return Err(violation(format!("|A| = {a_size} does not exceed n = {n}")));
    }
    if period_product > degree_product {
        return Err(violation(format!("L = {period_product} exceeds m * prod d_i = {degree_product}")));
    }

    Ok(CrtWitness {
        n,
        m: modulus.value(),
        complemented,
        tau,
        degrees,
        d_min,
        primary,
        periods,
        period_product,
        a_size,
        evaluations,
        degree_product,
    })
}

pub fn crt_witness_for_profile(profile: &SymmetryProfile, modulus: &Modulus) -> Result<CrtWitness> {
    witness_with(profile, modulus, &mut BinomRows::default())
}

/// Builds and checks the CRT witness; any failed step comes back as [`Error::ClaimViolation`].
pub fn construct_crt_witness(tt: &TruthTable, modulus: &Modulus) -> Result<CrtWitness> {
    let profile = profile_of(tt)?;
    crt_witness_for_profile(&profile, modulus).map_err(|e| match e {
        Error::ClaimViolation { reason, .. } => Error::ClaimViolation { hex: tt.to_hex(), reason },
        other => other,
    })
}

/// `v_0 v_1 .. v_n` as a 0/1 string.
pub fn profile_bits(profile: &SymmetryProfile) -> String {
    profile.values().iter().map(|&v| if v { '1' } else { '0' }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymFinding {
    /// Value vector `v_0..v_n`.
    pub profile: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymScanSummary {
    pub n: usize,
    pub m: u64,
    pub count: u64,
    pub min_product: Option<u128>,
    pub all_hold: bool,
    /// False for prime-power moduli, where no CRT witness exists.
    pub witnesses_checked: bool,
    pub findings: Vec<SymFinding>,
}

impl SymScanSummary {
    fn merge(mut self, other: SymScanSummary) -> SymScanSummary {
        self.count += other.count;
        self.min_product = match (self.min_product, other.min_product) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.all_hold &= other.all_hold;
        self.findings.extend(other.findings);
        self
    }
}

fn scan_partition(n: usize, modulus: &Modulus, partition: Partition) -> Result<SymScanSummary> {
    let witnesses_checked = modulus.rank() >= 2;
    let mut cache = BinomRows::default();
    let mut summary = SymScanSummary {
        n,
        m: modulus.value(),
        count: 0,
        min_product: None,
        all_hold: true,
        witnesses_checked,
        findings: Vec::new(),
    };
    for profile in enumerate_symmetric_profiles(n, partition)? {
        // Degrees of f and its complement agree, so one normalized spectrum serves both checks.
        let normalized = if profile.value(0) { profile.complement() } else { profile.clone() };
        let spectra = factor_spectra(&normalized, modulus);
        let report = report_from_degrees(n, modulus, spectra.iter().map(|s| s.2).collect());
        summary.count += 1;
        summary.min_product = Some(summary.min_product.map_or(report.product, |p| p.min(report.product)));
        if !report.holds {
            summary.all_hold = false;
            summary.findings.push(SymFinding {
                profile: profile_bits(&profile),
                reason: format!("m * prod d_i = {} does not exceed n = {n}", report.product),
            });
        }
        if witnesses_checked {
            match witness_from_spectra(&profile, modulus, &spectra, &mut cache) {
                Ok(_) => {}
                Err(Error::ClaimViolation { reason, .. }) => {
                    summary.findings.push(SymFinding { profile: profile_bits(&profile), reason })
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(summary)
}

/// Checks the bound and the CRT witness on every nonconstant symmetric function of `n` variables.
pub fn exhaustive_sym_scan(n: usize, modulus: &Modulus, partition: Partition) -> Result<SymScanSummary> {
    scan_partition(n, modulus, partition)
}

/// [`exhaustive_sym_scan`] over fixed chunks on `workers` threads; output does not depend on `workers`.
pub fn exhaustive_sym_scan_parallel(n: usize, modulus: &Modulus, workers: usize) -> Result<SymScanSummary> {
    if workers == 0 {
        return Err(Error::InvalidParameter("workers must be at least 1".into()));
    }
    let chunks = 64u64;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let parts: Vec<Result<SymScanSummary>> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|w| scan_partition(n, modulus, Partition { worker: w, total: chunks }))
            .collect()
    });
    let mut parts = parts.into_iter();
    let first = parts.next().expect("chunks > 0")?;
    parts.try_fold(first, |acc, p| Ok(acc.merge(p?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    #[test]
    fn bound_examples() {
        let r = verify_sym_bound(&TruthTable::or(4).unwrap(), &md(6)).unwrap();
        assert_eq!((r.degrees.clone(), r.product, r.holds), (vec![4, 4], 96, true));
        let r = verify_sym_bound(&TruthTable::parity(4).unwrap(), &md(6)).unwrap();
        assert_eq!((r.degrees.clone(), r.product, r.holds), (vec![1, 4], 24, true));
        assert_eq!((r.d_min, r.d_max, r.largest_prime_power), (1, 4, 3));
        let r = verify_sym_bound(&TruthTable::parity(2).unwrap(), &md(6)).unwrap();
        assert_eq!((r.degrees.clone(), r.product, r.holds), (vec![1, 2], 12, true));
    }

    #[test]
    fn bound_errors() {
        let addr = TruthTable::address(2).unwrap();
        assert_eq!(verify_sym_bound(&addr, &md(6)), Err(Error::NotSymmetric));
        let c = TruthTable::constant(4, true).unwrap();
        assert_eq!(verify_sym_bound(&c, &md(6)), Err(Error::InputDegenerate));
        assert_eq!(construct_crt_witness(&addr, &md(6)), Err(Error::NotSymmetric));
    }

    #[test]
    fn witness_or4() {
        let w = construct_crt_witness(&TruthTable::or(4).unwrap(), &md(6)).unwrap();
        assert_eq!((w.tau, w.d_min, w.primary), (1, 4, 0));
        assert_eq!(w.periods, vec![8, 9]);
        assert_eq!(w.a_size, 9);
        assert_eq!(w.evaluations, vec![1, 0]);
    }

    #[test]
    fn witness_xor4() {
        let w = construct_crt_witness(&TruthTable::parity(4).unwrap(), &md(6)).unwrap();
        assert_eq!((w.tau, w.d_min, w.primary), (1, 1, 0));
        assert_eq!(w.periods, vec![2, 9]);
        assert_eq!(w.a_size, 9);
    }

    #[test]
    fn witness_and2() {
        let w = construct_crt_witness(&TruthTable::and(2).unwrap(), &md(6)).unwrap();
        assert_eq!((w.tau, w.d_min), (2, 2));
        assert_eq!(w.periods, vec![4, 3]);
        assert_eq!(w.a_size, 6);
        assert!(w.a_size > 2);
    }

    #[test]
    fn witness_normalizes_by_complement() {
        let nand = TruthTable::and(3).unwrap().complement();
        let w = construct_crt_witness(&nand, &md(10)).unwrap();
        assert!(w.complemented);
        assert_eq!(w.tau, 3);
        let plain = construct_crt_witness(&TruthTable::and(3).unwrap(), &md(10)).unwrap();
        assert_eq!(w.degrees, plain.degrees);
        assert_eq!(w.a_size, plain.a_size);
    }

    #[test]
    fn primary_prefers_smaller_prime_power_on_ties() {
        // OR_4 mod 12: d_4 = d_3 = 4, so Z_3 (3 < 4) is primary.
        let w = construct_crt_witness(&TruthTable::or(4).unwrap(), &md(12)).unwrap();
        assert_eq!(w.degrees, vec![4, 4]);
        assert_eq!(w.primary, 1);
    }

    #[test]
    fn prime_power_moduli_have_no_witness() {
        let xor = TruthTable::parity(4).unwrap();
        assert_eq!(construct_crt_witness(&xor, &md(4)), Err(Error::PrimePowerModulus(4)));
        // The bound itself is false over a single prime: d_2(XOR_4) = 1 and 2 * 1 <= 4.
        let r = verify_sym_bound(&xor, &md(2)).unwrap();
        assert!(!r.holds);
    }

    #[test]
    fn scan_examples() {
        let s = exhaustive_sym_scan(4, &md(6), Partition::WHOLE).unwrap();
        assert_eq!((s.count, s.all_hold), (30, true));
        assert!(s.findings.is_empty());
        let s = exhaustive_sym_scan(2, &md(10), Partition::WHOLE).unwrap();
        assert_eq!((s.count, s.all_hold), (6, true));
        let par = exhaustive_sym_scan_parallel(9, &md(30), 3).unwrap();
        assert_eq!(par, exhaustive_sym_scan(9, &md(30), Partition::WHOLE).unwrap());
    }

    #[test]
    fn prime_power_scan_reports_failures() {
        let s = exhaustive_sym_scan(6, &md(2), Partition::WHOLE).unwrap();
        assert!(!s.all_hold);
        assert!(!s.witnesses_checked);
        assert!(s.findings.iter().any(|f| f.profile == "0101010"));
    }
}
