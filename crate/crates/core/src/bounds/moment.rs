//! Closed forms for counting symmetric no-junta subfunctions of a random function.
//!
//! `R_{k,n}` is the set of restrictions leaving exactly `k` variables free and
//! `I(f)` counts those `rho` with `f|_rho` symmetric and nondegenerate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modpoly::binom::binomial;

/// Serializes a rational as `"p/q"`, or `"p"` when integral.
pub(crate) fn ratio_str<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn opt_ratio_str<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ratio_str(r, s),
        None => s.serialize_none(),
    }
}

fn check(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n || n > 64 {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n <= 64, got n = {n}, k = {k}")));
    }
    if k > 16 {
        return Err(Error::InvalidParameter(format!("2^(2^k) is out of range for k = {k}")));
    }
    Ok(())
}

fn int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

fn pow2(e: usize) -> BigRational {
    int(BigInt::one() << e)
}

fn binom(n: usize, k: usize) -> BigRational {
    int(BigInt::from(binomial(n as u64, k as u64)))
}

/// `|R_{k,n}| = C(n, k) 2^(n-k)`.
pub fn restriction_count(n: usize, k: usize) -> Result<BigRational> {
    check(n, k)?;
    Ok(binom(n, k) * pow2(n - k))
}

/// Probability that a uniform function of `k` variables is symmetric and nondegenerate: `(2^(k+1) - 2) / 2^(2^k)`.
pub fn p_symmetric(k: usize) -> Result<BigRational> {
    check(k, k)?;
    Ok((pow2(k + 1) - int(2)) / pow2(1 << k))
}

/// `E[I(f)] = |R_{k,n}| (2^(k+1) - 2) / 2^(2^k)`.
pub fn expected_indicator(n: usize, k: usize) -> Result<BigRational> {
    Ok(restriction_count(n, k)? * p_symmetric(k)?)
}

/// `C(n,k) 2^(n-k) * C(n,k) 2^k * 2^(k+1) / 2^(2^k)`.
pub fn delta_upper_bound(n: usize, k: usize) -> Result<BigRational> {
    check(n, k)?;
    Ok(restriction_count(n, k)? * binom(n, k) * pow2(k) * pow2(k + 1) / pow2(1 << k))
}

/// `2^(2^k + k + 1) / 2^n`.
pub fn second_moment_ratio(n: usize, k: usize) -> Result<BigRational> {
    check(n, k)?;
    Ok(pow2((1 << k) + k + 1) / pow2(n))
}

/// Sampled counterpart of the closed forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalMoments {
    pub samples: u64,
    pub seed: u64,
    #[serde(serialize_with = "ratio_str")]
    pub mean: BigRational,
    /// Unbiased sample variance; absent for a single sample.
    #[serde(serialize_with = "opt_ratio_str")]
    pub variance: Option<BigRational>,
    /// `sqrt(variance / samples)`, for display.
    pub stderr: f64,
    pub zero_count: u64,
    #[serde(serialize_with = "ratio_str")]
    pub pr_zero: BigRational,
    /// `|mean - E[I]| <= 3 stderr`, decided exactly.
    pub within_three_stderr: bool,
}

impl EmpiricalMoments {
    /// Summarizes exact per-sample counts.
    pub fn from_counts(counts: &[u64], seed: u64, expected: &BigRational) -> Option<EmpiricalMoments> {
        if counts.is_empty() {
            return None;
        }
        let n = counts.len() as u64;
        let sum: u128 = counts.iter().map(|&c| c as u128).sum();
        let sum_sq: BigInt = counts.iter().map(|&c| BigInt::from(c) * BigInt::from(c)).sum();
        let nr = int(n);
        let mean = int(sum) / nr.clone();
        let variance = (n > 1).then(|| (int(sum_sq) - int(sum) * int(sum) / nr.clone()) / int(n - 1));
        let var_of_mean = variance.clone().unwrap_or_else(BigRational::zero) / nr.clone();
        let gap = &mean - expected;
        let within_three_stderr = &gap * &gap <= int(9) * var_of_mean.clone();
        let zero_count = counts.iter().filter(|&&c| c == 0).count() as u64;
        Some(EmpiricalMoments {
            samples: n,
            seed,
            stderr: to_f64(&var_of_mean).sqrt(),
            mean,
            variance,
            zero_count,
            pr_zero: int(zero_count) / nr,
            within_three_stderr,
        })
    }
}

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondMomentReport {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ratio_str")]
    pub restriction_count: BigRational,
    #[serde(serialize_with = "ratio_str")]
    pub p_sym: BigRational,
    #[serde(serialize_with = "ratio_str")]
    pub expected: BigRational,
    #[serde(serialize_with = "ratio_str")]
    pub delta_bound: BigRational,
    #[serde(serialize_with = "ratio_str")]
    pub ratio_bound: BigRational,
    /// `ratio_bound` as a float, for display.
    pub ratio_bound_approx: f64,
    pub empirical: Option<EmpiricalMoments>,
}

impl SecondMomentReport {
    /// Closed forms only.
    pub fn closed_form(n: usize, k: usize) -> Result<SecondMomentReport> {
        let ratio_bound = second_moment_ratio(n, k)?;
        Ok(SecondMomentReport {
            n,
            k,
            restriction_count: restriction_count(n, k)?,
            p_sym: p_symmetric(k)?,
            expected: expected_indicator(n, k)?,
            delta_bound: delta_upper_bound(n, k)?,
            ratio_bound_approx: to_f64(&ratio_bound),
            ratio_bound,
            empirical: None,
        })
    }
}
