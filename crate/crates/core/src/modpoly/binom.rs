//! Exact binomial coefficients modulo `m` and their period in the top argument.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modpoly::modulus::Modulus;

/// `floor(log_p k)` for `k >= 1`.
fn floor_log(p: u64, k: u64) -> u32 {
    let mut t = 0;
    let mut pow = p;
    while pow <= k {
        t += 1;
        pow = match pow.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    t
}

/// `L_k = prod p_i^(e_i + floor(log_{p_i} k))`, with `L_0 = m`.
///
/// `C(x, k) mod m` is periodic in `x` with period `L_k`.
pub fn period_l(k: u64, modulus: &Modulus) -> Result<u128> {
    if k == 0 {
        return Ok(modulus.value() as u128);
    }
    modulus.factors().iter().try_fold(1u128, |acc, f| {
        let exp = f.e + floor_log(f.p, k);
        (f.p as u128)
            .checked_pow(exp)
            .and_then(|x| acc.checked_mul(x))
            .ok_or_else(|| Error::InvalidParameter(format!("L_{k} overflows for m = {modulus}")))
    })
}

/// `C(n, k) mod m`, computed from the exact big-integer value.
pub fn binom_mod(n: &BigUint, k: u64, m: u64) -> u64 {
    if *n < BigUint::from(k) {
        return 0;
    }
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    (c % m).to_u64().expect("residue below m")
}

/// `C(n, k) mod m` for machine-sized `n`.
///
/// While `m * k!` fits in 64 bits the falling factorial is reduced modulo `m * k!`,
/// which keeps every intermediate product inside `u128` and divides out `k!` exactly.
pub fn binom_mod_u64(n: u64, k: u64, m: u64) -> u64 {
    if n < k {
        return 0;
    }
    let mut k_fact: u128 = 1;
    for i in 2..=k as u128 {
        k_fact *= i;
        if k_fact.saturating_mul(m as u128) > u64::MAX as u128 {
            return binom_mod(&BigUint::from(n), k, m);
        }
    }
    let big = k_fact * m as u128;
    let falling = (0..k).fold(1u128 % big, |acc, i| acc * ((n - i) as u128 % big) % big);
    ((falling / k_fact) % m as u128) as u64
}

/// Checks `C(s L_k + j, k) ≡ C(j, k) (mod m)` exactly.
pub fn check_periodicity(s: u64, j: u64, k: u64, modulus: &Modulus) -> Result<bool> {
    let l = period_l(k, modulus)?;
    let shifted = BigUint::from(s) * BigUint::from(l) + BigUint::from(j);
    let m = modulus.value();
    Ok(binom_mod(&shifted, k, m) == binom_mod(&BigUint::from(j), k, m))
}

/// Exact `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |c, i| c * (n - i) / (i + 1))
}
