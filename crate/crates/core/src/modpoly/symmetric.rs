use serde::Serialize;

use crate::modpoly::binom::binom_mod_u64;
use crate::modpoly::modulus::Ring;
use crate::symmetry::SymmetryProfile;

/// Coefficients `c_0..c_n` with `P(A) = sum_k c_k C(|A|, k)` for a symmetric function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricSpectrum {
    pub n: usize,
    #[serde(rename = "m")]
    pub ring: Ring,
    pub coeffs: Vec<i64>,
    pub degree: usize,
}

/// Pascal's triangle rows `0..=n`; entries stay below `2^24` for `n <= 24`.
fn pascal(n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![1i64; k + 1];
        for j in 1..k {
            row[j] = rows[k - 1][j - 1] + rows[k - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// Finite differences of the value vector: `c_k = sum_j (-1)^(k-j) C(k, j) v_j`.
pub fn symmetric_spectrum(profile: &SymmetryProfile, ring: &Ring) -> SymmetricSpectrum {
    let n = profile.num_vars();
    let rows = pascal(n);
    let coeffs: Vec<i64> = (0..=n)
        .map(|k| {
            let c = (0..=k)
                .filter(|&j| profile.value(j))
                .map(|j| if (k - j) % 2 == 0 { rows[k][j] } else { -rows[k][j] })
                .sum();
            ring.reduce(c)
        })
        .collect();
    let degree = coeffs.iter().rposition(|&c| c != 0).unwrap_or(0);
    SymmetricSpectrum { n, ring: ring.clone(), coeffs, degree }
}

impl SymmetricSpectrum {
    /// `sum_k c_k C(size, k)` in the coefficient ring; `size` may exceed `n`.
    ///
    /// Over the integers `size` must be at most `n` so the sum stays exact in `i64`.
    pub fn evaluate_at_size(&self, size: u64) -> i64 {
        match &self.ring {
            Ring::Mod(m) => {
                let mv = m.value();
                let sum = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .take(self.degree + 1)
                    .fold(0u64, |acc, (k, &c)| (acc + c as u64 * binom_mod_u64(size, k as u64, mv)) % mv);
                sum as i64
            }
            Ring::Integers => {
                assert!(size as usize <= self.n, "integer spectrum evaluated beyond n");
                let rows = pascal(size as usize);
                self.coeffs
                    .iter()
                    .take(size as usize + 1)
                    .enumerate()
                    .map(|(k, &c)| c * rows[size as usize][k])
                    .sum()
            }
        }
    }
}
