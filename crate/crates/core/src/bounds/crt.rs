/// Extended Euclid on signed 128-bit integers: `(g, x, y)` with `a x + b y = g`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Smallest nonnegative `x` with `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
///
/// Returns `None` if two moduli share a factor or the combined modulus overflows.
pub fn solve_crt(congruences: &[(u128, u128)]) -> Option<(u128, u128)> {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in congruences {
        let (g, inv, _) = ext_gcd(modulus as i128, m as i128);
        if g != 1 {
            return None;
        }
        // x + modulus * t ≡ r (mod m)  =>  t ≡ (r - x) * modulus^{-1} (mod m)
        let diff = (r as i128 - x as i128).rem_euclid(m as i128);
        let t = (diff * inv.rem_euclid(m as i128)).rem_euclid(m as i128) as u128;
        x += modulus * t;
        modulus = modulus.checked_mul(m)?;
        x %= modulus;
    }
    Some((x, modulus))
}
