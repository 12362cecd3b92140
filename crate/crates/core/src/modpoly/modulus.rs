use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Moduli are kept below `2^31` so that sums and products of residues fit in `i64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
}

impl PrimePower {
    pub fn value(self) -> u64 {
        self.p.pow(self.e)
    }
}

/// An integer `m >= 2` with its factorization into prime powers, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u64,
    factors: Vec<PrimePower>,
}

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(Error::InvalidModulus(m));
        }
        let mut rest = m;
        let mut factors = Vec::new();
        let mut p = 2;
        while p * p <= rest {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push(PrimePower { p, e });
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push(PrimePower { p: rest, e: 1 });
        }
        Ok(Modulus { m, factors })
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of distinct primes, `r`.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// `Z_{p^e}` for each factor.
    pub fn prime_power_moduli(&self) -> Vec<Modulus> {
        self.factors.iter().map(|f| Modulus { m: f.value(), factors: vec![*f] }).collect()
    }

    /// `M = max p_i^{e_i}`.
    pub fn largest_prime_power(&self) -> u64 {
        self.factors.iter().map(|f| f.value()).max().unwrap_or(1)
    }

    pub fn reduce(&self, x: i64) -> i64 {
        x.rem_euclid(self.m as i64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

/// Coefficient ring: the integers or `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Mod(Modulus),
}

impl Ring {
    pub fn modulo(m: u64) -> Result<Ring> {
        Ok(Ring::Mod(Modulus::new(m)?))
    }

    pub fn reduce(&self, x: i64) -> i64 {
        match self {
            Ring::Integers => x,
            Ring::Mod(m) => m.reduce(x),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Mod(m) => write!(f, "{m}"),
        }
    }
}

/// `"Z"` for the integers, the number `m` otherwise.
impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ring::Integers => s.serialize_str("Z"),
            Ring::Mod(m) => s.serialize_u64(m.value()),
        }
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.m)
    }
}
