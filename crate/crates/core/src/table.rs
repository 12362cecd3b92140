//! Dense truth tables.
//!
//! A function on `n` variables is stored as `2^n` bits packed into `u64` words.
//! The input point `(x_1, .., x_n)` lives at index `sum x_i * 2^(i-1)`, so `x_1` is
//! the least significant bit of the index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::varset::VarSet;

pub const MAX_VARS: usize = 24;

/// Masks selecting the positions with `x_j = 0` inside a single word, for `j < 6`.
pub(crate) const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

pub(crate) fn check_vars(n: usize) -> Result<()> {
    if (1..=MAX_VARS).contains(&n) {
        Ok(())
    } else {
        Err(Error::VariableCount(n))
    }
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Valid-bit mask of the single word used when `n <= 6`.
pub(crate) fn small_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl TruthTable {
    pub fn constant(n: usize, value: bool) -> Result<Self> {
        check_vars(n)?;
        let fill = if value { u64::MAX } else { 0 };
        let mut words = vec![fill; word_count(n)];
        words[0] &= small_mask(n);
        Ok(TruthTable { n, words })
    }

    /// Builds a table from a predicate on point indices.
    pub fn from_index_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_vars(n)?;
        let mut words = vec![0u64; word_count(n)];
        for idx in 0..1usize << n {
            if f(idx) {
                words[idx >> 6] |= 1 << (idx & 63);
            }
        }
        Ok(TruthTable { n, words })
    }

    /// Builds a table from a predicate on points; `x[0]` is `x_1`.
    pub fn from_point_fn(n: usize, f: impl Fn(&[bool]) -> bool) -> Result<Self> {
        let mut point = vec![false; n];
        let mut words = vec![0u64; word_count(n)];
        check_vars(n)?;
        for idx in 0..1usize << n {
            for (j, x) in point.iter_mut().enumerate() {
                *x = idx >> j & 1 == 1;
            }
            if f(&point) {
                words[idx >> 6] |= 1 << (idx & 63);
            }
        }
        Ok(TruthTable { n, words })
    }

    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        check_vars(n)?;
        if bits.len() != 1 << n {
            return Err(Error::LengthMismatch { expected: 1 << n, actual: bits.len() });
        }
        Self::from_index_fn(n, |idx| bits[idx])
    }

    /// Packed words, least significant index first.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_vars(n)?;
        if words.len() != word_count(n) {
            return Err(Error::LengthMismatch { expected: word_count(n) * 64, actual: words.len() * 64 });
        }
        if words[0] & !small_mask(n) != 0 {
            return Err(Error::InvalidParameter(format!(
                "bits set beyond index 2^{n} in a {n}-variable table"
            )));
        }
        Ok(TruthTable { n, words })
    }

    /// Single-word constructor for `n <= 6`; bits above `2^n` are discarded.
    pub fn from_u64(n: usize, word: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::InvalidParameter(format!("from_u64 needs n <= 6, got {n}")));
        }
        check_vars(n)?;
        Ok(TruthTable { n, words: vec![word & small_mask(n)] })
    }

    pub fn parity(n: usize) -> Result<Self> {
        Self::from_index_fn(n, |idx| idx.count_ones() % 2 == 1)
    }

    pub fn and(n: usize) -> Result<Self> {
        Self::from_index_fn(n, |idx| idx == (1 << n) - 1)
    }

    pub fn or(n: usize) -> Result<Self> {
        Self::from_index_fn(n, |idx| idx != 0)
    }

    pub fn majority(n: usize) -> Result<Self> {
        Self::from_index_fn(n, |idx| 2 * idx.count_ones() as usize > n)
    }

    /// The address (multiplexer) function with `k` address bits on `k + 2^k` variables.
    ///
    /// `x_1..x_k` select the data variable `x_z` with `z = sum x_i 2^(i-1) + k + 1`.
    /// With `k = 2` this is the six-variable function `Address(x_1, .., x_6)`.
    pub fn address(k: usize) -> Result<Self> {
        let n = k + (1 << k);
        Self::from_index_fn(n, |idx| {
            let z = (idx & ((1 << k) - 1)) + k;
            idx >> z & 1 == 1
        })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Number of points, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Value at a point index.
    #[inline]
    pub fn bit(&self, idx: usize) -> bool {
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        let ones = self.count_ones();
        ones == 0 || ones == self.len() as u64
    }

    /// Evaluates at `point`, where `point[i - 1]` is the value of `x_i`.
    pub fn evaluate(&self, point: &[bool]) -> Result<bool> {
        if point.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: point.len() });
        }
        let idx = point.iter().enumerate().fold(0usize, |acc, (j, &x)| acc | (x as usize) << j);
        Ok(self.bit(idx))
    }

    pub fn complement(&self) -> TruthTable {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= small_mask(self.n);
        TruthTable { n: self.n, words }
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Words of `f(a) xor f(a ^ e_j)` for the 0-based variable `j`.
    pub(crate) fn flip_difference(&self, j: usize) -> Vec<u64> {
        if j < 6 {
            let m = LOW_HALF[j];
            let s = 1u32 << j;
            self.words.iter().map(|&w| w ^ (((w & m) << s) | ((w >> s) & m))).collect()
        } else {
            let stride = 1usize << (j - 6);
            (0..self.words.len()).map(|w| self.words[w] ^ self.words[w ^ stride]).collect()
        }
    }

    /// Whether `diff` has a set bit at some point with `x_i = b` (0-based `i`).
    pub(crate) fn hits_literal(n: usize, diff: &[u64], i: usize, b: bool) -> bool {
        if i < 6 {
            let m = if b { !LOW_HALF[i] } else { LOW_HALF[i] } & small_mask(n);
            diff.iter().any(|&w| w & m != 0)
        } else {
            let sel = (i - 6, b as usize);
            diff.iter().enumerate().any(|(w, &d)| (w >> sel.0 & 1) == sel.1 && d != 0)
        }
    }

    /// True iff some point `a` has `f(a) != f(a^(i))`.
    pub fn depends_on(&self, i: usize) -> Result<bool> {
        self.check_index(i)?;
        Ok(self.flip_difference(i - 1).iter().any(|&w| w != 0))
    }

    /// `U(f)`: the variables `f` does not depend on.
    pub fn useless_set(&self) -> VarSet {
        (1..=self.n).filter(|&i| self.flip_difference(i - 1).iter().all(|&w| w == 0)).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.useless_set().is_empty()
    }

    /// The subfunction `f|_{x_i = b}` on the remaining `n - 1` variables, relabeled in order.
    pub fn cofactor(&self, i: usize, b: bool) -> Result<TruthTable> {
        self.check_index(i)?;
        if self.n < 2 {
            return Err(Error::NoFreeVariables);
        }
        let low = (1usize << (i - 1)) - 1;
        let set = (b as usize) << (i - 1);
        TruthTable::from_index_fn(self.n - 1, |y| {
            let idx = (y & low) | set | (y & !low) << 1;
            self.bit(idx)
        })
    }

    /// For each `b`, the set of `j != i` that are useless for `f|_{x_i = b}`, in original labels.
    pub fn cofactor_useless_sets(&self, i: usize) -> Result<[VarSet; 2]> {
        self.check_index(i)?;
        let mut out = [VarSet::EMPTY; 2];
        for j in (1..=self.n).filter(|&j| j != i) {
            let diff = self.flip_difference(j - 1);
            for b in [false, true] {
                if !Self::hits_literal(self.n, &diff, i - 1, b) {
                    out[b as usize].insert(j);
                }
            }
        }
        Ok(out)
    }

    /// Uppercase hex of the `2^n`-bit integer whose bit `b` is `f(b)`, most significant digit first.
    pub fn to_hex(&self) -> String {
        if self.n < 6 {
            let digits = hex_digits(self.n);
            format!("{:0width$X}", self.words[0], width = digits)
        } else {
            self.words.iter().rev().map(|w| format!("{w:016X}")).collect()
        }
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        check_vars(n)?;
        let hex = hex.trim();
        let hex = hex.strip_prefix("0x").or_else(|| hex.strip_prefix("0X")).unwrap_or(hex);
        let digits = hex_digits(n);
        if hex.len() != digits {
            return Err(Error::InvalidHex(format!(
                "{n}-variable table needs {digits} hex digit(s), got {}",
                hex.len()
            )));
        }
        let mut words = vec![0u64; word_count(n)];
        for (pos, c) in hex.chars().rev().enumerate() {
            let d = c.to_digit(16).ok_or_else(|| Error::InvalidHex(format!("invalid digit {c:?}")))? as u64;
            words[pos / 16] |= d << (4 * (pos % 16));
        }
        if words[0] & !small_mask(n) != 0 {
            return Err(Error::InvalidHex(format!("value too large for a {n}-variable table")));
        }
        Ok(TruthTable { n, words })
    }

    pub fn to_file(&self) -> TableFile {
        TableFile { n: self.n, hex: self.to_hex() }
    }
}

fn hex_digits(n: usize) -> usize {
    if n < 2 {
        1
    } else {
        (1 << n) / 4
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self.to_hex())
    }
}

/// On-disk form: `{"n": 2, "hex": "8"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub n: usize,
    pub hex: String,
}

impl TryFrom<TableFile> for TruthTable {
    type Error = Error;

    fn try_from(file: TableFile) -> Result<Self> {
        TruthTable::from_hex(file.n, &file.hex)
    }
}

impl From<&TruthTable> for TableFile {
    fn from(tt: &TruthTable) -> Self {
        tt.to_file()
    }
}

impl Serialize for TruthTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruthTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = TableFile::deserialize(d)?;
        TruthTable::try_from(file).map_err(serde::de::Error::custom)
    }
}
