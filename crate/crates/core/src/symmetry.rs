use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{check_vars, TruthTable};

/// Value vector `v_0..v_n` of a symmetric function: `v_w = f(x)` for every `|x| = w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetryProfile {
    values: Vec<bool>,
}

impl SymmetryProfile {
    pub fn new(values: Vec<bool>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::VariableCount(0));
        }
        check_vars(values.len() - 1)?;
        Ok(SymmetryProfile { values })
    }

    /// Profile whose `v_w` is bit `w` of `code`.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        Self::new((0..=n).map(|w| code >> w & 1 == 1).collect())
    }

    pub fn code(&self) -> u64 {
        self.values.iter().enumerate().fold(0, |acc, (w, &v)| acc | (v as u64) << w)
    }

    pub fn num_vars(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, weight: usize) -> bool {
        self.values[weight]
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// A symmetric function is nondegenerate iff it is nonconstant.
    pub fn is_nondegenerate(&self) -> bool {
        !self.is_constant()
    }

    pub fn complement(&self) -> SymmetryProfile {
        SymmetryProfile { values: self.values.iter().map(|v| !v).collect() }
    }

    /// Smallest weight with value 1.
    pub fn first_one(&self) -> Option<usize> {
        self.values.iter().position(|&v| v)
    }

    pub fn to_table(&self) -> TruthTable {
        TruthTable::from_index_fn(self.num_vars(), |idx| self.values[idx.count_ones() as usize])
            .expect("profile length was validated")
    }
}

impl TruthTable {
    /// `Some(profile)` iff the value depends only on the Hamming weight of the input.
    pub fn symmetry_profile(&self) -> Option<SymmetryProfile> {
        let n = self.num_vars();
        let mut seen: Vec<Option<bool>> = vec![None; n + 1];
        for idx in 0..self.len() {
            let w = idx.count_ones() as usize;
            let v = self.bit(idx);
            match seen[w] {
                None => seen[w] = Some(v),
                Some(prev) if prev != v => return None,
                Some(_) => {}
            }
        }
        Some(SymmetryProfile { values: seen.into_iter().map(|v| v.unwrap_or(false)).collect() })
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_profile().is_some()
    }
}
