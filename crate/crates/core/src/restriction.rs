//! Partial assignments and the subfunctions they induce.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::TruthTable;
use crate::varset::VarSet;

/// A partial assignment `rho_I`: variables in `I` are fixed, the rest stay free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Restriction {
    assignments: BTreeMap<usize, bool>,
}

impl Restriction {
    pub fn new(pairs: impl IntoIterator<Item = (usize, bool)>) -> Result<Self> {
        let mut assignments = BTreeMap::new();
        for (i, b) in pairs {
            if i == 0 {
                return Err(Error::IndexOutOfRange { index: 0, n: 0 });
            }
            if assignments.insert(i, b).is_some() {
                return Err(Error::DuplicateAssignment(i));
            }
        }
        Ok(Restriction { assignments })
    }

    pub fn single(i: usize, b: bool) -> Self {
        Restriction { assignments: BTreeMap::from([(i, b)]) }
    }

    pub fn assigned(&self) -> VarSet {
        self.assignments.keys().copied().collect()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.assignments.get(&i).copied()
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.assignments.iter().map(|(&i, &b)| (i, b))
    }

    /// Checks the restriction against an `n`-variable function and returns the free set.
    pub fn validate(&self, n: usize) -> Result<VarSet> {
        if self.assignments.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        if let Some(&i) = self.assignments.keys().find(|&&i| i > n) {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if self.assignments.len() >= n {
            return Err(Error::NoFreeVariables);
        }
        Ok(VarSet::full(n).difference(self.assigned()))
    }
}

/// Serialized as `{"1": 1, "6": 0}`.
impl Serialize for Restriction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.assignments.iter().map(|(i, &b)| (i, b as u8)))
    }
}

/// Parses `"1=1,6=0"`.
impl FromStr for Restriction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed restriction {s:?}, expected i=b,..."));
        let pairs = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                let (i, b) = t.split_once('=').ok_or_else(bad)?;
                let i: usize = i.trim().parse().map_err(|_| bad())?;
                let b = match b.trim() {
                    "0" => false,
                    "1" => true,
                    _ => return Err(bad()),
                };
                Ok((i, b))
            })
            .collect::<Result<Vec<_>>>()?;
        Restriction::new(pairs)
    }
}

/// A restricted function together with the original labels of its variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subfunction {
    pub table: TruthTable,
    /// `free[y - 1]` is the original index of the subfunction's variable `y`.
    pub free: Vec<usize>,
}

impl Subfunction {
    /// `U` of the subfunction expressed in original labels.
    pub fn useless_original(&self) -> VarSet {
        self.table.useless_set().iter().map(|y| self.free[y - 1]).collect()
    }
}

impl TruthTable {
    /// `f|_rho` on the free variables, kept in increasing original order and renumbered `1..k`.
    pub fn restrict(&self, rho: &Restriction) -> Result<Subfunction> {
        let free = rho.validate(self.num_vars())?;
        let base = rho.iter().filter(|&(_, b)| b).fold(0usize, |acc, (i, _)| acc | 1 << (i - 1));
        let offsets = subcube_offsets(free.mask() as usize);
        let table = TruthTable::from_index_fn(free.len(), |y| self.bit(base | offsets[y]))?;
        Ok(Subfunction { table, free: free.to_vec() })
    }
}

/// Point indices of the subcube spanned by `free_mask`, in increasing order.
///
/// Entry `y` has the bits of `y` deposited into the positions of `free_mask`.
pub(crate) fn subcube_offsets(free_mask: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(1 << free_mask.count_ones());
    let mut sub = 0usize;
    loop {
        out.push(sub);
        sub = sub.wrapping_sub(free_mask) & free_mask;
        if sub == 0 {
            break;
        }
    }
    out
}
