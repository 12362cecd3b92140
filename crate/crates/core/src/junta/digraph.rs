use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::table::TruthTable;
use crate::varset::VarSet;

/// The labeled digraph `G_f`: an edge `i -b-> j` exists iff `j` is useless for `f|_{x_i=b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionDigraph {
    n: usize,
    /// `heads[b][i - 1]`
    heads: [Vec<VarSet>; 2],
}

/// A labeled edge `from -label-> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub label: u8,
    pub to: usize,
}

pub fn build_digraph(tt: &TruthTable) -> Result<RestrictionDigraph> {
    let n = tt.num_vars();
    if n < 2 {
        return Err(Error::InvalidParameter("the restriction digraph needs n >= 2".into()));
    }
    let diffs: Vec<Vec<u64>> = (0..n).map(|j| tt.flip_difference(j)).collect();
    let mut heads = [vec![VarSet::EMPTY; n], vec![VarSet::EMPTY; n]];
    for i in 0..n {
        for (j, diff) in diffs.iter().enumerate().filter(|&(j, _)| j != i) {
            for b in [false, true] {
                if !TruthTable::hits_literal(n, diff, i, b) {
                    heads[b as usize][i].insert(j + 1);
                }
            }
        }
    }
    Ok(RestrictionDigraph { n, heads })
}

impl RestrictionDigraph {
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// `U(f_{ib})` in original labels.
    pub fn head_set(&self, i: usize, b: bool) -> VarSet {
        self.heads[b as usize][i - 1]
    }

    pub fn has_edge(&self, i: usize, b: bool, j: usize) -> bool {
        self.head_set(i, b).contains(j)
    }

    /// `U(f_{i0}) ∪ U(f_{i1})`.
    pub fn out_neighbors(&self, i: usize) -> VarSet {
        self.head_set(i, false).union(self.head_set(i, true))
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.head_set(i, false).len() + self.head_set(i, true).len()
    }

    /// Edges ordered by tail, then label, then head.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (1..=self.n).flat_map(move |i| {
            [false, true].into_iter().flat_map(move |b| {
                self.head_set(i, b).iter().map(move |j| Edge { from: i, label: b as u8, to: j })
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        (1..=self.n).map(|i| self.out_degree(i)).sum()
    }

    /// `U1(f, S)`: union of `U(f_{i0}) ∪ U(f_{i1})` over `i ∈ S`.
    pub fn u1(&self, s: VarSet) -> VarSet {
        s.iter().fold(VarSet::EMPTY, |acc, i| acc.union(self.out_neighbors(i)))
    }

    /// Vertices reachable from `start` by a nonempty directed path, ignoring labels.
    pub fn reachable_from(&self, start: usize) -> VarSet {
        let mut seen = VarSet::EMPTY;
        let mut frontier = self.out_neighbors(start);
        while !frontier.is_subset(seen) {
            let fresh = frontier.difference(seen);
            seen = seen.union(fresh);
            frontier = self.u1(fresh);
        }
        seen
    }
}

impl Serialize for RestrictionDigraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RestrictionDigraph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

/// `U1(f, S)` computed from the table.
pub fn u1(tt: &TruthTable, s: VarSet) -> Result<VarSet> {
    if let Some(i) = s.iter().find(|&i| i > tt.num_vars()) {
        return Err(Error::IndexOutOfRange { index: i, n: tt.num_vars() });
    }
    Ok(build_digraph(tt)?.u1(s))
}
