//! Structural properties of `G_f`, checked directly on the digraph.
//!
//! Every check returns the violating configurations instead of failing, so a
//! counterexample can be reported together with its table.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::junta::digraph::{build_digraph, RestrictionDigraph};
use crate::table::TruthTable;
use crate::varset::VarSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// Path `i -bi-> j -bj-> k` without the edge `i -bi-> k`.
    Transitivity { i: usize, bi: u8, j: usize, bj: u8, k: usize },
    /// Cycles through `i -0-> j` and `i -1-> k`, but some of `{i, j, k}` is useful for `f`.
    TwoCycles { i: usize, j: usize, k: usize, useful: VarSet },
    /// `U1(f, U(f_{ib}))` escapes `U(f_{ib}) ∪ {i}` (or `U(f_{ib})` under the stronger hypothesis).
    Closure { i: usize, b: u8, strong: bool, escaped: VarSet },
    /// Every single-variable restriction is degenerate, yet `U(f)` is empty.
    PropertyStar,
    /// `U1(f, S) ⊆ S`, `|S| >= 2` and property (*), but no variable of `S` is useless.
    MainClaim { s: VarSet },
}

pub fn check_transitivity(g: &RestrictionDigraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 1..=g.num_vertices() {
        for bi in [false, true] {
            let from_i = g.head_set(i, bi);
            for j in from_i.iter() {
                for bj in [false, true] {
                    for k in g.head_set(j, bj).iter().filter(|&k| k != i) {
                        if !from_i.contains(k) {
                            out.push(Violation::Transitivity { i, bi: bi as u8, j, bj: bj as u8, k });
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn check_two_cycles(g: &RestrictionDigraph, useless: VarSet) -> Vec<Violation> {
    let n = g.num_vertices();
    let reach: Vec<VarSet> = (1..=n).map(|v| g.reachable_from(v)).collect();
    let mut out = Vec::new();
    for i in 1..=n {
        let back0 = g.head_set(i, false).iter().filter(|&j| reach[j - 1].contains(i));
        for j in back0 {
            for k in g.head_set(i, true).iter().filter(|&k| reach[k - 1].contains(i)) {
                let triple: VarSet = [i, j, k].into_iter().collect();
                if !triple.is_subset(useless) {
                    out.push(Violation::TwoCycles { i, j, k, useful: triple.difference(useless) });
                }
            }
        }
    }
    out
}

fn closure_violations(g: &RestrictionDigraph, i: usize, b: bool) -> Vec<Violation> {
    let s = g.head_set(i, b);
    let reach = g.u1(s);
    let with_i = s.union(VarSet::singleton(i));
    let mut out = Vec::new();
    if !reach.is_subset(with_i) {
        out.push(Violation::Closure { i, b: b as u8, strong: false, escaped: reach.difference(with_i) });
    }
    let hypothesis = s.iter().all(|k| !g.out_neighbors(k).contains(i));
    if hypothesis && !reach.is_subset(s) {
        out.push(Violation::Closure { i, b: b as u8, strong: true, escaped: reach.difference(s) });
    }
    out
}

/// Closure property for one `(i, b)`, including the strengthened form when its hypothesis holds.
pub fn check_closure(tt: &TruthTable, i: usize, b: bool) -> Result<bool> {
    tt.check_index(i)?;
    Ok(closure_violations(&build_digraph(tt)?, i, b).is_empty())
}

pub fn check_closure_all(g: &RestrictionDigraph) -> Vec<Violation> {
    (1..=g.num_vertices())
        .flat_map(|i| [false, true].map(|b| (i, b)))
        .flat_map(|(i, b)| closure_violations(g, i, b))
        .collect()
}

/// Property (*): both `U(f_{i0})` and `U(f_{i1})` are nonempty for every `i`.
pub fn has_property_star(g: &RestrictionDigraph) -> bool {
    (1..=g.num_vertices()).all(|i| !g.head_set(i, false).is_empty() && !g.head_set(i, true).is_empty())
}

pub fn check_property_star(g: &RestrictionDigraph, useless: VarSet) -> Vec<Violation> {
    if has_property_star(g) && useless.is_empty() {
        vec![Violation::PropertyStar]
    } else {
        Vec::new()
    }
}

/// The induction claim over every `S ⊆ [n]`; exponential in `n`.
pub fn check_main_claim(g: &RestrictionDigraph, useless: VarSet) -> Vec<Violation> {
    if !has_property_star(g) {
        return Vec::new();
    }
    let n = g.num_vertices();
    (0u32..1 << n)
        .map(VarSet::from_mask)
        .filter(|s| s.len() >= 2 && g.u1(*s).is_subset(*s))
        .filter(|s| s.intersection(useless).is_empty())
        .map(|s| Violation::MainClaim { s })
        .collect()
}

/// Largest `n` for which [`check_all`] also runs the subset-exponential main-claim check.
pub const MAIN_CLAIM_MAX_VARS: usize = 14;

pub fn check_all(tt: &TruthTable) -> Result<Vec<Violation>> {
    let g = build_digraph(tt)?;
    let useless = tt.useless_set();
    let mut out = check_transitivity(&g);
    out.extend(check_two_cycles(&g, useless));
    out.extend(check_closure_all(&g));
    out.extend(check_property_star(&g, useless));
    if tt.num_vars() <= MAIN_CLAIM_MAX_VARS {
        out.extend(check_main_claim(&g, useless));
    }
    Ok(out)
}

/// Checks every proposition on `tt` and pairs any violations with its hex.
pub fn audit(tt: &TruthTable) -> Result<Option<(String, Vec<Violation>)>> {
    if tt.num_vars() < 2 {
        return Err(Error::InvalidParameter("propositions need n >= 2".into()));
    }
    let v = check_all(tt)?;
    Ok(if v.is_empty() { None } else { Some((tt.to_hex(), v)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_functions, FunctionFilter, Partition};

    #[test]
    fn address_is_clean() {
        let addr = TruthTable::address(2).unwrap();
        let g = build_digraph(&addr).unwrap();
        assert!(check_transitivity(&g).is_empty());
        assert!(check_all(&addr).unwrap().is_empty());
        assert!(check_closure(&addr, 1, true).unwrap());
        assert_eq!(g.head_set(1, true).to_vec(), vec![3, 5]);
    }

    #[test]
    fn parity_is_vacuous() {
        let g = build_digraph(&TruthTable::parity(6).unwrap()).unwrap();
        assert!(check_transitivity(&g).is_empty());
        assert!(check_two_cycles(&g, VarSet::EMPTY).is_empty());
        assert!(!has_property_star(&g));
    }

    #[test]
    fn empty_head_set_closure_is_vacuous() {
        let xor = TruthTable::parity(4).unwrap();
        for i in 1..=4 {
            assert!(check_closure(&xor, i, false).unwrap());
        }
    }

    #[test]
    fn all_three_variable_functions() {
        for f in enumerate_functions(3, FunctionFilter::All, Partition::WHOLE).unwrap() {
            assert_eq!(check_all(&f).unwrap(), vec![], "{f:?}");
            for i in 1..=3 {
                for b in [false, true] {
                    assert!(check_closure(&f, i, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn detects_planted_violations() {
        // A hand-built digraph that breaks transitivity is caught.
        let mut g = build_digraph(&TruthTable::parity(3).unwrap()).unwrap();
        g = crate::junta::digraph::tests_support::with_edges(g, &[(1, false, 2), (2, true, 3)]);
        let v = check_transitivity(&g);
        assert_eq!(v, vec![Violation::Transitivity { i: 1, bi: 0, j: 2, bj: 1, k: 3 }]);
    }

    #[test]
    fn constant_has_star_and_useless_vars() {
        let c = TruthTable::constant(3, true).unwrap();
        let g = build_digraph(&c).unwrap();
        assert!(has_property_star(&g));
        assert!(check_property_star(&g, c.useless_set()).is_empty());
        assert!(check_main_claim(&g, c.useless_set()).is_empty());
    }
}
