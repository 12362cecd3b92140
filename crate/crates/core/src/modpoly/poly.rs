//! The unique multilinear polynomial agreeing with a truth table.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modpoly::modulus::{Modulus, Ring};
use crate::table::TruthTable;
use crate::varset::VarSet;

/// Dense coefficient vector: entry `D` (as a bitmask) is `c_D`.
///
/// In-place subset-difference butterfly, `c_D = sum_{S ⊆ D} (-1)^{|D \ S|} f(S)`.
pub fn mobius_dense(tt: &TruthTable, ring: &Ring) -> Vec<i64> {
    let mut a: Vec<i64> = (0..tt.len()).map(|idx| tt.bit(idx) as i64).collect();
    for j in 0..tt.num_vars() {
        let bit = 1usize << j;
        for idx in 0..a.len() {
            if idx & bit != 0 {
                a[idx] -= a[idx ^ bit];
            }
        }
        if let Ring::Mod(m) = ring {
            a.iter_mut().for_each(|c| *c = m.reduce(*c));
        }
    }
    a
}

/// Inverse butterfly: values at every point from a dense coefficient vector.
pub fn zeta_dense(coeffs: &[i64], ring: &Ring) -> Vec<i64> {
    let mut a = coeffs.to_vec();
    let mut bit = 1;
    while bit < a.len() {
        for idx in 0..a.len() {
            if idx & bit != 0 {
                a[idx] += a[idx ^ bit];
            }
        }
        if let Ring::Mod(m) = ring {
            a.iter_mut().for_each(|c| *c = m.reduce(*c));
        }
        bit <<= 1;
    }
    a
}

fn dense_degree(coeffs: &[i64]) -> usize {
    coeffs
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(d, _)| d.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub vars: VarSet,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: usize,
    ring: Ring,
    /// Sorted by `(|vars|, vars lexicographically)`; zero coefficients omitted.
    terms: Vec<Term>,
    degree: usize,
    /// Names used when printing variable `y` (1-based) as `labels[y - 1]`.
    labels: Vec<usize>,
}

fn term_key(vars: VarSet) -> (usize, Vec<usize>) {
    (vars.len(), vars.to_vec())
}

impl MultilinearPoly {
    pub fn from_terms(n: usize, ring: Ring, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|t| Term { vars: t.vars, coeff: ring.reduce(t.coeff) })
            .filter(|t| t.coeff != 0)
            .collect();
        terms.sort_by_key(|t| term_key(t.vars));
        let degree = terms.iter().map(|t| t.vars.len()).max().unwrap_or(0);
        MultilinearPoly { n, ring, terms, degree, labels: (1..=n).collect() }
    }

    fn from_dense(n: usize, ring: Ring, dense: &[i64]) -> Self {
        let terms = dense
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(d, &c)| Term { vars: VarSet::from_mask(d as u32), coeff: c });
        Self::from_terms(n, ring, terms)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, vars: VarSet) -> i64 {
        self.terms.iter().find(|t| t.vars == vars).map_or(0, |t| t.coeff)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Renames variables for display, e.g. to the original indices of a subfunction.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Terms with their variable sets translated through the labels.
    pub fn labeled_terms(&self) -> Vec<(Vec<usize>, i64)> {
        self.terms.iter().map(|t| (t.vars.iter().map(|y| self.labels[y - 1]).collect(), t.coeff)).collect()
    }

    /// `sum_D c_D prod_{i in D} x_i`, reduced in the coefficient ring.
    pub fn evaluate(&self, point: &[bool]) -> Result<i64> {
        if point.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: point.len() });
        }
        let ones: VarSet = point.iter().enumerate().filter(|&(_, &x)| x).map(|(j, _)| j + 1).collect();
        Ok(self.evaluate_at_set(ones))
    }

    /// `P(D)` for the 0/1 point with `x_i = 1` iff `i ∈ D`.
    pub fn evaluate_at_set(&self, ones: VarSet) -> i64 {
        let sum = self
            .terms
            .iter()
            .filter(|t| t.vars.is_subset(ones))
            .fold(0i64, |acc, t| self.ring.reduce(acc + t.coeff));
        self.ring.reduce(sum)
    }

    /// Values at all `2^n` points, by the inverse transform.
    pub fn evaluate_all(&self) -> Vec<i64> {
        let mut dense = vec![0i64; 1 << self.n];
        for t in &self.terms {
            dense[t.vars.mask() as usize] = t.coeff;
        }
        zeta_dense(&dense, &self.ring)
    }

    /// Reduces integer coefficients into `Z_m`.
    pub fn reduce(&self, modulus: &Modulus) -> MultilinearPoly {
        let ring = Ring::Mod(modulus.clone());
        let mut out = Self::from_terms(self.n, ring, self.terms.iter().copied());
        out.labels = self.labels.clone();
        out
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("vars", &self.vars)?;
        st.serialize_field("coeff", &self.coeff)?;
        st.end()
    }
}

#[derive(Serialize)]
struct LabeledTerm {
    vars: Vec<usize>,
    coeff: i64,
}

/// `{"n", "m" (number or "Z"), "terms": [{"vars", "coeff"}], "degree"}` with labeled variables.
impl Serialize for MultilinearPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut terms: Vec<LabeledTerm> = self
            .labeled_terms()
            .into_iter()
            .map(|(mut vars, coeff)| {
                vars.sort_unstable();
                LabeledTerm { vars, coeff }
            })
            .collect();
        terms.sort_by(|a, b| (a.vars.len(), &a.vars).cmp(&(b.vars.len(), &b.vars)));
        let mut st = s.serialize_struct("MultilinearPoly", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.ring)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("degree", &self.degree)?;
        st.end()
    }
}

/// The multilinear representative of `tt` over `ring`.
pub fn mobius_transform(tt: &TruthTable, ring: &Ring) -> MultilinearPoly {
    MultilinearPoly::from_dense(tt.num_vars(), ring.clone(), &mobius_dense(tt, ring))
}

/// `d_m(f)`.
pub fn degree_mod(tt: &TruthTable, modulus: &Modulus) -> usize {
    dense_degree(&mobius_dense(tt, &Ring::Mod(modulus.clone())))
}

/// `d_Z(f)`.
pub fn degree_integers(tt: &TruthTable) -> usize {
    dense_degree(&mobius_dense(tt, &Ring::Integers))
}

/// `d_{p_i^{e_i}}(f)` for each prime-power factor, in factor order.
pub fn prime_power_degrees(tt: &TruthTable, modulus: &Modulus) -> Vec<usize> {
    let integral = mobius_dense(tt, &Ring::Integers);
    modulus
        .prime_power_moduli()
        .iter()
        .map(|q| {
            let reduced: Vec<i64> = integral.iter().map(|&c| q.reduce(c)).collect();
            dense_degree(&reduced)
        })
        .collect()
}

/// `d_m(f) = max_i d_{p_i^{e_i}}(f)`, computed by two independent transforms.
pub fn degree_crt_check(tt: &TruthTable, modulus: &Modulus) -> bool {
    let per_factor = modulus.prime_power_moduli().iter().map(|q| degree_mod(tt, q)).max().unwrap_or(0);
    degree_mod(tt, modulus) == per_factor
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::Restriction;

    fn set(v: &[usize]) -> VarSet {
        v.iter().copied().collect()
    }

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    #[test]
    fn and2_over_integers() {
        let p = mobius_transform(&TruthTable::and(2).unwrap(), &Ring::Integers);
        assert_eq!(p.terms(), &[Term { vars: set(&[1, 2]), coeff: 1 }]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.evaluate(&[true, true]).unwrap(), 1);
        assert_eq!(p.evaluate(&[true, false]).unwrap(), 0);
    }

    #[test]
    fn address_subfunction_polynomial() {
        let addr = TruthTable::address(2).unwrap();
        let sub = addr.restrict(&Restriction::new([(1, true), (6, false)]).unwrap()).unwrap();
        let p = mobius_transform(&sub.table, &Ring::Integers).with_labels(sub.free).unwrap();
        assert_eq!(p.labeled_terms(), vec![(vec![4], 1), (vec![2, 4], -1)]);
        assert_eq!(p.degree(), 2);
        // x2 = 1, x4 = 1 (new variables 1 and 3)
        assert_eq!(p.evaluate(&[true, false, true, false]).unwrap(), 0);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"n":4,"m":"Z","terms":[{"vars":[4],"coeff":1},{"vars":[2,4],"coeff":-1}],"degree":2}"#
        );
        let p6 = p.reduce(&md(6));
        assert_eq!(p6.labeled_terms(), vec![(vec![4], 1), (vec![2, 4], 5)]);
    }

    #[test]
    fn parity_mod_2_is_linear() {
        let p = mobius_transform(&TruthTable::parity(3).unwrap(), &Ring::modulo(2).unwrap());
        assert_eq!(p.labeled_terms(), vec![(vec![1], 1), (vec![2], 1), (vec![3], 1)]);
        assert_eq!(degree_mod(&TruthTable::parity(8).unwrap(), &md(2)), 1);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_mod(&TruthTable::parity(4).unwrap(), &md(3)), 4);
        for m in [2, 3, 6, 30] {
            assert_eq!(degree_mod(&TruthTable::constant(5, true).unwrap(), &md(m)), 0);
        }
        let zero = mobius_transform(&TruthTable::constant(3, false).unwrap(), &Ring::Integers);
        assert!(zero.is_zero());
        assert_eq!(zero.degree(), 0);
        assert_eq!(zero.evaluate(&[true, false, true]).unwrap(), 0);
    }

    #[test]
    fn crt_degree_examples() {
        let xor4 = TruthTable::parity(4).unwrap();
        assert_eq!(prime_power_degrees(&xor4, &md(6)), vec![1, 4]);
        assert_eq!(degree_mod(&xor4, &md(6)), 4);
        assert!(degree_crt_check(&xor4, &md(6)));
        let or4 = TruthTable::or(4).unwrap();
        assert_eq!(prime_power_degrees(&or4, &md(6)), vec![4, 4]);
        assert!(degree_crt_check(&or4, &md(6)));
        assert!(degree_crt_check(&TruthTable::address(2).unwrap(), &md(7)));
    }

    #[test]
    fn evaluate_all_inverts_transform() {
        let addr = TruthTable::address(2).unwrap();
        for ring in [Ring::Integers, Ring::modulo(6).unwrap(), Ring::modulo(4).unwrap()] {
            let p = mobius_transform(&addr, &ring);
            let values = p.evaluate_all();
            for idx in 0..64 {
                assert_eq!(values[idx], addr.bit(idx) as i64);
                assert_eq!(p.evaluate_at_set(VarSet::from_mask(idx as u32)), addr.bit(idx) as i64);
            }
        }
    }

    #[test]
    fn evaluate_rejects_wrong_length() {
        let p = mobius_transform(&TruthTable::and(2).unwrap(), &Ring::Integers);
        assert!(p.evaluate(&[true]).is_err());
        assert!(p.clone().with_labels(vec![1]).is_err());
    }
}
