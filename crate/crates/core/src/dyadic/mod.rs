//! Symbolic products of rank-one updates `E + Φ_i Ψ_i`.
//!
//! Columns are `Φ_1..Φ_k` and `Y`, rows are `Ψ_1..Ψ_k` and `∂z`. A row
//! meeting a column contracts to a scalar: `Ψ_i Φ_j = λ_ij` with `λ_ii = 0`,
//! and `Ψ_i Y = 0`. The row `∂z` never contracts; meeting it is an error.

mod instantiate;
mod replay;
mod scalar;

pub use instantiate::{instantiate_dyad, instantiate_row, Assignment};
pub use replay::{derive_reduced_relation, residual_check, ResidualReport, TraceStep};
pub use scalar::{LamMono, ScalarPoly};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;
use thiserror::Error;

use crate::exactalg::{AlgError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicError {
    #[error("no contraction rule for {row} {col}")]
    Uncontracted { row: RowSym, col: ColSym },
    #[error("inconsistent assignment: {0}")]
    Inconsistent(String),
    #[error("the elimination needs at least 2 factors, got {0}")]
    TooFewFactors(usize),
    #[error("assignment has no value for {0}")]
    Missing(String),
    #[error(transparent)]
    Algebra(#[from] AlgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColSym {
    Phi(usize),
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowSym {
    Psi(usize),
    Dz,
}

impl fmt::Display for ColSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColSym::Phi(i) => write!(f, "Φ{i}"),
            ColSym::Y => f.write_str("Y"),
        }
    }
}

impl fmt::Display for RowSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowSym::Psi(i) => write!(f, "Ψ{i}"),
            RowSym::Dz => f.write_str("∂z"),
        }
    }
}

/// The scalar `row * col`.
pub fn contract(row: RowSym, col: ColSym) -> Result<ScalarPoly, DyadicError> {
    match (row, col) {
        (RowSym::Psi(i), ColSym::Phi(j)) => Ok(ScalarPoly::lambda(i, j)),
        (RowSym::Psi(_), ColSym::Y) => Ok(ScalarPoly::zero()),
        (RowSym::Dz, col) => Err(DyadicError::Uncontracted { row, col }),
    }
}

fn add_into<K: Ord + Copy>(map: &mut BTreeMap<K, ScalarPoly>, k: K, c: &ScalarPoly) {
    if c.is_zero() {
        return;
    }
    let v = map.entry(k).or_default();
    *v = &*v + c;
    if v.is_zero() {
        map.remove(&k);
    }
}

/// `scalar * E + sum c_(col,row) col row`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DyadExpr {
    scalar: ScalarPoly,
    dyads: BTreeMap<(ColSym, RowSym), ScalarPoly>,
}

impl DyadExpr {
    pub fn zero() -> Self {
        DyadExpr::default()
    }

    /// The identity matrix `E`.
    pub fn identity() -> Self {
        DyadExpr {
            scalar: ScalarPoly::one(),
            dyads: BTreeMap::new(),
        }
    }

    pub fn dyad(col: ColSym, row: RowSym) -> Self {
        Self::zero().plus_dyad(col, row, &ScalarPoly::one())
    }

    /// `E + Φ_i Ψ_i`.
    pub fn factor(i: usize) -> Self {
        &Self::identity() + &Self::dyad(ColSym::Phi(i), RowSym::Psi(i))
    }

    /// `Y ∂z`.
    pub fn y_dz() -> Self {
        Self::dyad(ColSym::Y, RowSym::Dz)
    }

    fn plus_dyad(mut self, col: ColSym, row: RowSym, c: &ScalarPoly) -> Self {
        add_into(&mut self.dyads, (col, row), c);
        self
    }

    pub fn scalar(&self) -> &ScalarPoly {
        &self.scalar
    }

    pub fn coefficient(&self, col: ColSym, row: RowSym) -> ScalarPoly {
        self.dyads.get(&(col, row)).cloned().unwrap_or_default()
    }

    pub fn dyads(&self) -> impl Iterator<Item = (&(ColSym, RowSym), &ScalarPoly)> {
        self.dyads.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.dyads.is_empty()
    }

    pub fn scale(&self, c: &ScalarPoly) -> Self {
        let mut out = DyadExpr {
            scalar: &self.scalar * c,
            dyads: BTreeMap::new(),
        };
        for (&k, v) in &self.dyads {
            add_into(&mut out.dyads, k, &(v * c));
        }
        out
    }

    /// Number of monomial terms over all dyads, not counting `E`.
    pub fn num_dyad_terms(&self) -> usize {
        self.dyads.values().map(ScalarPoly::num_terms).sum()
    }

    /// Replaces `λ_ij` by `value` everywhere.
    pub fn substitute(&self, i: usize, j: usize, value: &ScalarPoly) -> Self {
        let mut out = DyadExpr {
            scalar: self.scalar.substitute(i, j, value),
            dyads: BTreeMap::new(),
        };
        for (&k, v) in &self.dyads {
            add_into(&mut out.dyads, k, &v.substitute(i, j, value));
        }
        out
    }
}

/// `a b` with the contraction rules.
pub fn dyad_mul(a: &DyadExpr, b: &DyadExpr) -> Result<DyadExpr, DyadicError> {
    let mut out = DyadExpr {
        scalar: &a.scalar * &b.scalar,
        dyads: BTreeMap::new(),
    };
    for (&k, v) in &a.dyads {
        add_into(&mut out.dyads, k, &(v * &b.scalar));
    }
    for (&k, v) in &b.dyads {
        add_into(&mut out.dyads, k, &(&a.scalar * v));
    }
    for (&(c1, r1), v1) in &a.dyads {
        for (&(c2, r2), v2) in &b.dyads {
            let lam = contract(r1, c2)?;
            if !lam.is_zero() {
                add_into(&mut out.dyads, (c1, r2), &(&(v1 * &lam) * v2));
            }
        }
    }
    Ok(out)
}

/// `prod_{i=1..k} (E + Φ_i Ψ_i)` in closed form: `E` plus, for every
/// increasing chain `i_1 < ... < i_m`, the term
/// `λ_{i_1 i_2} ... λ_{i_{m-1} i_m} Φ_{i_1} Ψ_{i_m}`.
pub fn expand_product(k: usize) -> DyadExpr {
    assert!(k < usize::BITS as usize, "too many factors");
    let mut out = DyadExpr::identity();
    for mask in 1usize..(1 << k) {
        let chain: Vec<usize> = (1..=k).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let coeff = chain.windows(2).fold(ScalarPoly::one(), |acc, w| {
            &acc * &ScalarPoly::lambda(w[0], w[1])
        });
        let first = chain[0];
        let last = *chain.last().unwrap();
        add_into(
            &mut out.dyads,
            (ColSym::Phi(first), RowSym::Psi(last)),
            &coeff,
        );
    }
    out
}

/// The same product as a left fold of [`dyad_mul`].
pub fn product_by_fold(k: usize) -> DyadExpr {
    (1..=k).fold(DyadExpr::identity(), |acc, i| {
        dyad_mul(&acc, &DyadExpr::factor(i)).expect("factors only contract Ψ with Φ")
    })
}

/// `prod (E + Φ_i Ψ_i) - E + Y ∂z`, the left side of the relation `... = 0`
/// satisfied when the product equals `E - Y ∂z`.
pub fn product_relation(k: usize) -> DyadExpr {
    &(&expand_product(k) - &DyadExpr::identity()) + &DyadExpr::y_dz()
}

impl<'a> Add<&'a DyadExpr> for &'a DyadExpr {
    type Output = DyadExpr;
    fn add(self, rhs: &DyadExpr) -> DyadExpr {
        let mut out = self.clone();
        out.scalar = &out.scalar + &rhs.scalar;
        for (&k, v) in &rhs.dyads {
            add_into(&mut out.dyads, k, v);
        }
        out
    }
}

impl Neg for &DyadExpr {
    type Output = DyadExpr;
    fn neg(self) -> DyadExpr {
        self.scale(&ScalarPoly::constant(-Rat::one()))
    }
}

impl<'a> Sub<&'a DyadExpr> for &'a DyadExpr {
    type Output = DyadExpr;
    fn sub(self, rhs: &DyadExpr) -> DyadExpr {
        self + &-rhs
    }
}

/// A row combination `sum c_r r`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RowExpr {
    terms: BTreeMap<RowSym, ScalarPoly>,
}

impl RowExpr {
    pub fn zero() -> Self {
        RowExpr::default()
    }

    pub fn symbol(r: RowSym) -> Self {
        let mut out = Self::zero();
        add_into(&mut out.terms, r, &ScalarPoly::one());
        out
    }

    pub fn coefficient(&self, r: RowSym) -> ScalarPoly {
        self.terms.get(&r).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RowSym, &ScalarPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomial terms after full expansion.
    pub fn num_terms(&self) -> usize {
        self.terms.values().map(ScalarPoly::num_terms).sum()
    }

    pub fn scale(&self, c: &ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            add_into(&mut out.terms, k, &(v * c));
        }
        out
    }

    pub fn substitute(&self, i: usize, j: usize, value: &ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (&k, v) in &self.terms {
            add_into(&mut out.terms, k, &v.substitute(i, j, value));
        }
        out
    }

    /// Expanded monomial terms, e.g. `["λ12*Ψ2", "λ13*Ψ3"]`, ordered by row
    /// symbol and then by monomial.
    pub fn term_strings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (r, c) in &self.terms {
            for (m, a) in c.terms() {
                let mut s = String::new();
                scalar::write_monomial_term(&mut s, true, a, m, &r.to_string());
                out.push(s);
            }
        }
        out
    }
}

impl<'a> Add<&'a RowExpr> for &'a RowExpr {
    type Output = RowExpr;
    fn add(self, rhs: &RowExpr) -> RowExpr {
        let mut out = self.clone();
        for (&k, v) in &rhs.terms {
            add_into(&mut out.terms, k, v);
        }
        out
    }
}

impl<'a> Sub<&'a RowExpr> for &'a RowExpr {
    type Output = RowExpr;
    fn sub(self, rhs: &RowExpr) -> RowExpr {
        self + &rhs.scale(&ScalarPoly::constant(-Rat::one()))
    }
}

/// `r x`: `r E = r`, `r (col row') = (r col) row'`.
pub fn row_mul(r: RowSym, x: &DyadExpr) -> Result<RowExpr, DyadicError> {
    let mut out = RowExpr::zero();
    add_into(&mut out.terms, r, &x.scalar);
    for (&(col, row), v) in &x.dyads {
        let lam = contract(r, col)?;
        if !lam.is_zero() {
            add_into(&mut out.terms, row, &(&lam * v));
        }
    }
    Ok(out)
}

pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = terms[0].clone();
    for t in &terms[1..] {
        match t.strip_prefix('-') {
            Some(rest) => {
                s.push_str(" - ");
                s.push_str(rest);
            }
            None => {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
    }
    s
}

impl fmt::Display for RowExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(self.term_strings()))
    }
}

impl DyadExpr {
    /// Expanded terms: the `E` part first, then each dyad monomial.
    pub fn term_strings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (m, a) in self.scalar.terms() {
            let mut s = String::new();
            scalar::write_monomial_term(&mut s, true, a, m, "E");
            out.push(s);
        }
        for ((c, r), v) in &self.dyads {
            for (m, a) in v.terms() {
                let mut s = String::new();
                scalar::write_monomial_term(&mut s, true, a, m, &format!("{c}{r}"));
                out.push(s);
            }
        }
        out
    }
}

impl fmt::Display for DyadExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(self.term_strings()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(i: usize, j: usize) -> ScalarPoly {
        ScalarPoly::lambda(i, j)
    }

    fn phi_psi(i: usize, j: usize) -> DyadExpr {
        DyadExpr::dyad(ColSym::Phi(i), RowSym::Psi(j))
    }

    #[test]
    fn two_factor_product() {
        let p = dyad_mul(&DyadExpr::factor(1), &DyadExpr::factor(2)).unwrap();
        let expected = &(&(&DyadExpr::identity() + &phi_psi(1, 1)) + &phi_psi(2, 2))
            + &phi_psi(1, 2).scale(&lam(1, 2));
        assert_eq!(p, expected);
        assert_eq!(p, expand_product(2));
    }

    #[test]
    fn identity_is_neutral() {
        let x = &phi_psi(1, 2).scale(&lam(2, 3)) + &DyadExpr::y_dz();
        assert_eq!(dyad_mul(&x, &DyadExpr::identity()).unwrap(), x);
        assert_eq!(dyad_mul(&DyadExpr::identity(), &x).unwrap(), x);
    }

    #[test]
    fn self_contraction_vanishes() {
        assert!(dyad_mul(&phi_psi(1, 1), &phi_psi(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn dz_does_not_contract() {
        let err = dyad_mul(&DyadExpr::y_dz(), &phi_psi(1, 1)).unwrap_err();
        assert_eq!(
            err,
            DyadicError::Uncontracted {
                row: RowSym::Dz,
                col: ColSym::Phi(1)
            }
        );
        // Ψ Y = 0 is fine
        assert!(dyad_mul(&phi_psi(1, 2), &DyadExpr::y_dz()).unwrap().is_zero());
    }

    #[test]
    fn three_factor_expansion() {
        let p = expand_product(3);
        assert!(p.scalar().is_one());
        let expected = [
            (1, 1, ScalarPoly::one()),
            (2, 2, ScalarPoly::one()),
            (3, 3, ScalarPoly::one()),
            (1, 2, lam(1, 2)),
            (2, 3, lam(2, 3)),
            (1, 3, &lam(1, 3) + &(&lam(1, 2) * &lam(2, 3))),
        ];
        assert_eq!(p.dyads().count(), expected.len());
        for (i, j, c) in expected {
            assert_eq!(p.coefficient(ColSym::Phi(i), RowSym::Psi(j)), c);
        }
        assert_eq!(p.num_dyad_terms(), 7);
        assert_eq!(expand_product(1), DyadExpr::factor(1));
    }

    #[test]
    fn closed_form_matches_fold() {
        for k in 0..=6 {
            assert_eq!(expand_product(k), product_by_fold(k), "k = {k}");
        }
    }

    #[test]
    fn row_products() {
        let x = &expand_product(3) - &DyadExpr::identity();
        let r1 = row_mul(RowSym::Psi(1), &x).unwrap();
        assert_eq!(r1.to_string(), "λ12*Ψ2 + λ13*Ψ3 + λ12*λ23*Ψ3");
        let r2 = row_mul(RowSym::Psi(2), &x).unwrap();
        assert_eq!(
            r2.to_string(),
            "λ21*Ψ1 + λ12*λ21*Ψ2 + λ23*Ψ3 + λ13*λ21*Ψ3 + λ12*λ21*λ23*Ψ3"
        );
        assert_eq!(
            row_mul(RowSym::Psi(1), &DyadExpr::identity()).unwrap(),
            RowExpr::symbol(RowSym::Psi(1))
        );
        for i in 1..=4 {
            assert!(row_mul(RowSym::Psi(i), &DyadExpr::y_dz()).unwrap().is_zero());
        }
    }

    #[test]
    fn relation_form() {
        let rel = product_relation(2);
        assert!(rel.scalar().is_zero());
        assert!(rel.coefficient(ColSym::Y, RowSym::Dz).is_one());
    }
}
