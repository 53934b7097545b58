//! The free associative algebra `U(L_n) = K<z_1, ..., z_n>`.

mod cyclic;
pub mod oracle;
mod replay;

pub use cyclic::{canonical_rotation, cyclic_signature, in_commutator_subspace};
pub use replay::{derived_degree4_basis, oe_replay, OeReport, SignatureEntry, OE_PERTURBATION};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::Rat;
use crate::metabelian::{LieExpr, LieOps};
use crate::text::{fmt_rat, ParseError};

/// Free Lie expressions share the tree type with `M_n`; they are printed and
/// parsed over the letter `z`.
pub type FreeLieExpr = LieExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAssocError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("letter index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("Fox derivative of a polynomial with constant term {0}")]
    NonzeroConstant(String),
    #[error("rank {0} is too small; need at least 4")]
    RankTooSmall(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A word in `z_1..z_n`; the empty word is the unit. Ordered by length, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NCWord(Vec<usize>);

impl NCWord {
    pub fn empty() -> Self {
        NCWord(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        NCWord(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &NCWord) -> NCWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        NCWord(v)
    }
}

impl Ord for NCWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for NCWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for i in &self.0 {
            write!(f, "z{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    rank: usize,
    terms: BTreeMap<NCWord, Rat>,
}

impl NCPoly {
    pub fn zero(rank: usize) -> Self {
        NCPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rat::one())
    }

    pub fn constant(rank: usize, c: Rat) -> Self {
        let mut p = Self::zero(rank);
        p.add_term(NCWord::empty(), c);
        p
    }

    pub fn letter(rank: usize, i: usize) -> Result<Self, FreeAssocError> {
        Self::word(rank, &[i])
    }

    pub fn word(rank: usize, letters: &[usize]) -> Result<Self, FreeAssocError> {
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i > rank) {
            return Err(FreeAssocError::IndexOutOfRange { index: bad, rank });
        }
        let mut p = Self::zero(rank);
        p.add_term(NCWord(letters.to_vec()), Rat::one());
        Ok(p)
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Rat)>,
    ) -> Result<Self, FreeAssocError> {
        let mut p = Self::zero(rank);
        for (w, c) in terms {
            p = &p + &Self::word(rank, &w)?.scale(&c);
        }
        Ok(p)
    }

    fn add_term(&mut self, w: NCWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NCWord, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &NCWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&NCWord::empty())
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(NCWord::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(NCWord::len);
        match lens.next() {
            None => true,
            Some(d) => lens.all(|l| l == d),
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> NCPoly {
        NCPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> NCPoly {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        NCPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    fn check_rank(&self, other: &NCPoly) -> Result<(), FreeAssocError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(FreeAssocError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn checked_add(&self, other: &NCPoly) -> Result<NCPoly, FreeAssocError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NCPoly) -> Result<NCPoly, FreeAssocError> {
        self.checked_add(&-other)
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &NCPoly) -> Result<NCPoly, FreeAssocError> {
        nc_mul(self, other)?.checked_sub(&nc_mul(other, self)?)
    }
}

/// Concatenation product.
pub fn nc_mul(p: &NCPoly, q: &NCPoly) -> Result<NCPoly, FreeAssocError> {
    p.check_rank(q)?;
    let mut out = NCPoly::zero(p.rank);
    for (u, a) in &p.terms {
        for (v, b) in &q.terms {
            out.add_term(u.concat(v), a * b);
        }
    }
    Ok(out)
}

struct AssocOps {
    rank: usize,
}

impl LieOps<NCPoly, FreeAssocError> for AssocOps {
    fn zero(&self) -> NCPoly {
        NCPoly::zero(self.rank)
    }

    fn add(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a + b
    }

    fn scale(&self, c: &Rat, a: &NCPoly) -> NCPoly {
        a.scale(c)
    }

    fn bracket(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, FreeAssocError> {
        a.commutator(b)
    }
}

/// Expands brackets as `[u, v] = uv - vu`.
pub fn lie_to_assoc(e: &FreeLieExpr, rank: usize) -> Result<NCPoly, FreeAssocError> {
    e.fold(&mut |i| NCPoly::letter(rank, i), &AssocOps { rank })
}

/// Left Fox derivative: the unique `g` with `f = sum_i (df/dz_i) z_i`,
/// obtained by collecting the words ending in `z_i` and stripping that letter.
pub fn fox_assoc(f: &NCPoly, i: usize) -> Result<NCPoly, FreeAssocError> {
    if i == 0 || i > f.rank {
        return Err(FreeAssocError::IndexOutOfRange {
            index: i,
            rank: f.rank,
        });
    }
    let c = f.constant_term();
    if !c.is_zero() {
        return Err(FreeAssocError::NonzeroConstant(fmt_rat(&c)));
    }
    let mut out = NCPoly::zero(f.rank);
    for (w, a) in &f.terms {
        if w.0.last() == Some(&i) {
            out.add_term(NCWord(w.0[..w.len() - 1].to_vec()), a.clone());
        }
    }
    Ok(out)
}

impl<'a> Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.checked_add(rhs).expect("rank mismatch in NCPoly addition")
    }
}

impl<'a> Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.checked_sub(rhs).expect("rank mismatch in NCPoly subtraction")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Rat::one())
    }
}

/// Writes `c*w` terms in word order, e.g. `z4z2z3 - z4z3z2`.
pub(crate) fn write_terms<'a, K: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a Rat)>,
    is_unit: impl Fn(&K) -> bool,
) -> fmt::Result {
    let mut first = true;
    for (w, c) in terms {
        let neg = c < &Rat::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if is_unit(w) {
            f.write_str(&fmt_rat(&abs))?;
        } else if abs.is_one() {
            write!(f, "{w}")?;
        } else {
            write!(f, "{}*{w}", fmt_rat(&abs))?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), NCWord::is_empty)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn w(rank: usize, l: &[usize]) -> NCPoly {
        NCPoly::word(rank, l).unwrap()
    }

    fn lie(s: &str, rank: usize) -> NCPoly {
        lie_to_assoc(&LieExpr::parse(s, 'z').unwrap(), rank).unwrap()
    }

    #[test]
    fn multiplication() {
        let z1 = w(3, &[1]);
        let z2 = w(3, &[2]);
        let z3 = w(3, &[3]);
        assert_eq!(nc_mul(&z1, &z2).unwrap(), w(3, &[1, 2]));
        let a = nc_mul(&nc_mul(&z1, &z2).unwrap(), &z3).unwrap();
        let b = nc_mul(&z1, &nc_mul(&z2, &z3).unwrap()).unwrap();
        assert_eq!(a, b);
        let p = &z1 + &w(3, &[2, 3]).scale(&rat(-2));
        assert_eq!(nc_mul(&NCPoly::one(3), &p).unwrap(), p);
        assert!(nc_mul(&z1, &w(2, &[1])).is_err());
        assert!(NCPoly::word(3, &[4]).is_err());
    }

    #[test]
    fn expansion_of_brackets() {
        assert_eq!(lie("[z1,z2]", 2).to_string(), "z1z2 - z2z1");
        assert_eq!(
            lie("[[z1,z2],z3]", 3).to_string(),
            "z1z2z3 - z2z1z3 - z3z1z2 + z3z2z1"
        );
        assert!(lie("[z1,z1]", 2).is_zero());
        assert!(lie_to_assoc(&LieExpr::parse("z5", 'z').unwrap(), 4).is_err());
    }

    #[test]
    fn fox_derivatives() {
        let f = w(2, &[1, 2]);
        assert_eq!(fox_assoc(&f, 2).unwrap(), w(2, &[1]));
        assert!(fox_assoc(&f, 1).unwrap().is_zero());
        let c = lie("[z1,z2]", 2);
        assert_eq!(fox_assoc(&c, 1).unwrap(), -&w(2, &[2]));
        assert_eq!(fox_assoc(&c, 2).unwrap(), w(2, &[1]));
        let g = lie("[[z1,[z2,z3]],z4]", 4);
        let d = fox_assoc(&g, 1).unwrap();
        assert_eq!(d.to_string(), "z4z2z3 - z4z3z2");
        assert_eq!(d, nc_mul(&w(4, &[4]), &lie("[z2,z3]", 4)).unwrap());
        assert!(matches!(
            fox_assoc(&NCPoly::one(2), 1),
            Err(FreeAssocError::NonzeroConstant(_))
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(NCPoly::zero(2).to_string(), "0");
        assert_eq!(NCPoly::constant(2, rat(-3)).to_string(), "-3");
        let p = &w(2, &[2, 1]).scale(&rat(2)) - &NCPoly::one(2);
        assert_eq!(p.to_string(), "-1 + 2*z2z1");
    }
}
