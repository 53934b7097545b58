use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactalg::{Polynomial, Rat};
use crate::text::fmt_rat;

/// A monomial in the `λ_ij`, ordered by degree and then by its factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LamMono(BTreeMap<(usize, usize), u32>);

impl LamMono {
    pub fn one() -> Self {
        LamMono::default()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&(usize, usize), &u32)> {
        self.0.iter()
    }

    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.0.get(&(i, j)).copied().unwrap_or(0)
    }

    fn mul(&self, other: &LamMono) -> LamMono {
        let mut m = self.0.clone();
        for (k, e) in &other.0 {
            *m.entry(*k).or_insert(0) += e;
        }
        LamMono(m)
    }
}

impl Ord for LamMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for LamMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn lambda_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("λ{i}{j}")
    } else {
        format!("λ{i},{j}")
    }
}

impl fmt::Display for LamMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&(i, j), &e)| {
                if e == 1 {
                    lambda_name(i, j)
                } else {
                    format!("{}^{e}", lambda_name(i, j))
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Commutative polynomial over `Q` in independent indeterminates `λ_ij`,
/// `i != j`. Any `λ_ii` is zero on contact.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<LamMono, Rat>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        ScalarPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(LamMono::one(), c);
        }
        ScalarPoly { terms }
    }

    /// `λ_ij`, or zero when `i == j`.
    pub fn lambda(i: usize, j: usize) -> Self {
        if i == j {
            return Self::zero();
        }
        let mut m = BTreeMap::new();
        m.insert((i, j), 1);
        let mut terms = BTreeMap::new();
        terms.insert(LamMono(m), Rat::one());
        ScalarPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LamMono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn add_term(&mut self, m: LamMono, c: Rat) {
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Replaces `λ_ij` by `value`.
    pub fn substitute(&self, i: usize, j: usize, value: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(i, j);
            let mut rest = m.clone();
            rest.0.remove(&(i, j));
            let mut t = ScalarPoly::zero();
            t.add_term(rest, c.clone());
            for _ in 0..e {
                t = &t * value;
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluates in `K[y_1..y_n]` with `λ_ij -> f(i, j)`.
    pub fn eval<F>(&self, nvars: usize, mut f: F) -> Polynomial
    where
        F: FnMut(usize, usize) -> Polynomial,
    {
        let mut acc = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(nvars, c.clone());
            for (&(i, j), &e) in m.factors() {
                t = &t * &f(i, j).pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl<'a> Add<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        self + &-rhs
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        self.scale(&-Rat::one())
    }
}

impl<'a> Mul<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Appends `c*m*suffix` as the first term of a sum or after ` + `/` - `.
pub(crate) fn write_monomial_term(
    out: &mut String,
    first: bool,
    c: &Rat,
    m: &LamMono,
    suffix: &str,
) {
    let neg = c < &Rat::zero();
    let abs = if neg { -c.clone() } else { c.clone() };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mono_is_one = m.0.is_empty();
    let mut factors = Vec::new();
    if !abs.is_one() || (mono_is_one && suffix.is_empty()) {
        factors.push(fmt_rat(&abs));
    }
    if !mono_is_one {
        factors.push(m.to_string());
    }
    if !suffix.is_empty() {
        factors.push(suffix.to_string());
    }
    out.push_str(&factors.join("*"));
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_monomial_term(&mut out, k == 0, c, m, "");
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn diagonal_lambdas_vanish() {
        assert!(ScalarPoly::lambda(2, 2).is_zero());
        assert!((&ScalarPoly::lambda(1, 2) * &ScalarPoly::lambda(3, 3)).is_zero());
    }

    #[test]
    fn display_orders_by_degree() {
        let p = &(&ScalarPoly::lambda(1, 3)
            + &(&ScalarPoly::lambda(1, 2) * &ScalarPoly::lambda(2, 3)))
            - &ScalarPoly::constant(rat(2));
        assert_eq!(p.to_string(), "-2 + λ13 + λ12*λ23");
    }

    #[test]
    fn substitution() {
        let l21 = ScalarPoly::lambda(2, 1);
        let p = &l21 + &ScalarPoly::lambda(2, 3);
        assert_eq!(p.substitute(2, 1, &ScalarPoly::zero()), ScalarPoly::lambda(2, 3));
        let sq = &l21 * &l21;
        assert_eq!(sq.to_string(), "λ21^2");
        assert_eq!(
            sq.substitute(2, 1, &ScalarPoly::constant(rat(3))),
            ScalarPoly::constant(rat(9))
        );
    }
}
