use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{AlgError, Rat};
use crate::text::{fmt_rat, Cursor, ParseError};

/// Exponent vector over `y1..yn`.
///
/// Ordered graded-lexicographically with `y1 < y2 < ... < yn`: total degree
/// first, then the exponent of the highest variable decides.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial `y_{var+1}` (zero-based `var`).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Variables of the monomial listed with multiplicity in ascending order,
    /// e.g. `y1^2*y3` gives `[0, 0, 2]`.
    pub fn variables(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `K[y1,...,yn]` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is ring
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    /// `y_{var+1}`, zero-based.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(Monomial::var(nvars, var), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial rank mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `sum c_i y_i`.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let n = coeffs.len();
        Polynomial::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (`Some(0)` for zero).
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Polynomial) -> Result<(), AlgError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(AlgError::RankMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgError> {
        self.check_rank(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d * c))
                .collect(),
        }
    }

    /// Multiplies by the monomial `c * m`.
    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, d)| (k.mul(m), d * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces each `y_i` by `images[i]` and expands.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, AlgError> {
        if images.len() != self.nvars {
            return Err(AlgError::DimensionMismatch(format!(
                "substitution needs {} images, got {}",
                self.nvars,
                images.len()
            )));
        }
        let target = images.first().map_or(0, Polynomial::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(AlgError::RankMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        // powers[v][e] = images[v]^e, built on demand
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(p.nvars)])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap() * &images[v];
                    powers[v].push(next);
                }
                term = &term * &powers[v][e as usize];
            }
            for (k, d) in term.terms {
                out.add_term(k, d);
            }
        }
        Ok(out)
    }

    /// Writes `self = q * y_var + r` where `r` does not involve `y_var`.
    pub fn divide_by_var(&self, var: usize) -> (Polynomial, Polynomial) {
        let mut q = Polynomial::zero(self.nvars);
        let mut r = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] > 0 {
                let mut e = m.0.clone();
                e[var] -= 1;
                q.terms.insert(Monomial(e), c.clone());
            } else {
                r.terms.insert(m.clone(), c.clone());
            }
        }
        (q, r)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Parses the canonical text form, e.g. `2*y1^2*y2 - 1/3*y3 + 5`.
    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial, ParseError> {
        let mut cur = Cursor::new(s);
        let p = parse_poly(&mut cur, nvars)?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

fn parse_poly(cur: &mut Cursor<'_>, nvars: usize) -> Result<Polynomial, ParseError> {
    let mut p = Polynomial::zero(nvars);
    let mut first = true;
    loop {
        let neg = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            break;
        };
        if !first && cur.at_end() {
            return Err(cur.error("expected a term"));
        }
        first = false;
        let mut coeff = Rat::one();
        let mut mono = Monomial::one(nvars);
        let mut need_factor = true;
        if cur.peek_digit() {
            coeff = cur.rational()?;
            need_factor = cur.eat('*');
        }
        if need_factor {
            loop {
                let vpos = cur.pos();
                if !cur.eat('y') {
                    return Err(cur.error("expected a variable y<i>"));
                }
                let idx = cur.index()?;
                if idx > nvars {
                    return Err(crate::text::ParseError::new(
                        vpos,
                        format!("variable y{idx} exceeds rank {nvars}"),
                    ));
                }
                let mut e = 1u32;
                if cur.eat('^') {
                    cur.skip_ws();
                    let epos = cur.pos();
                    let d = cur
                        .digits()
                        .ok_or_else(|| cur.error("expected an exponent"))?;
                    e = d
                        .parse()
                        .map_err(|_| ParseError::new(epos, "exponent too large"))?;
                }
                mono.0[idx - 1] += e;
                if !cur.eat('*') {
                    break;
                }
            }
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(mono, coeff);
    }
    Ok(p)
}

fn fmt_monomial(m: &Monomial) -> String {
    m.0.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                format!("y{}", v + 1)
            } else {
                format!("y{}^{}", v + 1, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lex order: `2*y1^2*y2 - y3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                f.write_str(&fmt_rat(&a))?;
            } else if a.is_one() {
                f.write_str(&fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", fmt_rat(&a), fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial rank mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial rank mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial rank mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, ratio};

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, 3).unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((&p("y1") + &p("-y1")).is_zero());
        assert_eq!(&p("y1*y2") + &p("y1*y2"), p("2*y1*y2"));
        assert_eq!(&p("y1 + y2") + &p("y2"), p("y1 + 2*y2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("y1") * &p("y2"), p("y1*y2"));
        assert_eq!(&p("y1 + y2") * &p("y1 - y2"), p("y1^2 - y2^2"));
        assert!((&Polynomial::zero(3) * &p("y1 + 7")).is_zero());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert_eq!(
            a.checked_add(&b),
            Err(AlgError::RankMismatch { left: 2, right: 3 })
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn substitute_examples() {
        let swap = [p("y2"), p("y1"), p("y3")];
        assert_eq!(p("y1").substitute(&swap).unwrap(), p("y2"));
        let id = [p("y1"), p("y2"), p("y3")];
        assert_eq!(p("y1*y2").substitute(&id).unwrap(), p("y1*y2"));
        let sq = [p("y1 + y2"), p("y2"), p("y3")];
        assert_eq!(
            p("y1^2").substitute(&sq).unwrap(),
            p("y1^2 + 2*y1*y2 + y2^2")
        );
        assert!(p("y1").substitute(&sq[..2]).is_err());
    }

    #[test]
    fn display_is_descending_grlex() {
        let q = p("-y3 + 2*y1^2*y2");
        assert_eq!(q.to_string(), "2*y1^2*y2 - y3");
        assert_eq!(p("1/2*y1 - 3/4").to_string(), "1/2*y1 - 3/4");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn grlex_order() {
        assert!(Monomial::var(3, 0) < Monomial::var(3, 1));
        assert!(Monomial::var(3, 2) < Monomial::from_exponents(vec![2, 0, 0]));
        assert!(Monomial::from_exponents(vec![1, 1, 0]) < Monomial::from_exponents(vec![0, 2, 0]));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = Polynomial::parse("y1 + y4", 3).unwrap_err();
        assert_eq!(e.offset, 5);
        let e = Polynomial::parse("y1 +", 3).unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(Polynomial::parse("1/0", 3).is_err());
        assert!(Polynomial::parse("y1 y2", 3).is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("y1^2 - y2^2");
        let b = p("y1 + y2");
        assert_eq!(a.div_exact(&b).unwrap(), p("y1 - y2"));
        assert!(p("y1^2 + 1").div_exact(&b).is_none());
        assert_eq!(
            p("3*y1").div_exact(&Polynomial::constant(3, rat(2))).unwrap(),
            Polynomial::monomial(Monomial::var(3, 0), ratio(3, 2))
        );
    }

    #[test]
    fn divide_by_var_splits() {
        let (q, r) = p("y1*y3^2 + y2*y3 + y1").divide_by_var(2);
        assert_eq!(q, p("y1*y3 + y2"));
        assert_eq!(r, p("y1"));
    }
}
