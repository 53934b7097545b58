//! Bracket expressions over a generator alphabet.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! element := '0' | term (('+' | '-') term)*
//! term    := ('-')? (rational '*')? factor
//! factor  := LETTER INT | '[' element ',' element ']' | '(' element ')'
//! ```
//!
//! `LETTER` is `x` in metabelian contexts and `z` in free associative ones.
//! The printer emits exactly the shapes the parser builds, so
//! `parse(print(e)) == e` for every expression without single-term sums.

use num_traits::{One, Signed, Zero};

use crate::exactalg::Rat;
use crate::text::{fmt_rat, Cursor, ParseError};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LieExpr {
    /// Generator, one-based.
    Gen(usize),
    Bracket(Box<LieExpr>, Box<LieExpr>),
    Scale(Rat, Box<LieExpr>),
    /// Formal sum; the empty sum is zero.
    Sum(Vec<LieExpr>),
}

impl LieExpr {
    pub fn gen(i: usize) -> Self {
        LieExpr::Gen(i)
    }

    pub fn zero() -> Self {
        LieExpr::Sum(Vec::new())
    }

    pub fn bracket(a: LieExpr, b: LieExpr) -> Self {
        LieExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn scale(c: Rat, e: LieExpr) -> Self {
        LieExpr::Scale(c, Box::new(e))
    }

    /// Sum that collapses a single summand to itself.
    pub fn sum(mut terms: Vec<LieExpr>) -> Self {
        if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            LieExpr::Sum(terms)
        }
    }

    /// `c * e`, omitting the scalar when `c = 1`.
    pub fn times(c: Rat, e: LieExpr) -> Self {
        if c.is_one() {
            e
        } else {
            LieExpr::scale(c, e)
        }
    }

    /// Left-normed monomial `[[..[x_{i1}, x_{i2}], ...], x_{ik}]`.
    pub fn left_normed(indices: &[usize]) -> Self {
        let mut it = indices.iter();
        let first = LieExpr::Gen(*it.next().expect("at least one generator"));
        it.fold(first, |acc, &i| LieExpr::bracket(acc, LieExpr::Gen(i)))
    }

    pub fn max_index(&self) -> usize {
        match self {
            LieExpr::Gen(i) => *i,
            LieExpr::Bracket(a, b) => a.max_index().max(b.max_index()),
            LieExpr::Scale(_, e) => e.max_index(),
            LieExpr::Sum(v) => v.iter().map(LieExpr::max_index).max().unwrap_or(0),
        }
    }

    pub fn mentions(&self, i: usize) -> bool {
        match self {
            LieExpr::Gen(j) => *j == i,
            LieExpr::Bracket(a, b) => a.mentions(i) || b.mentions(i),
            LieExpr::Scale(_, e) => e.mentions(i),
            LieExpr::Sum(v) => v.iter().any(|e| e.mentions(i)),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            LieExpr::Gen(_) => 1,
            LieExpr::Bracket(a, b) => 1 + a.size() + b.size(),
            LieExpr::Scale(_, e) => 1 + e.size(),
            LieExpr::Sum(v) => 1 + v.iter().map(LieExpr::size).sum::<usize>(),
        }
    }

    /// Evaluates in any structure given a generator map, a bracket, scalar
    /// multiplication, addition and zero.
    pub fn fold<T, E>(
        &self,
        gen: &mut impl FnMut(usize) -> Result<T, E>,
        ops: &impl LieOps<T, E>,
    ) -> Result<T, E> {
        match self {
            LieExpr::Gen(i) => gen(*i),
            LieExpr::Bracket(a, b) => {
                let a = a.fold(gen, ops)?;
                let b = b.fold(gen, ops)?;
                ops.bracket(&a, &b)
            }
            LieExpr::Scale(c, e) => Ok(ops.scale(c, &e.fold(gen, ops)?)),
            LieExpr::Sum(v) => {
                let mut acc = ops.zero();
                for e in v {
                    acc = ops.add(&acc, &e.fold(gen, ops)?);
                }
                Ok(acc)
            }
        }
    }

    /// Replaces every generator `i` by `images[i - 1]`.
    pub fn substitute(&self, images: &[LieExpr]) -> Option<LieExpr> {
        Some(match self {
            LieExpr::Gen(i) => images.get(i.checked_sub(1)?)?.clone(),
            LieExpr::Bracket(a, b) => LieExpr::bracket(a.substitute(images)?, b.substitute(images)?),
            LieExpr::Scale(c, e) => LieExpr::scale(c.clone(), e.substitute(images)?),
            LieExpr::Sum(v) => LieExpr::Sum(
                v.iter()
                    .map(|e| e.substitute(images))
                    .collect::<Option<Vec<_>>>()?,
            ),
        })
    }

    pub fn render(&self, letter: char) -> String {
        let mut out = String::new();
        write_element(self, letter, &mut out);
        out
    }

    pub fn parse(s: &str, letter: char) -> Result<LieExpr, ParseError> {
        let mut cur = Cursor::new(s);
        let e = parse_element(&mut cur, letter)?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Parses over the metabelian alphabet `x1, x2, ...`.
    pub fn parse_x(s: &str) -> Result<LieExpr, ParseError> {
        Self::parse(s, 'x')
    }
}

/// Operations needed to evaluate a [`LieExpr`] in a concrete algebra.
pub trait LieOps<T, E> {
    fn zero(&self) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn scale(&self, c: &Rat, a: &T) -> T;
    fn bracket(&self, a: &T, b: &T) -> Result<T, E>;
}

impl std::fmt::Display for LieExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render('x'))
    }
}

fn write_element(e: &LieExpr, letter: char, out: &mut String) {
    match e {
        LieExpr::Sum(v) if v.is_empty() => out.push('0'),
        LieExpr::Sum(v) => {
            for (k, t) in v.iter().enumerate() {
                match t {
                    LieExpr::Scale(c, f) if k > 0 && c.is_negative() => {
                        out.push_str(" - ");
                        write_negated(c, f, letter, out);
                    }
                    _ => {
                        if k > 0 {
                            out.push_str(" + ");
                        }
                        write_term(t, letter, out);
                    }
                }
            }
        }
        t => write_term(t, letter, out),
    }
}

fn write_term(t: &LieExpr, letter: char, out: &mut String) {
    match t {
        LieExpr::Scale(c, f) if c.is_negative() => {
            out.push('-');
            write_negated(c, f, letter, out);
        }
        LieExpr::Scale(c, f) => {
            out.push_str(&fmt_rat(c));
            out.push('*');
            write_factor(f, letter, out);
        }
        f => write_factor(f, letter, out),
    }
}

/// Body of a negative multiple after its sign: `-1` leaves no coefficient.
fn write_negated(c: &Rat, f: &LieExpr, letter: char, out: &mut String) {
    let a = -c.clone();
    if !a.is_one() {
        out.push_str(&fmt_rat(&a));
        out.push('*');
    }
    write_factor(f, letter, out);
}

fn write_factor(f: &LieExpr, letter: char, out: &mut String) {
    match f {
        LieExpr::Gen(i) => {
            out.push(letter);
            out.push_str(&i.to_string());
        }
        LieExpr::Bracket(a, b) => {
            out.push('[');
            write_element(a, letter, out);
            out.push(',');
            write_element(b, letter, out);
            out.push(']');
        }
        e => {
            out.push('(');
            write_element(e, letter, out);
            out.push(')');
        }
    }
}

fn parse_element(cur: &mut Cursor<'_>, letter: char) -> Result<LieExpr, ParseError> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let neg = if cur.eat('-') {
            true
        } else if first || cur.eat('+') {
            false
        } else {
            break;
        };
        let mut coeff: Option<Rat> = None;
        if cur.peek_digit() {
            let c = cur.rational()?;
            if !cur.eat('*') {
                // a bare `0` is the empty sum
                if c.is_zero() && first && !neg && ends_element(cur) {
                    return Ok(LieExpr::zero());
                }
                return Err(cur.error("expected '*' after coefficient"));
            }
            coeff = Some(c);
        }
        let factor = parse_factor(cur, letter)?;
        let term = match (coeff, neg) {
            (Some(c), true) => LieExpr::scale(-c, factor),
            (Some(c), false) => LieExpr::scale(c, factor),
            (None, true) => LieExpr::scale(-Rat::one(), factor),
            (None, false) => factor,
        };
        terms.push(term);
        first = false;
    }
    Ok(LieExpr::sum(terms))
}

fn ends_element(cur: &mut Cursor<'_>) -> bool {
    matches!(cur.peek(), None | Some(',') | Some(']') | Some(')'))
}

fn parse_factor(cur: &mut Cursor<'_>, letter: char) -> Result<LieExpr, ParseError> {
    match cur.peek() {
        Some(c) if c == letter => {
            cur.bump();
            Ok(LieExpr::Gen(cur.index()?))
        }
        Some('[') => {
            cur.bump();
            let a = parse_element(cur, letter)?;
            cur.expect(',')?;
            let b = parse_element(cur, letter)?;
            cur.expect(']')?;
            Ok(LieExpr::bracket(a, b))
        }
        Some('(') => {
            cur.bump();
            let e = parse_element(cur, letter)?;
            cur.expect(')')?;
            Ok(e)
        }
        _ => Err(cur.error(format!("expected {letter}<i>, '[' or '('"))),
    }
}
