//! Reconstruction of a bracket expression from a normal form.
//!
//! The derived part of an element is a row `d` with `sum d_i y_i = 0`. The
//! highest variable `y_v` is eliminated by writing `d_i = q_i y_v + r_i` for
//! `i < v` and subtracting `q_i (y_v e_i - y_i e_v)`, which is the Fox row of
//! `-q_i [x_i, x_v]` realized by left-normed monomials. What remains is a
//! syzygy in fewer variables, so the recursion ends at the zero row.

use num_traits::{One, Zero};

use super::{LieExpr, MElement, MetabelianError};
use crate::exactalg::{Polynomial, Rat};

/// A bracket expression `e` with `eval(e) == f`.
///
/// The output is a rational combination of generators followed by left-normed
/// monomials `[[x_i, x_v], x_{k1}, ..., x_{km}]` with `i < v` and
/// `k1 <= ... <= km`, in a deterministic order.
pub fn lift(f: &MElement) -> Result<LieExpr, MetabelianError> {
    let n = f.rank();
    let mut terms = Vec::new();
    for (i, c) in f.linear().iter().enumerate() {
        if !c.is_zero() {
            terms.push(LieExpr::times(c.clone(), LieExpr::Gen(i + 1)));
        }
    }

    let rem = f.derived_remainder();
    let dot = rem.fox_dot_y();
    if !dot.is_zero() {
        return Err(MetabelianError::NotInSubalgebra(dot.to_string()));
    }

    let mut d: Vec<Polynomial> = rem.tpart().to_vec();
    for v in (1..n).rev() {
        let yv_row: Vec<(usize, Polynomial)> = (0..v)
            .map(|i| {
                let (q, r) = d[i].divide_by_var(v);
                d[i] = r;
                (i, q)
            })
            .collect();
        for (i, q) in yv_row {
            if q.is_zero() {
                continue;
            }
            for (m, c) in q.terms() {
                let mut word = vec![i + 1, v + 1];
                word.extend(m.variables().into_iter().map(|k| k + 1));
                // eval([[x_i,x_v],x_K]) = (-1)^m y^K (y_i e_v - y_v e_i)
                let sign = if m.degree() % 2 == 0 { -Rat::one() } else { Rat::one() };
                terms.push(LieExpr::times(c * &sign, LieExpr::left_normed(&word)));
            }
            d[v] = &d[v] + &(&q * &Polynomial::var(n, i));
        }
        debug_assert!(d[v].is_zero(), "eliminated coordinate must vanish");
    }
    debug_assert!(d.iter().all(Polynomial::is_zero));
    Ok(LieExpr::sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metabelian::{eval, parse_element};

    #[test]
    fn lifts_single_bracket() {
        let f = parse_element("[x1,x2]", 3).unwrap();
        let e = lift(&f).unwrap();
        assert_eq!(e.to_string(), "[x1,x2]");
    }

    #[test]
    fn lifts_triple_bracket_up_to_jacobi() {
        let f = parse_element("[[x1,x2],x3]", 3).unwrap();
        let e = lift(&f).unwrap();
        assert_eq!(eval(&e, 3).unwrap(), f);
        assert_eq!(e.to_string(), "[[x1,x3],x2] - [[x2,x3],x1]");
    }

    #[test]
    fn zero_lifts_to_empty_sum() {
        assert_eq!(lift(&MElement::zero(3)).unwrap(), LieExpr::zero());
    }

    #[test]
    fn keeps_linear_part() {
        let f = parse_element("2*x1 - x3 + [x2,[x1,x3]]", 3).unwrap();
        let e = lift(&f).unwrap();
        assert_eq!(eval(&e, 3).unwrap(), f);
        assert!(e.to_string().starts_with("2*x1 - x3"));
    }

    #[test]
    fn rejects_rows_outside_the_subalgebra() {
        let bad = MElement::from_tpart(vec![
            Polynomial::var(2, 0),
            Polynomial::zero(2),
        ])
        .unwrap();
        assert!(matches!(lift(&bad), Err(MetabelianError::NotInSubalgebra(_))));
    }
}
