//! The free metabelian Lie algebra `M_n` realized inside the wreath product
//! `Y_n + T_n`, with `x_i = y_i + t_i` and `[a + t, b + s] = a s - b t`.

mod element;
mod expr;
mod lift;

pub use element::{ElementView, MElement};
pub use expr::{LieExpr, LieOps};
pub use lift::lift;

use thiserror::Error;

use crate::exactalg::Rat;
use crate::text::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetabelianError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("element is not in M_n: d(f)Y = {0} after removing the linear part")]
    NotInSubalgebra(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Evaluation of expressions in the wreath product of a fixed rank.
pub(crate) struct WreathOps {
    pub(crate) rank: usize,
}

impl LieOps<MElement, MetabelianError> for WreathOps {
    fn zero(&self) -> MElement {
        MElement::zero(self.rank)
    }

    fn add(&self, a: &MElement, b: &MElement) -> MElement {
        a + b
    }

    fn scale(&self, c: &Rat, a: &MElement) -> MElement {
        a.scale(c)
    }

    fn bracket(&self, a: &MElement, b: &MElement) -> Result<MElement, MetabelianError> {
        a.bracket(b)
    }
}

/// Normal form of a bracket expression in `M_n`.
pub fn eval(e: &LieExpr, rank: usize) -> Result<MElement, MetabelianError> {
    e.fold(&mut |i| MElement::generator(rank, i), &WreathOps { rank })
}

/// Substitutes `images[i - 1]` for `x_i` and evaluates.
pub fn eval_with(e: &LieExpr, images: &[MElement]) -> Result<MElement, MetabelianError> {
    let rank = images.first().map_or(0, MElement::rank);
    e.fold(
        &mut |i| {
            i.checked_sub(1)
                .and_then(|k| images.get(k))
                .cloned()
                .ok_or(MetabelianError::IndexOutOfRange {
                    index: i,
                    rank: images.len(),
                })
        },
        &WreathOps { rank },
    )
}

/// Parses a bracket expression over `x1..xn` and evaluates it.
pub fn parse_element(s: &str, rank: usize) -> Result<MElement, MetabelianError> {
    eval(&LieExpr::parse_x(s)?, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Polynomial};

    fn poly(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    fn tpart(e: &MElement) -> Vec<String> {
        e.tpart().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn generators() {
        let x1 = MElement::generator(2, 1).unwrap();
        assert_eq!(x1.linear(), &[rat(1), rat(0)]);
        assert_eq!(tpart(&x1), ["1", "0"]);
        let x2 = MElement::generator(3, 2).unwrap();
        assert_eq!(x2.linear(), &[rat(0), rat(1), rat(0)]);
        assert_eq!(tpart(&x2), ["0", "1", "0"]);
        assert_eq!(
            MElement::generator(3, 4),
            Err(MetabelianError::IndexOutOfRange { index: 4, rank: 3 })
        );
    }

    #[test]
    fn bracket_examples() {
        let f = parse_element("[x1,x2]", 3).unwrap();
        assert_eq!(tpart(&f), ["-y2", "y1", "0"]);
        assert!(f.linear().iter().all(|c| *c == rat(0)));
        let u = parse_element("x1 + 2*[x2,x3]", 3).unwrap();
        assert!(u.bracket(&u).unwrap().is_zero());
        let m = parse_element("[[x1,x2],[x1,x3]]", 3).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn eval_examples() {
        let f = parse_element("[[x1,x2],x3]", 3).unwrap();
        assert_eq!(tpart(&f), ["y2*y3", "-y1*y3", "0"]);
        let s = parse_element("x1 + x2", 3).unwrap();
        assert_eq!(s.linear(), &[rat(1), rat(1), rat(0)]);
        assert_eq!(tpart(&s), ["1", "1", "0"]);
        let d = parse_element("2*[x1,x2]", 3).unwrap();
        assert_eq!(tpart(&d), ["-2*y2", "2*y1", "0"]);
        assert!(parse_element("x4", 3).is_err());
    }

    #[test]
    fn fox_examples() {
        let x2 = MElement::generator(3, 2).unwrap();
        assert_eq!(tpart(&x2), ["0", "1", "0"]);
        let f = parse_element("[x1,x2]", 3).unwrap();
        assert_eq!(f.fox().row(0), &[poly("-y2", 3), poly("y1", 3), poly("0", 3)]);
        // d([z, x1]) = -y1 d(z) for derived z
        let z = parse_element("[[x2,x3],x2] + [x1,x3]", 3).unwrap();
        let zx1 = z.bracket(&MElement::generator(3, 1).unwrap()).unwrap();
        let expected: Vec<Polynomial> =
            z.tpart().iter().map(|d| -&(d * &poly("y1", 3))).collect();
        assert_eq!(zx1.tpart(), expected.as_slice());
    }

    #[test]
    fn derived_test() {
        let f = parse_element("[x1,x2]", 3).unwrap();
        assert!(f.is_derived());
        // (-y2) y1 + y1 y2 = 0
        assert!(f.fox_dot_y().is_zero());
        assert!(!MElement::generator(3, 1).unwrap().is_derived());
        assert!(MElement::zero(3).is_derived());
    }

    #[test]
    fn degree_components_split_by_lie_degree() {
        let f = parse_element("x1 + [x1,x2]", 3).unwrap();
        let comps = f.degree_components();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(comps[&1], MElement::generator(3, 1).unwrap());
        assert_eq!(comps[&2], parse_element("[x1,x2]", 3).unwrap());
        let h = parse_element("[[x1,x2],x3] - [[x2,x3],x1]", 3).unwrap();
        assert_eq!(h.degree_components().len(), 1);
        assert!(MElement::zero(3).degree_components().is_empty());
    }

    #[test]
    fn membership_of_hand_built_elements() {
        let ok = MElement::from_tpart(vec![poly("-y2", 2), poly("y1", 2)]).unwrap();
        assert!(ok.lies_in_subalgebra());
        let bad = MElement::from_tpart(vec![poly("y1", 2), poly("0", 2)]).unwrap();
        assert!(!bad.lies_in_subalgebra());
        assert!(MElement::from_parts(vec![rat(1)], vec![]).is_err());
    }
}
