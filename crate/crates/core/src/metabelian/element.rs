use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use super::MetabelianError;
use crate::exactalg::{PolyMatrix, PolyRow, Polynomial, Rat};
use crate::text::fmt_rat;

/// An element `y + d_1 t_1 + ... + d_n t_n` of the wreath product
/// `Y_n + T_n` containing `M_n`.
///
/// `linear` holds the coordinates of `y` in the basis `y_1..y_n`, `tpart`
/// the polynomial coordinates `d_i` in the `K[y]`-basis `t_1..t_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MElement {
    linear: Vec<Rat>,
    tpart: Vec<Polynomial>,
}

impl MElement {
    pub fn zero(rank: usize) -> Self {
        MElement {
            linear: vec![Rat::zero(); rank],
            tpart: vec![Polynomial::zero(rank); rank],
        }
    }

    /// The free generator `x_i = y_i + t_i` (one-based `i`).
    pub fn generator(rank: usize, i: usize) -> Result<Self, MetabelianError> {
        if i == 0 || i > rank {
            return Err(MetabelianError::IndexOutOfRange { index: i, rank });
        }
        let mut e = Self::zero(rank);
        e.linear[i - 1] = Rat::one();
        e.tpart[i - 1] = Polynomial::one(rank);
        Ok(e)
    }

    /// Assembles an element from its two parts. Membership in `M_n` is not
    /// checked here; see [`MElement::lies_in_subalgebra`].
    pub fn from_parts(linear: Vec<Rat>, tpart: Vec<Polynomial>) -> Result<Self, MetabelianError> {
        let rank = linear.len();
        if tpart.len() != rank {
            return Err(MetabelianError::RankMismatch {
                left: rank,
                right: tpart.len(),
            });
        }
        if let Some(p) = tpart.iter().find(|p| p.nvars() != rank) {
            return Err(MetabelianError::RankMismatch {
                left: rank,
                right: p.nvars(),
            });
        }
        Ok(MElement { linear, tpart })
    }

    /// A derived element given only by its Fox row.
    pub fn from_tpart(tpart: Vec<Polynomial>) -> Result<Self, MetabelianError> {
        Self::from_parts(vec![Rat::zero(); tpart.len()], tpart)
    }

    pub fn rank(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[Rat] {
        &self.linear
    }

    pub fn tpart(&self) -> &[Polynomial] {
        &self.tpart
    }

    pub fn is_zero(&self) -> bool {
        self.linear.iter().all(Zero::is_zero) && self.tpart.iter().all(Polynomial::is_zero)
    }

    /// The linear part read as the degree-one polynomial `sum c_i y_i`.
    pub fn linear_poly(&self) -> Polynomial {
        Polynomial::linear_form(&self.linear)
    }

    pub fn scale(&self, c: &Rat) -> MElement {
        MElement {
            linear: self.linear.iter().map(|a| a * c).collect(),
            tpart: self.tpart.iter().map(|p| p.scale(c)).collect(),
        }
    }

    fn check_rank(&self, other: &MElement) -> Result<(), MetabelianError> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(MetabelianError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            })
        }
    }

    /// `[a + t, b + s] = a s - b t`.
    pub fn bracket(&self, other: &MElement) -> Result<MElement, MetabelianError> {
        self.check_rank(other)?;
        let a = self.linear_poly();
        let b = other.linear_poly();
        let tpart = self
            .tpart
            .iter()
            .zip(&other.tpart)
            .map(|(t, s)| &(&a * s) - &(&b * t))
            .collect();
        Ok(MElement {
            linear: vec![Rat::zero(); self.rank()],
            tpart,
        })
    }

    /// The Fox row `(d_1, ..., d_n)`.
    pub fn fox(&self) -> PolyRow {
        PolyMatrix::row_vector(self.rank(), self.tpart.clone()).expect("consistent rank")
    }

    /// `sum d_i y_i`.
    pub fn fox_dot_y(&self) -> Polynomial {
        let n = self.rank();
        self.tpart
            .iter()
            .enumerate()
            .fold(Polynomial::zero(n), |acc, (i, d)| {
                &acc + &(d * &Polynomial::var(n, i))
            })
    }

    /// Membership in the derived subalgebra `[M_n, M_n]`: zero linear part and
    /// `d(f) Y = 0`.
    pub fn is_derived(&self) -> bool {
        self.linear.iter().all(Zero::is_zero) && self.fox_dot_y().is_zero()
    }

    /// The part of the element after removing `sum c_i x_i` for the linear
    /// coordinates `c_i`; lies in `[M_n, M_n]` exactly when the element
    /// lies in `M_n`.
    pub fn derived_remainder(&self) -> MElement {
        let n = self.rank();
        MElement {
            linear: vec![Rat::zero(); n],
            tpart: self
                .tpart
                .iter()
                .zip(&self.linear)
                .map(|(d, c)| d - &Polynomial::constant(n, c.clone()))
                .collect(),
        }
    }

    /// Whether the element belongs to the subalgebra generated by the `x_i`.
    pub fn lies_in_subalgebra(&self) -> bool {
        self.derived_remainder().is_derived()
    }

    /// Splits by the standard Lie degree: the linear part and the constant
    /// terms of the `T`-part form degree 1; `T`-terms of polynomial degree
    /// `d` form degree `d + 1`.
    pub fn degree_components(&self) -> BTreeMap<u32, MElement> {
        let n = self.rank();
        let mut out: BTreeMap<u32, MElement> = BTreeMap::new();
        if self.linear.iter().any(|c| !c.is_zero()) {
            out.entry(1).or_insert_with(|| MElement::zero(n)).linear = self.linear.clone();
        }
        for (i, d) in self.tpart.iter().enumerate() {
            for (deg, comp) in d.homogeneous_components() {
                out.entry(deg + 1).or_insert_with(|| MElement::zero(n)).tpart[i] = comp;
            }
        }
        out
    }

    /// Lowest Lie degree with a nonzero component.
    pub fn min_degree(&self) -> Option<u32> {
        self.degree_components().keys().next().copied()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_components().len() <= 1
    }

    pub fn to_view(&self) -> ElementView {
        ElementView {
            rank: self.rank(),
            linear: self.linear.iter().map(fmt_rat).collect(),
            tpart: self.tpart.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Serializable rendering of an element's normal form.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ElementView {
    pub rank: usize,
    pub linear: Vec<String>,
    pub tpart: Vec<String>,
}

impl std::fmt::Display for MElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = self.to_view();
        write!(
            f,
            "linear: ({})\ntpart: ({})",
            v.linear.join(", "),
            v.tpart.join(", ")
        )
    }
}

impl Add for &MElement {
    type Output = MElement;
    fn add(self, rhs: &MElement) -> MElement {
        self.check_rank(rhs).expect("element rank mismatch");
        MElement {
            linear: self.linear.iter().zip(&rhs.linear).map(|(a, b)| a + b).collect(),
            tpart: self.tpart.iter().zip(&rhs.tpart).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &MElement {
    type Output = MElement;
    fn sub(self, rhs: &MElement) -> MElement {
        self + &(-rhs)
    }
}

impl Neg for &MElement {
    type Output = MElement;
    fn neg(self) -> MElement {
        MElement {
            linear: self.linear.iter().map(|a| -a).collect(),
            tpart: self.tpart.iter().map(|p| -p).collect(),
        }
    }
}
