//! Endomorphisms of `M_n` given by the images of the generators.
//!
//! Composition follows `(phi o psi)(x_i) = g_i(f_1, ..., f_n)` for
//! `phi = (f_1..f_n)` and `psi = (g_1..g_n)`: apply `psi` first, then
//! substitute `phi`. Under this convention the Jacobian satisfies the chain
//! rule `J(phi o psi) = phi_bar(J(psi)) J(phi)` and is an antimorphism on
//! `IAut(M_n)`.

mod file;
mod random;

pub use file::{EndoFile, JacobianView};
pub use random::{
    random_derived_element, random_derived_expr, random_endo, random_iaut_tame, random_linear,
    random_tame,
    TameRng,
};

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{AlgError, PolyCol, PolyMatrix, PolyRow, Polynomial, RatMatrix};
use crate::metabelian::{eval, eval_with, lift, LieExpr, MElement, MetabelianError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndoError {
    #[error(transparent)]
    Metabelian(#[from] MetabelianError),
    #[error(transparent)]
    Algebra(#[from] AlgError),
    #[error("an elementary perturbation of x{0} may not mention x{0}")]
    MentionsTarget(usize),
    #[error("expression is not in the derived subalgebra: {0}")]
    NotDerived(String),
    #[error("an inner automorphism needs a nonzero derived element")]
    ZeroInner,
    #[error("linear map is singular")]
    Singular,
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image {index} is not an element of M_n")]
    ImageNotInSubalgebra { index: usize },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("invalid endomorphism document: {0}")]
    Format(String),
}

/// An invertible linear map `x_i -> sum_j A_ij x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAuto {
    matrix: RatMatrix,
    inverse: RatMatrix,
}

impl LinearAuto {
    pub fn new(matrix: RatMatrix) -> Result<Self, EndoError> {
        let inverse = matrix.inverse().ok_or(EndoError::Singular)?;
        Ok(LinearAuto { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        LinearAuto {
            matrix: RatMatrix::identity(n),
            inverse: RatMatrix::identity(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &RatMatrix {
        &self.inverse
    }

    pub fn inverse(&self) -> LinearAuto {
        LinearAuto {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// The substitution `y_i -> sum_j A_ij y_j` it induces on `K[y]`.
    pub fn induced(&self) -> Vec<Polynomial> {
        (0..self.rank())
            .map(|i| Polynomial::linear_form(self.matrix.row(i)))
            .collect()
    }
}

/// Filtration index of an `IAut_i` chain: the largest `i` such that every
/// image agrees with its generator modulo Lie degree `> i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiltrationLevel {
    Finite(u32),
    /// The identity endomorphism.
    Infinite,
}

impl fmt::Display for FiltrationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationLevel::Finite(i) => write!(f, "{i}"),
            FiltrationLevel::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for FiltrationLevel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FiltrationLevel::Finite(i) => s.serialize_u32(*i),
            FiltrationLevel::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// `alpha phi_f alpha^{-1}` together with the rank-one factors of its
/// Jacobian `E + Phi Psi`.
#[derive(Clone, Debug)]
pub struct ConjugateElementary {
    pub endo: Endo,
    /// `A^{-1} e_1`.
    pub phi: PolyCol,
    /// `alpha_bar(d(f)) A`.
    pub psi: PolyRow,
}

/// An endomorphism `x_i -> f_i` of `M_n`.
///
/// Endomorphisms built by the constructors here remember the bracket
/// expressions of their images; composites and hand-entered normal forms
/// recover expressions with [`lift`] when needed.
#[derive(Clone, Debug)]
pub struct Endo {
    images: Vec<MElement>,
    exprs: Option<Vec<LieExpr>>,
}

impl PartialEq for Endo {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Endo {}

impl Endo {
    pub fn identity(rank: usize) -> Self {
        Endo {
            images: (1..=rank)
                .map(|i| MElement::generator(rank, i).unwrap())
                .collect(),
            exprs: Some((1..=rank).map(LieExpr::Gen).collect()),
        }
    }

    /// From normal forms; each image must lie in `M_n`.
    pub fn from_images(images: Vec<MElement>) -> Result<Self, EndoError> {
        let rank = images.len();
        for (k, f) in images.iter().enumerate() {
            if f.rank() != rank {
                return Err(MetabelianError::RankMismatch {
                    left: rank,
                    right: f.rank(),
                }
                .into());
            }
            if !f.lies_in_subalgebra() {
                return Err(EndoError::ImageNotInSubalgebra { index: k + 1 });
            }
        }
        Ok(Endo {
            images,
            exprs: None,
        })
    }

    pub fn from_exprs(rank: usize, exprs: Vec<LieExpr>) -> Result<Self, EndoError> {
        if exprs.len() != rank {
            return Err(EndoError::ImageCount {
                expected: rank,
                got: exprs.len(),
            });
        }
        let images = exprs
            .iter()
            .map(|e| eval(e, rank))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Endo {
            images,
            exprs: Some(exprs),
        })
    }

    /// `phi_f = (x_1 + f, x_2, ..., x_n)`.
    pub fn elementary(rank: usize, f: &LieExpr) -> Result<Self, EndoError> {
        Self::elementary_at(rank, 1, f)
    }

    /// `x_pos -> x_pos + f` with `f` derived and free of `x_pos`.
    pub fn elementary_at(rank: usize, pos: usize, f: &LieExpr) -> Result<Self, EndoError> {
        if pos == 0 || pos > rank {
            return Err(MetabelianError::IndexOutOfRange { index: pos, rank }.into());
        }
        if f.mentions(pos) {
            return Err(EndoError::MentionsTarget(pos));
        }
        let val = eval(f, rank)?;
        if !val.is_derived() {
            return Err(EndoError::NotDerived(f.to_string()));
        }
        let mut endo = Self::identity(rank);
        endo.images[pos - 1] = &endo.images[pos - 1] + &val;
        if let Some(ex) = endo.exprs.as_mut() {
            ex[pos - 1] = LieExpr::Sum(vec![LieExpr::Gen(pos), f.clone()]);
        }
        Ok(endo)
    }

    /// `exp(ad z) = id + ad z`, i.e. `x_i -> x_i + [z, x_i]`.
    pub fn inner(z: &MElement) -> Result<Self, EndoError> {
        let zexpr = lift(z)?;
        Self::inner_with_expr(z, zexpr)
    }

    pub fn inner_from_expr(rank: usize, z: &LieExpr) -> Result<Self, EndoError> {
        let val = eval(z, rank)?;
        Self::inner_with_expr(&val, z.clone())
    }

    fn inner_with_expr(z: &MElement, zexpr: LieExpr) -> Result<Self, EndoError> {
        if !z.is_derived() {
            return Err(EndoError::NotDerived(zexpr.to_string()));
        }
        if z.is_zero() {
            return Err(EndoError::ZeroInner);
        }
        let rank = z.rank();
        let mut images = Vec::with_capacity(rank);
        let mut exprs = Vec::with_capacity(rank);
        for i in 1..=rank {
            let x = MElement::generator(rank, i)?;
            images.push(&x + &z.bracket(&x)?);
            exprs.push(LieExpr::Sum(vec![
                LieExpr::Gen(i),
                LieExpr::bracket(zexpr.clone(), LieExpr::Gen(i)),
            ]));
        }
        Ok(Endo {
            images,
            exprs: Some(exprs),
        })
    }

    pub fn linear(alpha: &LinearAuto) -> Self {
        let a = alpha.matrix();
        let n = alpha.rank();
        let mut images = Vec::with_capacity(n);
        let mut exprs = Vec::with_capacity(n);
        for i in 0..n {
            let row = a.row(i).to_vec();
            let tpart = row
                .iter()
                .map(|c| Polynomial::constant(n, c.clone()))
                .collect();
            images.push(MElement::from_parts(row.clone(), tpart).expect("square matrix"));
            exprs.push(LieExpr::sum(
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| LieExpr::times(c.clone(), LieExpr::Gen(j + 1)))
                    .collect(),
            ));
        }
        Endo {
            images,
            exprs: Some(exprs),
        }
    }

    pub fn linear_from_matrix(matrix: RatMatrix) -> Result<Self, EndoError> {
        Ok(Self::linear(&LinearAuto::new(matrix)?))
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[MElement] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &MElement {
        &self.images[i - 1]
    }

    pub fn has_cached_exprs(&self) -> bool {
        self.exprs.is_some()
    }

    /// Bracket expressions of the images: the cached ones when available,
    /// lifted normal forms otherwise.
    pub fn image_exprs(&self) -> Result<Vec<LieExpr>, EndoError> {
        match &self.exprs {
            Some(ex) => Ok(ex.clone()),
            None => self
                .images
                .iter()
                .map(|f| lift(f).map_err(EndoError::from))
                .collect(),
        }
    }

    /// Canonical expressions of the images, always derived from normal forms.
    pub fn canonical_exprs(&self) -> Result<Vec<LieExpr>, EndoError> {
        self.images
            .iter()
            .map(|f| lift(f).map_err(EndoError::from))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// `e(f_1, ..., f_n)`.
    pub fn apply(&self, e: &LieExpr) -> Result<MElement, EndoError> {
        Ok(eval_with(e, &self.images)?)
    }

    /// `self o other`: the endomorphism `x_i -> g_i(f_1, ..., f_n)`.
    pub fn compose(&self, other: &Endo) -> Result<Endo, EndoError> {
        if self.rank() != other.rank() {
            return Err(MetabelianError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            }
            .into());
        }
        let images = other
            .image_exprs()?
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Endo {
            images,
            exprs: None,
        })
    }

    /// `J = [d f_i / d x_j]`: row `i` is the Fox row of the `i`-th image.
    pub fn jacobian(&self) -> PolyMatrix {
        let n = self.rank();
        PolyMatrix::from_rows(n, self.images.iter().map(|f| f.tpart().to_vec()).collect())
            .expect("images share the rank")
    }

    /// Images `y_i -> (linear part of f_i)` of the induced endomorphism of
    /// `K[y_1, ..., y_n]`.
    pub fn induced_poly_endo(&self) -> Vec<Polynomial> {
        self.images.iter().map(MElement::linear_poly).collect()
    }

    /// Matrix of the map induced on `M_n / [M_n, M_n]`.
    pub fn linear_part(&self) -> RatMatrix {
        RatMatrix::from_rows(self.images.iter().map(|f| f.linear().to_vec()).collect())
            .expect("images share the rank")
    }

    /// `J(alpha phi_f alpha^{-1})` data for a linear `alpha` and derived `f`
    /// free of `x_1`.
    pub fn conjugate_elementary(
        alpha: &LinearAuto,
        f: &LieExpr,
    ) -> Result<ConjugateElementary, EndoError> {
        let n = alpha.rank();
        let phi_f = Self::elementary(n, f)?;
        let a = Self::linear(alpha);
        let a_inv = Self::linear(&alpha.inverse());
        let endo = a.compose(&phi_f)?.compose(&a_inv)?;

        let a_inv_poly = PolyMatrix::from_rational(alpha.inverse_matrix(), n);
        let phi = a_inv_poly.mul(&PolyMatrix::unit_col(n, 0, n));
        let a_poly = PolyMatrix::from_rational(alpha.matrix(), n);
        let fox_f = eval(f, n)?.fox();
        let psi = fox_f.substitute(&alpha.induced())?.mul(&a_poly);
        Ok(ConjugateElementary { endo, phi, psi })
    }

    /// Inverse automorphism, constructed through the Jacobian and verified by
    /// composing in both orders.
    ///
    /// With `A` the linear part, `phi' = phi o alpha(A^{-1})` lies in `IAut`;
    /// the rows of `J(phi')^{-1} - E` annihilate `Y` and lift to derived
    /// elements `u_j`, giving the candidate `(x_j + u_j)` for `phi'^{-1}`.
    pub fn inverse(&self) -> Result<Endo, EndoError> {
        let n = self.rank();
        let lin = LinearAuto::new(self.linear_part())
            .map_err(|_| EndoError::NotAutomorphism("singular linear part".into()))?;
        let lam = Self::linear(&lin.inverse());
        let reduced = self.compose(&lam)?;

        let jinv = reduced.jacobian().inverse_over_ring().map_err(|e| match e {
            AlgError::NotInvertible(d) => {
                EndoError::NotAutomorphism(format!("Jacobian determinant {d} is not a unit"))
            }
            other => other.into(),
        })?;
        let eye = PolyMatrix::identity(n, n);
        let mut exprs = Vec::with_capacity(n);
        for j in 0..n {
            let row: Vec<Polynomial> = jinv
                .row(j)
                .iter()
                .zip(eye.row(j))
                .map(|(a, b)| a - b)
                .collect();
            let u = MElement::from_tpart(row)?;
            let uexpr = lift(&u).map_err(|_| {
                EndoError::NotAutomorphism(format!("row {} of J^-1 - E does not annihilate Y", j + 1))
            })?;
            exprs.push(LieExpr::sum(vec![LieExpr::Gen(j + 1), uexpr]));
        }
        let reduced_inv = Self::from_exprs(n, exprs)?;
        let candidate = lam.compose(&reduced_inv)?;

        if !self.compose(&candidate)?.is_identity() || !candidate.compose(self)?.is_identity() {
            return Err(EndoError::NotAutomorphism(
                "candidate inverse failed verification".into(),
            ));
        }
        Ok(candidate)
    }

    pub fn iaut_level(&self) -> FiltrationLevel {
        let n = self.rank();
        (1..=n)
            .filter_map(|i| {
                let x = MElement::generator(n, i).unwrap();
                (&self.images[i - 1] - &x).min_degree()
            })
            .min()
            .map_or(FiltrationLevel::Infinite, |d| FiltrationLevel::Finite(d - 1))
    }

    /// Determinant of the Jacobian.
    pub fn jacobian_det(&self) -> Polynomial {
        self.jacobian().det().expect("square")
    }

    pub fn render(&self) -> Result<String, EndoError> {
        let ex = self.canonical_exprs()?;
        Ok(ex
            .iter()
            .enumerate()
            .map(|(i, e)| format!("x{} -> {}", i + 1, e))
            .collect::<Vec<_>>()
            .join("\n"))
    }
}

/// `Y * row`: the square matrix whose `i`-th row is `y_i * row`.
pub fn y_times_row(row: &PolyRow) -> PolyMatrix {
    let n = row.cols();
    PolyMatrix::y_column(n).mul(row)
}
