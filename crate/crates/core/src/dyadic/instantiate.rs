//! Evaluation of symbolic dyads at concrete columns and rows.

use super::{ColSym, DyadExpr, DyadicError, RowExpr, RowSym, ScalarPoly};
use crate::exactalg::{PolyCol, PolyMatrix, PolyRow, Polynomial};

/// Concrete `Φ_i` (columns), `Ψ_i` (rows) and `∂z` over `K[y_1..y_n]`; `Y`
/// is the column of variables.
#[derive(Clone, Debug)]
pub struct Assignment {
    n: usize,
    phis: Vec<PolyCol>,
    psis: Vec<PolyRow>,
    dz: PolyRow,
    y: PolyCol,
}

impl Assignment {
    /// Checks `Ψ_i Φ_i = 0` and `Ψ_i Y = 0`.
    pub fn new(phis: Vec<PolyCol>, psis: Vec<PolyRow>, dz: PolyRow) -> Result<Self, DyadicError> {
        let n = dz.cols();
        if phis.len() != psis.len() {
            return Err(DyadicError::Inconsistent(format!(
                "{} columns but {} rows",
                phis.len(),
                psis.len()
            )));
        }
        for (k, (phi, psi)) in phis.iter().zip(&psis).enumerate() {
            if phi.rows() != n || phi.cols() != 1 || psi.rows() != 1 || psi.cols() != n {
                return Err(DyadicError::Inconsistent(format!("factor {} has the wrong shape", k + 1)));
            }
        }
        let y = PolyMatrix::y_column(n);
        for (k, (phi, psi)) in phis.iter().zip(&psis).enumerate() {
            let pp = psi.checked_mul(phi)?.scalar().clone();
            if !pp.is_zero() {
                return Err(DyadicError::Inconsistent(format!("Ψ{0}Φ{0} = {pp}", k + 1)));
            }
            let py = psi.checked_mul(&y)?.scalar().clone();
            if !py.is_zero() {
                return Err(DyadicError::Inconsistent(format!("Ψ{}Y = {py}", k + 1)));
            }
        }
        Ok(Assignment {
            n,
            phis,
            psis,
            dz,
            y,
        })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    fn phi(&self, i: usize) -> Result<&PolyCol, DyadicError> {
        i.checked_sub(1)
            .and_then(|k| self.phis.get(k))
            .ok_or_else(|| DyadicError::Missing(format!("Φ{i}")))
    }

    fn psi(&self, i: usize) -> Result<&PolyRow, DyadicError> {
        i.checked_sub(1)
            .and_then(|k| self.psis.get(k))
            .ok_or_else(|| DyadicError::Missing(format!("Ψ{i}")))
    }

    fn col(&self, c: ColSym) -> Result<&PolyCol, DyadicError> {
        match c {
            ColSym::Phi(i) => self.phi(i),
            ColSym::Y => Ok(&self.y),
        }
    }

    fn row(&self, r: RowSym) -> Result<&PolyRow, DyadicError> {
        match r {
            RowSym::Psi(i) => self.psi(i),
            RowSym::Dz => Ok(&self.dz),
        }
    }

    fn scalar(&self, s: &ScalarPoly) -> Result<Polynomial, DyadicError> {
        let mut missing = None;
        let v = s.eval(self.n, |i, j| match (self.psi(i), self.phi(j)) {
            (Ok(psi), Ok(phi)) => psi.mul(phi).scalar().clone(),
            (Err(e), _) | (_, Err(e)) => {
                missing.get_or_insert(e);
                Polynomial::zero(self.n)
            }
        });
        match missing {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }
}

/// The concrete `n x n` matrix, with `λ_ij -> Ψ_i Φ_j`.
pub fn instantiate_dyad(x: &DyadExpr, a: &Assignment) -> Result<PolyMatrix, DyadicError> {
    let n = a.nvars();
    let mut m = PolyMatrix::identity(n, n).scale(&a.scalar(x.scalar())?);
    for (&(c, r), coeff) in x.dyads() {
        let outer = a.col(c)?.checked_mul(a.row(r)?)?;
        m = m.checked_add(&outer.scale(&a.scalar(coeff)?))?;
    }
    Ok(m)
}

pub fn instantiate_row(x: &RowExpr, a: &Assignment) -> Result<PolyRow, DyadicError> {
    let n = a.nvars();
    let mut out = PolyMatrix::zeros(1, n, n);
    for (&r, coeff) in x.terms() {
        out = out.checked_add(&a.row(r)?.scale(&a.scalar(coeff)?))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{expand_product, row_mul};
    use crate::endomorph::{Endo, LinearAuto};
    use crate::exactalg::RatMatrix;
    use crate::metabelian::{eval, LieExpr};

    fn conj(a: &[&[i64]], f: &str) -> (PolyCol, PolyRow) {
        let alpha = LinearAuto::new(RatMatrix::from_i64(a)).unwrap();
        let c = Endo::conjugate_elementary(&alpha, &LieExpr::parse_x(f).unwrap()).unwrap();
        (c.phi, c.psi)
    }

    fn sample() -> Assignment {
        let (p1, q1) = conj(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], "[x2,x3]");
        let (p2, q2) = conj(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], "[[x2,x3],x2]");
        let (p3, q3) = conj(&[&[1, 1, 0], &[0, 1, 0], &[2, 0, 1]], "[x3,x2] + [[x3,x2],x3]");
        let dz = eval(&LieExpr::parse_x("[x1,x2]").unwrap(), 3).unwrap().fox();
        Assignment::new(vec![p1, p2, p3], vec![q1, q2, q3], dz).unwrap()
    }

    #[test]
    fn identity_instantiates_to_identity() {
        let a = sample();
        assert_eq!(
            instantiate_dyad(&DyadExpr::identity(), &a).unwrap(),
            PolyMatrix::identity(3, 3)
        );
    }

    #[test]
    fn product_matches_concrete_matrices() {
        let a = sample();
        for k in 1..=3 {
            let mut concrete = PolyMatrix::identity(3, 3);
            for i in 0..k {
                let f = PolyMatrix::identity(3, 3)
                    .checked_add(&a.phis[i].mul(&a.psis[i]))
                    .unwrap();
                concrete = concrete.mul(&f);
            }
            assert_eq!(instantiate_dyad(&expand_product(k), &a).unwrap(), concrete);
        }
    }

    #[test]
    fn rows_instantiate_consistently() {
        let a = sample();
        let x = &expand_product(3) - &DyadExpr::identity();
        let sym = row_mul(RowSym::Psi(1), &x).unwrap();
        let lhs = instantiate_row(&sym, &a).unwrap();
        let rhs = a.psis[0].mul(&instantiate_dyad(&x, &a).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_inconsistent_data() {
        let e1 = PolyMatrix::unit_col(3, 0, 3);
        let bad_psi = PolyMatrix::unit_col(3, 0, 3).transpose();
        let dz = PolyMatrix::zeros(1, 3, 3);
        assert!(matches!(
            Assignment::new(vec![e1.clone()], vec![bad_psi], dz.clone()),
            Err(DyadicError::Inconsistent(_))
        ));
        // Ψ Φ = 0 but Ψ Y = y2
        let psi = PolyMatrix::unit_col(3, 1, 3).transpose();
        assert!(matches!(
            Assignment::new(vec![e1], vec![psi], dz),
            Err(DyadicError::Inconsistent(_))
        ));
    }

    #[test]
    fn missing_symbols_are_reported() {
        let a = sample();
        assert!(matches!(
            instantiate_dyad(&expand_product(4), &a),
            Err(DyadicError::Missing(_))
        ));
    }
}
