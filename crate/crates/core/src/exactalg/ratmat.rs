use num_traits::{One, Zero};

use super::{AlgError, Rat};

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| super::rat(v)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    /// Permutation matrix exchanging coordinates `i` and `j` (zero-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.data[i * n + i] = Rat::zero();
        m.data[j * n + j] = Rat::zero();
        m.data[i * n + j] = Rat::one();
        m.data[j * n + i] = Rat::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, AlgError> {
        if self.cols != other.rows {
            return Err(AlgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>, AlgError> {
        if x.len() != self.cols {
            return Err(AlgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Gauss-Jordan inverse; `None` when singular or not square.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let (s, t) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= s;
                    inv[r][j] -= t;
                }
            }
        }
        RatMatrix::from_rows(inv).ok()
    }

    pub fn det(&self) -> Option<Rat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Some(Rat::zero());
            };
            if piv != col {
                a.swap(col, piv);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                for j in col..n {
                    let s = &a[col][j] * &f;
                    a[r][j] -= s;
                }
            }
        }
        Some(det)
    }
}

/// Result of [`solve_linear`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    /// One particular solution (free variables set to zero) and a basis of
    /// the null space of the coefficient matrix.
    Solved {
        particular: Vec<Rat>,
        null_basis: Vec<Vec<Rat>>,
    },
    Inconsistent,
}

impl SolveOutcome {
    pub fn is_solvable(&self) -> bool {
        matches!(self, SolveOutcome::Solved { .. })
    }
}

/// Solves `A x = b` exactly by reduction to reduced row echelon form.
pub fn solve_linear(a: &RatMatrix, b: &[Rat]) -> Result<SolveOutcome, AlgError> {
    if b.len() != a.rows {
        return Err(AlgError::DimensionMismatch(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            a.rows
        )));
    }
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let p = m[r][c].clone();
        for v in m[r].iter_mut().skip(c) {
            *v /= &p;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=cols {
                let s = &m[r][j] * &f;
                m[i][j] -= s;
            }
        }
        pivots.push(c);
        r += 1;
    }

    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(SolveOutcome::Inconsistent);
    }

    let mut particular = vec![Rat::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][cols].clone();
    }

    let mut null_basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -m[i][free].clone();
        }
        null_basis.push(v);
    }
    Ok(SolveOutcome::Solved {
        particular,
        null_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn identity_system() {
        let a = RatMatrix::identity(3);
        let out = solve_linear(&a, &ints(&[1, 0, 0])).unwrap();
        assert_eq!(
            out,
            SolveOutcome::Solved {
                particular: ints(&[1, 0, 0]),
                null_basis: vec![]
            }
        );
    }

    #[test]
    fn zero_matrix_nonzero_rhs_is_inconsistent() {
        let a = RatMatrix::zeros(2, 2);
        assert_eq!(
            solve_linear(&a, &ints(&[0, 1])).unwrap(),
            SolveOutcome::Inconsistent
        );
    }

    #[test]
    fn underdetermined_row() {
        let a = RatMatrix::from_i64(&[&[1, 1]]);
        let SolveOutcome::Solved {
            particular,
            null_basis,
        } = solve_linear(&a, &ints(&[2])).unwrap()
        else {
            panic!("expected a solution");
        };
        assert_eq!(particular, ints(&[2, 0]));
        assert_eq!(null_basis.len(), 1);
        // the basis vector is a multiple of (1, -1)
        let v = &null_basis[0];
        assert_eq!(&v[0] + &v[1], rat(0));
        assert_ne!(v[0], rat(0));
    }

    #[test]
    fn dimension_mismatch() {
        let a = RatMatrix::identity(2);
        assert!(matches!(
            solve_linear(&a, &ints(&[1])),
            Err(AlgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn inverse_and_det() {
        let a = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.det(), Some(rat(1)));
        let inv = a.inverse().unwrap();
        assert!(inv.mul(&a).unwrap().is_identity());
        let s = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.det(), Some(rat(0)));
    }
}
