use std::fmt;

use num_traits::{One, Zero};

use super::{AlgError, Polynomial, Rat};

/// Dense rectangular matrix over `K[y1,...,yn]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<Polynomial>,
}

/// A `1 x n` [`PolyMatrix`].
pub type PolyRow = PolyMatrix;
/// An `n x 1` [`PolyMatrix`].
pub type PolyCol = PolyMatrix;

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            data: vec![Polynomial::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.data[i * n + i] = Polynomial::one(nvars);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length and all
    /// entries the same number of variables.
    pub fn from_rows(nvars: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(AlgError::DimensionMismatch("ragged rows".into()));
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(AlgError::RankMismatch {
                        left: nvars,
                        right: p.nvars(),
                    });
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            nvars,
            data,
        })
    }

    pub fn row_vector(nvars: usize, entries: Vec<Polynomial>) -> Result<PolyRow, AlgError> {
        Self::from_rows(nvars, vec![entries])
    }

    pub fn col_vector(nvars: usize, entries: Vec<Polynomial>) -> Result<PolyCol, AlgError> {
        Self::from_rows(nvars, entries.into_iter().map(|p| vec![p]).collect())
    }

    /// Column `e_{i+1}` of length `n`.
    pub fn unit_col(n: usize, i: usize, nvars: usize) -> PolyCol {
        let mut m = Self::zeros(n, 1, nvars);
        m.data[i] = Polynomial::one(nvars);
        m
    }

    /// The column `Y = (y1, ..., yn)^t`.
    pub fn y_column(n: usize) -> PolyCol {
        let data = (0..n).map(|i| Polynomial::var(n, i)).collect();
        PolyMatrix {
            rows: n,
            cols: 1,
            nvars: n,
            data,
        }
    }

    /// Constant matrix from rational entries.
    pub fn from_rational(m: &super::RatMatrix, nvars: usize) -> Self {
        PolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            nvars,
            data: m
                .entries()
                .iter()
                .map(|c| Polynomial::constant(nvars, c.clone()))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        assert_eq!(p.nvars(), self.nvars, "entry rank mismatch");
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn row_matrix(&self, i: usize) -> PolyRow {
        PolyMatrix {
            rows: 1,
            cols: self.cols,
            nvars: self.nvars,
            data: self.row(i).to_vec(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let p = self.get(i, j);
                    if i == j {
                        p.is_one()
                    } else {
                        p.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn map(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Applies a substitution `y_i -> images[i]` to every entry.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<PolyMatrix, AlgError> {
        let data = self
            .data
            .iter()
            .map(|p| p.substitute(images))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: images.first().map_or(self.nvars, Polynomial::nvars),
            data,
        })
    }

    pub fn scale(&self, c: &Polynomial) -> PolyMatrix {
        self.map(|p| p * c)
    }

    fn check_same_shape(&self, other: &PolyMatrix) -> Result<(), AlgError> {
        if self.nvars != other.nvars {
            return Err(AlgError::RankMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(self.with_data(data))
    }

    pub fn checked_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<Polynomial>) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data,
        }
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, AlgError> {
        if self.nvars != other.nvars {
            return Err(AlgError::RankMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.cols != other.rows {
            return Err(AlgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.checked_mul(other).expect("matrix shape mismatch")
    }

    /// The single entry of a `1 x 1` matrix.
    pub fn scalar(&self) -> &Polynomial {
        assert!(self.rows == 1 && self.cols == 1, "not a 1x1 matrix");
        &self.data[0]
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != skip_row) {
            for j in (0..n).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: n - 1,
            cols: n - 1,
            nvars: self.nvars,
            data,
        }
    }

    /// Determinant: cofactor expansion up to `4 x 4`, Bareiss fraction-free
    /// elimination beyond.
    pub fn det(&self) -> Result<Polynomial, AlgError> {
        if !self.is_square() {
            return Err(AlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows <= 4 {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_bareiss())
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Polynomial {
        assert!(self.is_square());
        match self.rows {
            0 => Polynomial::one(self.nvars),
            1 => self.data[0].clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            n => {
                let mut acc = Polynomial::zero(self.nvars);
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).det_cofactor();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Bareiss elimination; every division is exact in `K[y]`.
    pub fn det_bareiss(&self) -> Polynomial {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Polynomial::one(self.nvars);
        }
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = Polynomial::one(self.nvars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Polynomial::zero(self.nvars),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact over an integral domain");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    pub fn adjugate(&self) -> Result<PolyMatrix, AlgError> {
        if !self.is_square() {
            return Err(AlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut adj = Self::zeros(n, n, self.nvars);
        if n == 1 {
            adj.data[0] = Polynomial::one(self.nvars);
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det()?;
                // adj[j][i] = (-1)^(i+j) * M_ij
                adj.data[j * n + i] = if (i + j) % 2 == 0 { c } else { -&c };
            }
        }
        Ok(adj)
    }

    /// Inverse over `K[y]`: exists exactly when the determinant is a nonzero
    /// constant, and then equals `adj(A) / det(A)`.
    pub fn inverse_over_ring(&self) -> Result<PolyMatrix, AlgError> {
        let d = self.det()?;
        let c = match d.constant_value() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(AlgError::NotInvertible(d.to_string())),
        };
        let inv_c = Rat::one() / c;
        Ok(self.adjugate()?.map(|p| p.scale(&inv_c)))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    fn mat(n: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            n,
            rows.iter()
                .map(|r| r.iter().map(|s| p(s, n)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = mat(2, &[&["y1", "y2 + 1"], &["0", "y1*y2"]]);
        let e = PolyMatrix::identity(2, 2);
        assert_eq!(e.mul(&a), a);
        assert_eq!(a.mul(&e), a);
    }

    #[test]
    fn one_by_one_product() {
        let a = mat(2, &[&["y1 + 1"]]);
        let b = mat(2, &[&["y2"]]);
        assert_eq!(a.mul(&b), mat(2, &[&["y1*y2 + y2"]]));
    }

    #[test]
    fn nilpotent_rank_one_square_vanishes() {
        // e1 * d with d e1 = 0
        let n = 3;
        let d = mat(n, &[&["0", "-y3", "y2"]]);
        let e1 = PolyMatrix::unit_col(n, 0, n);
        let u = e1.mul(&d);
        assert!(u.mul(&u).is_zero());
    }

    #[test]
    fn shape_errors() {
        let a = PolyMatrix::zeros(2, 3, 1);
        assert!(matches!(a.checked_mul(&a), Err(AlgError::DimensionMismatch(_))));
        assert!(matches!(a.det(), Err(AlgError::NotSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn determinant_examples() {
        assert!(PolyMatrix::identity(3, 3).det().unwrap().is_one());
        let d = mat(2, &[&["y1", "0"], &["0", "y2"]]);
        assert_eq!(d.det().unwrap(), p("y1*y2", 2));
    }

    #[test]
    fn rank_one_update_with_orthogonal_factors_has_unit_determinant() {
        // Phi = (1, y1, 0)^t, Psi = (y1*y2, -y2, y3) gives Psi Phi = 0.
        let n = 3;
        let phi = mat(n, &[&["1"], &["y1"], &["0"]]);
        let psi = mat(n, &[&["y1*y2", "-y2", "y3"]]);
        assert!(psi.mul(&phi).scalar().is_zero());
        let m = PolyMatrix::identity(n, n).checked_add(&phi.mul(&psi)).unwrap();
        assert!(m.det_cofactor().is_one());
        assert!(m.det_bareiss().is_one());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a = mat(
            3,
            &[
                &["y1", "y2 + 1", "3"],
                &["0", "y1 - y3", "y2^2"],
                &["2*y3", "1", "y1*y2"],
            ],
        );
        assert_eq!(a.det_bareiss(), a.det_cofactor());
        let b = mat(2, &[&["0", "y1"], &["y2", "1"]]);
        assert_eq!(b.det_bareiss(), b.det_cofactor());
    }

    #[test]
    fn inverse_examples() {
        let e = PolyMatrix::identity(3, 3);
        assert_eq!(e.inverse_over_ring().unwrap(), e);
        let d = mat(3, &[&["y1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert!(matches!(d.inverse_over_ring(), Err(AlgError::NotInvertible(_))));
        let c = mat(2, &[&["2", "y1"], &["0", "1"]]);
        let inv = c.inverse_over_ring().unwrap();
        assert!(inv.mul(&c).is_identity());
        assert_eq!(inv.get(0, 0).constant_value(), Some(crate::exactalg::ratio(1, 2)));
    }
}
