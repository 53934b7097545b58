//! JSON documents for endomorphisms and Jacobians.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Endo, EndoError};
use crate::exactalg::PolyMatrix;
use crate::metabelian::LieExpr;

/// `{"rank": n, "images": ["x1 + [x2,x3]", "x2", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoFile {
    pub rank: usize,
    pub images: Vec<String>,
}

impl EndoFile {
    pub fn from_endo(phi: &Endo) -> Result<Self, EndoError> {
        Ok(EndoFile {
            rank: phi.rank(),
            images: phi
                .canonical_exprs()?
                .iter()
                .map(ToString::to_string)
                .collect(),
        })
    }

    /// Semicolon-separated images, e.g. `"x1 + [x2,x3]; x2; x3"`.
    pub fn from_inline(rank: usize, s: &str) -> Self {
        EndoFile {
            rank,
            images: s.split(';').map(|p| p.trim().to_string()).collect(),
        }
    }

    pub fn parse_json(s: &str) -> Result<Self, EndoError> {
        serde_json::from_str(s).map_err(|e| EndoError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn read(path: &Path) -> Result<Self, EndoError> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| EndoError::Format(format!("{}: {e}", path.display())))?;
        Self::parse_json(&s)
    }

    pub fn write(&self, path: &Path) -> Result<(), EndoError> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| EndoError::Format(format!("{}: {e}", path.display())))
    }

    pub fn to_endo(&self) -> Result<Endo, EndoError> {
        if self.rank < 1 {
            return Err(EndoError::Format("rank must be positive".into()));
        }
        let exprs = self
            .images
            .iter()
            .map(|s| LieExpr::parse_x(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(crate::metabelian::MetabelianError::from)?;
        Endo::from_exprs(self.rank, exprs)
    }
}

/// A Jacobian as nested arrays of polynomial strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianView {
    pub rank: usize,
    pub rows: Vec<Vec<String>>,
}

impl JacobianView {
    pub fn new(j: &PolyMatrix) -> Self {
        JacobianView {
            rank: j.rows(),
            rows: j
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}
