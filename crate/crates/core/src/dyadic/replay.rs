//! The elimination that starts from `prod (E + Φ_i Ψ_i) = E - Y ∂z`
//! and the residual term it leaves behind.

use serde::Serialize;

use super::{
    expand_product, join_terms, product_relation, row_mul, DyadExpr, DyadicError, RowExpr, RowSym,
    ScalarPoly,
};

/// One line of a derivation: `terms = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub label: String,
    pub terms: Vec<String>,
    pub rhs: String,
}

impl TraceStep {
    fn new(label: impl Into<String>, terms: Vec<String>, rhs: &str) -> Self {
        TraceStep {
            label: label.into(),
            terms,
            rhs: rhs.into(),
        }
    }

    pub fn equation(&self) -> String {
        format!("{} = {}", join_terms(self.terms.clone()), self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub factors: usize,
    pub steps: Vec<TraceStep>,
    /// Expanded form of the combined relation.
    pub reduced: String,
    pub residual_symbol: String,
    pub residual_coefficient: String,
    /// The coefficient is exactly the indeterminate `λ21`.
    pub residual_is_lambda21: bool,
}

impl ResidualReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("factors: {}\n", self.factors);
        for s in &self.steps {
            out.push_str(&format!("{}:\n  {}\n", s.label, s.equation()));
        }
        out.push_str(&format!(
            "residual: coefficient of {} is {} ({})\n",
            self.residual_symbol,
            self.residual_coefficient,
            if self.residual_is_lambda21 {
                "nonzero indeterminate"
            } else {
                "unexpected"
            }
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn check_factors(k: usize) -> Result<(), DyadicError> {
    if k < 2 {
        return Err(DyadicError::TooFewFactors(k));
    }
    Ok(())
}

/// `Ψ_2 R - λ21 Ψ_1 R` where `R = prod (E + Φ_i Ψ_i) - E + Y ∂z`.
pub fn derive_reduced_relation(k: usize) -> Result<RowExpr, DyadicError> {
    check_factors(k)?;
    let rel = product_relation(k);
    let r1 = row_mul(RowSym::Psi(1), &rel)?;
    let r2 = row_mul(RowSym::Psi(2), &rel)?;
    Ok(&r2 - &r1.scale(&ScalarPoly::lambda(2, 1)))
}

/// Replays the elimination for `k` factors and reports the `Ψ_1` term that
/// survives it.
pub fn residual_check(k: usize) -> Result<ResidualReport, DyadicError> {
    check_factors(k)?;
    let product: String = (1..=k).map(|i| format!("(E + Φ{i}Ψ{i})")).collect();
    let expanded = expand_product(k);
    let rel = product_relation(k);
    let without_e = &expanded - &DyadExpr::identity();
    let r1 = row_mul(RowSym::Psi(1), &rel)?;
    let r2 = row_mul(RowSym::Psi(2), &rel)?;
    let reduced = derive_reduced_relation(k)?;

    let steps = vec![
        TraceStep::new("product", vec![product], "E - Y∂z"),
        TraceStep::new("expanded product", expanded.term_strings(), "E - Y∂z"),
        TraceStep::new("relation", without_e.term_strings(), "-Y∂z"),
        TraceStep::new("left multiplication by Ψ1", r1.term_strings(), "0"),
        TraceStep::new("left multiplication by Ψ2", r2.term_strings(), "0"),
        TraceStep::new("Ψ2 row - λ21 * Ψ1 row", reduced.term_strings(), "0"),
    ];
    let coeff = reduced.coefficient(RowSym::Psi(1));
    let report = ResidualReport {
        factors: k,
        steps,
        reduced: reduced.to_string(),
        residual_symbol: RowSym::Psi(1).to_string(),
        residual_coefficient: coeff.to_string(),
        residual_is_lambda21: coeff == ScalarPoly::lambda(2, 1),
    };
    assert!(
        report.residual_is_lambda21,
        "the Ψ1 coefficient must be the free indeterminate λ21, got {coeff}"
    );
    Ok(report)
}
