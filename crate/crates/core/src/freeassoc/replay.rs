//! The Fox-derivative computation for `psi = (x_1 + [[x_1,[x_2,x_3]],x_4], x_2, ..., x_n)`
//! lifted to the free Lie algebra, and the search for degree-4 corrections.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{
    cyclic_signature, fox_assoc, in_commutator_subspace, lie_to_assoc, FreeAssocError,
    FreeLieExpr, NCPoly, NCWord,
};
use crate::exactalg::{solve_linear, Rat, RatMatrix, SolveOutcome};
use crate::text::fmt_rat;

/// The perturbation of `x_1` (over the letter `z`).
pub const OE_PERTURBATION: &str = "[[z1,[z2,z3]],z4]";

/// `[[z_i,z_j],[z_k,z_l]]` for `i > j`, `k > l` and `(i,j) > (k,l)`
/// lexicographically, dropping those that expand to zero.
pub fn derived_degree4_basis(n: usize) -> Vec<FreeLieExpr> {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in 1..i {
            pairs.push((i, j));
        }
    }
    let br = |(i, j): (usize, usize)| FreeLieExpr::bracket(FreeLieExpr::Gen(i), FreeLieExpr::Gen(j));
    let mut out = Vec::new();
    for (a, &p) in pairs.iter().enumerate() {
        for &q in &pairs[..a] {
            let e = FreeLieExpr::bracket(br(p), br(q));
            if !lie_to_assoc(&e, n).expect("indices in range").is_zero() {
                out.push(e);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureEntry {
    /// Least rotation representing the class.
    pub class: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSearch {
    pub candidates: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub matrix_rank: usize,
    pub solvable: bool,
    pub null_space_dim: usize,
    /// `v_1, ..., v_n` when solvable.
    pub witness: Option<Vec<String>>,
    /// `S + sum_i d(v_i)/dz_i` recomputed from the witness lies in `[U, U]`.
    pub witness_verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OeReport {
    pub rank: usize,
    pub perturbation: String,
    /// `S = d/dz_1` of the perturbation.
    pub s: String,
    pub signature: Vec<SignatureEntry>,
    pub s_in_commutator_subspace: bool,
    pub witness_search: Option<WitnessSearch>,
    pub notes: Vec<String>,
}

fn signature_table(p: &NCPoly) -> Vec<SignatureEntry> {
    cyclic_signature(p)
        .into_iter()
        .map(|(w, c)| SignatureEntry {
            class: w.to_string(),
            coefficient: fmt_rat(&c),
        })
        .collect()
}

/// Solves for `v_i` in the span of [`derived_degree4_basis`] with
/// `S + sum_i d(v_i)/dz_i` in `[U, U]`, one equation per rotation class of
/// degree-3 words.
fn witness_search(n: usize, s: &NCPoly) -> Result<WitnessSearch, FreeAssocError> {
    let basis = derived_degree4_basis(n);
    let expanded = basis
        .iter()
        .map(|b| lie_to_assoc(b, n))
        .collect::<Result<Vec<_>, _>>()?;
    // unknown (i, b) ~ coefficient of basis[b] in v_i
    let mut columns: Vec<BTreeMap<NCWord, Rat>> = Vec::new();
    for i in 1..=n {
        for e in &expanded {
            columns.push(cyclic_signature(&fox_assoc(e, i)?));
        }
    }
    let target = cyclic_signature(s);
    let mut classes: Vec<NCWord> = target.keys().cloned().collect();
    for c in &columns {
        classes.extend(c.keys().cloned());
    }
    classes.sort();
    classes.dedup();

    let rows: Vec<Vec<Rat>> = classes
        .iter()
        .map(|cl| {
            columns
                .iter()
                .map(|c| c.get(cl).cloned().unwrap_or_else(Rat::zero))
                .collect()
        })
        .collect();
    let rhs: Vec<Rat> = classes
        .iter()
        .map(|cl| -target.get(cl).cloned().unwrap_or_else(Rat::zero))
        .collect();
    let unknowns = columns.len();
    let a = if rows.is_empty() {
        RatMatrix::zeros(0, unknowns)
    } else {
        RatMatrix::from_rows(rows).expect("rectangular")
    };

    let mut out = WitnessSearch {
        candidates: basis.len(),
        unknowns,
        equations: classes.len(),
        matrix_rank: 0,
        solvable: false,
        null_space_dim: 0,
        witness: None,
        witness_verified: None,
    };
    let outcome = solve_linear(&a, &rhs).expect("consistent shapes");
    // rank = unknowns - nullity, valid for the homogeneous system as well
    let homogeneous = solve_linear(&a, &vec![Rat::zero(); classes.len()]).expect("shapes");
    if let SolveOutcome::Solved { null_basis, .. } = &homogeneous {
        out.null_space_dim = null_basis.len();
        out.matrix_rank = unknowns - null_basis.len();
    }
    if let SolveOutcome::Solved { particular, .. } = outcome {
        out.solvable = true;
        let nb = basis.len();
        let vs: Vec<FreeLieExpr> = (0..n)
            .map(|i| {
                FreeLieExpr::sum(
                    (0..nb)
                        .filter(|&b| !particular[i * nb + b].is_zero())
                        .map(|b| FreeLieExpr::times(particular[i * nb + b].clone(), basis[b].clone()))
                        .collect(),
                )
            })
            .collect();
        let mut total = s.clone();
        for (i, v) in vs.iter().enumerate() {
            total = &total + &fox_assoc(&lie_to_assoc(v, n)?, i + 1)?;
        }
        out.witness_verified = Some(in_commutator_subspace(&total));
        out.witness = Some(vs.iter().map(|v| v.render('z')).collect());
    }
    Ok(out)
}

/// Computes `S`, its rotation-class sums, and optionally the witness search,
/// for rank `n >= 4`.
pub fn oe_replay(n: usize, search: bool) -> Result<OeReport, FreeAssocError> {
    if n < 4 {
        return Err(FreeAssocError::RankTooSmall(n));
    }
    let pert = FreeLieExpr::parse(OE_PERTURBATION, 'z')?;
    let s = fox_assoc(&lie_to_assoc(&pert, n)?, 1)?;
    let witness_search = if search { Some(witness_search(n, &s)?) } else { None };
    let mut notes = vec![
        "S is homogeneous of degree 3; a correction of Lie degree >= 5 has Fox derivatives \
         of degree >= 4, so only degree-4 elements of L''_n enter the degree-3 equation."
            .to_string(),
        "Membership in [U,U] is decided by rotation-class coefficient sums.".to_string(),
    ];
    if search {
        notes.push(
            "What the solver verdict implies for the automorphism depends on an external \
             theorem about Fox derivatives and [U,U]; the replay reports the computation only."
                .to_string(),
        );
    }
    Ok(OeReport {
        rank: n,
        perturbation: OE_PERTURBATION.to_string(),
        s: s.to_string(),
        signature: signature_table(&s),
        s_in_commutator_subspace: in_commutator_subspace(&s),
        witness_search,
        notes,
    })
}

impl OeReport {
    pub fn render_text(&self) -> String {
        let mut out = format!("rank: {}\n", self.rank);
        out.push_str(&format!("perturbation of z1: {}\n", self.perturbation));
        out.push_str(&format!("S = d/dz1: {}\n", self.s));
        out.push_str("rotation-class sums of S:\n");
        for e in &self.signature {
            out.push_str(&format!("  [{}]: {}\n", e.class, e.coefficient));
        }
        out.push_str(&format!(
            "S in [U,U]: {}\n",
            self.s_in_commutator_subspace
        ));
        if let Some(w) = &self.witness_search {
            out.push_str(&format!(
                "witness search: {} candidates, {} unknowns, {} equations, rank {}\n",
                w.candidates, w.unknowns, w.equations, w.matrix_rank
            ));
            out.push_str(&format!(
                "verdict: {}\nnull space dimension: {}\n",
                if w.solvable { "solvable" } else { "unsolvable" },
                w.null_space_dim
            ));
            if let Some(vs) = &w.witness {
                for (i, v) in vs.iter().enumerate() {
                    out.push_str(&format!("  v{} = {}\n", i + 1, v));
                }
            }
            if let Some(ok) = w.witness_verified {
                out.push_str(&format!("witness verified: {ok}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert!(derived_degree4_basis(2).is_empty());
        assert_eq!(derived_degree4_basis(3).len(), 3);
        assert_eq!(derived_degree4_basis(4).len(), 15);
        assert_eq!(
            derived_degree4_basis(3)[0].render('z'),
            "[[z3,z1],[z2,z1]]"
        );
    }

    #[test]
    fn replay_without_search() {
        let r = oe_replay(4, false).unwrap();
        assert_eq!(r.s, "z4z2z3 - z4z3z2");
        assert!(!r.s_in_commutator_subspace);
        assert_eq!(r.signature.len(), 2);
        assert_eq!(r.signature[0].class, "z2z3z4");
        assert_eq!(r.signature[0].coefficient, "1");
        assert_eq!(r.signature[1].class, "z2z4z3");
        assert_eq!(r.signature[1].coefficient, "-1");
        assert!(r.witness_search.is_none());
        assert!(matches!(oe_replay(3, false), Err(FreeAssocError::RankTooSmall(3))));
    }

    #[test]
    fn witness_search_rank_four() {
        let r = oe_replay(4, true).unwrap();
        let w = r.witness_search.as_ref().unwrap();
        assert_eq!(w.unknowns, 60);
        assert!(w.solvable);
        assert_eq!(w.witness_verified, Some(true));
        assert_eq!(w.witness.as_ref().unwrap().len(), 4);
        assert_eq!(oe_replay(4, true).unwrap().to_json(), r.to_json());
    }

    #[test]
    fn hand_witness_cancels_the_signature() {
        // v_4 = 1/2 [[z4,z2],[z4,z3]]
        let v4 = FreeLieExpr::parse("1/2*[[z4,z2],[z4,z3]]", 'z').unwrap();
        let s = fox_assoc(&lie_to_assoc(&FreeLieExpr::parse(OE_PERTURBATION, 'z').unwrap(), 4).unwrap(), 1)
            .unwrap();
        let total = &s + &fox_assoc(&lie_to_assoc(&v4, 4).unwrap(), 4).unwrap();
        assert!(in_commutator_subspace(&total));
    }
}
