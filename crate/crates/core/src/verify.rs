//! Randomized and exhaustive invariant suites, deterministic in the seed.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::dyadic::{
    derive_reduced_relation, expand_product, instantiate_dyad, product_by_fold, row_mul,
    Assignment, DyadExpr, RowSym, ScalarPoly,
};
use crate::endomorph::{
    random_derived_element, random_derived_expr, random_endo, random_iaut_tame, random_linear,
    Endo, FiltrationLevel, TameRng,
};
use crate::exactalg::PolyMatrix;
use crate::freeassoc::{
    fox_assoc, in_commutator_subspace, lie_to_assoc, nc_mul, oe_replay, oracle, NCPoly,
};
use crate::metabelian::{eval, lift, LieExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ChainRule,
    Lemmas,
    Lift,
    Dyadic,
    FreeAssoc,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["chainrule", "lemmas", "lift", "dyadic", "freeassoc", "all"];

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::ChainRule,
                Suite::Lemmas,
                Suite::Lift,
                Suite::Dyadic,
                Suite::FreeAssoc,
            ],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::ChainRule => "chainrule",
            Suite::Lemmas => "lemmas",
            Suite::Lift => "lift",
            Suite::Dyadic => "dyadic",
            Suite::FreeAssoc => "freeassoc",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "chainrule" => Suite::ChainRule,
            "lemmas" => Suite::Lemmas,
            "lift" => Suite::Lift,
            "dyadic" => Suite::Dyadic,
            "freeassoc" => Suite::FreeAssoc,
            "all" => Suite::All,
            _ => {
                return Err(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                ))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    /// Descriptions of failing cases, in case order.
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteResult {
    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub cases: usize,
    pub failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.suites
            .iter()
            .flat_map(|s| &s.checks)
            .find(|c| c.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            for c in &s.checks {
                out.push_str(&format!(
                    "{} {}/{}: {} cases\n",
                    if c.passed() { "PASS" } else { "FAIL" },
                    s.suite,
                    c.name,
                    c.cases
                ));
                for f in c.failures.iter().take(5) {
                    out.push_str(&format!("  {f}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{}: {} cases, {} failures (seed {})\n",
            if self.passed() { "pass" } else { "fail" },
            self.cases,
            self.failures,
            self.seed
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// An independent stream for case `case` of check `tag`.
fn case_rng(seed: u64, tag: u64, case: u64) -> TameRng {
    let mut s = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    s = s.wrapping_add(case.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    TameRng::seed_from_u64(s)
}

/// Runs `cases` independent cases in parallel; results keep case order.
fn run_cases<F>(name: &str, seed: u64, tag: u64, cases: usize, f: F) -> CheckResult
where
    F: Fn(&mut TameRng) -> Result<(), String> + Sync,
{
    let failures: Vec<String> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = case_rng(seed, tag, k as u64);
            f(&mut rng).err().map(|e| format!("case {k}: {e}"))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    CheckResult {
        name: name.into(),
        cases,
        failures,
    }
}

fn single(name: &str, f: impl FnOnce() -> Result<(), String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        cases: 1,
        failures: f().err().into_iter().collect(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub const CHAIN_RULE_RANKS: [usize; 4] = [2, 3, 4, 5];
pub const CHAIN_RULE_CASES_PER_RANK: usize = 200;
pub const CHAIN_RULE_DEGREE: usize = 5;

/// `J(phi o psi) = phi_bar(J(psi)) J(phi)` for one random pair.
pub fn chain_rule_case(rng: &mut TameRng, rank: usize, degree: usize) -> Result<(), String> {
    let phi = random_endo(rng, rank, degree);
    let psi = random_endo(rng, rank, degree);
    let lhs = phi.compose(&psi).map_err(|e| e.to_string())?.jacobian();
    let rhs = psi
        .jacobian()
        .substitute(&phi.induced_poly_endo())
        .map_err(|e| e.to_string())?
        .mul(&phi.jacobian());
    ensure(lhs == rhs, || {
        format!(
            "rank {rank}: phi = {}, psi = {}",
            phi.render().unwrap_or_default(),
            psi.render().unwrap_or_default()
        )
    })
}

fn chain_rule(seed: u64) -> Vec<CheckResult> {
    CHAIN_RULE_RANKS
        .iter()
        .map(|&n| {
            run_cases(
                &format!("chain rule, rank {n}"),
                seed,
                100 + n as u64,
                CHAIN_RULE_CASES_PER_RANK,
                |rng| chain_rule_case(rng, n, CHAIN_RULE_DEGREE),
            )
        })
        .collect()
}

/// `J(alpha phi_f alpha^{-1}) = E + Phi Psi` with `Psi Phi = 0`, `Psi Y = 0`.
pub fn conjugate_elementary_case(rng: &mut TameRng) -> Result<(), String> {
    let n = rng.gen_range(2..=5);
    let alpha = random_linear(rng, n);
    let gens: Vec<usize> = (2..=n).collect();
    let f = random_derived_expr(rng, &gens, 4);
    let c = Endo::conjugate_elementary(&alpha, &f).map_err(|e| e.to_string())?;
    let e = PolyMatrix::identity(n, n);
    let expected = e.checked_add(&c.phi.mul(&c.psi)).unwrap();
    ensure(c.endo.jacobian() == expected, || format!("J mismatch for f = {f}"))?;
    ensure(c.psi.mul(&c.phi).scalar().is_zero(), || format!("Psi Phi != 0 for f = {f}"))?;
    ensure(
        c.psi.mul(&PolyMatrix::y_column(n)).scalar().is_zero(),
        || format!("Psi Y != 0 for f = {f}"),
    )
}

/// `J(exp(ad z)) = E - Y d(z)` and `(E - Y d(z))(E + Y d(z)) = E`.
pub fn inner_case(rng: &mut TameRng) -> Result<(), String> {
    let n = rng.gen_range(2..=5);
    let (ze, z) = random_derived_element(rng, n, 4);
    let sigma = Endo::inner_from_expr(n, &ze).map_err(|e| e.to_string())?;
    let ydz = PolyMatrix::y_column(n).mul(&z.fox());
    let e = PolyMatrix::identity(n, n);
    let minus = e.checked_sub(&ydz).unwrap();
    ensure(sigma.jacobian() == minus, || format!("J(exp(ad z)) mismatch for z = {ze}"))?;
    let plus = e.checked_add(&ydz).unwrap();
    ensure(minus.mul(&plus).is_identity(), || format!("(E - Y dz)(E + Y dz) != E for z = {ze}"))
}

/// Inverse of a random tame `IAut` product, checked both ways, and
/// `det J = 1`.
pub fn inverse_case(rng: &mut TameRng) -> Result<(), String> {
    let n = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=3);
    let phi = random_iaut_tame(rng.gen(), n, len, 3);
    let det = phi.jacobian_det();
    ensure(det.is_one(), || format!("det J = {det}"))?;
    let inv = phi.inverse().map_err(|e| e.to_string())?;
    let a = inv.compose(&phi).map_err(|e| e.to_string())?;
    let b = phi.compose(&inv).map_err(|e| e.to_string())?;
    ensure(a.is_identity() && b.is_identity(), || {
        format!("inverse failed for {}", phi.render().unwrap_or_default())
    })
}

/// The automorphism `x_1 -> x_1 + [[x_1,[x_2,x_3]],x_4]` and its level.
pub fn oe_automorphism(n: usize) -> Endo {
    let mut exprs: Vec<LieExpr> = (1..=n).map(LieExpr::Gen).collect();
    exprs[0] = LieExpr::parse_x("x1 + [[x1,[x2,x3]],x4]").expect("fixed expression");
    Endo::from_exprs(n, exprs).expect("rank at least 4")
}

fn lemmas(seed: u64) -> Vec<CheckResult> {
    vec![
        run_cases("conjugated elementary Jacobian", seed, 200, 100, conjugate_elementary_case),
        run_cases("inner Jacobian", seed, 201, 100, inner_case),
        run_cases("inverse of tame IAut products", seed, 202, 100, inverse_case),
        single("filtration level of the rank-4 example", || {
            let lvl = oe_automorphism(4).iaut_level();
            ensure(lvl == FiltrationLevel::Finite(3), || format!("level {lvl}"))
        }),
    ]
}

/// `eval(lift(f)) = f`, and the lifted expression survives print/parse.
pub fn lift_case(rng: &mut TameRng) -> Result<(), String> {
    let n = rng.gen_range(2..=5);
    let (e, f) = random_derived_element(rng, n, 6);
    let l = lift(&f).map_err(|err| err.to_string())?;
    let back = eval(&l, n).map_err(|err| err.to_string())?;
    ensure(back == f, || format!("lift of {e} evaluates differently"))?;
    let reparsed = LieExpr::parse_x(&l.to_string()).map_err(|err| err.to_string())?;
    ensure(reparsed == l, || format!("print/parse changed {l}"))
}

fn lift_suite(seed: u64) -> Vec<CheckResult> {
    vec![run_cases("lift roundtrip", seed, 300, 500, lift_case)]
}

/// Symbolic product against the concrete product of `E + Phi_i Psi_i`.
pub fn dyadic_instantiation_case(rng: &mut TameRng) -> Result<(), String> {
    let n = rng.gen_range(3..=5);
    let k = rng.gen_range(1..=4);
    let gens: Vec<usize> = (2..=n).collect();
    let mut phis = Vec::new();
    let mut psis = Vec::new();
    for _ in 0..k {
        let alpha = random_linear(rng, n);
        let f = random_derived_expr(rng, &gens, 3);
        let c = Endo::conjugate_elementary(&alpha, &f).map_err(|e| e.to_string())?;
        phis.push(c.phi);
        psis.push(c.psi);
    }
    let (_, z) = random_derived_element(rng, n, 3);
    let concrete = phis
        .iter()
        .zip(&psis)
        .fold(PolyMatrix::identity(n, n), |acc, (p, q)| {
            acc.mul(&PolyMatrix::identity(n, n).checked_add(&p.mul(q)).unwrap())
        });
    let a = Assignment::new(phis, psis, z.fox()).map_err(|e| e.to_string())?;
    let sym = instantiate_dyad(&expand_product(k), &a).map_err(|e| e.to_string())?;
    ensure(sym == concrete, || format!("rank {n}, {k} factors"))
}

fn dyadic_suite(seed: u64) -> Vec<CheckResult> {
    let lam = ScalarPoly::lambda;
    vec![
        CheckResult {
            name: "closed form equals fold, k <= 6".into(),
            cases: 7,
            failures: (0..=6)
                .filter(|&k| expand_product(k) != product_by_fold(k))
                .map(|k| format!("k = {k}"))
                .collect(),
        },
        single("three-factor expansion", || {
            let p = expand_product(3);
            ensure(p.num_dyad_terms() == 7, || format!("{p}"))
        }),
        single("left multiplication by Ψ1", || {
            let x = &expand_product(3) - &DyadExpr::identity();
            let r = row_mul(RowSym::Psi(1), &x).map_err(|e| e.to_string())?;
            let expected = [
                (RowSym::Psi(2), lam(1, 2)),
                (RowSym::Psi(3), &lam(1, 3) + &(&lam(1, 2) * &lam(2, 3))),
            ];
            ensure(
                r.num_terms() == 3
                    && expected.iter().all(|(s, c)| r.coefficient(*s) == *c),
                || format!("{r}"),
            )
        }),
        single("reduced relation and residual", || {
            let r = derive_reduced_relation(3).map_err(|e| e.to_string())?;
            ensure(
                r.num_terms() == 2
                    && r.coefficient(RowSym::Psi(1)) == lam(2, 1)
                    && r.coefficient(RowSym::Psi(3)) == lam(2, 3),
                || format!("{r}"),
            )
        }),
        single("Ψ Y ∂z = 0", || {
            ensure(
                (1..=6).all(|i| {
                    row_mul(RowSym::Psi(i), &DyadExpr::y_dz())
                        .map(|r| r.is_zero())
                        .unwrap_or(false)
                }),
                || "nonzero row".into(),
            )
        }),
        run_cases("concrete instantiation", seed, 400, 50, dyadic_instantiation_case),
    ]
}

fn random_ncpoly(rng: &mut TameRng, n: usize, max_len: usize) -> NCPoly {
    let mut p = NCPoly::zero(n);
    for _ in 0..rng.gen_range(1..=5) {
        let len = rng.gen_range(1..=max_len);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
        let c = crate::exactalg::rat(rng.gen_range(-3..=3));
        p = &p + &NCPoly::word(n, &w).unwrap().scale(&c);
    }
    p
}

/// `f = sum_i (df/dz_i) z_i` for a random `f` without constant term.
pub fn fox_reconstruction_case(rng: &mut TameRng) -> Result<(), String> {
    let n = rng.gen_range(1..=4);
    let f = random_ncpoly(rng, n, 5);
    let mut total = NCPoly::zero(n);
    for i in 1..=n {
        let d = fox_assoc(&f, i).map_err(|e| e.to_string())?;
        total = &total + &nc_mul(&d, &NCPoly::letter(n, i).unwrap()).unwrap();
    }
    ensure(total == f, || format!("reconstruction failed for {f}"))
}

/// Commutators pass the cyclic test; expansions of brackets do too.
pub fn commutator_case(rng: &mut TameRng) -> Result<(), String> {
    let n = rng.gen_range(2..=4);
    let u = random_ncpoly(rng, n, 3);
    let v = random_ncpoly(rng, n, 3);
    let c = u.commutator(&v).unwrap();
    ensure(in_commutator_subspace(&c), || format!("[{u}, {v}] fails"))?;
    let gens: Vec<usize> = (1..=n).collect();
    let e = random_derived_expr(rng, &gens, 4);
    let p = lie_to_assoc(&e, n).map_err(|e| e.to_string())?;
    ensure(in_commutator_subspace(&p), || format!("expansion of {e} fails"))
}

fn freeassoc_suite(seed: u64) -> Vec<CheckResult> {
    let grid: Vec<(usize, usize)> = (1..=4).flat_map(|n| (1..=4).map(move |d| (n, d))).collect();
    vec![
        single("Fox derivative of the rank-4 perturbation", || {
            let r = oe_replay(4, false).map_err(|e| e.to_string())?;
            ensure(
                r.s == "z4z2z3 - z4z3z2" && !r.s_in_commutator_subspace,
                || format!("S = {}, member = {}", r.s, r.s_in_commutator_subspace),
            )
        }),
        CheckResult {
            name: "cyclic criterion equals commutator span, n <= 4, d <= 4".into(),
            cases: grid.len(),
            failures: grid
                .par_iter()
                .filter(|&&(n, d)| !oracle::criterion_matches_span(n, d))
                .map(|(n, d)| format!("n = {n}, d = {d}"))
                .collect(),
        },
        run_cases("Fox reconstruction", seed, 500, 200, fox_reconstruction_case),
        run_cases("commutators and bracket expansions", seed, 501, 200, commutator_case),
        single("witness search is reproducible", || {
            let a = oe_replay(4, true).map_err(|e| e.to_string())?;
            let b = oe_replay(4, true).map_err(|e| e.to_string())?;
            let verified = a
                .witness_search
                .as_ref()
                .map(|w| !w.solvable || w.witness_verified == Some(true))
                .unwrap_or(false);
            ensure(a.to_json() == b.to_json() && verified, || "differs or unverified".into())
        }),
    ]
}

/// Runs `suite` with the given seed.
pub fn run(suite: Suite, seed: u64) -> VerifyReport {
    let suites: Vec<SuiteResult> = suite
        .members()
        .into_iter()
        .map(|s| SuiteResult {
            suite: s.name().into(),
            checks: match s {
                Suite::ChainRule => chain_rule(seed),
                Suite::Lemmas => lemmas(seed),
                Suite::Lift => lift_suite(seed),
                Suite::Dyadic => dyadic_suite(seed),
                Suite::FreeAssoc => freeassoc_suite(seed),
                Suite::All => unreachable!("expanded above"),
            },
        })
        .collect();
    let cases = suites.iter().map(SuiteResult::cases).sum();
    let failures = suites.iter().map(SuiteResult::failures).sum();
    VerifyReport {
        seed,
        suites,
        cases,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass_and_are_deterministic() {
        let a = run(Suite::Dyadic, 3);
        assert!(a.passed(), "{}", a.render_text());
        assert_eq!(a.to_json(), run(Suite::Dyadic, 3).to_json());
    }

    #[test]
    fn oe_automorphism_level() {
        assert_eq!(oe_automorphism(5).iaut_level(), FiltrationLevel::Finite(3));
    }
}
