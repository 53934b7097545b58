//! One PASS/FAIL line per acceptance criterion. All comparisons are exact;
//! the only tolerances are the wall-clock limits on criteria 1 and 10.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;

use metabelian::dyadic::{
    derive_reduced_relation, expand_product, row_mul, ColSym, DyadExpr, RowSym, ScalarPoly,
};
use metabelian::endomorph::{FiltrationLevel, TameRng};
use metabelian::freeassoc::{oe_replay, oracle};
use metabelian::verify::{self, Suite};

type Check = Box<dyn Fn() -> Result<String, String>>;

const SEED: u64 = 0;
const CHAIN_RULE_LIMIT: Duration = Duration::from_secs(60);
const FULL_SUITE_LIMIT: Duration = Duration::from_secs(300);

fn cases(tag: u64, count: usize, f: impl Fn(&mut TameRng) -> Result<(), String>) -> Result<(), String> {
    for k in 0..count {
        let mut rng = TameRng::seed_from_u64(tag * 1_000_003 + k as u64);
        f(&mut rng).map_err(|e| format!("case {k}: {e}"))?;
    }
    Ok(())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn chain_rule() -> Result<String, String> {
    let start = Instant::now();
    for &n in &verify::CHAIN_RULE_RANKS {
        cases(10 + n as u64, verify::CHAIN_RULE_CASES_PER_RANK, |rng| {
            verify::chain_rule_case(rng, n, verify::CHAIN_RULE_DEGREE)
        })
        .map_err(|e| format!("rank {n}, {e}"))?;
    }
    let t = start.elapsed();
    ensure(t < CHAIN_RULE_LIMIT, || format!("took {t:.1?}"))?;
    Ok(format!("800 pairs in {t:.1?} (limit 60s)"))
}

fn bn_replay() -> Result<String, String> {
    let lam = ScalarPoly::lambda;
    let p = &expand_product(3) - &DyadExpr::identity();
    let expected = [
        (1, 1, ScalarPoly::one()),
        (2, 2, ScalarPoly::one()),
        (3, 3, ScalarPoly::one()),
        (1, 2, lam(1, 2)),
        (1, 3, &lam(1, 3) + &(&lam(1, 2) * &lam(2, 3))),
        (2, 3, lam(2, 3)),
    ];
    ensure(p.num_dyad_terms() == 7, || format!("{} terms", p.num_dyad_terms()))?;
    for (i, j, c) in &expected {
        let got = p.coefficient(ColSym::Phi(*i), RowSym::Psi(*j));
        ensure(got == *c, || format!("Φ{i}Ψ{j}: {got}"))?;
    }
    let r1 = row_mul(RowSym::Psi(1), &p).map_err(|e| e.to_string())?;
    ensure(
        r1.to_string() == "λ12*Ψ2 + λ13*Ψ3 + λ12*λ23*Ψ3",
        || format!("Ψ1 row: {r1}"),
    )?;
    let red = derive_reduced_relation(3).map_err(|e| e.to_string())?;
    ensure(red.to_string() == "λ21*Ψ1 + λ23*Ψ3", || format!("reduced: {red}"))?;
    ensure(red.coefficient(RowSym::Psi(1)) == lam(2, 1), || "residual".into())?;
    Ok(format!("{red} = 0"))
}

fn oe_replay_check() -> Result<String, String> {
    let r = oe_replay(4, false).map_err(|e| e.to_string())?;
    ensure(r.s == "z4z2z3 - z4z3z2", || format!("S = {}", r.s))?;
    ensure(!r.s_in_commutator_subspace, || "S in [U,U]".into())?;
    let bad: Vec<(usize, usize)> = (1..=4)
        .flat_map(|n| (1..=4).map(move |d| (n, d)))
        .filter(|&(n, d)| !oracle::criterion_matches_span(n, d))
        .collect();
    ensure(bad.is_empty(), || format!("oracle disagrees at {bad:?}"))?;
    let a = oe_replay(4, true).map_err(|e| e.to_string())?;
    let b = oe_replay(4, true).map_err(|e| e.to_string())?;
    ensure(a.to_json() == b.to_json(), || "witness search not deterministic".into())?;
    let w = a.witness_search.ok_or("no search")?;
    ensure(!w.solvable || w.witness_verified == Some(true), || "unverified".into())?;
    Ok(format!(
        "S = {}, oracle agrees on 16 (n, d), verdict {}",
        r.s,
        if w.solvable { "solvable" } else { "unsolvable" }
    ))
}

fn filtration() -> Result<String, String> {
    let lvl = verify::oe_automorphism(4).iaut_level();
    ensure(lvl == FiltrationLevel::Finite(3), || format!("level {lvl}"))?;
    Ok(format!("level {lvl}"))
}

fn full_suite() -> Result<String, String> {
    let start = Instant::now();
    let rep = verify::run(Suite::All, SEED);
    let t = start.elapsed();
    ensure(rep.passed(), || rep.render_text())?;
    ensure(t < FULL_SUITE_LIMIT, || format!("took {t:.1?}"))?;
    let again = verify::run(Suite::Dyadic, SEED);
    let first = rep.suites.iter().find(|s| s.suite == "dyadic").unwrap();
    ensure(&again.suites[0] == first, || "not deterministic".into())?;
    Ok(format!("{} cases in {t:.1?} (limit 300s)", rep.cases))
}

fn counted(tag: u64, n: usize, f: fn(&mut TameRng) -> Result<(), String>) -> Result<String, String> {
    cases(tag, n, f).map(|()| format!("{n} cases"))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Check)> = vec![
        ("chain rule", Box::new(chain_rule)),
        ("conjugated elementary Jacobian", Box::new(|| counted(2, 100, verify::conjugate_elementary_case))),
        ("inner automorphism Jacobian", Box::new(|| counted(3, 100, verify::inner_case))),
        ("dyadic elimination replay", Box::new(bn_replay)),
        ("dyadic instantiation", Box::new(|| counted(5, 50, verify::dyadic_instantiation_case))),
        ("Fox derivative and commutator oracle", Box::new(oe_replay_check)),
        ("lift roundtrip", Box::new(|| counted(7, 500, verify::lift_case))),
        ("inverse of tame IAut products", Box::new(|| counted(8, 100, verify::inverse_case))),
        ("filtration level", Box::new(filtration)),
        ("full verification suite", Box::new(full_suite)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
