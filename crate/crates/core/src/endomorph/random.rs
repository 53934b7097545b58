//! Seeded generators for tame endomorphisms and derived elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Endo, LinearAuto};
use crate::exactalg::{rat, RatMatrix};
use crate::metabelian::{eval, LieExpr, MElement};

pub type TameRng = ChaCha8Rng;

fn nonzero_coeff(rng: &mut TameRng) -> i64 {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

fn random_tree(rng: &mut TameRng, gens: &[usize], degree: usize) -> LieExpr {
    if degree == 1 {
        return LieExpr::Gen(*gens.choose(rng).expect("nonempty alphabet"));
    }
    if rng.gen_bool(0.5) {
        let word: Vec<usize> = (0..degree)
            .map(|_| *gens.choose(rng).unwrap())
            .collect();
        return LieExpr::left_normed(&word);
    }
    let left = rng.gen_range(1..degree);
    LieExpr::bracket(
        random_tree(rng, gens, left),
        random_tree(rng, gens, degree - left),
    )
}

/// A combination of one or two bracket trees of degree `2..=degree_bound`
/// over `gens`, with coefficients in `{-3..3} \ {0}`. Always derived, possibly
/// zero.
pub fn random_derived_expr(rng: &mut TameRng, gens: &[usize], degree_bound: usize) -> LieExpr {
    let bound = degree_bound.max(2);
    let terms = rng.gen_range(1..=2);
    LieExpr::sum(
        (0..terms)
            .map(|_| {
                let d = rng.gen_range(2..=bound);
                LieExpr::times(rat(nonzero_coeff(rng)), random_tree(rng, gens, d))
            })
            .collect(),
    )
}

/// A nonzero derived element of `M_n`, `n >= 2`, with its expression.
pub fn random_derived_element(
    rng: &mut TameRng,
    rank: usize,
    degree_bound: usize,
) -> (LieExpr, MElement) {
    assert!(rank >= 2, "M_1 has no nonzero derived elements");
    let gens: Vec<usize> = (1..=rank).collect();
    loop {
        let e = random_derived_expr(rng, &gens, degree_bound);
        let v = eval(&e, rank).expect("indices in range");
        if !v.is_zero() {
            return (e, v);
        }
    }
}

/// Invertible matrix with entries in `{-3..3}`.
pub fn random_linear(rng: &mut TameRng, rank: usize) -> LinearAuto {
    loop {
        let rows = (0..rank)
            .map(|_| (0..rank).map(|_| rat(rng.gen_range(-3..=3))).collect())
            .collect();
        if let Ok(a) = LinearAuto::new(RatMatrix::from_rows(rows).unwrap()) {
            return a;
        }
    }
}

/// An arbitrary endomorphism: each image is a random linear form, plus a
/// random derived perturbation with probability `1/2`.
pub fn random_endo(rng: &mut TameRng, rank: usize, degree_bound: usize) -> Endo {
    let gens: Vec<usize> = (1..=rank).collect();
    let exprs = (0..rank)
        .map(|_| {
            let mut terms: Vec<LieExpr> = (1..=rank)
                .filter_map(|j| {
                    let c = rng.gen_range(-3..=3);
                    (c != 0).then(|| LieExpr::times(rat(c), LieExpr::Gen(j)))
                })
                .collect();
            if rank > 1 && rng.gen_bool(0.5) {
                terms.push(random_derived_expr(rng, &gens, degree_bound));
            }
            LieExpr::sum(terms)
        })
        .collect();
    Endo::from_exprs(rank, exprs).expect("indices in range")
}

fn random_elementary(rng: &mut TameRng, rank: usize, degree_bound: usize) -> Endo {
    let pos = rng.gen_range(1..=rank);
    let gens: Vec<usize> = (1..=rank).filter(|&i| i != pos).collect();
    if gens.is_empty() {
        return Endo::identity(rank);
    }
    let f = random_derived_expr(rng, &gens, degree_bound);
    Endo::elementary_at(rank, pos, &f).expect("generated perturbation is valid")
}

/// Product of `length` random linear and elementary automorphisms.
pub fn random_tame(seed: u64, rank: usize, length: usize, degree_bound: usize) -> Endo {
    let mut rng = TameRng::seed_from_u64(seed);
    let mut acc = Endo::identity(rank);
    for _ in 0..length {
        let g = if rng.gen_bool(1.0 / 3.0) {
            Endo::linear(&random_linear(&mut rng, rank))
        } else {
            random_elementary(&mut rng, rank, degree_bound)
        };
        acc = acc.compose(&g).expect("same rank");
    }
    acc
}

/// Product of `length` elementary automorphisms and linear conjugates of
/// `phi_f`; lies in `IAut(M_n)`.
pub fn random_iaut_tame(seed: u64, rank: usize, length: usize, degree_bound: usize) -> Endo {
    let mut rng = TameRng::seed_from_u64(seed);
    let mut acc = Endo::identity(rank);
    for _ in 0..length {
        let g = if rank > 1 && rng.gen_bool(0.5) {
            let alpha = random_linear(&mut rng, rank);
            let gens: Vec<usize> = (2..=rank).collect();
            let f = random_derived_expr(&mut rng, &gens, degree_bound);
            Endo::conjugate_elementary(&alpha, &f)
                .expect("generated perturbation is valid")
                .endo
        } else {
            random_elementary(&mut rng, rank, degree_bound)
        };
        acc = acc.compose(&g).expect("same rank");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_is_identity() {
        assert!(random_tame(1, 3, 0, 4).is_identity());
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        assert_eq!(random_tame(42, 4, 3, 4), random_tame(42, 4, 3, 4));
        assert_eq!(random_iaut_tame(9, 3, 3, 3), random_iaut_tame(9, 3, 3, 3));
    }

    #[test]
    fn short_products_have_unit_jacobian_determinant() {
        for seed in 0..5 {
            let phi = random_tame(seed, 3, 2, 4);
            let d = phi.jacobian_det();
            let c = d.constant_value().expect("constant determinant");
            assert_ne!(c, rat(0));
        }
    }

    #[test]
    fn iaut_products_have_identity_linear_part() {
        for seed in 0..5 {
            let phi = random_iaut_tame(seed, 4, 3, 3);
            assert!(phi.linear_part().is_identity());
        }
    }
}
