//! Brute-force description of `[U, U]` in one degree, independent of the
//! rotation-class criterion: an echelon basis of the span of all `uv - vu`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{canonical_rotation, in_commutator_subspace, NCPoly, NCWord};
use crate::exactalg::{rat, Rat};

type Sparse = BTreeMap<NCWord, Rat>;

/// All words of length `d` over `z_1..z_n`.
pub fn words(n: usize, d: usize) -> Vec<Vec<usize>> {
    (0..d).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                (1..=n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect()
    })
}

/// Number of rotation classes of words of length `d`.
pub fn necklace_count(n: usize, d: usize) -> usize {
    words(n, d)
        .into_iter()
        .map(|w| canonical_rotation(&NCWord::new(w)))
        .collect::<BTreeSet<_>>()
        .len()
}

/// Echelon basis of `span{uv - vu : |u| + |v| = d}`.
pub struct CommutatorSpan {
    rank: usize,
    degree: usize,
    pivots: BTreeMap<NCWord, Sparse>,
    generators: usize,
}

impl CommutatorSpan {
    pub fn new(n: usize, d: usize) -> Self {
        let mut span = CommutatorSpan {
            rank: n,
            degree: d,
            pivots: BTreeMap::new(),
            generators: 0,
        };
        for a in 1..d {
            for u in words(n, a) {
                for v in words(n, d - a) {
                    let mut g = Sparse::new();
                    let uv = NCWord::new([u.as_slice(), v.as_slice()].concat());
                    let vu = NCWord::new([v.as_slice(), u.as_slice()].concat());
                    if uv != vu {
                        g.insert(uv, rat(1));
                        g.insert(vu, rat(-1));
                    }
                    span.insert(g);
                    span.generators += 1;
                }
            }
        }
        span
    }

    pub fn dimension(&self) -> usize {
        self.pivots.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    fn reduce(&self, mut v: Sparse) -> Sparse {
        // Each step removes the largest pivot word present and only brings in
        // smaller words, so this terminates.
        loop {
            let hit = v
                .iter()
                .rev()
                .find(|(k, _)| self.pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = hit else { return v };
            for (kk, cc) in &self.pivots[&k] {
                let e = v.entry(kk.clone()).or_insert_with(Rat::zero);
                *e -= &c * cc;
                if e.is_zero() {
                    v.remove(kk);
                }
            }
        }
    }

    fn insert(&mut self, v: Sparse) {
        let v = self.reduce(v);
        if let Some((lead, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let normed = v.into_iter().map(|(k, a)| (k, a / &c)).collect();
            self.pivots.insert(lead, normed);
        }
    }

    /// Membership of the degree-`d` component of `p`.
    pub fn contains(&self, p: &NCPoly) -> bool {
        let v: Sparse = p
            .homogeneous_component(self.degree)
            .terms()
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        self.reduce(v).is_empty()
    }
}

/// Whether the span of commutators and the kernel of the rotation-class sums
/// coincide in degree `d` and rank `n`: every generator passes the cyclic
/// test (span inside kernel) and the dimensions agree.
pub fn criterion_matches_span(n: usize, d: usize) -> bool {
    let span = CommutatorSpan::new(n, d);
    let kernel_dim = n.pow(d as u32) - necklace_count(n, d);
    let generators_pass = (1..d).all(|a| {
        words(n, a).into_iter().all(|u| {
            words(n, d - a).into_iter().all(|v| {
                let uv = NCPoly::word(n, &[u.as_slice(), v.as_slice()].concat()).unwrap();
                let vu = NCPoly::word(n, &[v.as_slice(), u.as_slice()].concat()).unwrap();
                in_commutator_subspace(&(&uv - &vu))
            })
        })
    });
    span.rank == n && generators_pass && span.dimension() == kernel_dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_dimensions() {
        // degree 2, two letters: z1z2 - z2z1 only
        assert_eq!(CommutatorSpan::new(2, 2).dimension(), 1);
        assert_eq!(necklace_count(2, 4), 6);
        assert_eq!(CommutatorSpan::new(1, 3).dimension(), 0);
    }

    #[test]
    fn criterion_matches_span_in_low_degree() {
        for n in 1..=3 {
            for d in 1..=4 {
                assert!(criterion_matches_span(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn agrees_with_cyclic_test_on_random_elements() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            for d in 1..=4 {
                let span = CommutatorSpan::new(n, d);
                let all = words(n, d);
                for trial in 0..30 {
                    let mut p = NCPoly::zero(n);
                    for _ in 0..rng.gen_range(1..4) {
                        let word = all[rng.gen_range(0..all.len())].clone();
                        let c = rat(rng.gen_range(-2..=2));
                        if trial % 2 == 0 {
                            let mut rot = word.clone();
                            rot.rotate_left(rng.gen_range(0..d));
                            let diff = &NCPoly::word(n, &word).unwrap() - &NCPoly::word(n, &rot).unwrap();
                            p = &p + &diff.scale(&c);
                        } else {
                            p = &p + &NCPoly::word(n, &word).unwrap().scale(&c);
                        }
                    }
                    assert_eq!(in_commutator_subspace(&p), span.contains(&p), "{p}");
                }
            }
        }
    }
}
