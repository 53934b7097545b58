//! Cyclic words and the commutator subspace `[U, U]`.
//!
//! `uv - vu` relates a word to its rotations, and conversely every difference
//! of two rotations is such a commutator. Hence `p` lies in `[U, U]` iff its
//! coefficients sum to zero over every rotation class.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{NCPoly, NCWord};
use crate::exactalg::Rat;

/// The lexicographically least rotation of `w`.
pub fn canonical_rotation(w: &NCWord) -> NCWord {
    let l = w.letters();
    (0..l.len())
        .map(|k| [&l[k..], &l[..k]].concat())
        .min()
        .map(NCWord::new)
        .unwrap_or_default()
}

/// Coefficient sums over rotation classes, keyed by the least rotation; zero
/// sums are dropped.
pub fn cyclic_signature(p: &NCPoly) -> BTreeMap<NCWord, Rat> {
    let mut sig: BTreeMap<NCWord, Rat> = BTreeMap::new();
    for (w, c) in p.terms() {
        *sig.entry(canonical_rotation(w)).or_insert_with(Rat::zero) += c;
    }
    sig.retain(|_, c| !c.is_zero());
    sig
}

pub fn in_commutator_subspace(p: &NCPoly) -> bool {
    cyclic_signature(p).is_empty()
}
