//! Exact computations in the free metabelian Lie algebra `M_n`.

pub mod cli;
pub mod dyadic;
pub mod endomorph;
pub mod exactalg;
pub mod freeassoc;
pub mod metabelian;
pub mod text;
pub mod verify;
