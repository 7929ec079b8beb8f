//! Exact computations around lifting relations in right-orderable groups.
//!
//! The crate covers free-group word algebra ([`presentation`]), group rings
//! over computable groups ([`groupring`]), Fox calculus ([`foxcalc`]),
//! staircase shape detection for group-ring matrices ([`trapezoid`]),
//! Magnus-style HNN hierarchies for one-relator groups ([`hierarchy`]),
//! chain complexes of finite covers ([`covers`]) and an exact check of a
//! Baumslag-Solitar commutator identity ([`verify`]).

pub mod cli;
pub mod covers;
pub mod error;
pub mod foxcalc;
pub mod groupring;
pub mod hierarchy;
pub mod linalg;
pub mod par;
pub mod perm;
pub mod presentation;
pub mod trapezoid;
pub mod verify;

pub use error::{Error, Result};
