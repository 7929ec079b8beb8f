//! Exact group-ring arithmetic over pluggable group oracles.
//!
//! A [`GroupRing`] pairs a [`GroupOracle`] with a [`CoefficientDomain`].
//! Elements are sparse maps from group elements to nonzero coefficients, so
//! their key set is the support. On top of the arithmetic sit the
//! unique-product enumeration, the finite engulfing search, and the
//! order-backed non-engulfing certificate.

mod domain;
mod element;
mod engulf;
mod magnus;
mod matrix;
mod oracle;
mod products;

pub use domain::{CoefficientDomain, Scalar};
pub use element::{Element, GroupRing, GroupRingElement};
pub use engulf::{
    engulfing_search_finite, keeps_support, non_engulfing_certificate_ordered, EngulfingReport, EngulfingStatus, Side,
};
pub use matrix::GroupRingMatrix;
pub use magnus::{magnus_compare, magnus_sign};
pub use oracle::{Cyclic, FreeAbelian, FreeGroup, GroupOracle, PermutationGroup};
pub use products::{unique_products_check, ProductSide, UniqueProduct, UniqueProductsReport};
