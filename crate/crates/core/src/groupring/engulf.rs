use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::linalg::nullspace_field;
use crate::par::{self, Exec};

use super::domain::Scalar;
use super::element::{Element, GroupRing};
use super::oracle::GroupOracle;

/// Which side the test multiplier acts on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngulfingStatus<E: Ord> {
    /// `witness` lies outside the coefficient ring and multiplying `m` by it
    /// does not leave the support of `m`.
    WitnessFound(super::element::GroupRingElement<E>),
    /// Every multiplier keeping the support is a scalar; the solution space
    /// has the recorded dimension (always 1).
    NoneExists { kernel_dimension: usize },
    /// The group is ordered and the domain has no zero divisors, which rules
    /// out engulfing elements altogether.
    CertifiedByOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngulfingReport<E: Ord> {
    pub side: Side,
    pub status: EngulfingStatus<E>,
}

impl<E: Ord> EngulfingReport<E> {
    /// True when the element is certified not to be engulfing.
    pub fn is_non_engulfing(&self) -> bool {
        !matches!(self.status, EngulfingStatus::WitnessFound(_))
    }
}

/// Whether `supp(r m)` (left) or `supp(m r)` (right) lies inside `supp(m)`.
pub fn keeps_support<O: GroupOracle>(ring: &GroupRing<O>, r: &Element<O>, m: &Element<O>, side: Side) -> Result<bool> {
    let product = match side {
        Side::Left => ring.mul(r, m)?,
        Side::Right => ring.mul(m, r)?,
    };
    let supp: BTreeSet<_> = m.terms().keys().collect();
    Ok(product.terms().keys().all(|g| supp.contains(g)))
}

/// Decides engulfing for an element of a finite group algebra over a field by
/// solving the linear system "coefficients of `r m` vanish off `supp(m)`".
pub fn engulfing_search_finite<O: GroupOracle>(
    ring: &GroupRing<O>,
    m: &Element<O>,
    side: Side,
    exec: Exec,
) -> Result<EngulfingReport<O::Elem>> {
    ring.check(m)?;
    if m.is_zero() {
        return input("engulfing is defined for nonzero elements only");
    }
    let domain = ring.domain();
    if !domain.is_field() {
        return Err(Error::Unsupported(format!("finite engulfing search needs a field, got {}", domain.name())));
    }
    let oracle = ring.oracle();
    let elems = oracle
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{} is not enumerable", oracle.descriptor())))?;
    let inverses: Vec<O::Elem> = elems.iter().map(|g| oracle.invert(g)).collect();
    let outside: Vec<&O::Elem> = elems.iter().filter(|h| m.coeff(h).is_zero()).collect();
    // One equation per group element outside the support, one unknown per
    // group element of the multiplier.
    let rows: Vec<Vec<Scalar>> = par::map(exec, &outside, |h| {
        inverses
            .iter()
            .map(|g_inv| {
                let key = match side {
                    Side::Left => oracle.multiply(g_inv, h),
                    Side::Right => oracle.multiply(h, g_inv),
                };
                m.coeff(&key)
            })
            .collect()
    });
    let kernel = nullspace_field(&rows, elems.len(), domain);
    if kernel.len() < 2 {
        return Ok(EngulfingReport { side, status: EngulfingStatus::NoneExists { kernel_dimension: kernel.len() } });
    }
    // The identity column always solves; any other basis vector is a witness.
    let vector = kernel
        .into_iter()
        .find(|v| v[1..].iter().any(|c| !c.is_zero()))
        .ok_or_else(|| Error::Internal("solution space above dimension one without a non-scalar vector".into()))?;
    let witness = ring.from_terms(elems.iter().cloned().zip(vector))?;
    if witness.is_scalar(&oracle.identity()) || !keeps_support(ring, &witness, m, side)? {
        return Err(Error::Internal("engulfing witness failed re-verification".into()));
    }
    Ok(EngulfingReport { side, status: EngulfingStatus::WitnessFound(witness) })
}

/// Certifies that `m` is not engulfing using the oracle's right-invariant
/// order. The invariance is spot-checked on pairs drawn from the support.
pub fn non_engulfing_certificate_ordered<O: GroupOracle>(
    ring: &GroupRing<O>,
    m: &Element<O>,
    side: Side,
) -> Result<EngulfingReport<O::Elem>> {
    ring.check(m)?;
    let oracle = ring.oracle();
    if !oracle.is_ordered() {
        return Err(Error::Unsupported(format!("{} has no order", oracle.descriptor())));
    }
    if m.is_zero() {
        return input("engulfing is defined for nonzero elements only");
    }
    let supp = m.support();
    let mut sample = supp.clone();
    sample.push(oracle.identity());
    for a in &sample {
        for b in &sample {
            let ab = oracle.compare(a, b).expect("ordered oracle compares");
            if (ab == Ordering::Equal) != (a == b) {
                return input(format!("order is not strict on {} and {}", oracle.render(a), oracle.render(b)));
            }
            for g in &supp {
                let shifted = oracle.compare(&oracle.multiply(a, g), &oracle.multiply(b, g)).expect("ordered oracle compares");
                if shifted != ab {
                    return input(format!("order is not right-invariant at {}", oracle.render(g)));
                }
            }
        }
    }
    Ok(EngulfingReport { side, status: EngulfingStatus::CertifiedByOrder })
}
