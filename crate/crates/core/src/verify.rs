//! Exact check of the commutator identity in the groups
//! `⟨a, t | [t a t^-1, a] a^-n⟩` through the faithful matrix representation
//! of the Baumslag-Solitar group `BS(1, n+1)`.
//!
//! With `b = t a t^-1` the relator reads `b a b^-1 = a^(n+1)`, so `a` and `b`
//! generate a quotient of `BS(1, n+1)`. Sending `a` to the unipotent matrix
//! and `b` to `diag(n+1, 1)` is faithful on `BS(1, n+1)`, and the identity
//! `[b^n, a^n] = a^(n((n+1)^n - 1))` is checked there.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::error::{input, Result};
use crate::groupring::Scalar;

/// A 2x2 matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix2 {
    pub entries: [[Scalar; 2]; 2],
}

fn int(n: impl Into<BigInt>) -> Scalar {
    Scalar::from_integer(n.into())
}

impl ExactMatrix2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        ExactMatrix2 { entries: [[a, b], [c, d]] }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        ExactMatrix2::new(int(a), int(b), int(c), int(d))
    }

    pub fn identity() -> Self {
        ExactMatrix2::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> Scalar {
        let [[a, b], [c, d]] = &self.entries;
        a * d - b * c
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let [[a, b], [c, d]] = &self.entries;
        Some(ExactMatrix2::new(d / &det, -b / &det, -c / &det, a / &det))
    }

    /// Integer power by repeated squaring; negative exponents need an
    /// invertible matrix.
    pub fn pow(&self, k: &BigInt) -> Option<Self> {
        let base = if k < &BigInt::zero() { self.inverse()? } else { self.clone() };
        let mut e = if k < &BigInt::zero() { -k } else { k.clone() };
        let mut acc = ExactMatrix2::identity();
        let mut sq = base;
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e /= &two;
        }
        Some(acc)
    }

    pub fn conjugate(&self, by: &ExactMatrix2) -> Option<Self> {
        Some(&(by * self) * &by.inverse()?)
    }
}

impl Mul for &ExactMatrix2 {
    type Output = ExactMatrix2;

    fn mul(self, rhs: &ExactMatrix2) -> ExactMatrix2 {
        let (x, y) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        ExactMatrix2::new(cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1))
    }
}

impl fmt::Display for ExactMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// `A = [[1, 1], [0, 1]]` and `B = [[m, 0], [0, 1]]`, with `B A B^-1 = A^m`
/// checked before returning.
pub fn bs_representation(m: i64) -> Result<(ExactMatrix2, ExactMatrix2)> {
    if m < 2 {
        return input(format!("BS(1, m) needs m >= 2, got {m}"));
    }
    let a = ExactMatrix2::from_ints(1, 1, 0, 1);
    let b = ExactMatrix2::from_ints(m, 0, 0, 1);
    assert_eq!(a.conjugate(&b), a.pow(&BigInt::from(m)), "B A B^-1 = A^m");
    Ok((a, b))
}

/// `n((n+1)^n - 1)`.
pub fn qn_exponent(n: u32) -> BigInt {
    let m = BigInt::from(n) + 1;
    BigInt::from(n) * (Pow::pow(m, n) - 1)
}

/// Checks `B^n A^n B^-n A^-n = A^(n((n+1)^n - 1))` exactly.
pub fn verify_qn_identity(n: u32) -> Result<bool> {
    if n == 0 {
        return input("n must be at least 1");
    }
    let (a, b) = bs_representation(i64::from(n) + 1)?;
    let k = BigInt::from(n);
    let an = a.pow(&k).expect("A is invertible");
    let bn = b.pow(&k).expect("B is invertible");
    let lhs = &(&(&bn * &an) * &bn.inverse().expect("B is invertible")) * &an.inverse().expect("A is invertible");
    Ok(Some(lhs) == a.pow(&qn_exponent(n)))
}

#[derive(Clone, Debug, Serialize)]
pub struct QnReport {
    pub n: u32,
    pub relator: String,
    pub rearranged: String,
    pub identity: String,
    pub exponent: String,
    pub verdict: bool,
    pub note: String,
}

pub fn qn_report(n: u32) -> Result<QnReport> {
    let verdict = verify_qn_identity(n)?;
    let exponent = qn_exponent(n);
    Ok(QnReport {
        n,
        relator: format!("[t*a*t^-1, a]*a^-{n}"),
        rearranged: format!("(t*a*t^-1)*a*(t*a*t^-1)^-1 = a^{}", n + 1),
        identity: format!("[t*a^{n}*t^-1, a^{n}] = a^{exponent}"),
        exponent: exponent.to_string(),
        verdict,
        note: format!(
            "a and b = t*a*t^-1 satisfy b*a*b^-1 = a^{}; the identity holds in BS(1, {}) via a -> [[1,1],[0,1]], b -> [[{},0],[0,1]]",
            n + 1,
            n + 1,
            n + 1
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representation() {
        for m in 2..6 {
            let (a, b) = bs_representation(m).unwrap();
            assert_eq!(a.det(), int(1));
            assert_eq!(b.det(), int(m));
        }
        assert!(bs_representation(1).is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(qn_exponent(1), BigInt::from(1));
        assert_eq!(qn_exponent(2), BigInt::from(16));
        assert_eq!(qn_exponent(3), BigInt::from(189));
    }

    #[test]
    fn identity_holds() {
        for n in 1..=4 {
            assert!(verify_qn_identity(n).unwrap());
        }
        assert!(verify_qn_identity(0).is_err());
    }

    #[test]
    fn wrong_exponent_is_detected() {
        let (a, b) = bs_representation(3).unwrap();
        let lhs = &(&(&b.pow(&2.into()).unwrap() * &a.pow(&2.into()).unwrap()) * &b.pow(&(-2).into()).unwrap())
            * &a.pow(&(-2).into()).unwrap();
        assert_ne!(Some(lhs), a.pow(&17.into()));
    }

    #[test]
    fn report() {
        let r = qn_report(2).unwrap();
        assert!(r.verdict);
        assert_eq!(r.exponent, "16");
        assert!(qn_report(0).is_err());
    }
}
