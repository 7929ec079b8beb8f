use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

/// Coefficient values. Every domain stores its elements as rationals in a
/// canonical form: integers have denominator one, prime-field elements are
/// integers in `0..p`.
pub type Scalar = BigRational;

/// The exact coefficient ring of a group ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        Ok(CoefficientDomain::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientDomain::Integers)
    }

    pub fn name(&self) -> String {
        match self {
            CoefficientDomain::Integers => "Z".into(),
            CoefficientDomain::Rationals => "Q".into(),
            CoefficientDomain::PrimeField(p) => format!("F{p}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    /// Brings an arbitrary rational into canonical form, rejecting values
    /// that do not live in the domain.
    pub fn normalize(&self, x: Scalar) -> Result<Scalar> {
        match self {
            CoefficientDomain::Integers if !x.is_integer() => {
                input(format!("{x} is not an integer"))
            }
            CoefficientDomain::PrimeField(p) if (x.denom() % BigInt::from(*p)).is_zero() => {
                input(format!("{x} has denominator divisible by {p}"))
            }
            _ => Ok(self.reduce(x)),
        }
    }

    fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            CoefficientDomain::PrimeField(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                let inv = den.modpow(&(&p - 2), &p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
            _ => x,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse when `a` is a unit.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoefficientDomain::Integers => (a.abs().is_one()).then(|| a.clone()),
            CoefficientDomain::Rationals => Some(a.recip()),
            CoefficientDomain::PrimeField(_) => Some(self.reduce(a.recip())),
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.inv(a).is_some()
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        self.normalize(a.clone()).is_ok_and(|n| &n == a)
    }

    /// Parses `3`, `-2`, or `1/2` into the domain.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Input(format!("bad coefficient {s:?}"));
        let x = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Scalar::new(n, d)
            }
            None => Scalar::from_integer(s.parse().map_err(|_| bad())?),
        };
        self.normalize(x)
    }
}
