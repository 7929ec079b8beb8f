use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::presentation::Word;

type Monomial = Vec<u16>;

/// Truncated noncommutative power series, one map per degree.
struct Series {
    degrees: Vec<BTreeMap<Monomial, BigInt>>,
}

impl Series {
    fn one(max_degree: usize) -> Self {
        let mut degrees = vec![BTreeMap::new(); max_degree + 1];
        degrees[0].insert(Vec::new(), BigInt::from(1));
        Series { degrees }
    }

    /// Right multiplication by `1 + X_s`.
    fn mul_letter(&mut self, gen: u16) {
        for d in (1..self.degrees.len()).rev() {
            let lifted = times_gen(&self.degrees[d - 1], gen);
            accumulate(&mut self.degrees[d], lifted, false);
        }
    }

    /// Right multiplication by `(1 + X_s)^-1`. Solves `T (1 + X_s) = S`
    /// degree by degree: `T[d] = S[d] - T[d-1] X_s`.
    fn mul_inverse_letter(&mut self, gen: u16) {
        for d in 1..self.degrees.len() {
            let lifted = times_gen(&self.degrees[d - 1], gen);
            accumulate(&mut self.degrees[d], lifted, true);
        }
    }

    /// Sign of the first nonzero coefficient above degree zero, scanning by
    /// degree and then lexicographically.
    fn leading_sign(&self) -> Option<Ordering> {
        self.degrees[1..].iter().find_map(|level| {
            level.values().find(|c| !c.is_zero()).map(|c| if c.is_positive() { Ordering::Greater } else { Ordering::Less })
        })
    }
}

fn times_gen(level: &BTreeMap<Monomial, BigInt>, gen: u16) -> BTreeMap<Monomial, BigInt> {
    level
        .iter()
        .map(|(m, c)| {
            let mut m = m.clone();
            m.push(gen);
            (m, c.clone())
        })
        .collect()
}

fn accumulate(into: &mut BTreeMap<Monomial, BigInt>, terms: BTreeMap<Monomial, BigInt>, subtract: bool) {
    for (m, c) in terms {
        let entry = into.entry(m).or_insert_with(BigInt::zero);
        if subtract {
            *entry -= c;
        } else {
            *entry += c;
        }
    }
    into.retain(|_, c| !c.is_zero());
}

/// Sign of `x` under the Magnus order: compares `x` with the identity.
pub fn magnus_sign(x: &Word) -> Ordering {
    if x.is_empty() {
        return Ordering::Equal;
    }
    // Degree one is the exponent-sum vector.
    let max_gen = x.letters().iter().map(|l| l.gen).max().unwrap_or(0);
    for gen in 0..=max_gen {
        let s = x.exponent_sum(gen);
        if s != 0 {
            return s.cmp(&0);
        }
    }
    let mut d = 2;
    loop {
        let d_eff = d.min(x.len());
        let mut series = Series::one(d_eff);
        for l in x.letters() {
            let gen = l.gen as u16;
            if l.inverse {
                series.mul_inverse_letter(gen);
            } else {
                series.mul_letter(gen);
            }
        }
        if let Some(sign) = series.leading_sign() {
            return sign;
        }
        assert!(d_eff < x.len(), "nontrivial word with trivial Magnus expansion");
        d *= 2;
    }
}

/// The Magnus bi-order on a free group: `u < v` exactly when the expansion
/// of `u v^-1` has a negative leading coefficient.
pub fn magnus_compare(u: &Word, v: &Word) -> Ordering {
    magnus_sign(&u.mul(&v.inverse()))
}
