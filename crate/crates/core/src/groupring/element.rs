use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{input, Result};

use super::domain::{CoefficientDomain, Scalar};
use super::oracle::GroupOracle;

/// A finite formal sum `Σ r_g g`. Zero coefficients are never stored, so the
/// key set is exactly the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement<E: Ord> {
    terms: BTreeMap<E, Scalar>,
    domain: CoefficientDomain,
    group: Arc<str>,
}

impl<E: Ord + Clone> GroupRingElement<E> {
    pub fn terms(&self) -> &BTreeMap<E, Scalar> {
        &self.terms
    }

    pub fn support(&self) -> Vec<E> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, g: &E) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn domain(&self) -> &CoefficientDomain {
        &self.domain
    }

    /// True when the element is a scalar multiple of the identity.
    pub fn is_scalar(&self, identity: &E) -> bool {
        self.terms.keys().all(|g| g == identity)
    }
}

/// The group ring `R G` for an oracle `G` and coefficient domain `R`.
#[derive(Debug)]
pub struct GroupRing<O: GroupOracle> {
    oracle: Arc<O>,
    domain: CoefficientDomain,
    tag: Arc<str>,
}

impl<O: GroupOracle> Clone for GroupRing<O> {
    fn clone(&self) -> Self {
        GroupRing { oracle: Arc::clone(&self.oracle), domain: self.domain.clone(), tag: Arc::clone(&self.tag) }
    }
}

pub type Element<O> = GroupRingElement<<O as GroupOracle>::Elem>;

impl<O: GroupOracle> GroupRing<O> {
    pub fn new(oracle: O, domain: CoefficientDomain) -> Self {
        Self::shared(Arc::new(oracle), domain)
    }

    pub fn shared(oracle: Arc<O>, domain: CoefficientDomain) -> Self {
        let tag = Arc::from(oracle.descriptor());
        GroupRing { oracle, domain, tag }
    }

    pub fn oracle(&self) -> &O {
        &self.oracle
    }

    pub fn oracle_arc(&self) -> Arc<O> {
        Arc::clone(&self.oracle)
    }

    pub fn domain(&self) -> &CoefficientDomain {
        &self.domain
    }

    /// The same group with a different coefficient domain.
    pub fn with_domain(&self, domain: CoefficientDomain) -> Self {
        GroupRing { oracle: Arc::clone(&self.oracle), domain, tag: Arc::clone(&self.tag) }
    }

    fn wrap(&self, terms: BTreeMap<O::Elem, Scalar>) -> Element<O> {
        GroupRingElement { terms, domain: self.domain.clone(), group: Arc::clone(&self.tag) }
    }

    pub fn zero(&self) -> Element<O> {
        self.wrap(BTreeMap::new())
    }

    pub fn one(&self) -> Element<O> {
        self.basis(self.oracle.identity())
    }

    pub fn basis(&self, g: O::Elem) -> Element<O> {
        self.monomial(g, self.domain.one())
    }

    pub fn monomial(&self, g: O::Elem, c: Scalar) -> Element<O> {
        let mut terms = BTreeMap::new();
        let c = self.domain.normalize(c).unwrap_or_else(|_| self.domain.zero());
        if !c.is_zero() {
            terms.insert(g, c);
        }
        self.wrap(terms)
    }

    pub fn scalar(&self, c: Scalar) -> Result<Element<O>> {
        let c = self.domain.normalize(c)?;
        Ok(self.monomial(self.oracle.identity(), c))
    }

    pub fn from_int(&self, n: i64) -> Element<O> {
        self.monomial(self.oracle.identity(), self.domain.from_int(n))
    }

    /// Builds an element from (group element, coefficient) pairs, merging
    /// repeated group elements.
    pub fn from_terms<I: IntoIterator<Item = (O::Elem, Scalar)>>(&self, terms: I) -> Result<Element<O>> {
        let mut out = BTreeMap::new();
        for (g, c) in terms {
            let c = self.domain.normalize(c)?;
            add_term(&self.domain, &mut out, g, &c);
        }
        Ok(self.wrap(out))
    }

    /// `g - 1`.
    pub fn minus_one(&self, g: O::Elem) -> Element<O> {
        let mut out = BTreeMap::new();
        add_term(&self.domain, &mut out, g, &self.domain.one());
        add_term(&self.domain, &mut out, self.oracle.identity(), &self.domain.from_int(-1));
        self.wrap(out)
    }

    pub fn check(&self, x: &Element<O>) -> Result<()> {
        if x.domain != self.domain {
            return input(format!("coefficient domain mismatch: {} vs {}", x.domain.name(), self.domain.name()));
        }
        if x.group != self.tag {
            return input(format!("group mismatch: {} vs {}", x.group, self.tag));
        }
        Ok(())
    }

    pub fn add(&self, x: &Element<O>, y: &Element<O>) -> Result<Element<O>> {
        self.check(x)?;
        self.check(y)?;
        let mut out = x.terms.clone();
        for (g, c) in &y.terms {
            add_term(&self.domain, &mut out, g.clone(), c);
        }
        Ok(self.wrap(out))
    }

    pub fn neg(&self, x: &Element<O>) -> Result<Element<O>> {
        self.check(x)?;
        Ok(self.wrap(x.terms.iter().map(|(g, c)| (g.clone(), self.domain.neg(c))).collect()))
    }

    pub fn sub(&self, x: &Element<O>, y: &Element<O>) -> Result<Element<O>> {
        self.add(x, &self.neg(y)?)
    }

    pub fn scale(&self, c: &Scalar, x: &Element<O>) -> Result<Element<O>> {
        self.check(x)?;
        let c = self.domain.normalize(c.clone())?;
        let mut out = BTreeMap::new();
        for (g, a) in &x.terms {
            add_term(&self.domain, &mut out, g.clone(), &self.domain.mul(&c, a));
        }
        Ok(self.wrap(out))
    }

    pub fn mul(&self, x: &Element<O>, y: &Element<O>) -> Result<Element<O>> {
        self.check(x)?;
        self.check(y)?;
        let mut out = BTreeMap::new();
        for (g, a) in &x.terms {
            for (h, b) in &y.terms {
                add_term(&self.domain, &mut out, self.oracle.multiply(g, h), &self.domain.mul(a, b));
            }
        }
        Ok(self.wrap(out))
    }

    /// Left multiplication by a group element.
    pub fn translate_left(&self, g: &O::Elem, x: &Element<O>) -> Element<O> {
        self.wrap(x.terms.iter().map(|(h, c)| (self.oracle.multiply(g, h), c.clone())).collect())
    }

    /// Sum of coefficients.
    pub fn augmentation(&self, x: &Element<O>) -> Scalar {
        x.terms.values().fold(self.domain.zero(), |acc, c| self.domain.add(&acc, c))
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Element<O>>>(&self, items: I) -> Result<Element<O>>
    where
        O::Elem: 'a,
    {
        items.into_iter().try_fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Human-readable form such as `1 - x*y + 2*x^2`.
    pub fn render(&self, x: &Element<O>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let id = self.oracle.identity();
        let mut out = String::new();
        for (i, (g, c)) in x.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let body = self.oracle.render(g);
            match (*g == id, mag.is_one()) {
                (true, _) => out.push_str(&mag.to_string()),
                (false, true) => out.push_str(&body),
                (false, false) => out.push_str(&format!("{mag}*{body}")),
            }
        }
        out
    }
}

fn add_term<E: Ord>(domain: &CoefficientDomain, terms: &mut BTreeMap<E, Scalar>, g: E, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let sum = match terms.get(&g) {
        Some(a) => domain.add(a, c),
        None => c.clone(),
    };
    if sum.is_zero() {
        terms.remove(&g);
    } else {
        terms.insert(g, sum);
    }
}
