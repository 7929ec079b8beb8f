//! Fox calculus on the integral free-group ring, Jacobi matrices of
//! presentations under quotient maps, and the partial resolution
//! `R G^W -> R G^S -> R G -> R`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Error, Result};
use crate::groupring::{
    CoefficientDomain, Element, FreeAbelian, GroupOracle, GroupRing, GroupRingMatrix, PermutationGroup, Scalar,
};
use crate::linalg::{hermite, IntMatrix};
use crate::par::{self, Exec};
use crate::perm::Permutation;
use crate::presentation::{Letter, Presentation, Word};

/// An element of the integral group ring of a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl FreeRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::identity())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, BigInt::one())
    }

    pub fn term(w: Word, c: BigInt) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    pub fn terms(&self) -> &BTreeMap<Word, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FreeRingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a word.
    pub fn left_mul(&self, w: &Word) -> Self {
        FreeRingElement { terms: self.terms.iter().map(|(v, c)| (w.mul(v), c.clone())).collect() }
    }

    pub fn render(&self, names: &[impl AsRef<str>]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            match (w.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&mag.to_string()),
                (false, true) => out.push_str(&w.render(names)),
                (false, false) => out.push_str(&format!("{mag}*{}", w.render(names))),
            }
        }
        out
    }
}

/// `∂w/∂s` for a single word: every occurrence of `s` contributes the
/// prefix before it, every occurrence of `s^-1` subtracts the prefix up to
/// and including it.
pub fn fox_derivative_word(w: &Word, s: usize) -> FreeRingElement {
    let mut out = FreeRingElement::zero();
    let letters = w.letters();
    for (i, l) in letters.iter().enumerate() {
        if l.gen != s {
            continue;
        }
        if l.inverse {
            out.add_term(Word::from_letters(letters[..=i].iter().copied()), BigInt::from(-1));
        } else {
            out.add_term(Word::from_letters(letters[..i].iter().copied()), BigInt::one());
        }
    }
    out
}

/// `∂x/∂s`, extended linearly.
pub fn fox_derivative(x: &FreeRingElement, s: usize) -> FreeRingElement {
    let mut out = FreeRingElement::zero();
    for (w, c) in x.terms() {
        for (v, d) in fox_derivative_word(w, s).terms {
            out.add_term(v, c * d);
        }
    }
    out
}

/// Checks `Σ_s (∂w/∂s)(s - 1) = w - 1` in the free-group ring.
pub fn fundamental_identity_check(w: &Word) -> bool {
    let lhs = w.generators_used().into_iter().fold(FreeRingElement::zero(), |acc, s| {
        let s_minus_one = FreeRingElement::word(Word::gen(s)).sub(&FreeRingElement::one());
        acc.add(&fox_derivative_word(w, s).mul(&s_minus_one))
    });
    lhs == FreeRingElement::word(w.clone()).sub(&FreeRingElement::one())
}

/// Memoized Fox derivatives keyed by (word, generator). Safe to share
/// across threads; cached values are the same as recomputed ones.
#[derive(Debug, Default)]
pub struct FoxCache {
    memo: Mutex<HashMap<(Word, usize), FreeRingElement>>,
}

impl FoxCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn derivative(&self, w: &Word, s: usize) -> FreeRingElement {
        let key = (w.clone(), s);
        if let Some(hit) = self.memo.lock().expect("fox cache poisoned").get(&key) {
            return hit.clone();
        }
        let value = fox_derivative_word(w, s);
        self.memo.lock().expect("fox cache poisoned").insert(key, value.clone());
        value
    }

    pub fn len(&self) -> usize {
        self.memo.lock().expect("fox cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientKind {
    Trivial,
    Abelianization,
    FinitePermutation,
    Custom,
}

/// A homomorphism from the free group on the presentation's generators to a
/// group oracle that kills every relator.
#[derive(Debug)]
pub struct QuotientMap<O: GroupOracle> {
    kind: QuotientKind,
    oracle: Arc<O>,
    images: Vec<O::Elem>,
}

impl<O: GroupOracle> Clone for QuotientMap<O> {
    fn clone(&self) -> Self {
        QuotientMap { kind: self.kind, oracle: Arc::clone(&self.oracle), images: self.images.clone() }
    }
}

impl<O: GroupOracle> QuotientMap<O> {
    /// Wraps generator images, rejecting maps that leave a relator alive.
    pub fn new(kind: QuotientKind, p: &Presentation, oracle: Arc<O>, images: Vec<O::Elem>) -> Result<Self> {
        if images.len() != p.rank() {
            return input(format!("{} generator images given for {} generators", images.len(), p.rank()));
        }
        let map = QuotientMap { kind, oracle, images };
        for r in p.relators() {
            if map.eval(r) != map.oracle.identity() {
                return input(format!("quotient does not kill relator {}", p.render(r)));
            }
        }
        Ok(map)
    }

    pub fn kind(&self) -> QuotientKind {
        self.kind
    }

    pub fn oracle(&self) -> &O {
        &self.oracle
    }

    pub fn oracle_arc(&self) -> Arc<O> {
        Arc::clone(&self.oracle)
    }

    pub fn images(&self) -> &[O::Elem] {
        &self.images
    }

    pub fn letter(&self, l: Letter) -> O::Elem {
        let g = &self.images[l.gen];
        if l.inverse {
            self.oracle.invert(g)
        } else {
            g.clone()
        }
    }

    pub fn eval(&self, w: &Word) -> O::Elem {
        w.letters().iter().fold(self.oracle.identity(), |acc, &l| self.oracle.multiply(&acc, &self.letter(l)))
    }

    pub fn ring(&self, domain: CoefficientDomain) -> GroupRing<O> {
        GroupRing::shared(Arc::clone(&self.oracle), domain)
    }

    /// Pushes an element of the free-group ring into `R Q`.
    pub fn push(&self, ring: &GroupRing<O>, x: &FreeRingElement) -> Result<Element<O>> {
        ring.from_terms(x.terms().iter().map(|(w, c)| (self.eval(w), Scalar::from_integer(c.clone()))))
    }
}

impl QuotientMap<FreeAbelian> {
    pub fn trivial(p: &Presentation) -> Self {
        let oracle = Arc::new(FreeAbelian::new(0));
        let images = vec![Vec::new(); p.rank()];
        QuotientMap { kind: QuotientKind::Trivial, oracle, images }
    }

    /// The map to the torsion-free part of the abelianization, `Z^r`. The
    /// images are read off a canonical basis of the integer kernel of the
    /// exponent-sum matrix.
    pub fn abelianization(p: &Presentation) -> Result<Self> {
        let n = p.rank();
        // Transposed exponent-sum matrix: one row per generator.
        let transposed: IntMatrix = (0..n)
            .map(|s| p.relators().iter().map(|r| BigInt::from(r.exponent_sum(s))).collect())
            .collect();
        let kernel = hermite(&transposed, p.relators().len()).left_kernel();
        let canonical = hermite(&kernel, n);
        let basis = canonical.basis();
        let r = basis.len();
        let to_i64 = |x: &BigInt| -> Result<i64> {
            i64::try_from(x).map_err(|_| Error::Unsupported("abelianization exponents overflow i64".into()))
        };
        let images = (0..n).map(|s| basis.iter().map(|v| to_i64(&v[s])).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        QuotientMap::new(QuotientKind::Abelianization, p, Arc::new(FreeAbelian::new(r)), images)
    }
}

impl QuotientMap<PermutationGroup> {
    pub fn permutation(p: &Presentation, perms: Vec<Permutation>) -> Result<Self> {
        let group = PermutationGroup::new(p.names(), perms)?;
        let images = group.generators().to_vec();
        QuotientMap::new(QuotientKind::FinitePermutation, p, Arc::new(group), images)
    }
}

/// The Jacobi matrix: entry `(w, s)` is the image of `∂w/∂s`.
pub fn jacobian<O: GroupOracle>(
    p: &Presentation,
    phi: &QuotientMap<O>,
    domain: &CoefficientDomain,
    exec: Exec,
) -> Result<GroupRingMatrix<O>> {
    let ring = phi.ring(domain.clone());
    let cache = FoxCache::new();
    let rank = p.rank();
    let rows = par::map(exec, p.relators(), |w| {
        (0..rank).map(|s| phi.push(&ring, &cache.derivative(w, s))).collect::<Result<Vec<_>>>()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    GroupRingMatrix::new(ring, p.relators().len(), rank, rows)
}

/// The partial resolution `d2 : R Q^W -> R Q^S`, `d1 : R Q^S -> R Q`,
/// `d0 : R Q -> R` (augmentation), as right multiplication on row vectors.
#[derive(Debug)]
pub struct ResolutionComplex<O: GroupOracle> {
    pub d2: GroupRingMatrix<O>,
    pub d1: GroupRingMatrix<O>,
}

impl<O: GroupOracle> ResolutionComplex<O> {
    /// The rows of `d2`, which generate the image of `d2` (the relation
    /// module when the quotient is the group itself).
    pub fn relation_module_generators(&self) -> &[Vec<Element<O>>] {
        self.d2.entries()
    }

    pub fn augmentation(&self, x: &Element<O>) -> Scalar {
        self.d1.ring().augmentation(x)
    }
}

pub fn resolution_complex<O: GroupOracle>(
    p: &Presentation,
    phi: &QuotientMap<O>,
    domain: &CoefficientDomain,
    exec: Exec,
) -> Result<ResolutionComplex<O>> {
    let d2 = jacobian(p, phi, domain, exec)?;
    let ring = d2.ring().clone();
    let column = (0..p.rank()).map(|s| vec![ring.minus_one(phi.images()[s].clone())]).collect();
    let d1 = GroupRingMatrix::new(ring.clone(), p.rank(), 1, column)?;
    if !d2.mul(&d1)?.is_zero() {
        return Err(Error::Internal("d1 after d2 is nonzero".into()));
    }
    if d1.entries().iter().any(|r| !ring.augmentation(&r[0]).is_zero()) {
        return Err(Error::Internal("augmentation after d1 is nonzero".into()));
    }
    Ok(ResolutionComplex { d2, d1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_word;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
        let g = names(gens);
        let rels = rels.iter().map(|r| parse_word(r, &g).unwrap()).collect();
        Presentation::new(&g, rels).unwrap()
    }

    #[test]
    fn basic_derivatives() {
        let g = names(&["a", "b"]);
        assert_eq!(fox_derivative_word(&Word::gen(0), 0), FreeRingElement::one());
        assert_eq!(fox_derivative_word(&Word::gen(0).inverse(), 0).render(&g), "-a^-1");
        let w = parse_word("a*b*a^-1", &g).unwrap();
        assert_eq!(fox_derivative_word(&w, 0).render(&g), "1 - a*b*a^-1");
        assert_eq!(fox_derivative_word(&w, 1).render(&g), "a");
    }

    #[test]
    fn fundamental_identity_examples() {
        let g = names(&["a", "b"]);
        for w in ["1", "a*b", "a^2*b^-3", "[a,b]^3*a"] {
            assert!(fundamental_identity_check(&parse_word(w, &g).unwrap()), "{w}");
        }
    }

    #[test]
    fn torus_jacobian() {
        let p = pres(&["a", "b"], &["a*b*a^-1*b^-1"]);
        let phi = QuotientMap::abelianization(&p).unwrap();
        let j = jacobian(&p, &phi, &CoefficientDomain::Integers, Exec::Sequential).unwrap();
        assert_eq!(j.render(), vec!["[1 - y, -1 + x]"]);
        resolution_complex(&p, &phi, &CoefficientDomain::Integers, Exec::Sequential).unwrap();
    }

    #[test]
    fn power_relator_trivial_quotient() {
        let p = pres(&["a"], &["a^5"]);
        let j = jacobian(&p, &QuotientMap::trivial(&p), &CoefficientDomain::Integers, Exec::Sequential).unwrap();
        assert_eq!(j.render(), vec!["[5]"]);
        let free = pres(&["a"], &[]);
        let j = jacobian(&free, &QuotientMap::trivial(&free), &CoefficientDomain::Integers, Exec::Sequential).unwrap();
        assert_eq!((j.rows(), j.cols()), (0, 1));
    }

    #[test]
    fn trefoil_over_laurent_ring() {
        let p = pres(&["a", "b"], &["a^2*b^-3"]);
        let phi = QuotientMap::abelianization(&p).unwrap();
        assert_eq!(phi.images(), &[vec![3], vec![2]]);
        let c = resolution_complex(&p, &phi, &CoefficientDomain::Integers, Exec::Sequential).unwrap();
        assert_eq!(c.d2.render(), vec!["[1 + t^3, -1 - t^2 - t^4]"]);
    }

    #[test]
    fn quotient_must_kill_relators() {
        let p = pres(&["a"], &["a^3"]);
        let two = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let err = QuotientMap::permutation(&p, vec![two]).unwrap_err();
        assert!(err.to_string().contains("a^3"));
        let three = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert!(QuotientMap::permutation(&p, vec![three]).is_ok());
    }
}
