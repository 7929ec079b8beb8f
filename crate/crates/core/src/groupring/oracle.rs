use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::OnceLock;

use crate::error::{input, Result};
use crate::perm::Permutation;
use crate::presentation::{Letter, Word};

use super::magnus::magnus_compare;

/// Black-box access to a group.
///
/// `Elem` doubles as the canonical key: two handles are equal exactly when
/// they denote the same group element. Its `Ord` is only a storage order
/// for deterministic iteration; the group order, when there is one, comes
/// from [`GroupOracle::compare`].
pub trait GroupOracle: Send + Sync + Debug {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    /// Short name, used to reject arithmetic across different groups.
    fn descriptor(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;

    /// A right-invariant total order, when the group carries one.
    fn compare(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Ordering> {
        None
    }

    fn is_ordered(&self) -> bool {
        false
    }

    /// All elements, identity first, for finite groups.
    fn elements(&self) -> Option<&[Self::Elem]> {
        None
    }

    fn index_of(&self, a: &Self::Elem) -> Option<usize> {
        self.elements()?.iter().position(|x| x == a)
    }

    fn render(&self, a: &Self::Elem) -> String;

    /// Image of a single generator letter, for oracles that come with named
    /// generators.
    fn generator_image(&self, _letter: Letter) -> Option<Self::Elem> {
        None
    }

    fn generator_names(&self) -> Vec<String> {
        Vec::new()
    }

    /// Evaluates a word in the oracle's own generators.
    fn eval_word(&self, w: &Word) -> Option<Self::Elem> {
        w.letters()
            .iter()
            .try_fold(self.identity(), |acc, &l| Some(self.multiply(&acc, &self.generator_image(l)?)))
    }
}

fn render_monomial(names: &[String], exps: impl Iterator<Item = (usize, i64)>) -> String {
    let parts: Vec<String> = exps
        .filter(|&(_, e)| e != 0)
        .map(|(i, e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `Z^n` written multiplicatively, ordered lexicographically on exponent
/// vectors. Rank zero is the trivial group.
#[derive(Clone, Debug)]
pub struct FreeAbelian {
    names: Vec<String>,
}

impl FreeAbelian {
    pub fn new(rank: usize) -> Self {
        let names = match rank {
            1 => vec!["t".to_string()],
            2 => vec!["x".to_string(), "y".to_string()],
            _ => (1..=rank).map(|i| format!("x{i}")).collect(),
        };
        FreeAbelian { names }
    }

    pub fn with_names(names: Vec<String>) -> Self {
        FreeAbelian { names }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }
}

impl GroupOracle for FreeAbelian {
    type Elem = Vec<i64>;

    fn descriptor(&self) -> String {
        format!("Z^{}", self.rank())
    }

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank()]
    }

    fn multiply(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn invert(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn compare(&self, a: &Vec<i64>, b: &Vec<i64>) -> Option<Ordering> {
        Some(a.cmp(b))
    }

    fn is_ordered(&self) -> bool {
        true
    }

    fn elements(&self) -> Option<&[Vec<i64>]> {
        static TRIVIAL: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
        (self.rank() == 0).then(|| TRIVIAL.get_or_init(|| vec![Vec::new()]).as_slice())
    }

    fn render(&self, a: &Vec<i64>) -> String {
        render_monomial(&self.names, a.iter().copied().enumerate())
    }

    fn generator_image(&self, l: Letter) -> Option<Vec<i64>> {
        (l.gen < self.rank()).then(|| {
            let mut v = self.identity();
            v[l.gen] = l.sign();
            v
        })
    }

    fn generator_names(&self) -> Vec<String> {
        self.names.clone()
    }
}

/// The cyclic group of order `n` with generator `g`.
#[derive(Clone, Debug)]
pub struct Cyclic {
    n: u64,
    elems: Vec<u64>,
}

impl Cyclic {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return input("cyclic group order must be positive");
        }
        Ok(Cyclic { n, elems: (0..n).collect() })
    }

    pub fn order(&self) -> u64 {
        self.n
    }
}

impl GroupOracle for Cyclic {
    type Elem = u64;

    fn descriptor(&self) -> String {
        format!("Z/{}", self.n)
    }

    fn identity(&self) -> u64 {
        0
    }

    fn multiply(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.n
    }

    fn invert(&self, a: &u64) -> u64 {
        (self.n - a % self.n) % self.n
    }

    fn elements(&self) -> Option<&[u64]> {
        Some(&self.elems)
    }

    fn index_of(&self, a: &u64) -> Option<usize> {
        (*a < self.n).then_some(*a as usize)
    }

    fn render(&self, a: &u64) -> String {
        match a {
            0 => "1".into(),
            1 => "g".into(),
            k => format!("g^{k}"),
        }
    }

    fn generator_image(&self, l: Letter) -> Option<u64> {
        (l.gen == 0).then(|| if l.inverse { self.invert(&1) } else { 1 % self.n })
    }

    fn generator_names(&self) -> Vec<String> {
        vec!["g".into()]
    }
}

/// The permutation group generated by named permutations. The element list
/// is enumerated once, breadth first from the identity.
#[derive(Debug)]
pub struct PermutationGroup {
    names: Vec<String>,
    gens: Vec<Permutation>,
    degree: usize,
    cache: OnceLock<(Vec<Permutation>, HashMap<Permutation, usize>)>,
    limit: usize,
}

impl PermutationGroup {
    /// Default cap on the number of enumerated elements.
    pub const DEFAULT_LIMIT: usize = 40_320;

    pub fn new(names: Vec<String>, gens: Vec<Permutation>) -> Result<Self> {
        if names.len() != gens.len() {
            return input("one name per permutation generator required");
        }
        let degree = gens.iter().map(Permutation::degree).max().unwrap_or(1).max(1);
        let gens = gens.iter().map(|g| g.extended(degree)).collect();
        Ok(PermutationGroup { names, gens, degree, cache: OnceLock::new(), limit: Self::DEFAULT_LIMIT })
    }

    /// The symmetric group on `n` points, generated by `(1 2)` and `(1 .. n)`.
    pub fn symmetric(n: usize) -> Result<Self> {
        let s = Permutation::from_cycles(n, &[vec![0, 1]])?;
        let c = Permutation::from_cycles(n, &[(0..n).collect()])?;
        PermutationGroup::new(vec!["s".into(), "c".into()], vec![s, c])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    fn table(&self) -> &(Vec<Permutation>, HashMap<Permutation, usize>) {
        self.cache.get_or_init(|| {
            let id = Permutation::identity(self.degree);
            let mut elems = vec![id.clone()];
            let mut index = HashMap::from([(id.clone(), 0)]);
            let mut queue = VecDeque::from([id]);
            while let Some(x) = queue.pop_front() {
                for g in &self.gens {
                    let y = x.then(g);
                    if !index.contains_key(&y) {
                        assert!(elems.len() < self.limit, "permutation group exceeds {} elements", self.limit);
                        index.insert(y.clone(), elems.len());
                        elems.push(y.clone());
                        queue.push_back(y);
                    }
                }
            }
            (elems, index)
        })
    }

    pub fn order(&self) -> usize {
        self.table().0.len()
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for g in &self.gens {
                let y = g.apply(x);
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl GroupOracle for PermutationGroup {
    type Elem = Permutation;

    fn descriptor(&self) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        format!("<{}> on {} points", gens.join(", "), self.degree)
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn multiply(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.then(b)
    }

    fn invert(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn elements(&self) -> Option<&[Permutation]> {
        Some(&self.table().0)
    }

    fn index_of(&self, a: &Permutation) -> Option<usize> {
        self.table().1.get(a).copied()
    }

    fn render(&self, a: &Permutation) -> String {
        a.to_string()
    }

    fn generator_image(&self, l: Letter) -> Option<Permutation> {
        let g = self.gens.get(l.gen)?;
        Some(if l.inverse { g.inverse() } else { g.clone() })
    }

    fn generator_names(&self) -> Vec<String> {
        self.names.clone()
    }
}

/// The free group on named generators with the Magnus bi-order.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    names: Vec<String>,
}

impl FreeGroup {
    pub fn new(names: Vec<String>) -> Self {
        FreeGroup { names }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }
}

impl GroupOracle for FreeGroup {
    type Elem = Word;

    fn descriptor(&self) -> String {
        format!("F({})", self.names.join(","))
    }

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn multiply(&self, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }

    fn invert(&self, a: &Word) -> Word {
        a.inverse()
    }

    fn compare(&self, a: &Word, b: &Word) -> Option<Ordering> {
        Some(magnus_compare(a, b))
    }

    fn is_ordered(&self) -> bool {
        true
    }

    fn render(&self, a: &Word) -> String {
        a.render(&self.names)
    }

    fn generator_image(&self, l: Letter) -> Option<Word> {
        (l.gen < self.rank()).then(|| Word::letter(l))
    }

    fn generator_names(&self) -> Vec<String> {
        self.names.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_order() {
        assert_eq!(PermutationGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(PermutationGroup::symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn cyclic_arithmetic() {
        let c = Cyclic::new(6).unwrap();
        assert_eq!(c.multiply(&4, &5), 3);
        assert_eq!(c.invert(&2), 4);
        assert_eq!(c.invert(&0), 0);
        assert_eq!(c.eval_word(&Word::from_powers(&[(0, -2)])), Some(4));
    }

    #[test]
    fn identity_listed_first() {
        let g = PermutationGroup::symmetric(4).unwrap();
        assert!(g.elements().unwrap()[0].is_identity());
        assert!(g.is_transitive());
    }

    #[test]
    fn renders() {
        let z2 = FreeAbelian::new(2);
        assert_eq!(z2.render(&vec![1, -2]), "x*y^-2");
        assert_eq!(z2.render(&vec![0, 0]), "1");
    }
}
