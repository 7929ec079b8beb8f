use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// A signed generator: `gen` or `gen^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word in a free group. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(gen: usize) -> Self {
        Word(vec![Letter::pos(gen)])
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Builds a word from arbitrary letters, freely reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Convenience constructor from `(generator, exponent)` pairs.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Word::from_letters(powers.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        let mut rest = other.0.as_slice();
        while let (Some(&last), Some(&first)) = (out.last(), rest.first()) {
            if last.cancels(first) {
                out.pop();
                rest = &rest[1..];
            } else {
                break;
            }
        }
        out.extend_from_slice(rest);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Conjugate `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) if self.0.len() > 1 => !f.cancels(l),
            _ => true,
        }
    }

    /// Splits the word as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let letters = &self.0;
        let mut lo = 0;
        let mut hi = letters.len();
        while hi - lo > 1 && letters[lo].cancels(letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        (Word(letters[lo..hi].to_vec()), Word(letters[..lo].to_vec()))
    }

    /// Cyclic rotation starting at letter `k`. Only meaningful for
    /// cyclically reduced words, where the result is again reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::identity();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn rotations(&self) -> Vec<Word> {
        (0..self.0.len().max(1)).map(|k| self.rotate(k)).collect()
    }

    /// Whether `other` equals some cyclic rotation of `self`.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        self.is_empty() || (0..self.len()).any(|k| &self.rotate(k) == other)
    }

    /// Returns `(root, k)` with `root^k == self` letter for letter and `k`
    /// maximal. Uses the smallest rotation period of the letter string.
    pub fn proper_power(&self) -> Result<(Word, usize)> {
        if self.is_empty() {
            return input("proper-power test on the empty word");
        }
        let n = self.len();
        // The least period p > 0 with rotate(p) == self always divides n.
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && self.0[p..] == self.0[..n - p])
            .unwrap_or(n);
        Ok((Word(self.0[..period].to_vec()), n / period))
    }

    /// Every proper non-empty contiguous subword, with multiplicity, ordered
    /// by length then start position. Cyclic mode reads subwords off all
    /// rotations (the word must be cyclically reduced).
    pub fn proper_subword_occurrences(&self, cyclic: bool) -> Vec<Word> {
        let n = self.len();
        let mut out = Vec::new();
        for len in 1..n {
            if cyclic {
                for start in 0..n {
                    out.push(Word((0..len).map(|i| self.0[(start + i) % n]).collect()));
                }
            } else {
                for start in 0..=(n - len) {
                    out.push(Word(self.0[start..start + len].to_vec()));
                }
            }
        }
        out
    }

    /// [`Word::proper_subword_occurrences`] deduplicated by letter sequence,
    /// keeping first appearance.
    pub fn proper_subwords(&self, cyclic: bool) -> Vec<Word> {
        let mut seen = BTreeSet::new();
        self.proper_subword_occurrences(cyclic)
            .into_iter()
            .filter(|w| seen.insert(w.clone()))
            .collect()
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.sign()).sum()
    }

    pub fn generators_used(&self) -> BTreeSet<usize> {
        self.0.iter().map(|l| l.gen).collect()
    }

    /// Image under the homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        self.0.iter().fold(Word::identity(), |acc, l| {
            let img = &images[l.gen];
            if l.inverse {
                acc.mul(&img.inverse())
            } else {
                acc.mul(img)
            }
        })
    }

    /// Renames generators through `map`; `map[g]` must be defined for every
    /// generator used.
    pub fn relabel(&self, map: &[usize]) -> Word {
        Word(self.0.iter().map(|l| Letter::new(map[l.gen], l.inverse)).collect())
    }

    /// Shortlex order: shorter words first, then lexicographic on letters.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Renders with the given generator names, e.g. `a*b^-1*a^2`.
    pub fn render(&self, names: &[impl AsRef<str>]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign();
            let name = names.get(l.gen).map(|s| s.as_ref().to_string()).unwrap_or_else(|| format!("g{}", l.gen));
            parts.push(if run == 1 { name } else { format!("{name}^{run}") });
            i = j;
        }
        parts.join("*")
    }
}

/// Free reduction of a raw letter sequence over an alphabet of `rank`
/// generators.
pub fn free_reduce(raw: &[Letter], rank: usize) -> Result<Word> {
    if let Some(bad) = raw.iter().find(|l| l.gen >= rank) {
        return input(format!("generator index {} outside alphabet of size {rank}", bad.gen));
    }
    Ok(Word::from_letters(raw.iter().copied()))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.0.iter().map(|l| l.gen + 1).max().unwrap_or(0)).map(|g| format!("g{g}")).collect();
        f.write_str(&self.render(&names))
    }
}
