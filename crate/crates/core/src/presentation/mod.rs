//! Free-group words, finite presentations, and the presentation text format.
//!
//! Words are kept freely reduced at all times. Relators inside a
//! [`Presentation`] are additionally cyclically reduced; the conjugator that
//! was stripped is kept alongside so the original relator can be recovered.

mod parse;
mod word;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

pub use parse::{parse_presentation_file, parse_quotient_spec, parse_word, PresentationFile};
pub use word::{free_reduce, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub index: usize,
}

pub(crate) fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Assignment of every generator to a free factor, e.g. `A = a ; B = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    /// Factor tags in declaration order.
    pub tags: Vec<String>,
    /// `factor_of[g]` is the tag index of generator `g`.
    pub factor_of: Vec<usize>,
}

impl Partition {
    pub fn new(tags: Vec<String>, factor_of: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = factor_of.iter().find(|&&t| t >= tags.len()) {
            return input(format!("partition refers to unknown factor index {bad}"));
        }
        Ok(Partition { tags, factor_of })
    }

    /// Builds a partition from `(tag, generators)` groups over an alphabet.
    pub fn from_groups(alphabet_size: usize, groups: &[(String, Vec<usize>)]) -> Result<Self> {
        let mut factor_of = vec![usize::MAX; alphabet_size];
        for (t, (_, gens)) in groups.iter().enumerate() {
            for &g in gens {
                if g >= alphabet_size {
                    return input(format!("partition generator index {g} out of range"));
                }
                if factor_of[g] != usize::MAX {
                    return input(format!("generator {g} assigned to two factors"));
                }
                factor_of[g] = t;
            }
        }
        if let Some(g) = factor_of.iter().position(|&t| t == usize::MAX) {
            return input(format!("partition is missing generator index {g}"));
        }
        Ok(Partition { tags: groups.iter().map(|(t, _)| t.clone()).collect(), factor_of })
    }

    pub fn factor(&self, gen: usize) -> Result<usize> {
        self.factor_of
            .get(gen)
            .copied()
            .ok_or_else(|| Error::Input(format!("partition is missing generator index {gen}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Syllable {
    pub factor: usize,
    pub word: Word,
}

/// Maximal same-factor runs of a word in a free product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllableDecomposition {
    pub syllables: Vec<Syllable>,
}

impl SyllableDecomposition {
    pub fn concat(&self) -> Word {
        self.syllables.iter().fold(Word::identity(), |acc, s| acc.mul(&s.word))
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

pub fn syllable_decompose(w: &Word, partition: &Partition) -> Result<SyllableDecomposition> {
    let mut syllables: Vec<Syllable> = Vec::new();
    let mut current: Vec<Letter> = Vec::new();
    let mut current_factor = None;
    for &l in w.letters() {
        let f = partition.factor(l.gen)?;
        if current_factor != Some(f) {
            if let Some(cf) = current_factor {
                syllables.push(Syllable { factor: cf, word: Word::from_letters(current.drain(..)) });
            }
            current_factor = Some(f);
        }
        current.push(l);
    }
    if let Some(cf) = current_factor {
        syllables.push(Syllable { factor: cf, word: Word::from_letters(current) });
    }
    Ok(SyllableDecomposition { syllables })
}

/// A finite presentation `⟨alphabet | relators⟩`, optionally split into
/// free factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    alphabet: Vec<Generator>,
    relators: Vec<Word>,
    conjugators: Vec<Word>,
    partition: Option<Partition>,
}

impl Presentation {
    /// Relators are cyclically reduced on the way in; the stripped
    /// conjugators are retained.
    pub fn new<S: AsRef<str>>(names: &[S], relators: Vec<Word>) -> Result<Self> {
        let mut alphabet = Vec::with_capacity(names.len());
        let mut seen = BTreeSet::new();
        for (index, n) in names.iter().enumerate() {
            let name = n.as_ref().to_string();
            if !valid_identifier(&name) {
                return input(format!("invalid generator name {name:?}"));
            }
            if !seen.insert(name.clone()) {
                return input(format!("duplicate generator {name:?}"));
            }
            alphabet.push(Generator { name, index });
        }
        let mut cores = Vec::with_capacity(relators.len());
        let mut conjugators = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(l) = r.letters().iter().find(|l| l.gen >= alphabet.len()) {
                return input(format!("relator uses generator index {} outside the alphabet", l.gen));
            }
            let (core, c) = r.cyclic_reduce();
            cores.push(core);
            conjugators.push(c);
        }
        Ok(Presentation { alphabet, relators: cores, conjugators, partition: None })
    }

    pub fn with_partition(mut self, partition: Partition) -> Result<Self> {
        if partition.factor_of.len() != self.alphabet.len() {
            return input("partition must cover the whole alphabet");
        }
        self.partition = Some(partition);
        Ok(self)
    }

    pub fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    pub fn names(&self) -> Vec<String> {
        self.alphabet.iter().map(|g| g.name.clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn conjugators(&self) -> &[Word] {
        &self.conjugators
    }

    /// The relators as originally given, conjugators restored.
    pub fn original_relators(&self) -> Vec<Word> {
        self.relators.iter().zip(&self.conjugators).map(|(r, c)| r.conjugate_by(c)).collect()
    }

    pub fn partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|g| g.name == name)
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(&self.names())
    }

    /// Deletes the generators no relator mentions. Returns the smaller
    /// presentation and, for each surviving generator, its old index.
    pub fn restrict_to_mentioned(&self) -> (Presentation, Vec<usize>) {
        let used: BTreeSet<usize> = self.relators.iter().flat_map(|r| r.generators_used()).collect();
        let kept: Vec<usize> = used.into_iter().collect();
        let mut new_index = vec![usize::MAX; self.rank()];
        for (i, &g) in kept.iter().enumerate() {
            new_index[g] = i;
        }
        let names: Vec<String> = kept.iter().map(|&g| self.alphabet[g].name.clone()).collect();
        let relators = self.relators.iter().map(|r| r.relabel(&new_index)).collect();
        let mut p = Presentation::new(&names, relators).expect("restriction of a valid presentation");
        if let Some(part) = &self.partition {
            p.partition = Some(Partition {
                tags: part.tags.clone(),
                factor_of: kept.iter().map(|&g| part.factor_of[g]).collect(),
            });
        }
        (p, kept)
    }

    /// One-line rendering `⟨a, b | r1, r2⟩` in ASCII.
    pub fn summary(&self) -> String {
        let names = self.names();
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&names)).collect();
        format!("< {} | {} >", names.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab_partition() -> Partition {
        Partition::from_groups(2, &[("A".into(), vec![0]), ("B".into(), vec![1])]).unwrap()
    }

    #[test]
    fn syllables() {
        let p = ab_partition();
        let d = syllable_decompose(&Word::from_powers(&[(0, 2), (1, -3)]), &p).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.syllables[0], Syllable { factor: 0, word: Word::from_powers(&[(0, 2)]) });
        assert_eq!(d.syllables[1], Syllable { factor: 1, word: Word::from_powers(&[(1, -3)]) });
        let abab = Word::from_powers(&[(0, 1), (1, 1), (0, 1), (1, 1)]);
        assert_eq!(syllable_decompose(&abab, &p).unwrap().len(), 4);
        let baab = Word::from_powers(&[(1, 1), (0, 2), (1, 1)]);
        let d = syllable_decompose(&baab, &p).unwrap();
        let factors: Vec<usize> = d.syllables.iter().map(|s| s.factor).collect();
        assert_eq!(factors, vec![1, 0, 1]);
        assert_eq!(d.concat(), baab);
    }

    #[test]
    fn partition_must_be_total() {
        assert!(Partition::from_groups(3, &[("A".into(), vec![0]), ("B".into(), vec![1])]).is_err());
        let short = Partition::new(vec!["A".into()], vec![0]).unwrap();
        assert!(syllable_decompose(&Word::gen(1), &short).is_err());
    }

    #[test]
    fn relators_are_cyclically_reduced() {
        let r = Word::from_powers(&[(1, 1), (0, 1), (1, -1)]);
        let p = Presentation::new(&["a", "b"], vec![r.clone()]).unwrap();
        assert_eq!(p.relators()[0], Word::gen(0));
        assert_eq!(p.conjugators()[0], Word::gen(1));
        assert_eq!(p.original_relators()[0], r);
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Presentation::new(&["a", "a"], vec![]).is_err());
        assert!(Presentation::new(&["1a"], vec![]).is_err());
        assert!(Presentation::new(&["a"], vec![Word::gen(1)]).is_err());
    }

    #[test]
    fn restriction_drops_unused() {
        let p = Presentation::new(&["a", "b", "c"], vec![Word::from_powers(&[(2, 2), (0, -1)])]).unwrap();
        let (q, kept) = p.restrict_to_mentioned();
        assert_eq!(kept, vec![0, 2]);
        assert_eq!(q.names(), vec!["a", "c"]);
        assert_eq!(q.relators()[0], Word::from_powers(&[(1, 2), (0, -1)]));
    }
}
