use num_integer::Integer;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::par::{self, Exec};
use crate::presentation::{syllable_decompose, Partition, Word};

use super::EpimorphismToZ;

/// Longest sequence the exhaustive lemma oracle accepts.
pub const ORACLE_LENGTH_CAP: usize = 13;

/// Values of the epimorphism on the syllable prefixes of a relator in a
/// two-factor free product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixSequence {
    /// `0, φ(a1), φ(a1 b1), ..., φ(w) = 0` for the relator as given, after
    /// rotating it to start with a syllable of the first factor.
    pub values: Vec<i64>,
    pub min: i64,
    pub max: i64,
    /// The sequence read from a rotation starting at the first minimum,
    /// shifted to be nonnegative with zero endpoints.
    pub normalized: Vec<i64>,
    /// Position in `values` where `normalized` starts; `-min` is the shift.
    pub normalization_start: usize,
    /// Factor whose syllable is crossed by the first step of `normalized`.
    pub normalized_start_factor: usize,
    /// Gcd of the epimorphism values on each factor's generators.
    pub factor_steps: [i64; 2],
}

impl PrefixSequence {
    pub fn span(&self) -> i64 {
        self.max - self.min
    }

    /// Moduli `(a, b)` for the sequence lemma applied to `normalized`: steps
    /// across first-kind syllables are multiples of `b`, across the others of
    /// `a`.
    pub fn lemma_parameters(&self) -> (i64, i64) {
        let s = self.normalized_start_factor;
        (self.factor_steps[1 - s], self.factor_steps[s])
    }

    /// `Σ (i_l - j_l)` over the normalized sequence.
    pub fn syllable_sum(&self) -> i64 {
        alternating_sum(&self.normalized)
    }

    /// When the factor steps are positive and coprime and the syllable sum is
    /// nonzero, whether `max - min >= a + b - 1`. `None` when the bound does
    /// not apply.
    pub fn span_bound_holds(&self) -> Option<bool> {
        let (a, b) = self.lemma_parameters();
        if a <= 0 || b <= 0 || a.gcd(&b) != 1 || self.syllable_sum() == 0 {
            return None;
        }
        Some(self.span() >= a + b - 1)
    }
}

fn alternating_sum(seq: &[i64]) -> i64 {
    seq.chunks(2).filter(|c| c.len() == 2).map(|c| c[0] - c[1]).sum()
}

/// Computes the prefix sequence of `w` with respect to a two-factor
/// partition.
pub fn prefix_sequence(w: &Word, phi: &EpimorphismToZ, partition: &Partition) -> Result<PrefixSequence> {
    if partition.tags.len() != 2 {
        return input("prefix sequences need a partition into exactly two factors");
    }
    if phi.values.len() != partition.factor_of.len() {
        return input("epimorphism and partition cover different alphabets");
    }
    let core = w.cyclic_reduce().0;
    if phi.eval(&core) != 0 {
        return input(format!("relator maps to {} under the epimorphism, not 0", phi.eval(&core)));
    }
    let mut syllables = syllable_decompose(&core, partition)?.syllables;
    // Merge the wrap-around syllable so the cyclic word alternates.
    if syllables.len() > 1 && syllables[0].factor == syllables[syllables.len() - 1].factor {
        let last = syllables.pop().expect("nonempty");
        syllables[0].word = last.word.mul(&syllables[0].word);
    }
    if syllables.first().is_some_and(|s| s.factor == 1) {
        syllables.rotate_left(1);
    }
    let mut values = vec![0];
    let mut level = 0;
    let mut expect = 0;
    for s in &syllables {
        if s.factor != expect {
            // A one-factor relator: pad with an empty syllable.
            values.push(level);
        }
        level += phi.eval(&s.word);
        values.push(level);
        expect = 1 - s.factor;
    }
    if values.len() % 2 == 0 {
        values.push(level);
    }
    let min = *values.iter().min().expect("nonempty");
    let max = *values.iter().max().expect("nonempty");
    let start = values.iter().position(|&v| v == min).expect("min is attained");
    let period = values.len() - 1;
    let normalized: Vec<i64> = (0..=period).map(|k| values[(start + k) % period] - min).collect();
    let step = |f: usize| {
        (0..phi.values.len()).filter(|&g| partition.factor_of[g] == f).fold(0i64, |acc, g| acc.gcd(&phi.values[g]))
    };
    Ok(PrefixSequence {
        values,
        min,
        max,
        normalized,
        normalization_start: start,
        normalized_start_factor: start % 2,
        factor_steps: [step(0), step(1)],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NumberLemmaVerdict {
    SumZero,
    /// `index` is the first entry with value at least `a + b - 1`.
    LargeEntry { index: usize, sum: i64 },
    /// Neither disjunct holds. The lemma rules this out.
    CounterexampleToLemma { sum: i64 },
}

fn validate(a: i64, b: i64, seq: &[i64]) -> Result<()> {
    if a < 1 || b < 1 || a.gcd(&b) != 1 {
        return input(format!("({a}, {b}) is not a pair of coprime positive integers"));
    }
    if seq.len().is_multiple_of(2) || seq[0] != 0 || seq[seq.len() - 1] != 0 {
        return input("sequence must have odd length with both endpoints 0");
    }
    if let Some(v) = seq.iter().find(|&&v| v < 0) {
        return input(format!("negative entry {v}"));
    }
    for (k, pair) in seq.windows(2).enumerate() {
        let m = if k % 2 == 0 { b } else { a };
        if (pair[0] - pair[1]) % m != 0 {
            return input(format!("entries {k} and {} differ by a non-multiple of {m}", k + 1));
        }
    }
    Ok(())
}

/// Reports which alternative of the coprime sequence lemma holds for
/// `0 = i1, j1, i2, ..., jn, i(n+1) = 0` with `i - j` in `bZ` and `j - i'`
/// in `aZ`.
pub fn number_lemma_check(a: i64, b: i64, seq: &[i64]) -> Result<NumberLemmaVerdict> {
    if seq.is_empty() {
        return input("empty sequence");
    }
    validate(a, b, seq)?;
    let sum = alternating_sum(seq);
    if sum == 0 {
        return Ok(NumberLemmaVerdict::SumZero);
    }
    Ok(match seq.iter().position(|&v| v >= a + b - 1) {
        Some(index) => NumberLemmaVerdict::LargeEntry { index, sum },
        None => NumberLemmaVerdict::CounterexampleToLemma { sum },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumberLemmaReport {
    pub a: i64,
    pub b: i64,
    pub max_len: usize,
    /// `(length, sequences)` for every odd length up to `max_len`.
    pub by_length: Vec<(usize, u64)>,
    pub sequences: u64,
    pub counterexamples: Vec<Vec<i64>>,
}

fn extend(seq: &mut Vec<i64>, target: usize, a: i64, b: i64, bound: i64, count: &mut u64, bad: &mut Vec<Vec<i64>>) {
    let k = seq.len();
    let prev = seq[k - 1];
    // Position k - 1 -> k crosses a `b` step when k - 1 is even.
    let m = if (k - 1).is_multiple_of(2) { b } else { a };
    if k == target - 1 {
        if prev % m == 0 {
            seq.push(0);
            *count += 1;
            if alternating_sum(seq) != 0 {
                bad.push(seq.clone());
            }
            seq.pop();
        }
        return;
    }
    let mut v = prev.rem_euclid(m);
    while v < bound {
        seq.push(v);
        extend(seq, target, a, b, bound, count, bad);
        seq.pop();
        v += m;
    }
}

/// Enumerates every admissible sequence with entries below `a + b - 1` and
/// odd length at most `max_len`, and collects those with nonzero sum.
pub fn number_lemma_oracle(a: i64, b: i64, max_len: usize, exec: Exec) -> Result<NumberLemmaReport> {
    if a < 1 || b < a || a.gcd(&b) != 1 {
        return input(format!("need coprime 1 <= a <= b, got ({a}, {b})"));
    }
    if max_len > ORACLE_LENGTH_CAP {
        return Err(Error::Unsupported(format!("max_len {max_len} exceeds the cap {ORACLE_LENGTH_CAP}")));
    }
    let bound = a + b - 1;
    let lengths: Vec<usize> = (1..=max_len).step_by(2).collect();
    // Split each length on the first free entry so the pool has work items.
    let jobs: Vec<(usize, i64)> = lengths
        .iter()
        .flat_map(|&len| {
            let firsts: Vec<i64> = if len == 1 { vec![0] } else { (0..bound).step_by(b as usize).collect() };
            firsts.into_iter().map(move |f| (len, f))
        })
        .collect();
    let results = par::map(exec, &jobs, |&(len, first)| {
        let mut count = 0;
        let mut bad = Vec::new();
        if len == 1 {
            count = 1;
        } else {
            let mut seq = vec![0, first];
            if len == 3 {
                if first % a == 0 {
                    count = 1;
                    if first != 0 {
                        bad.push(vec![0, first, 0]);
                    }
                }
            } else {
                extend(&mut seq, len, a, b, bound, &mut count, &mut bad);
            }
        }
        (len, count, bad)
    });
    let mut by_length: Vec<(usize, u64)> = lengths.iter().map(|&l| (l, 0)).collect();
    let mut counterexamples = Vec::new();
    for (len, count, bad) in results {
        by_length.iter_mut().find(|(l, _)| *l == len).expect("known length").1 += count;
        counterexamples.extend(bad);
    }
    let sequences = by_length.iter().map(|(_, c)| c).sum();
    Ok(NumberLemmaReport { a, b, max_len, by_length, sequences, counterexamples })
}
