//! One-relator hierarchies: epimorphisms to the integers, prefix sequences
//! over two-factor splittings, the coprime sequence lemma, and Magnus-style
//! HNN steps iterated into a hierarchy.

mod hnn;
mod sequence;
mod tree;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::presentation::{Presentation, Word};

pub use hnn::{hnn_step, EdgeLift, HnnStep, RelatorForm, Segment};
pub use sequence::{
    number_lemma_check, number_lemma_oracle, prefix_sequence, NumberLemmaReport, NumberLemmaVerdict, PrefixSequence,
    ORACLE_LENGTH_CAP,
};
pub use tree::{build_hierarchy, HierarchyNode, HierarchyTree, Leaf, NodeKind};

/// A surjection from the free group onto the integers, given by its values
/// on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpimorphismToZ {
    pub values: Vec<i64>,
}

impl EpimorphismToZ {
    pub fn eval(&self, w: &Word) -> i64 {
        w.letters().iter().map(|l| l.sign() * self.values[l.gen]).sum()
    }

    /// Values of all prefixes, from the empty prefix to the whole word.
    pub fn prefix_levels(&self, w: &Word) -> Vec<i64> {
        let mut out = Vec::with_capacity(w.len() + 1);
        let mut level = 0;
        out.push(level);
        for l in w.letters() {
            level += l.sign() * self.values[l.gen];
            out.push(level);
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = names.iter().zip(&self.values).map(|(n, v)| format!("{n}->{v}")).collect();
        parts.join(", ")
    }
}

/// The epimorphism killing the relator with the lexicographically least
/// value vector among those whose first nonzero value is positive. Such a
/// vector is supported on the last one or two generators.
pub fn find_epimorphism(p: &Presentation) -> Result<EpimorphismToZ> {
    if p.relators().len() > 1 {
        return input("expected at most one relator");
    }
    let n = p.rank();
    if n == 0 {
        return Err(Error::NoEpimorphism("the trivial group has no map onto Z".into()));
    }
    let sums: Vec<i64> = match p.relators().first() {
        Some(w) => (0..n).map(|s| w.exponent_sum(s)).collect(),
        None => vec![0; n],
    };
    let mut values = vec![0; n];
    if sums[n - 1] == 0 {
        values[n - 1] = 1;
    } else if n == 1 {
        return Err(Error::NoEpimorphism(format!("abelianization is Z/{}", sums[0].abs())));
    } else {
        let (x, y) = (sums[n - 1], -sums[n - 2]);
        let g = x.gcd(&y);
        let sign = if x != 0 { x.signum() } else { y.signum() };
        values[n - 2] = sign * x / g;
        values[n - 1] = sign * y / g;
    }
    Ok(EpimorphismToZ { values })
}
