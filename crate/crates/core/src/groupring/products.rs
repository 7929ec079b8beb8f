use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{input, Result};

use super::oracle::GroupOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductSide {
    Plain,
    Left,
    Right,
}

/// Each product with every factor pair producing it.
type ProductTable<E> = BTreeMap<E, Vec<(E, E)>>;

/// A product `a b` with exactly one representation in `A B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueProduct<E> {
    pub left: E,
    pub right: E,
    pub product: E,
}

#[derive(Clone, Debug)]
pub struct UniqueProductsReport<E> {
    pub unique: Vec<UniqueProduct<E>>,
    pub distinct_left: usize,
    pub distinct_right: usize,
    pub product_set_size: usize,
    pub verdict: bool,
}

/// Enumerates `A B` with multiplicity and decides whether at least `k`
/// products are uniquely represented. In `Left` mode the `k` products must
/// have pairwise distinct left factors, in `Right` mode distinct right
/// factors. Distinct unique products never share both factors, so the
/// distinct counts are the best achievable.
pub fn unique_products_check<O: GroupOracle>(
    oracle: &O,
    a: &[O::Elem],
    b: &[O::Elem],
    k: usize,
    side: ProductSide,
) -> Result<UniqueProductsReport<O::Elem>> {
    if k == 0 {
        return input("k must be positive");
    }
    let a: BTreeSet<_> = a.iter().cloned().collect();
    let b: BTreeSet<_> = b.iter().cloned().collect();
    if a.is_empty() || b.is_empty() {
        return input("factor sets must be nonempty");
    }
    let mut table: ProductTable<O::Elem> = BTreeMap::new();
    for x in &a {
        for y in &b {
            table.entry(oracle.multiply(x, y)).or_default().push((x.clone(), y.clone()));
        }
    }
    match side {
        ProductSide::Plain if table.len() < k => {
            return input(format!("|AB| = {} is smaller than k = {k}", table.len()))
        }
        ProductSide::Left if a.len() < k => return input(format!("|A| = {} is smaller than k = {k}", a.len())),
        ProductSide::Right if b.len() < k => return input(format!("|B| = {} is smaller than k = {k}", b.len())),
        _ => {}
    }
    let product_set_size = table.len();
    let unique: Vec<_> = table
        .into_iter()
        .filter(|(_, reps)| reps.len() == 1)
        .map(|(product, mut reps)| {
            let (left, right) = reps.pop().expect("one representation");
            UniqueProduct { left, right, product }
        })
        .collect();
    let distinct_left = unique.iter().map(|u| &u.left).collect::<BTreeSet<_>>().len();
    let distinct_right = unique.iter().map(|u| &u.right).collect::<BTreeSet<_>>().len();
    let verdict = match side {
        ProductSide::Plain => unique.len() >= k,
        ProductSide::Left => distinct_left >= k,
        ProductSide::Right => distinct_right >= k,
    };
    Ok(UniqueProductsReport { unique, distinct_left, distinct_right, product_set_size, verdict })
}
