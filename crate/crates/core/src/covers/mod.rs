//! Chain complexes of finite covers of presentation complexes, their exact
//! homology, and the graph-level cycle lifting used to build embedded
//! relator cycles.
//!
//! A [`FiniteQuotient`] is a permutation image of the generators that kills
//! every relator. Expanding the Jacobi matrix over `Z[Q]` through the
//! regular representation of `Q` gives the cellular chain complex of the
//! corresponding finite cover, as integer matrices acting on row vectors.

mod graph;

use std::fmt;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::foxcalc::{jacobian, QuotientMap};
use crate::groupring::{CoefficientDomain, GroupOracle, PermutationGroup, Scalar};
use crate::linalg::{hermite, rank_field, same_lattice, smith_invariants, IntMatrix};
use crate::par::{self, Exec};
use crate::perm::Permutation;
use crate::presentation::{Presentation, Word};

pub use graph::{cycle_space, lift_cycle, CycleLift, Edge, Graph, GraphWithCycleSpace, LiftOutcome};

/// A finite permutation quotient of a presented group.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    map: QuotientMap<PermutationGroup>,
}

impl FiniteQuotient {
    pub fn new(p: &Presentation, perms: Vec<Permutation>) -> Result<Self> {
        Ok(FiniteQuotient { map: QuotientMap::permutation(p, perms)? })
    }

    /// The one-point quotient.
    pub fn trivial(p: &Presentation) -> Self {
        FiniteQuotient::new(p, vec![Permutation::identity(1); p.rank()]).expect("identity kills every relator")
    }

    pub fn degree(&self) -> usize {
        self.map.oracle().degree()
    }

    pub fn order(&self) -> usize {
        self.map.oracle().order()
    }

    pub fn images(&self) -> &[Permutation] {
        self.map.images()
    }

    pub fn elements(&self) -> &[Permutation] {
        self.map.oracle().elements().expect("permutation groups are enumerable")
    }

    pub fn is_transitive(&self) -> bool {
        self.map.oracle().is_transitive()
    }

    pub fn eval(&self, w: &Word) -> Permutation {
        self.map.eval(w)
    }

    pub fn map(&self) -> &QuotientMap<PermutationGroup> {
        &self.map
    }

    fn index(&self, g: &Permutation) -> usize {
        self.map.oracle().index_of(g).expect("element of the quotient")
    }
}

/// Cellular chains of the cover `C2 -> C1 -> C0` as integer matrices acting
/// on row vectors: `d2` is `|W||Q| x |S||Q|` and `d1` is `|S||Q| x |Q|`.
/// Basis cell `(cell, g)` sits at index `cell * |Q| + index(g)`.
#[derive(Clone, Debug)]
pub struct CoverComplex {
    pub relators: usize,
    pub generators: usize,
    pub order: usize,
    pub d2: IntMatrix,
    pub d1: IntMatrix,
    /// Labels of the 2-cells, 1-cells and 0-cells, e.g. `r1@(1 2)`.
    pub labels: [Vec<String>; 3],
}

fn cell_labels(prefix: &[String], elements: &[Permutation]) -> Vec<String> {
    prefix.iter().flat_map(|c| elements.iter().map(move |g| format!("{c}@{g}"))).collect()
}

fn scalar_to_int(x: &Scalar) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::Internal(format!("non-integral Fox coefficient {x}")));
    }
    Ok(x.to_integer())
}

/// Expands the Jacobi matrix over `Z[Q]` through the regular representation.
pub fn build_cover_complex(p: &Presentation, q: &FiniteQuotient, exec: Exec) -> Result<CoverComplex> {
    let n = q.order();
    let rank = p.rank();
    let jac = jacobian(p, q.map(), &CoefficientDomain::Integers, exec)?;
    let elements = q.elements();
    let group = q.map().oracle();
    // Row (w, h) is h * J_w: the coefficient of g in J_ws lands on column (s, hg).
    let block_rows: Vec<(usize, usize)> = (0..p.relators().len()).flat_map(|w| (0..n).map(move |h| (w, h))).collect();
    let d2 = par::map(exec, &block_rows, |&(w, h)| -> Result<Vec<BigInt>> {
        let mut row = vec![BigInt::zero(); rank * n];
        for s in 0..rank {
            for (g, c) in jac.get(w, s).terms() {
                let k = q.index(&group.multiply(&elements[h], g));
                row[s * n + k] += scalar_to_int(c)?;
            }
        }
        Ok(row)
    })
    .into_iter()
    .collect::<Result<IntMatrix>>()?;
    let mut d1 = vec![vec![BigInt::zero(); n]; rank * n];
    for s in 0..rank {
        for (k, g) in elements.iter().enumerate() {
            let row = &mut d1[s * n + k];
            row[q.index(&group.multiply(g, &q.images()[s]))] += 1;
            row[k] -= 1;
        }
    }
    let relator_names: Vec<String> = (1..=p.relators().len()).map(|i| format!("r{i}")).collect();
    let complex = CoverComplex {
        relators: p.relators().len(),
        generators: rank,
        order: n,
        labels: [cell_labels(&relator_names, elements), cell_labels(&p.names(), elements), cell_labels(&["v".into()], elements)],
        d2,
        d1,
    };
    if !complex.composite_is_zero() {
        return Err(Error::Internal("d2 * d1 is nonzero on the cover".into()));
    }
    Ok(complex)
}

impl CoverComplex {
    pub fn composite_is_zero(&self) -> bool {
        crate::linalg::int_mul(&self.d2, &self.d1, self.generators * self.order, self.order)
            .iter()
            .all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn chain_ranks(&self) -> [usize; 3] {
        [self.order, self.generators * self.order, self.relators * self.order]
    }

    /// Both boundary maps in sparse triplet form: a header line
    /// `name rows cols nonzeros`, then one `row col value` line per nonzero
    /// entry with 0-based indices.
    pub fn to_triplets(&self) -> String {
        let [c0, c1, c2] = self.chain_ranks();
        let mut out = String::new();
        for (name, m, rows, cols) in [("d2", &self.d2, c2, c1), ("d1", &self.d1, c1, c0)] {
            let nonzero: Vec<(usize, usize, &BigInt)> = m
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(j, x)| (i, j, x)))
                .collect();
            out.push_str(&format!("{name} {rows} {cols} {}\n", nonzero.len()));
            for (i, j, x) in nonzero {
                out.push_str(&format!("{i} {j} {x}\n"));
            }
        }
        out
    }
}

/// A finitely generated module over the coefficient ring: `R^rank` plus
/// torsion `Z/d` summands (integers only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Whether the group is exactly one copy of the coefficient ring.
    pub fn is_ring(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub domain: CoefficientDomain,
    pub h0: HomologyGroup,
    pub h1: HomologyGroup,
}

impl HomologyGroup {
    /// E.g. `Z^2 + Z/6`, `F3`, or `0`.
    pub fn render(&self, domain: &CoefficientDomain) -> String {
        let ring = domain.name();
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(ring),
            r => parts.push(format!("{ring}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H0 = {}, H1 = {}", self.h0.render(&self.domain), self.h1.render(&self.domain))
    }
}

fn to_field(m: &IntMatrix, domain: &CoefficientDomain) -> Vec<Vec<Scalar>> {
    m.iter()
        .map(|r| r.iter().map(|x| domain.normalize(Scalar::from_integer(x.clone())).expect("integers embed")).collect())
        .collect()
}

fn rank_over(m: &IntMatrix, domain: &CoefficientDomain) -> usize {
    match domain {
        CoefficientDomain::Integers | CoefficientDomain::Rationals => hermite(m, 0).rank(),
        CoefficientDomain::PrimeField(_) => rank_field(&to_field(m, domain), domain),
    }
}

/// `H0 = C0 / im d1` and `H1 = ker d1 / im d2`. Over the integers the
/// torsion comes from Smith invariants; `ker d1` is saturated, so the torsion
/// of `H1` equals that of `C1 / im d2`.
pub fn homology(c: &CoverComplex, domain: &CoefficientDomain) -> Homology {
    let [c0, c1, _] = c.chain_ranks();
    let r1 = rank_over(&c.d1, domain);
    let r2 = rank_over(&c.d2, domain);
    let torsion = |m: &IntMatrix| -> Vec<BigInt> {
        if *domain != CoefficientDomain::Integers {
            return Vec::new();
        }
        smith_invariants(m).into_iter().filter(|d| !d.is_one()).collect()
    };
    Homology {
        domain: domain.clone(),
        h0: HomologyGroup { rank: c0 - r1, torsion: torsion(&c.d1) },
        h1: HomologyGroup { rank: c1 - r1 - r2, torsion: torsion(&c.d2) },
    }
}

/// Whether the `d2` rows of the chosen relators (every lift of each) span
/// `ker d1`. Lattice equality over the integers, dimension count over fields.
pub fn generation_check(c: &CoverComplex, relators: &[usize], domain: &CoefficientDomain) -> Result<bool> {
    if let Some(&bad) = relators.iter().find(|&&w| w >= c.relators) {
        return input(format!("relator index {bad} out of range"));
    }
    let width = c.generators * c.order;
    let selected: IntMatrix =
        relators.iter().flat_map(|&w| c.d2[w * c.order..(w + 1) * c.order].iter().cloned()).collect();
    let kernel = hermite(&c.d1, c.order).left_kernel();
    Ok(match domain {
        CoefficientDomain::Integers => same_lattice(&selected, &kernel, width),
        _ => rank_over(&selected, domain) == width - rank_over(&c.d1, domain),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubwordStatus {
    /// The subword maps to a nontrivial element of the quotient, so it is
    /// not in the normal closure of the relators.
    NontrivialCertified,
    /// The subword maps to the identity; nothing is concluded.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubwordReport {
    pub subword: Word,
    pub image: String,
    pub status: SubwordStatus,
}

/// Evaluates every distinct proper cyclic subword of a relator in a finite
/// quotient.
pub fn weinbaum_scan(w: &Word, p: &Presentation, q: &FiniteQuotient, exec: Exec) -> Result<Vec<SubwordReport>> {
    let core = w.cyclic_reduce().0;
    let is_relator = p.relators().iter().any(|r| core.is_rotation_of(r) || core.is_rotation_of(&r.inverse()));
    if !is_relator {
        return input(format!("{} is not a relator of the presentation", p.render(w)));
    }
    let subwords = core.proper_subwords(true);
    Ok(par::map(exec, &subwords, |s| {
        let image = q.eval(s);
        let status = if image.is_identity() { SubwordStatus::Unknown } else { SubwordStatus::NontrivialCertified };
        SubwordReport { subword: s.clone(), image: image.to_string(), status }
    }))
}

/// Converts a small integer matrix for display.
pub fn to_i64_rows(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_matrix;
    use crate::presentation::parse_word;

    fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
        let g: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let rels = rels.iter().map(|r| parse_word(r, &g).unwrap()).collect();
        Presentation::new(&g, rels).unwrap()
    }

    fn cover(p: &Presentation) -> CoverComplex {
        build_cover_complex(p, &FiniteQuotient::trivial(p), Exec::Sequential).unwrap()
    }

    #[test]
    fn trivial_quotient_matrices() {
        let c = cover(&pres(&["a"], &["a^4"]));
        assert_eq!(c.d2, int_matrix(&[vec![4]]));
        assert_eq!(c.d1, int_matrix(&[vec![0]]));
        let c = cover(&pres(&["a", "b"], &["[a,b]"]));
        assert_eq!(c.d2, int_matrix(&[vec![0, 0]]));
    }

    #[test]
    fn order_two_cover() {
        let p = pres(&["a"], &["a^2"]);
        let q = FiniteQuotient::new(&p, vec![Permutation::from_cycles(2, &[vec![0, 1]]).unwrap()]).unwrap();
        let c = build_cover_complex(&p, &q, Exec::Sequential).unwrap();
        assert_eq!(c.d2, int_matrix(&[vec![1, 1], vec![1, 1]]));
        assert_eq!(c.d1, int_matrix(&[vec![-1, 1], vec![1, -1]]));
        let h = homology(&c, &CoefficientDomain::Integers);
        assert!(h.h0.is_ring());
        // The double cover of the projective plane is a sphere.
        assert!(h.h1.is_zero());
        assert!(c.to_triplets().starts_with("d2 2 2 4\n"));
    }

    #[test]
    fn homology_examples() {
        let h = homology(&cover(&pres(&["a"], &["a^6"])), &CoefficientDomain::Integers);
        assert_eq!(h.h1, HomologyGroup { rank: 0, torsion: vec![BigInt::from(6)] });
        assert_eq!(h.to_string(), "H0 = Z, H1 = Z/6");
        let h = homology(&cover(&pres(&["a", "b"], &["[a,b]"])), &CoefficientDomain::Integers);
        assert_eq!(h.h1.rank, 2);
        let h = homology(&cover(&pres(&["a"], &["a^6"])), &CoefficientDomain::PrimeField(3));
        assert_eq!(h.h1.rank, 1);
        let h = homology(&cover(&pres(&["a"], &["a^6"])), &CoefficientDomain::Rationals);
        assert!(h.h1.is_zero());
    }

    #[test]
    fn generation() {
        let c = cover(&pres(&["a", "b"], &["a", "b"]));
        assert!(!generation_check(&c, &[0], &CoefficientDomain::Integers).unwrap());
        assert!(generation_check(&c, &[0, 1], &CoefficientDomain::Integers).unwrap());
        let c = cover(&pres(&["a"], &["a^2"]));
        assert!(!generation_check(&c, &[0], &CoefficientDomain::Integers).unwrap());
        assert!(generation_check(&c, &[0], &CoefficientDomain::Rationals).unwrap());
        assert!(generation_check(&c, &[1], &CoefficientDomain::Integers).is_err());
    }

    #[test]
    fn weinbaum_in_cyclic_quotient() {
        let p = pres(&["a", "b"], &["a^2*b^-3"]);
        let c = Permutation::from_cycles(13, &[(0..13).collect()]).unwrap();
        let pow = |k: usize| (0..k).fold(Permutation::identity(13), |acc, _| acc.then(&c));
        let q = FiniteQuotient::new(&p, vec![pow(3), pow(2)]).unwrap();
        let report = weinbaum_scan(&p.relators()[0], &p, &q, Exec::Sequential).unwrap();
        assert!(report.iter().all(|r| r.status == SubwordStatus::NontrivialCertified));
        let report = weinbaum_scan(&p.relators()[0], &p, &FiniteQuotient::trivial(&p), Exec::Sequential).unwrap();
        assert!(report.iter().all(|r| r.status == SubwordStatus::Unknown));
        assert!(weinbaum_scan(&Word::gen(0), &p, &q, Exec::Sequential).is_err());
    }
}
