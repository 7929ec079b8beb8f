//! Lower-trapezoidal (staircase) shape of group-ring matrices.
//!
//! A matrix is lower trapezoidal under given row and column orders when the
//! last nonzero column `j_i` of each row is strictly increasing down the
//! rows. Shape depends only on the zero pattern; entry values matter only
//! when the diagonal entries `(i, j_i)` are certified non-engulfing.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::groupring::{
    engulfing_search_finite, non_engulfing_certificate_ordered, EngulfingReport, GroupOracle, GroupRingMatrix, Side,
};
use crate::par::Exec;

/// Orders under which a matrix is lower trapezoidal. `diag[i]` is the
/// position (within `cols`) of the last nonzero entry of row `rows[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseCertificate {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub diag: Vec<usize>,
}

impl StaircaseCertificate {
    /// Original (row, column) indices of the diagonal entries.
    pub fn diagonal_entries(&self) -> Vec<(usize, usize)> {
        self.rows.iter().zip(&self.diag).map(|(&r, &d)| (r, self.cols[d])).collect()
    }
}

/// The first row position that breaks the staircase. `column` is the
/// position of its last nonzero entry, absent for a zero row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub row: usize,
    pub column: Option<usize>,
}

fn check_orders(pattern: &[Vec<bool>], cols: usize, row_order: &[usize], col_order: &[usize]) -> Result<()> {
    let is_perm = |order: &[usize], n: usize| {
        let mut seen = vec![false; n];
        order.len() == n && order.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
    };
    if !is_perm(row_order, pattern.len()) || !is_perm(col_order, cols) {
        return input("row and column orders must be permutations of the matrix indices");
    }
    Ok(())
}

/// Validates a staircase under fixed orders.
pub fn is_lower_trapezoidal(
    pattern: &[Vec<bool>],
    cols: usize,
    row_order: &[usize],
    col_order: &[usize],
) -> Result<std::result::Result<StaircaseCertificate, Violation>> {
    check_orders(pattern, cols, row_order, col_order)?;
    let mut diag = Vec::with_capacity(row_order.len());
    for (i, &r) in row_order.iter().enumerate() {
        let last = (0..cols).rev().find(|&p| pattern[r][col_order[p]]);
        match last {
            None => return Ok(Err(Violation { row: i, column: None })),
            Some(p) if diag.last().is_some_and(|&prev| p <= prev) => {
                return Ok(Err(Violation { row: i, column: Some(p) }))
            }
            Some(p) => diag.push(p),
        }
    }
    Ok(Ok(StaircaseCertificate { rows: row_order.to_vec(), cols: col_order.to_vec(), diag }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StaircaseSearch {
    Found { certificate: StaircaseCertificate },
    /// Exhaustive search found no orders. `states` counts the column sets
    /// examined.
    Impossible { reason: String, states: usize },
    /// The heuristic gave up; nothing is claimed.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub allow_row_permutation: bool,
    pub cap: usize,
    /// Above the cap, fall back to a greedy pass instead of refusing.
    pub heuristic: bool,
}

impl SearchOptions {
    /// Whether a `rows x cols` pattern is too large for the exact search.
    pub fn exceeds_cap(&self, rows: usize, cols: usize) -> bool {
        rows > self.cap || cols > self.cap
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { allow_row_permutation: true, cap: 12, heuristic: false }
    }
}

struct Staircase {
    /// Row supports as column bitmasks.
    rows: Vec<u64>,
    fixed_rows: bool,
    full: u64,
    memo: HashMap<u64, bool>,
}

impl Staircase {
    fn new(pattern: &[Vec<bool>], cols: usize, fixed_rows: bool) -> Self {
        let rows = pattern
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &nz)| nz).fold(0u64, |m, (j, _)| m | (1 << j)))
            .collect();
        let full = if cols == 64 { u64::MAX } else { (1u64 << cols) - 1 };
        Staircase { rows, fixed_rows, full, memo: HashMap::new() }
    }

    /// Whether column `c` may sit last among the columns in `set`: the rows
    /// supported inside `set` are exactly the rows not yet finished, and at
    /// most one of them may end at `c`. With fixed rows that one must also
    /// come last among them.
    fn may_end(&self, set: u64, c: usize) -> bool {
        let mut hit = None;
        let mut last_remaining = None;
        for (i, &s) in self.rows.iter().enumerate() {
            if s & !set != 0 {
                continue;
            }
            last_remaining = Some(i);
            if s & (1 << c) != 0 {
                if hit.is_some() {
                    return false;
                }
                hit = Some(i);
            }
        }
        !self.fixed_rows || hit.is_none() || hit == last_remaining
    }

    /// Whether the columns outside `set` can be arranged after those in
    /// `set`.
    fn completes(&mut self, set: u64) -> bool {
        if set == self.full {
            return true;
        }
        if let Some(&v) = self.memo.get(&set) {
            return v;
        }
        let mut ok = false;
        let mut rest = self.full & !set;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let bigger = set | (1 << c);
            if self.may_end(bigger, c) && self.completes(bigger) {
                ok = true;
                break;
            }
        }
        self.memo.insert(set, ok);
        ok
    }

    fn zero_row(&self) -> Option<usize> {
        self.rows.iter().position(|&s| s == 0)
    }

    /// Lexicographically least valid column order, built front to back.
    fn least_order(&mut self, cols: usize) -> Option<Vec<usize>> {
        let mut order = Vec::with_capacity(cols);
        let mut set = 0u64;
        for _ in 0..cols {
            let next = (0..cols).find(|&c| {
                set & (1 << c) == 0 && self.may_end(set | (1 << c), c) && self.completes(set | (1 << c))
            })?;
            set |= 1 << next;
            order.push(next);
        }
        Some(order)
    }

    /// Greedy back-to-front peeling, no search.
    fn greedy(&self, cols: usize) -> Option<Vec<usize>> {
        let mut set = self.full;
        let mut back = Vec::with_capacity(cols);
        while set != 0 {
            let c = (0..cols).find(|&c| set & (1 << c) != 0 && self.may_end(set, c))?;
            back.push(c);
            set &= !(1 << c);
        }
        back.reverse();
        Some(back)
    }
}

fn certificate_for(pattern: &[Vec<bool>], cols: usize, col_order: Vec<usize>, fixed_rows: bool) -> Result<StaircaseCertificate> {
    let position: Vec<usize> = {
        let mut pos = vec![0; cols];
        for (p, &c) in col_order.iter().enumerate() {
            pos[c] = p;
        }
        pos
    };
    let last = |r: usize| (0..cols).filter(|&c| pattern[r][c]).map(|c| position[c]).max();
    let mut rows: Vec<usize> = (0..pattern.len()).collect();
    if !fixed_rows {
        rows.sort_by_key(|&r| last(r));
    }
    is_lower_trapezoidal(pattern, cols, &rows, &col_order)?
        .map_err(|v| Error::Internal(format!("staircase search produced an invalid order at row {}", v.row)))
}

/// Searches for row and column orders making the pattern lower trapezoidal.
/// The exact search returns the certificate with the lexicographically least
/// column order.
pub fn find_staircase(pattern: &[Vec<bool>], cols: usize, opts: SearchOptions) -> Result<StaircaseSearch> {
    if pattern.iter().any(|r| r.len() != cols) {
        return input("pattern rows must all have the given width");
    }
    let over_cap = opts.exceeds_cap(pattern.len(), cols);
    if over_cap && !opts.heuristic {
        return Err(Error::Unsupported(format!(
            "{}x{} exceeds the exact-search cap {}; use the heuristic mode",
            pattern.len(),
            cols,
            opts.cap
        )));
    }
    if cols > 64 {
        return Err(Error::Unsupported("more than 64 columns".into()));
    }
    let fixed_rows = !opts.allow_row_permutation;
    let mut search = Staircase::new(pattern, cols, fixed_rows);
    if let Some(r) = search.zero_row() {
        return Ok(if over_cap {
            StaircaseSearch::Unknown
        } else {
            StaircaseSearch::Impossible { reason: format!("row {r} is zero"), states: 0 }
        });
    }
    if over_cap {
        return Ok(match search.greedy(cols) {
            Some(order) => StaircaseSearch::Found { certificate: certificate_for(pattern, cols, order, fixed_rows)? },
            None => StaircaseSearch::Unknown,
        });
    }
    match search.least_order(cols) {
        Some(order) => Ok(StaircaseSearch::Found { certificate: certificate_for(pattern, cols, order, fixed_rows)? }),
        None => Ok(StaircaseSearch::Impossible {
            reason: "no column order separates the row ends".into(),
            states: search.memo.len(),
        }),
    }
}

/// How diagonal entries are certified non-engulfing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagonalStrategy {
    OrderedOracle,
    FiniteSearch(Exec),
}

#[derive(Clone, Debug)]
pub struct DiagonalReport<E: Ord> {
    /// (row, column, report) per diagonal entry, in certificate order.
    pub entries: Vec<(usize, usize, EngulfingReport<E>)>,
    pub verdict: bool,
}

/// Checks every diagonal entry of a staircase for left engulfing.
pub fn certify_diagonal<O: GroupOracle>(
    m: &GroupRingMatrix<O>,
    cert: &StaircaseCertificate,
    strategy: DiagonalStrategy,
) -> Result<DiagonalReport<O::Elem>> {
    let mut entries = Vec::new();
    for (r, c) in cert.diagonal_entries() {
        if r >= m.rows() || c >= m.cols() {
            return input("certificate does not fit the matrix");
        }
        let entry = m.get(r, c);
        let report = match strategy {
            DiagonalStrategy::OrderedOracle => non_engulfing_certificate_ordered(m.ring(), entry, Side::Left)?,
            DiagonalStrategy::FiniteSearch(exec) => engulfing_search_finite(m.ring(), entry, Side::Left, exec)?,
        };
        entries.push((r, c, report));
    }
    let verdict = entries.iter().all(|(_, _, rep)| rep.is_non_engulfing());
    Ok(DiagonalReport { entries, verdict })
}
