use crate::error::{input, Result};

use super::element::{Element, GroupRing};
use super::oracle::GroupOracle;

/// A rectangular matrix over a group ring. Maps between free modules act by
/// right multiplication on row vectors.
#[derive(Debug)]
pub struct GroupRingMatrix<O: GroupOracle> {
    ring: GroupRing<O>,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Element<O>>>,
}

impl<O: GroupOracle> Clone for GroupRingMatrix<O> {
    fn clone(&self) -> Self {
        GroupRingMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.clone() }
    }
}

impl<O: GroupOracle> GroupRingMatrix<O> {
    pub fn new(ring: GroupRing<O>, rows: usize, cols: usize, entries: Vec<Vec<Element<O>>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return input(format!("matrix entries do not form a {rows}x{cols} grid"));
        }
        for e in entries.iter().flatten() {
            ring.check(e)?;
        }
        Ok(GroupRingMatrix { ring, rows, cols, entries })
    }

    pub fn zero(ring: GroupRing<O>, rows: usize, cols: usize) -> Self {
        let entries = (0..rows).map(|_| (0..cols).map(|_| ring.zero()).collect()).collect();
        GroupRingMatrix { ring, rows, cols, entries }
    }

    pub fn ring(&self) -> &GroupRing<O> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Element<O> {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[Element<O>] {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Vec<Element<O>>] {
        &self.entries
    }

    /// Zero/nonzero pattern.
    pub fn pattern(&self) -> Vec<Vec<bool>> {
        self.entries.iter().map(|r| r.iter().map(|e| !e.is_zero()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &GroupRingMatrix<O>) -> Result<GroupRingMatrix<O>> {
        if self.cols != other.rows {
            return input(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols));
        }
        let mut entries = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(other.cols);
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = self.ring.add(&acc, &self.ring.mul(&self.entries[i][k], &other.entries[k][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(GroupRingMatrix { ring: self.ring.clone(), rows: self.rows, cols: other.cols, entries })
    }

    /// Applies `f` to every entry, e.g. to scale a row.
    pub fn map_rows<F>(&self, f: F) -> Result<GroupRingMatrix<O>>
    where
        F: Fn(usize, &Element<O>) -> Result<Element<O>>,
    {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|e| f(i, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GroupRingMatrix::new(self.ring.clone(), self.rows, self.cols, entries)
    }

    /// One line per row, entries in brackets.
    pub fn render(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| self.ring.render(e)).collect::<Vec<_>>().join(", ")))
            .collect()
    }
}
