//! Exact linear algebra: Hermite and Smith forms over the integers, row
//! reduction over the coefficient fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::groupring::{CoefficientDomain, Scalar};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn width(m: &IntMatrix, cols: usize) -> usize {
    m.first().map_or(cols, Vec::len)
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn axpy_row(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = m.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m[r].iter_mut() {
        *x = -&*x;
    }
}

/// Row-style Hermite normal form with transform.
#[derive(Clone, Debug)]
pub struct Hermite {
    /// `transform * input = form`, with `transform` unimodular.
    pub form: IntMatrix,
    pub transform: IntMatrix,
    /// Pivot column of each nonzero row of `form`, in order.
    pub pivots: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Nonzero rows of the form. Two lattices are equal exactly when these
    /// agree.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.form[..self.rank()]
    }

    /// A basis of the left kernel `{x : x M = 0}`.
    pub fn left_kernel(&self) -> IntMatrix {
        self.transform[self.rank()..].to_vec()
    }
}

/// Computes the Hermite normal form of `m` (pivots positive, entries above
/// each pivot reduced into `0..pivot`). `cols` gives the width when `m` has
/// no rows.
pub fn hermite(m: &IntMatrix, cols: usize) -> Hermite {
    let rows = m.len();
    let cols = width(m, cols);
    let mut form = m.clone();
    let mut transform = identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows).filter(|&i| !form[i][c].is_zero()).min_by(|&i, &j| form[i][c].abs().cmp(&form[j][c].abs()));
            let Some(p) = best else { break };
            form.swap(r, p);
            transform.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if form[i][c].is_zero() {
                    continue;
                }
                let q = form[i][c].div_floor(&form[r][c]);
                axpy_row(&mut form, i, r, &q);
                axpy_row(&mut transform, i, r, &q);
                if !form[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !form[r][c].is_zero() {
            if form[r][c].is_negative() {
                negate_row(&mut form, r);
                negate_row(&mut transform, r);
            }
            for i in 0..r {
                let q = form[i][c].div_floor(&form[r][c]);
                axpy_row(&mut form, i, r, &q);
                axpy_row(&mut transform, i, r, &q);
            }
            pivots.push(c);
            r += 1;
        }
    }
    Hermite { form, transform, pivots }
}

/// Whether two row sets span the same sublattice of `Z^cols`.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix, cols: usize) -> bool {
    hermite(a, cols).basis() == hermite(b, cols).basis()
}

/// Nonzero invariant factors of the Smith normal form, ascending and each
/// dividing the next.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = width(&a, 0);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = a[i][t].div_floor(&a[t][t]);
                axpy_row(&mut a, i, t, &q);
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let y = row[t].clone();
                    if !y.is_zero() {
                        row[j] -= &q * y;
                    }
                }
                clean &= a[t][j].is_zero();
            }
        }
        if clean {
            diag.push(a[t][t].abs());
            t += 1;
        }
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// Rank over the rationals.
pub fn rank_int(m: &IntMatrix) -> usize {
    hermite(m, 0).rank()
}

/// Reduced row echelon form over a field domain; returns the pivot columns.
pub fn rref(m: &mut [Vec<Scalar>], domain: &CoefficientDomain) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = domain.inv(&m[r][c]).expect("field element is invertible");
        for x in m[r].iter_mut() {
            *x = domain.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = domain.sub(x, &domain.mul(&f, y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_field(m: &[Vec<Scalar>], domain: &CoefficientDomain) -> usize {
    rref(&mut m.to_vec(), domain).len()
}

/// Basis of `{x : M x = 0}` over a field, one vector per free column, in
/// increasing free-column order.
pub fn nullspace_field(m: &[Vec<Scalar>], cols: usize, domain: &CoefficientDomain) -> Vec<Vec<Scalar>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a, domain);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![domain.zero(); cols];
            v[f] = domain.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = domain.neg(&a[row][f]);
            }
            v
        })
        .collect()
}

/// Product of integer matrices (`a` is `n x k`, `b` is `k x m`).
pub fn int_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for (k, x) in row.iter().enumerate().take(inner) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}
