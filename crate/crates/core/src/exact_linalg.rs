//! Dense linear algebra over the rationals.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination on
//! integer rows: every row is first cleared of denominators, which changes
//! neither the rank nor (up to a known factor) the determinant. Kernels are
//! computed by ordinary rational row reduction and returned in reduced
//! echelon form so that they are canonical.
//!
//! Pivoting is deterministic everywhere: columns are scanned left to right
//! and the first row (in current order) with a nonzero entry is the pivot.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape { rows, cols, len: entries.len() });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::Shape { rows: n_rows, cols: n_cols, len: row.len() });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { rows: n_rows, cols: n_cols, entries })
    }

    pub fn from_integers(rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Rows cleared of denominators, each paired with the factor it was
    /// multiplied by.
    fn integer_rows(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let scale = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let ints = row.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
                (ints, scale)
            })
            .collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Outcome of fraction-free forward elimination.
struct Echelon {
    pivots: Vec<usize>,
    /// Last pivot of the elimination; for a full-rank square matrix this is
    /// the determinant of the integer matrix up to sign.
    last_pivot: BigInt,
    swaps: usize,
}

/// Bareiss elimination in place. Rows are permuted by swaps; the pivot
/// columns are the lexicographically first independent columns.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> Echelon {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !prev.is_one() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { pivots, last_pivot: prev, swaps }
}

fn nonzero_integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    m.integer_rows()
        .into_iter()
        .map(|(row, _)| row)
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Exact rank over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut a = nonzero_integer_rows(m);
    if a.is_empty() {
        return 0;
    }
    bareiss(&mut a, m.cols).pivots.len()
}

/// Indices of the pivot columns: the first independent columns, scanning left
/// to right. Applied to a transpose this selects the first independent rows.
pub fn pivot_columns(m: &RationalMatrix) -> Vec<usize> {
    let mut a = nonzero_integer_rows(m);
    bareiss(&mut a, m.cols).pivots
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &RationalMatrix) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    if m.rows == 0 {
        return Ok(BigRational::one());
    }
    let (mut a, scales): (Vec<_>, Vec<_>) = m.integer_rows().into_iter().unzip();
    let echelon = bareiss(&mut a, m.cols);
    if echelon.pivots.len() < m.rows {
        return Ok(BigRational::zero());
    }
    let mut det = echelon.last_pivot;
    if echelon.swaps % 2 == 1 {
        det = -det;
    }
    let scale: BigInt = scales.iter().product();
    Ok(BigRational::new(det, scale))
}

/// Reduced row echelon form by rational elimination; returns the pivot
/// columns. Zero rows end up at the bottom.
fn rref(a: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r][c..].iter_mut() {
            *x *= &inv;
        }
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    let delta = &factor * &pivot_row[j];
                    row[j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space `{v : m v = 0}`.
///
/// The basis is returned in reduced echelon form: each vector has leading
/// entry 1, the leading positions increase, and every leading position is zero
/// in all other vectors. This makes the output independent of how the kernel
/// was found.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let cols = m.cols;
    let mut a: Vec<Vec<BigRational>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let pivots = rref(&mut a, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis: Vec<Vec<BigRational>> = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -a[k][free].clone();
            }
            v
        })
        .collect();
    let dim = basis.len();
    rref(&mut basis, cols);
    basis.truncate(dim);
    basis
}

/// Largest absolute numerator, a cheap size indicator for diagnostics.
pub fn max_abs_numerator(m: &RationalMatrix) -> BigInt {
    m.entries.iter().map(|x| x.numer().abs()).max().unwrap_or_default()
}
