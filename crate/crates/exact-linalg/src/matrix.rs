//! Dense matrices over the rationals.
//!
//! Rank uses fraction-free (Bareiss) elimination on a denominator-cleared
//! integer copy, which keeps intermediate entries as minors of the input.
//! Solving and kernel extraction use rational reduced row echelon form; the
//! kernel comes out in free-column normal form (each basis vector has a `1`
//! in "its" free column and `0` in the others), which makes re-expressing a
//! known kernel element a coordinate read-off.

use crate::rat::{bit_size, rat, Rat};
use crate::LinalgError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} * vec{}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        s += a * &v[j];
                    }
                }
                s
            })
            .collect())
    }

    /// Exact rank over Q via fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.to_integer_rows();
        bareiss_rank(&mut m)
    }

    /// Clears denominators row by row (rank-preserving).
    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut l = BigInt::one();
                for x in self.row(i) {
                    l = l.lcm(x.denom());
                }
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect()
    }

    /// Solves `M x = b`. Returns `None` when inconsistent, otherwise one
    /// particular solution (free variables set to zero) and a kernel basis.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<(Vec<Rat>, Vec<Vec<Rat>>)>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix {}x{}, rhs {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let mut aug: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| {
                let mut row: Vec<Rat> = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let pivots = rref(&mut aug, self.cols);
        for row in aug.iter() {
            if row[..self.cols].iter().all(|x| x.is_zero()) && !row[self.cols].is_zero() {
                return Ok(None);
            }
        }
        let mut particular = vec![Rat::zero(); self.cols];
        for &(r, c) in &pivots {
            particular[c] = aug[r][self.cols].clone();
        }
        let kernel = kernel_from_rref(&aug, self.cols, &pivots);
        Ok(Some((particular, kernel)))
    }

    /// Basis of the right null space in free-column normal form.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref(&mut m, self.cols);
        kernel_from_rref(&m, self.cols, &pivots)
    }

    /// Reduced row echelon form together with the pivot (row, col) list.
    pub fn rref(&self) -> (RatMatrix, Vec<(usize, usize)>) {
        let mut m: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref(&mut m, self.cols);
        (RatMatrix::from_rows(m), pivots)
    }
}

/// In-place RREF on the first `cols` columns (extra columns ride along, so an
/// augmented system can be reduced in one call). Returns pivot (row, col)
/// pairs in elimination order. Pivot rows are chosen to favour sparse rows,
/// which keeps fill-in low on the sparse systems produced by ad-matrices.
pub fn rref(m: &mut [Vec<Rat>], cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let mut nnz: Vec<usize> = m
        .iter()
        .map(|row| row.iter().filter(|x| !x.is_zero()).count())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // Candidate pivot: nonzero entry in column c, sparsest row first,
        // then smallest entry.
        let mut best: Option<usize> = None;
        for i in r..rows {
            if m[i][c].is_zero() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    let key_i = (nnz[i], bit_size(&m[i][c]));
                    let key_b = (nnz[b], bit_size(&m[b][c]));
                    if key_i < key_b {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        nnz.swap(r, p);
        let inv = m[r][c].clone();
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x / &inv;
                }
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            let (head, tail) = if i < r {
                let (a, b) = m.split_at_mut(r);
                (&mut a[i], &b[0])
            } else {
                let (a, b) = m.split_at_mut(i);
                (&mut b[0], &a[r])
            };
            let mut count = 0usize;
            for (x, y) in head.iter_mut().zip(tail.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
                if !x.is_zero() {
                    count += 1;
                }
            }
            nnz[i] = count;
        }
        nnz[r] = m[r].iter().filter(|x| !x.is_zero()).count();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

fn kernel_from_rref(m: &[Vec<Rat>], cols: usize, pivots: &[(usize, usize)]) -> Vec<Vec<Rat>> {
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for &(r, c) in pivots {
            if !m[r][f].is_zero() {
                v[c] = -m[r][f].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Fraction-free (Bareiss) rank of an integer matrix. Entries remain minors
/// of the input throughout; every division is exact.
pub fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..rows {
            if m[i][c].is_zero() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    if m[i][c].abs().bits() < m[b][c].abs().bits() {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        // one-step update: every trailing entry becomes a minor of the
        // input, so the division by the previous pivot is exact
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}
