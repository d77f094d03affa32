//! Exact rank over the rational function field Q(T_1..T_m).
//!
//! Fraction-free (Bareiss) elimination with sparse multivariate polynomial
//! entries. The rank over the function field equals the maximal rank of any
//! specialization, so this is the exact ceiling that random evaluation
//! approaches from below. Intended for small matrices; a term budget guards
//! against blow-up and signals the caller to fall back to probabilistic
//! certification.

use crate::linform::LinMatrix;
use crate::mpoly::MPoly;
use crate::LinalgError;

pub const DEFAULT_TERM_BUDGET: usize = 200_000;

/// Exact rank of a matrix of linear forms over Q(T_1..T_m).
pub fn symbolic_rank(m: &LinMatrix, max_terms: usize) -> Result<usize, LinalgError> {
    let grid: Vec<Vec<MPoly>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| MPoly::from_linform(m.get(i, j), m.nvars).0)
                .collect()
        })
        .collect();
    bareiss_rank_poly(grid, max_terms)
}

/// Rank of [M | b] over the function field, for generic-solvability tests.
pub fn symbolic_rank_augmented(
    m: &LinMatrix,
    b: &[MPoly],
    max_terms: usize,
) -> Result<usize, LinalgError> {
    assert_eq!(b.len(), m.rows());
    let grid: Vec<Vec<MPoly>> = (0..m.rows())
        .map(|i| {
            let mut row: Vec<MPoly> = (0..m.cols())
                .map(|j| MPoly::from_linform(m.get(i, j), m.nvars).0)
                .collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    bareiss_rank_poly(grid, max_terms)
}

fn bareiss_rank_poly(mut m: Vec<Vec<MPoly>>, max_terms: usize) -> Result<usize, LinalgError> {
    let rows = m.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = m[0].len();
    let nvars = m[0][0].nvars;
    let mut prev = MPoly::constant(nvars, num_bigint::BigInt::from(1));
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // Smallest nonzero pivot keeps the polynomials short.
        let mut best: Option<usize> = None;
        for i in r..rows {
            if m[i][c].is_zero() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    if m[i][c].term_size() < m[b][c].term_size() {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(p) = best else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t1 = m[r][c].mul(&m[i][j], max_terms)?;
                let t2 = m[i][c].mul(&m[r][j], max_terms)?;
                m[i][j] = t1.sub(&t2).exact_div(&prev)?;
            }
            m[i][c] = MPoly::zero(nvars);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Ok(r)
}
