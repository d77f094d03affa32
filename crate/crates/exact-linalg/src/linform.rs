//! Linear polynomials in indeterminates T_1..T_m and matrices of them.

use crate::matrix::RatMatrix;
use crate::modular::{mul_mod, reduce_int, reduce_rat, ModMatrix};
use crate::rat::{rat, Rat};
use crate::LinalgError;
use num_traits::Zero;
use rand::Rng;
use std::collections::BTreeMap;

/// Degree <= 1 polynomial: a constant plus a linear combination of
/// indeterminates. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinForm {
    pub constant: Rat,
    pub coeffs: BTreeMap<usize, Rat>,
}

impl LinForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        LinForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    /// The indeterminate T_i (0-based index).
    pub fn var(i: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, rat(1));
        LinForm {
            constant: Rat::zero(),
            coeffs,
        }
    }

    pub fn add_term(&mut self, i: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(i).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut v = self.constant.clone();
        for (&i, c) in &self.coeffs {
            v += c * &point[i];
        }
        v
    }

    pub fn eval_mod(&self, point: &[u64], p: u64) -> Result<u64, LinalgError> {
        let mut v = reduce_rat(&self.constant, p)?;
        for (&i, c) in &self.coeffs {
            let cv = reduce_rat(c, p)?;
            v = (v + mul_mod(cv, point[i], p)) % p;
        }
        Ok(v)
    }
}

/// Dense matrix of linear forms in `nvars` indeterminates.
#[derive(Clone, Debug)]
pub struct LinMatrix {
    rows: usize,
    cols: usize,
    pub nvars: usize,
    entries: Vec<LinForm>,
}

impl LinMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        LinMatrix {
            rows,
            cols,
            nvars,
            entries: vec![LinForm::zero(); rows * cols],
        }
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        nvars: usize,
        entries: Vec<LinForm>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if let Some((&i, _)) = e.coeffs.last_key_value() {
                if i >= nvars {
                    return Err(LinalgError::DimensionMismatch(format!(
                        "coefficient index {} >= nvars {}",
                        i, nvars
                    )));
                }
            }
        }
        Ok(LinMatrix {
            rows,
            cols,
            nvars,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LinForm {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LinForm {
        &mut self.entries[i * self.cols + j]
    }

    /// Entrywise substitution.
    pub fn eval(&self, point: &[Rat]) -> Result<RatMatrix, LinalgError> {
        if point.len() != self.nvars {
            return Err(LinalgError::DimensionMismatch(format!(
                "point length {} != nvars {}",
                point.len(),
                self.nvars
            )));
        }
        let mut out = RatMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).eval(point));
            }
        }
        Ok(out)
    }

    pub fn eval_ints(&self, point: &[i64]) -> Result<RatMatrix, LinalgError> {
        let point: Vec<Rat> = point.iter().map(|&x| rat(x)).collect();
        self.eval(&point)
    }

    /// Entrywise substitution and reduction mod p.
    pub fn eval_mod(&self, point: &[i64], p: u64) -> Result<ModMatrix, LinalgError> {
        if point.len() != self.nvars {
            return Err(LinalgError::DimensionMismatch(format!(
                "point length {} != nvars {}",
                point.len(),
                self.nvars
            )));
        }
        let point: Vec<u64> = point.iter().map(|&x| reduce_int(x, p)).collect();
        let mut out = ModMatrix::zero(self.rows, self.cols, p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out.set(i, j, e.eval_mod(&point, p)?);
                }
            }
        }
        Ok(out)
    }

    /// Maximum rank over random specializations. Specializing can only drop
    /// the rank, so this is a certified lower bound for the generic rank; it
    /// equals the generic rank with probability growing in the sample set
    /// size and the number of trials.
    pub fn generic_rank_lower_bound<R: Rng + ?Sized>(
        &self,
        trials: usize,
        sample_set: &[i64],
        rng: &mut R,
    ) -> usize {
        assert!(trials >= 1, "at least one trial required");
        assert!(!sample_set.is_empty(), "sample set must be nonempty");
        let mut best = 0;
        let max = self.rows.min(self.cols);
        for _ in 0..trials {
            let point: Vec<Rat> = (0..self.nvars)
                .map(|_| rat(sample_set[rng.gen_range(0..sample_set.len())]))
                .collect();
            let r = self.eval(&point).expect("point length matches").rank();
            best = best.max(r);
            if best == max {
                break;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn eval_constant_matrix() {
        let m = LinMatrix::from_entries(
            2,
            2,
            1,
            vec![
                LinForm::constant(rat(1)),
                LinForm::constant(rat(2)),
                LinForm::constant(rat(3)),
                LinForm::constant(rat(4)),
            ],
        )
        .unwrap();
        let v = m.eval(&[rat(17)]).unwrap();
        assert_eq!(v, RatMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]]));
    }

    #[test]
    fn eval_single_var() {
        let m = LinMatrix::from_entries(1, 1, 1, vec![LinForm::var(0)]).unwrap();
        let v = m.eval(&[rat(5)]).unwrap();
        assert_eq!(v.get(0, 0), &rat(5));
    }

    #[test]
    fn eval_length_mismatch_is_error() {
        let m = LinMatrix::from_entries(1, 1, 2, vec![LinForm::var(1)]).unwrap();
        assert!(m.eval(&[rat(5)]).is_err());
    }

    #[test]
    fn lower_bound_constant_matrix() {
        let m = LinMatrix::from_entries(
            2,
            2,
            1,
            vec![
                LinForm::constant(rat(1)),
                LinForm::constant(rat(0)),
                LinForm::constant(rat(0)),
                LinForm::constant(rat(1)),
            ],
        )
        .unwrap();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        assert_eq!(m.generic_rank_lower_bound(1, &[1], &mut rng), 2);
    }

    #[test]
    fn lower_bound_single_t() {
        // [T_1] over {1..100}: zero is not in the sample set, so every trial
        // hits rank 1.
        let m = LinMatrix::from_entries(1, 1, 1, vec![LinForm::var(0)]).unwrap();
        let sample: Vec<i64> = (1..=100).collect();
        for seed in 0..50 {
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            assert_eq!(m.generic_rank_lower_bound(1, &sample, &mut rng), 1);
        }
    }

    #[test]
    fn linform_cancellation() {
        let mut f = LinForm::var(2);
        f.add_term(2, rat(-1));
        assert!(f.is_zero());
        assert!(f.coeffs.is_empty());
    }
}
