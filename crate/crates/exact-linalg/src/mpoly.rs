//! Sparse multivariate polynomials with integer coefficients.
//!
//! Just enough arithmetic for fraction-free elimination over Z[T_1..T_m]:
//! ring operations plus exact division. Multiplication enforces a hard term
//! budget; exceeding it is an explicit error, never silent truncation.

use crate::linform::LinForm;
use crate::rat::Rat;
use crate::LinalgError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

type Mono = Vec<u16>;

/// Polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = vec![0u16; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(m, BigInt::one());
        p
    }

    /// Converts a linear form, clearing denominators; returns the polynomial
    /// together with the (positive) common denominator that was multiplied
    /// away.
    pub fn from_linform(f: &LinForm, nvars: usize) -> (Self, BigInt) {
        use num_integer::Integer;
        let mut den = f.constant.denom().clone();
        for c in f.coeffs.values() {
            den = den.lcm(c.denom());
        }
        let mut p = Self::zero(nvars);
        let scale = |r: &Rat| -> BigInt { r.numer() * (&den / r.denom()) };
        let c0 = scale(&f.constant);
        if !c0.is_zero() {
            p.terms.insert(vec![0; nvars], c0);
        }
        for (&i, c) in &f.coeffs {
            let mut m = vec![0u16; nvars];
            m[i] = 1;
            p.terms.insert(m, scale(c));
        }
        (p, den)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_assign_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self, max_terms: usize) -> Result<Self, LinalgError> {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_assign_term(m, ca * cb);
                if out.terms.len() > max_terms {
                    return Err(LinalgError::TermBudgetExceeded {
                        terms: out.terms.len(),
                        budget: max_terms,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Exact division; errors when the division leaves a remainder. Uses the
    /// lex leading term, which divides out cleanly for inputs produced by
    /// fraction-free elimination.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LinalgError> {
        if divisor.is_zero() {
            return Err(LinalgError::InexactDivision);
        }
        let (dm, dc) = divisor.terms.last_key_value().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.terms.last_key_value() {
            if rm.iter().zip(dm).any(|(a, b)| a < b) {
                return Err(LinalgError::InexactDivision);
            }
            let (q, r) = num_integer::Integer::div_rem(rc, dc);
            if !r.is_zero() {
                return Err(LinalgError::InexactDivision);
            }
            let qm: Mono = rm.iter().zip(dm).map(|(a, b)| a - b).collect();
            // rem -= q * x^qm * divisor
            let rm = rm.clone();
            let _ = rm;
            for (m, c) in &divisor.terms {
                let mm: Mono = m.iter().zip(&qm).map(|(a, b)| a + b).collect();
                rem.add_assign_term(mm, -(&q * c));
            }
            quot.add_assign_term(qm, q);
        }
        Ok(quot)
    }

    /// Total degree (None for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
    }

    pub fn term_size(&self) -> u64 {
        self.terms.values().map(|c| c.abs().bits()).sum::<u64>() + self.terms.len() as u64
    }
}
