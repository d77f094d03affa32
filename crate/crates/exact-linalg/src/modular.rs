//! Linear algebra over a prime field Z/pZ with p < 2^62.
//!
//! Used as a rank certificate: for a rational matrix whose denominators are
//! invertible mod p, the rank mod p never exceeds the rank over Q (a
//! vanishing minor stays vanishing under reduction). A full-rank modular
//! witness is therefore an exact lower-bound proof.

use crate::rat::Rat;
use crate::LinalgError;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Random prime in (2^61, 2^62).
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 61) + 1..1u64 << 62) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

pub fn reduce_int(n: i64, p: u64) -> u64 {
    let r = n.rem_euclid(p as i64);
    r as u64
}

/// Reduces a rational mod p; fails when the denominator is divisible by p.
pub fn reduce_rat(r: &Rat, p: u64) -> Result<u64, LinalgError> {
    let pbig = num_bigint::BigInt::from(p);
    let den = r.denom().mod_floor(&pbig).to_u64().unwrap();
    if den == 0 {
        return Err(LinalgError::BadPrime(p));
    }
    let num = r.numer().mod_floor(&pbig).to_u64().unwrap();
    Ok(mul_mod(num, inv_mod(den, p), p))
}

/// Dense matrix over Z/pZ.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    pub p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zero(rows: usize, cols: usize, p: u64) -> Self {
        ModMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rat(m: &crate::RatMatrix, p: u64) -> Result<Self, LinalgError> {
        let mut out = Self::zero(m.rows(), m.cols(), p);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if !num_traits::Zero::is_zero(v) {
                    out.set(i, j, reduce_rat(v, p)?);
                }
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let idx = i * self.cols + j;
        self.data[idx] = (self.data[idx] + v % self.p) % self.p;
    }

    /// Rank by Gaussian elimination; consumes the matrix.
    pub fn rank(mut self) -> usize {
        self.echelon(self.cols)
    }

    /// Returns `true` when `M x = b` is solvable mod p.
    pub fn solvable(&self, b: &[u64]) -> bool {
        assert_eq!(b.len(), self.rows);
        let mut aug = ModMatrix::zero(self.rows, self.cols + 1, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let r_aug = aug.clone().echelon(self.cols + 1);
        let r = aug.echelon(self.cols);
        r_aug == r
    }

    /// Kernel dimension mod p (an upper bound for the rational kernel
    /// dimension).
    pub fn kernel_dim(self) -> usize {
        let c = self.cols;
        c - self.rank()
    }

    /// Forward elimination on the first `limit` columns; returns the number
    /// of pivots.
    fn echelon(&mut self, limit: usize) -> usize {
        let p = self.p;
        let mut r = 0;
        for c in 0..limit {
            if r >= self.rows {
                break;
            }
            let Some(pivot) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pivot != r {
                for j in 0..self.cols {
                    let a = self.get(r, j);
                    let b = self.get(pivot, j);
                    self.set(r, j, b);
                    self.set(pivot, j, a);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for i in r + 1..self.rows {
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let scale = mul_mod(f, inv, p);
                for j in c..self.cols {
                    let v = self.get(i, j);
                    let s = mul_mod(scale, self.get(r, j), p);
                    self.set(i, j, (v + p - s) % p);
                }
            }
            r += 1;
        }
        r
    }
}
