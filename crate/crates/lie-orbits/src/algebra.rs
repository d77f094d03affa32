//! Chevalley basis of the simple Lie algebra attached to a root system.
//!
//! Basis order: x_alpha for the positive roots in root order, then y_alpha,
//! then the simple coroots h_1..h_l. All structure constants are integers.
//! Signs follow the extraspecial-pair convention: for each non-simple
//! positive root gamma, the pair (eps, eta) with eps minimal in root order
//! and eps + eta = gamma gets N(eps, eta) = p + 1 > 0, and every other
//! constant is forced from these by the Jacobi identity.

use crate::roots::{Kind, RootSystem};
use crate::LieError;
use exact_linalg::matrix::RatMatrix;
use exact_linalg::rat::{rat, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub rs: RootSystem,
    pub dim: usize,
    pub n_pos: usize,
    /// Bracket of basis pairs (i, j) with i < j; antisymmetry is synthesized
    /// on lookup. Entries are (basis index, integer coefficient).
    table: Vec<Vec<(u32, i64)>>,
}

/// Element as a sparse coefficient vector over the fixed basis. Tagged with
/// the algebra type so cross-algebra operations can be rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub kind: Kind,
    pub coeffs: BTreeMap<usize, Rat>,
}

impl LieElement {
    pub fn zero(kind: Kind) -> Self {
        LieElement {
            kind,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_pairs(kind: Kind, pairs: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut e = Self::zero(kind);
        for (i, c) in pairs {
            e.add_term(i, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
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

    pub fn add_scaled(&mut self, other: &LieElement, c: &Rat) {
        if c.is_zero() {
            return;
        }
        for (&i, v) in &other.coeffs {
            self.add_term(i, c * v);
        }
    }

    pub fn scale(&self, c: &Rat) -> LieElement {
        if c.is_zero() {
            return LieElement::zero(self.kind);
        }
        LieElement {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|(&i, v)| (i, c * v)).collect(),
        }
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &rat(-1));
        out
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }
}

impl LieAlgebra {
    pub fn kind(&self) -> Kind {
        self.rs.kind
    }

    /// x_alpha for the 0-based positive root index.
    pub fn x(&self, root: usize) -> LieElement {
        LieElement::from_pairs(self.kind(), [(root, rat(1))])
    }

    /// y_alpha for the 0-based positive root index.
    pub fn y(&self, root: usize) -> LieElement {
        LieElement::from_pairs(self.kind(), [(self.n_pos + root, rat(1))])
    }

    /// h_t, the t-th simple coroot (0-based).
    pub fn h(&self, t: usize) -> LieElement {
        LieElement::from_pairs(self.kind(), [(2 * self.n_pos + t, rat(1))])
    }

    pub fn x_index(&self, root: usize) -> usize {
        root
    }

    pub fn y_index(&self, root: usize) -> usize {
        self.n_pos + root
    }

    pub fn h_index(&self, t: usize) -> usize {
        2 * self.n_pos + t
    }

    /// Cartan element from coordinates over h_1..h_l.
    pub fn cartan_element(&self, coords: &[Rat]) -> LieElement {
        LieElement::from_pairs(
            self.kind(),
            coords
                .iter()
                .enumerate()
                .map(|(t, c)| (self.h_index(t), c.clone())),
        )
    }

    /// Coordinates over h_1..h_l if the element lies in the Cartan
    /// subalgebra.
    pub fn cartan_coords(&self, e: &LieElement) -> Option<Vec<Rat>> {
        let mut coords = vec![Rat::zero(); self.rs.rank];
        for (&i, c) in &e.coeffs {
            if i < 2 * self.n_pos {
                return None;
            }
            coords[i - 2 * self.n_pos] = c.clone();
        }
        Some(coords)
    }

    /// Bracket of two basis elements, as stored (i < j) or negated.
    pub fn basis_bracket(&self, i: usize, j: usize) -> (&[(u32, i64)], i64) {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => (&self.table[i * self.dim + j], 1),
            Greater => (&self.table[j * self.dim + i], -1),
            Equal => (&[], 1),
        }
    }

    pub fn describe_basis(&self, i: usize) -> String {
        if i < self.n_pos {
            format!("x{}", i + 1)
        } else if i < 2 * self.n_pos {
            format!("y{}", i - self.n_pos + 1)
        } else {
            format!("h{}", i - 2 * self.n_pos + 1)
        }
    }
}

/// Builds the algebra from its root system.
pub fn build_algebra(rs: RootSystem) -> LieAlgebra {
    let n = rs.num_positive();
    let rank = rs.rank;
    let dim = 2 * n + rank;
    let consts = ChevalleyConstants::new(&rs);

    let mut table: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dim * dim];
    let mut put = |i: usize, j: usize, entries: Vec<(usize, i64)>| {
        debug_assert!(i < j);
        table[i * dim + j] = entries
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| (k as u32, c))
            .collect();
    };

    // [x_a, x_b] and the mirrored [y_a, y_b]
    for a in 0..n {
        for b in a + 1..n {
            let sum: Vec<i64> = rs.positive_roots[a]
                .iter()
                .zip(&rs.positive_roots[b])
                .map(|(x, y)| x + y)
                .collect();
            if let Some(k) = rs.index_of(&sum) {
                let nval = consts.n_pos_pair(a, b);
                put(a, b, vec![(k, nval)]);
                put(n + a, n + b, vec![(n + k, -nval)]);
            }
        }
    }

    // [x_a, y_b]
    for a in 0..n {
        for b in 0..n {
            let i = a;
            let j = n + b;
            if a == b {
                let coroot = rs.coroot_coeffs(a);
                put(
                    i,
                    j,
                    coroot
                        .iter()
                        .enumerate()
                        .map(|(t, &c)| (2 * n + t, c))
                        .collect(),
                );
                continue;
            }
            let diff: Vec<i64> = rs.positive_roots[a]
                .iter()
                .zip(&rs.positive_roots[b])
                .map(|(x, y)| x - y)
                .collect();
            if let Some(signed) = rs.signed_index_of(&diff) {
                let nval = consts.n_signed(a as i64 + 1, -(b as i64 + 1));
                let target = if signed > 0 {
                    signed as usize - 1
                } else {
                    n + (-signed) as usize - 1
                };
                put(i, j, vec![(target, nval)]);
            }
        }
    }

    // [x_b, h_t] = -<beta, alpha_t^vee> x_b and [y_b, h_t] = +... y_b
    for b in 0..n {
        for t in 0..rank {
            let pv = rs.pairing_coeffs(&rs.positive_roots[b], t);
            if pv != 0 {
                put(b, 2 * n + t, vec![(b, -pv)]);
                put(n + b, 2 * n + t, vec![(n + b, pv)]);
            }
        }
    }

    LieAlgebra {
        rs,
        dim,
        n_pos: n,
        table,
    }
}

/// Structure-constant engine: N(alpha, beta) for all signed root pairs,
/// built from the extraspecial-pair base case by the Jacobi recursion.
struct ChevalleyConstants<'a> {
    rs: &'a RootSystem,
    /// N for positive pairs (i < j) with root_i + root_j a root.
    npos: BTreeMap<(usize, usize), i64>,
}

impl<'a> ChevalleyConstants<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let mut me = ChevalleyConstants {
            rs,
            npos: BTreeMap::new(),
        };
        let n = rs.num_positive();
        for gamma in rs.rank..n {
            // pairs summing to gamma, in root order of the first element
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for i in 0..gamma {
                let diff: Vec<i64> = rs.positive_roots[gamma]
                    .iter()
                    .zip(&rs.positive_roots[i])
                    .map(|(x, y)| x - y)
                    .collect();
                if let Some(j) = rs.index_of(&diff) {
                    if i < j {
                        pairs.push((i, j));
                    }
                }
            }
            debug_assert!(!pairs.is_empty(), "non-simple root must decompose");
            let (eps, eta) = pairs[0];
            let p = me.string_down(eta, eps);
            me.npos.insert((eps, eta), p + 1);
            for &(a, b) in &pairs[1..] {
                let val = me.special_pair(gamma, eps, eta, a, b);
                me.npos.insert((a, b), val);
            }
        }
        me
    }

    /// p = max { k : beta - k*alpha is a root } for positive roots.
    fn string_down(&self, beta: usize, alpha: usize) -> i64 {
        let mut p = 0i64;
        let mut probe: Vec<i64> = self.rs.positive_roots[beta].clone();
        loop {
            for (x, a) in probe.iter_mut().zip(&self.rs.positive_roots[alpha]) {
                *x -= a;
            }
            if probe.iter().all(|&x| x == 0) || self.rs.signed_index_of(&probe).is_none() {
                break;
            }
            p += 1;
        }
        p
    }

    fn n_pos_pair(&self, a: usize, b: usize) -> i64 {
        if a < b {
            *self.npos.get(&(a, b)).expect("positive pair computed")
        } else {
            -*self.npos.get(&(b, a)).expect("positive pair computed")
        }
    }

    /// N for signed 1-based root indices whose sum is a root.
    fn n_signed(&self, a: i64, b: i64) -> i64 {
        debug_assert!(a != 0 && b != 0 && a != -b);
        if a > 0 && b > 0 {
            return self.n_pos_pair(a as usize - 1, b as usize - 1);
        }
        if a < 0 && b < 0 {
            return -self.n_signed(-a, -b);
        }
        if a < 0 {
            // N(-mu, nu) = -N(nu, -mu)
            return -self.n_signed(b, a);
        }
        // a = mu > 0, b = -nu < 0
        let mu = a as usize - 1;
        let nu = (-b) as usize - 1;
        let d = |i: usize| self.rs.half_norms[i];
        let diff: Vec<i64> = self.rs.positive_roots[mu]
            .iter()
            .zip(&self.rs.positive_roots[nu])
            .map(|(x, y)| x - y)
            .collect();
        let signed = self.rs.signed_index_of(&diff).expect("sum must be a root");
        if signed > 0 {
            // delta = mu - nu positive: N(mu,-nu) = (d_delta/d_mu) N(delta, nu)
            let delta = signed as usize - 1;
            let num = d(delta) * self.n_pos_pair(delta, nu);
            debug_assert_eq!(num % d(mu), 0);
            num / d(mu)
        } else {
            // delta = nu - mu positive: N(mu,-nu) = (d_delta/d_nu) N(delta, mu)
            let delta = (-signed) as usize - 1;
            let num = d(delta) * self.n_pos_pair(delta, mu);
            debug_assert_eq!(num % d(nu), 0);
            num / d(nu)
        }
    }

    /// Jacobi step: N(alpha, beta) for a special pair from the extraspecial
    /// pair (eps, eta) of gamma = alpha + beta.
    fn special_pair(&self, gamma: usize, eps: usize, eta: usize, alpha: usize, beta: usize) -> i64 {
        let rs = self.rs;
        let d = |i: usize| rs.half_norms[i];
        let sub = |x: usize, y: usize| -> Option<i64> {
            let diff: Vec<i64> = rs.positive_roots[x]
                .iter()
                .zip(&rs.positive_roots[y])
                .map(|(a, b)| a - b)
                .collect();
            rs.signed_index_of(&diff)
        };
        // A = N(eta, -alpha) N(eta - alpha, eps) when eta - alpha is a root
        let a_term = match sub(eta, alpha) {
            Some(s) => {
                self.n_signed(eta as i64 + 1, -(alpha as i64 + 1))
                    * self.n_signed(s, eps as i64 + 1)
            }
            None => 0,
        };
        // B = N(-alpha, eps) N(eps - alpha, eta) when eps - alpha is a root
        let b_term = match sub(eps, alpha) {
            Some(s) => {
                self.n_signed(-(alpha as i64 + 1), eps as i64 + 1)
                    * self.n_signed(s, eta as i64 + 1)
            }
            None => 0,
        };
        let n_eps_eta = self.n_pos_pair(eps, eta);
        let num = d(gamma) * (a_term + b_term);
        let den = d(beta) * n_eps_eta;
        debug_assert!(den != 0);
        debug_assert_eq!(num % den, 0, "Chevalley constant must be integral");
        num / den
    }
}

/// Bilinear extension of the structure table.
pub fn bracket(l: &LieAlgebra, a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
    if a.kind != l.kind() || b.kind != l.kind() {
        return Err(LieError::AlgebraMismatch(a.kind, b.kind));
    }
    let mut out = LieElement::zero(l.kind());
    for (&i, ca) in &a.coeffs {
        for (&j, cb) in &b.coeffs {
            let (entries, sign) = l.basis_bracket(i, j);
            if entries.is_empty() {
                continue;
            }
            let c = ca * cb;
            for &(k, v) in entries {
                out.add_term(k as usize, &c * rat(sign * v));
            }
        }
    }
    Ok(out)
}

/// Matrix of ad(a) = [a, .] in the fixed basis.
pub fn ad_matrix(l: &LieAlgebra, a: &LieElement) -> RatMatrix {
    let mut m = RatMatrix::zero(l.dim, l.dim);
    for (&i, c) in &a.coeffs {
        for j in 0..l.dim {
            let (entries, sign) = l.basis_bracket(i, j);
            for &(k, v) in entries {
                let cur = m.get(k as usize, j) + c * rat(sign * v);
                m.set(k as usize, j, cur);
            }
        }
    }
    m
}

/// Eigenspace decomposition of the algebra under ad h for h in the Cartan
/// subalgebra with integer eigenvalues on every root space.
#[derive(Clone, Debug)]
pub struct Grading {
    pub h: LieElement,
    /// eta(alpha) per positive root (0-based).
    pub eta: Vec<i64>,
    /// basis indices of g(k)
    pub components: BTreeMap<i64, Vec<usize>>,
}

impl Grading {
    pub fn component(&self, k: i64) -> &[usize] {
        self.components.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree_of(&self, basis_index: usize, n_pos: usize) -> i64 {
        if basis_index < n_pos {
            self.eta[basis_index]
        } else if basis_index < 2 * n_pos {
            -self.eta[basis_index - n_pos]
        } else {
            0
        }
    }
}

/// Grades the algebra by ad h. Errors when h is not in the Cartan span or
/// some eigenvalue is not an integer.
pub fn grade(l: &LieAlgebra, h: &LieElement) -> Result<Grading, LieError> {
    let coords = l
        .cartan_coords(h)
        .ok_or_else(|| LieError::Input("grading element must lie in the Cartan".into()))?;
    let mut eta = Vec::with_capacity(l.n_pos);
    for alpha in 0..l.n_pos {
        let mut v = Rat::zero();
        for (t, a) in coords.iter().enumerate() {
            let p = l.rs.pairing_coeffs(&l.rs.positive_roots[alpha], t);
            if p != 0 {
                v += a * rat(p);
            }
        }
        let k = exact_linalg::rat::to_i64(&v).ok_or(LieError::NonIntegerGrading)?;
        eta.push(k);
    }
    let mut components: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for alpha in 0..l.n_pos {
        components.entry(eta[alpha]).or_default().push(alpha);
        components
            .entry(-eta[alpha])
            .or_default()
            .push(l.n_pos + alpha);
    }
    for t in 0..l.rs.rank {
        components.entry(0).or_default().push(2 * l.n_pos + t);
    }
    for c in components.values_mut() {
        c.sort();
    }
    Ok(Grading {
        h: h.clone(),
        eta,
        components,
    })
}
