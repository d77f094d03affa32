//! Nilpotent orbit machinery: the unique Cartan element of a weighted
//! diagram, random representative search with coefficient nicification,
//! sl2-triple completion, weighted diagrams of nilpotent elements, full
//! diagram enumeration, decorated representative diagrams, and subsystem
//! representatives.

use crate::algebra::{bracket, grade, Grading, LieAlgebra, LieElement};
use crate::roots::{Kind, RootSystem};
use crate::LieError;
use exact_linalg::matrix::RatMatrix;
use exact_linalg::modular::{random_prime, reduce_int, ModMatrix};
use exact_linalg::rat::{rat, Rat};
use exact_linalg::symbolic::{symbolic_rank, symbolic_rank_augmented};
use exact_linalg::{LinForm, LinMatrix, MPoly};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Node labels of a weighted Dynkin diagram in GAP simple-root order.
/// Entries are always in {0, 1, 2}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedDiagram {
    kind: Kind,
    labels: Vec<u8>,
}

impl WeightedDiagram {
    pub fn new(kind: Kind, labels: Vec<u8>) -> Result<Self, LieError> {
        if labels.len() != kind.rank() {
            return Err(LieError::Input(format!(
                "diagram needs {} labels, got {}",
                kind.rank(),
                labels.len()
            )));
        }
        if labels.iter().any(|&v| v > 2) {
            return Err(LieError::Input("diagram labels must be 0, 1 or 2".into()));
        }
        Ok(WeightedDiagram { kind, labels })
    }

    /// Labels given in display order (as printed in the orbit tables).
    pub fn from_display(kind: Kind, display: &[u8]) -> Result<Self, LieError> {
        if display.len() != kind.rank() {
            return Err(LieError::Input(format!(
                "diagram needs {} labels, got {}",
                kind.rank(),
                display.len()
            )));
        }
        let perm = kind.diagram_display_to_gap();
        let mut labels = vec![0u8; kind.rank()];
        for (pos, &v) in display.iter().enumerate() {
            labels[perm[pos] - 1] = v;
        }
        Self::new(kind, labels)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn display_labels(&self) -> Vec<u8> {
        let perm = self.kind.diagram_display_to_gap();
        (0..self.labels.len())
            .map(|pos| self.labels[perm[pos] - 1])
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|&v| v == 0)
    }

    pub fn display_string(&self) -> String {
        self.display_labels()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// (f, h, e) with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
#[derive(Clone, Debug)]
pub struct Sl2Triple {
    pub f: LieElement,
    pub h: LieElement,
    pub e: LieElement,
}

impl Sl2Triple {
    pub fn verify(&self, l: &LieAlgebra) -> Result<(), LieError> {
        let ef = bracket(l, &self.e, &self.f)?;
        if ef != self.h {
            return Err(LieError::Internal("[e,f] != h".into()));
        }
        let he = bracket(l, &self.h, &self.e)?;
        if he != self.e.scale(&rat(2)) {
            return Err(LieError::Internal("[h,e] != 2e".into()));
        }
        let hf = bracket(l, &self.h, &self.f)?;
        if hf != self.f.scale(&rat(-2)) {
            return Err(LieError::Internal("[h,f] != -2f".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: usize,
    pub omega_bound: i64,
    /// Largest value tried per coordinate during nicification.
    pub nicify_cap: i64,
    /// Attempt the exact (function-field) validity certificate before the
    /// randomized trials.
    pub exact_validity: bool,
    pub symbolic_budget: usize,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            trials: 25,
            omega_bound: 50,
            nicify_cap: 12,
            exact_validity: false,
            symbolic_budget: exact_linalg::symbolic::DEFAULT_TERM_BUDGET,
            parallel: true,
        }
    }
}

/// Deterministic per-task seed derivation (splitmix64 mixing).
pub fn derive_seed(global: u64, index: u64) -> u64 {
    let mut z = global ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sample_omega<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// The unique h in the Cartan subalgebra with alpha_i(h) = D_i for every
/// simple root.
pub fn h_from_diagram(l: &LieAlgebra, d: &WeightedDiagram) -> LieElement {
    let rank = l.rs.rank;
    let c = RatMatrix::from_rows(
        (0..rank)
            .map(|i| (0..rank).map(|j| rat(l.rs.cartan[i][j])).collect())
            .collect(),
    );
    let b: Vec<Rat> = d.labels().iter().map(|&v| rat(v as i64)).collect();
    let (a, _) = c
        .solve(&b)
        .expect("dimensions agree")
        .expect("Cartan matrices are invertible");
    l.cartan_element(&a)
}

/// Everything needed to solve membership h in [x, g(-2)] for x in g(2):
/// bases of g(2), g(-2), g(0) and the bilinear tensor of their brackets.
pub struct BracketSpaces {
    pub grading: Grading,
    /// positive roots with eta = 2; x-vectors over these span g(2) and
    /// y-vectors span g(-2)
    pub g2_roots: Vec<usize>,
    /// basis indices spanning g(0)
    pub g0_basis: Vec<usize>,
    /// tensor[i][j] = [x_{g2[i]}, y_{g2[j]}] in g(0) coordinates (integer)
    tensor: Vec<Vec<Vec<(usize, i64)>>>,
    /// h in g(0) coordinates
    h_g0: Vec<Rat>,
}

impl BracketSpaces {
    pub fn new(l: &LieAlgebra, h: &LieElement) -> Result<Self, LieError> {
        let grading = grade(l, h)?;
        let g2_roots: Vec<usize> = (0..l.n_pos).filter(|&a| grading.eta[a] == 2).collect();
        let g0_basis: Vec<usize> = grading.component(0).to_vec();
        let g0_pos: HashMap<usize, usize> =
            g0_basis.iter().enumerate().map(|(r, &b)| (b, r)).collect();
        let s = g2_roots.len();
        let mut tensor = vec![vec![Vec::new(); s]; s];
        for (i, &bi) in g2_roots.iter().enumerate() {
            for (j, &bj) in g2_roots.iter().enumerate() {
                let (entries, sign) = l.basis_bracket(l.x_index(bi), l.y_index(bj));
                tensor[i][j] = entries
                    .iter()
                    .map(|&(k, v)| {
                        let r = *g0_pos
                            .get(&(k as usize))
                            .expect("bracket of g(2) with g(-2) lies in g(0)");
                        (r, sign * v)
                    })
                    .collect();
            }
        }
        let mut h_g0 = vec![Rat::zero(); g0_basis.len()];
        for (&idx, c) in &h.coeffs {
            let r = *g0_pos.get(&idx).expect("h lies in g(0)");
            h_g0[r] = c.clone();
        }
        Ok(BracketSpaces {
            grading,
            g2_roots,
            g0_basis,
            tensor,
            h_g0,
        })
    }

    pub fn dim_g2(&self) -> usize {
        self.g2_roots.len()
    }

    /// Coefficient matrix of y -> [x, y] : g(-2) -> g(0) for x with
    /// integer coordinates mu over the g(2) basis.
    fn matrix_int(&self, mu: &[i64]) -> Vec<Vec<i64>> {
        let rows = self.g0_basis.len();
        let cols = self.g2_roots.len();
        let mut m = vec![vec![0i64; cols]; rows];
        for (i, &c) in mu.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, entries) in self.tensor[i].iter().enumerate() {
                for &(r, v) in entries {
                    m[r][j] += c * v;
                }
            }
        }
        m
    }

    /// Is h in [x, g(-2)] mod p?
    pub fn solvable_mod(&self, mu: &[i64], p: u64) -> Result<bool, LieError> {
        let m = self.matrix_int(mu);
        let rows = m.len();
        let cols = self.g2_roots.len();
        let mut mm = ModMatrix::zero(rows, cols, p);
        for (r, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    mm.set(r, j, reduce_int(v, p));
                }
            }
        }
        let b: Result<Vec<u64>, _> = self
            .h_g0
            .iter()
            .map(|x| exact_linalg::modular::reduce_rat(x, p))
            .collect();
        Ok(mm.solvable(&b?))
    }

    /// Exact solve of [x, y] = h for y in g(-2); returns the coordinates of
    /// y over the y-vectors of `g2_roots`.
    pub fn solve_exact(&self, mu: &[i64]) -> Option<Vec<Rat>> {
        let m = self.matrix_int(mu);
        let mat = RatMatrix::from_int_rows(&m);
        mat.solve(&self.h_g0)
            .expect("dimensions agree")
            .map(|(particular, _)| particular)
    }

    /// x as a Lie element from integer g(2) coordinates.
    pub fn x_element(&self, l: &LieAlgebra, mu: &[i64]) -> LieElement {
        LieElement::from_pairs(
            l.kind(),
            mu.iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, &c)| (l.x_index(self.g2_roots[i]), rat(c))),
        )
    }

    /// y as a Lie element from rational g(-2) coordinates.
    pub fn y_element(&self, l: &LieAlgebra, c: &[Rat]) -> LieElement {
        LieElement::from_pairs(
            l.kind(),
            c.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (l.y_index(self.g2_roots[j]), v.clone())),
        )
    }

    /// Integer g(2) coordinates of an element of g(2), if x is one.
    pub fn x_coords(&self, l: &LieAlgebra, x: &LieElement) -> Option<Vec<i64>> {
        let mut mu = vec![0i64; self.g2_roots.len()];
        for (&idx, c) in &x.coeffs {
            if idx >= l.n_pos {
                return None;
            }
            let pos = self.g2_roots.iter().position(|&r| r == idx)?;
            mu[pos] = exact_linalg::rat::to_i64(c)?;
        }
        Some(mu)
    }

    /// Generic matrix of [x, .] with x = sum T_i x_i as linear forms.
    pub fn generic_matrix(&self) -> LinMatrix {
        let rows = self.g0_basis.len();
        let cols = self.g2_roots.len();
        let mut m = LinMatrix::zero(rows, cols, self.g2_roots.len());
        for (i, per_j) in self.tensor.iter().enumerate() {
            for (j, entries) in per_j.iter().enumerate() {
                for &(r, v) in entries {
                    m.get_mut(r, j).add_term(i, rat(v));
                }
            }
        }
        m
    }

    pub fn h_coords_g0(&self) -> &[Rat] {
        &self.h_g0
    }
}

/// Is there y in g(-2) with [x, y] = h? Returns the witness. Errors when x
/// is not in g(2) for the grading of h.
pub fn in_bracket_image(
    l: &LieAlgebra,
    h: &LieElement,
    x: &LieElement,
) -> Result<Option<LieElement>, LieError> {
    let spaces = BracketSpaces::new(l, h)?;
    let mu = spaces
        .x_coords(l, x)
        .ok_or_else(|| LieError::Input("x must lie in g(2) with integer coordinates".into()))?;
    Ok(spaces.solve_exact(&mu).map(|c| spaces.y_element(l, &c)))
}

/// Statistics from a representative search.
#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    pub trials: usize,
    pub mod_successes: usize,
}

/// Finds a representative of the orbit with weighted diagram `d`: picks
/// random x in g(2) until h lies in [x, g(-2)], then nicifies the
/// coefficients and completes the sl2-triple.
pub fn find_representative(
    l: &LieAlgebra,
    d: &WeightedDiagram,
    rng: &mut ChaCha12Rng,
    config: &SearchConfig,
) -> Result<(LieElement, Sl2Triple), LieError> {
    if d.is_zero() {
        return Err(LieError::Input(
            "the zero diagram has no nonzero representative: g(2) is empty".into(),
        ));
    }
    let h = h_from_diagram(l, d);
    let spaces = BracketSpaces::new(l, &h)?;
    let s = spaces.dim_g2();
    if s == 0 {
        return Err(LieError::ProbablyInvalidDiagram {
            trials: 0,
            mod_successes: 0,
        });
    }
    let p = random_prime(rng);
    let mut stats = SearchStats::default();
    for _ in 0..config.trials {
        stats.trials += 1;
        let mu: Vec<i64> = (0..s)
            .map(|_| sample_omega(rng, config.omega_bound))
            .collect();
        if !spaces.solvable_mod(&mu, p)? {
            continue;
        }
        stats.mod_successes += 1;
        if spaces.solve_exact(&mu).is_none() {
            continue;
        }
        let x = spaces.x_element(l, &mu);
        let e = nicify_with_cap(l, &spaces, &x, config.nicify_cap);
        let triple = complete_sl2(l, &h, &e)?;
        return Ok((e, triple));
    }
    Err(LieError::ProbablyInvalidDiagram {
        trials: stats.trials,
        mod_successes: stats.mod_successes,
    })
}

// Fixed 62-bit prime for the deterministic modular pre-screen in nicify.
const NICIFY_PRIME: u64 = 4611686018427388039;

/// Replaces the coefficients of x by small non-negative integers, one
/// coordinate at a time in basis order, keeping h in [x, g(-2)] throughout.
/// For each coordinate the first admissible value in 0,1,2,... wins; if none
/// is admissible up to an internal cap, the original coefficient is kept, so
/// the input is always a valid fallback.
///
/// Precondition: h in [x, g(-2)] (panics otherwise).
pub fn nicify(l: &LieAlgebra, h: &LieElement, x: &LieElement) -> LieElement {
    let spaces = BracketSpaces::new(l, h).expect("h must define a grading");
    nicify_with_cap(l, &spaces, x, 12)
}

fn nicify_with_cap(l: &LieAlgebra, spaces: &BracketSpaces, x: &LieElement, cap: i64) -> LieElement {
    let mut mu = spaces
        .x_coords(l, x)
        .expect("x must lie in g(2) with integer coordinates");
    assert!(
        spaces.solve_exact(&mu).is_some(),
        "nicify precondition: h in [x, g(-2)]"
    );
    // Scan with a fast modular membership test, then confirm the final
    // result exactly; on the (vanishingly unlikely) spurious accept, redo
    // the scan with exact tests per step.
    let mut candidate = mu.clone();
    for pos in 0..candidate.len() {
        let original = candidate[pos];
        if original == 0 {
            continue;
        }
        for v in 0..=cap {
            candidate[pos] = v;
            if spaces
                .solvable_mod(&candidate, NICIFY_PRIME)
                .unwrap_or(false)
            {
                break;
            }
            candidate[pos] = original;
        }
    }
    if spaces.solve_exact(&candidate).is_some() {
        return spaces.x_element(l, &candidate);
    }
    for pos in 0..mu.len() {
        let original = mu[pos];
        if original == 0 {
            continue;
        }
        for v in 0..=cap {
            mu[pos] = v;
            if spaces.solve_exact(&mu).is_some() {
                break;
            }
            mu[pos] = original;
        }
    }
    debug_assert!(spaces.solve_exact(&mu).is_some());
    spaces.x_element(l, &mu)
}

/// Completes (h, e) to an sl2-triple by solving [e, f] = h with f in g(-2).
pub fn complete_sl2(l: &LieAlgebra, h: &LieElement, e: &LieElement) -> Result<Sl2Triple, LieError> {
    if e.is_zero() {
        return Err(LieError::Input("e = 0 cannot lie in an sl2-triple".into()));
    }
    let y = in_bracket_image(l, h, e)?
        .ok_or_else(|| LieError::Unsolvable("h not in [e, g(-2)]".into()))?;
    let triple = Sl2Triple {
        f: y,
        h: h.clone(),
        e: e.clone(),
    };
    triple.verify(l)?;
    Ok(triple)
}

/// Weighted Dynkin diagram of a nilpotent element supported on positive
/// root vectors: solves the joint linear system beta(h) = 2 (per support
/// root) and [e, f] = h for (h, f), then returns the dominant labels of h.
/// The system is always solvable when the support roots are linearly
/// independent (table and subsystem representatives), and also for any
/// representative produced by the orbit search, whose own h solves it. The
/// result does not depend on which solution the solver picks: the diagram
/// is an orbit invariant.
pub fn weighted_dynkin(l: &LieAlgebra, e: &LieElement) -> Result<WeightedDiagram, LieError> {
    let rank = l.rs.rank;
    let mut support = Vec::new();
    for &idx in e.coeffs.keys() {
        if idx >= l.n_pos {
            return Err(LieError::Input(
                "representative must be supported on positive root vectors".into(),
            ));
        }
        support.push(idx);
    }
    if support.is_empty() {
        return Err(LieError::Input("e = 0 has no weighted diagram".into()));
    }

    // Unknowns: a_1..a_rank (h coordinates), then the dim coordinates of f.
    let cols = rank + l.dim;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(support.len() + l.dim);
    let mut rhs: Vec<Rat> = Vec::with_capacity(support.len() + l.dim);
    for &b in &support {
        let mut row = vec![Rat::zero(); cols];
        for (t, cell) in row.iter_mut().take(rank).enumerate() {
            *cell = rat(l.rs.pairing_coeffs(&l.rs.positive_roots[b], t));
        }
        rows.push(row);
        rhs.push(rat(2));
    }
    // [e, f] - sum_t a_t h_t = 0 (dim equations)
    let mut eq = vec![vec![Rat::zero(); cols]; l.dim];
    for (&i, c) in &e.coeffs {
        for j in 0..l.dim {
            let (entries, sign) = l.basis_bracket(i, j);
            for &(k, v) in entries {
                eq[k as usize][rank + j] += c * rat(sign * v);
            }
        }
    }
    for t in 0..rank {
        eq[l.h_index(t)][t] -= rat(1);
    }
    rows.extend(eq);
    rhs.extend(std::iter::repeat(Rat::zero()).take(l.dim));

    let m = RatMatrix::from_rows(rows);
    let sol = m
        .solve(&rhs)?
        .ok_or_else(|| LieError::Unsolvable("not completable over the Cartan".into()))?;
    let a = &sol.0[..rank];
    let labels = l.rs.dominant_labels(a);
    labels_to_diagram(l.kind(), &labels)
}

fn labels_to_diagram(kind: Kind, labels: &[Rat]) -> Result<WeightedDiagram, LieError> {
    let mut out = Vec::with_capacity(labels.len());
    for v in labels {
        let k = exact_linalg::rat::to_i64(v).ok_or(LieError::NonIntegerGrading)?;
        if !(0..=2).contains(&k) {
            return Err(LieError::Internal(format!(
                "dominant label {k} outside 0..2"
            )));
        }
        out.push(k as u8);
    }
    WeightedDiagram::new(kind, out)
}

/// A validated orbit produced by enumeration: the diagram plus a concrete
/// certificate (e, f, h) that has been re-verified by bracket arithmetic.
#[derive(Clone, Debug)]
pub struct EnumeratedOrbit {
    pub diagram: WeightedDiagram,
    pub rep: LieElement,
    pub triple: Sl2Triple,
}

/// Tries all 3^l - 1 nonzero label vectors and keeps those that admit an
/// sl2-triple. A dimension-monotonicity pre-filter (weight multiplicities
/// of an sl2-module are unimodal per parity) rejects most invalid
/// candidates exactly; survivors get randomized trials whose positive
/// answers are confirmed by an exact solve. Per-candidate RNG seeds are
/// derived from (seed, candidate index), so the result is independent of
/// scheduling.
pub fn enumerate_orbits(l: &LieAlgebra, config: &SearchConfig) -> Vec<EnumeratedOrbit> {
    let rank = l.rs.rank;
    let total: u64 = 3u64.pow(rank as u32);
    let candidates: Vec<u64> = (1..total).collect();
    let run = |cand: &u64| -> Option<EnumeratedOrbit> {
        let mut labels = vec![0u8; rank];
        let mut v = *cand;
        for slot in labels.iter_mut() {
            *slot = (v % 3) as u8;
            v /= 3;
        }
        let d = WeightedDiagram::new(l.kind(), labels).expect("labels in range");
        let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(config.seed, *cand));
        validate_candidate(l, &d, &mut rng, config)
    };
    let mut found: Vec<EnumeratedOrbit> = if config.parallel {
        candidates.par_iter().filter_map(run).collect()
    } else {
        candidates.iter().filter_map(run).collect()
    };
    found.sort_by(|a, b| a.diagram.cmp(&b.diagram));
    found
}

pub fn enumerate_diagrams(l: &LieAlgebra, config: &SearchConfig) -> Vec<WeightedDiagram> {
    enumerate_orbits(l, config)
        .into_iter()
        .map(|o| o.diagram)
        .collect()
}

fn validate_candidate(
    l: &LieAlgebra,
    d: &WeightedDiagram,
    rng: &mut ChaCha12Rng,
    config: &SearchConfig,
) -> Option<EnumeratedOrbit> {
    let h = h_from_diagram(l, d);
    let grading = grade(l, &h).expect("diagram labels give an integer grading");
    if !dims_unimodal(&grading) {
        return None;
    }
    let spaces = BracketSpaces::new(l, &h).expect("graded");
    let s = spaces.dim_g2();
    if s == 0 {
        return None;
    }
    if config.exact_validity {
        if let Ok(valid) = validity_exact_from_spaces(&spaces, config.symbolic_budget) {
            if !valid {
                return None;
            }
        }
        // on budget overflow fall through to the randomized test
    }
    let p = random_prime(rng);
    for _ in 0..config.trials {
        let mu: Vec<i64> = (0..s)
            .map(|_| sample_omega(rng, config.omega_bound))
            .collect();
        if !spaces.solvable_mod(&mu, p).ok()? {
            continue;
        }
        let Some(c) = spaces.solve_exact(&mu) else {
            continue;
        };
        let e = spaces.x_element(l, &mu);
        let f = spaces.y_element(l, &c);
        let triple = Sl2Triple {
            f,
            h: h.clone(),
            e: e.clone(),
        };
        triple.verify(l).ok()?;
        return Some(EnumeratedOrbit {
            diagram: d.clone(),
            rep: e,
            triple,
        });
    }
    None
}

/// Necessary condition for h to embed in an sl2-triple: as an sl2-module
/// the weight-space dimensions are symmetric and unimodal on each parity
/// chain. Failing it proves the diagram invalid without any trials.
fn dims_unimodal(grading: &Grading) -> bool {
    let max_k = grading.components.keys().copied().max().unwrap_or(0);
    for start in [0i64, 1] {
        let mut prev = usize::MAX;
        let mut k = start;
        while k <= max_k {
            let d = grading.component(k).len();
            if d > prev {
                return false;
            }
            prev = d;
            k += 2;
        }
    }
    true
}

/// Exact validity of a diagram: h lies in [x, g(-2)] for generic x iff the
/// generic bracket matrix and its h-augmented matrix have the same rank
/// over the rational function field.
pub fn validity_exact(
    l: &LieAlgebra,
    d: &WeightedDiagram,
    budget: usize,
) -> Result<bool, LieError> {
    let h = h_from_diagram(l, d);
    let spaces = BracketSpaces::new(l, &h)?;
    if spaces.dim_g2() == 0 {
        return Ok(false);
    }
    Ok(validity_exact_from_spaces(&spaces, budget)?)
}

fn validity_exact_from_spaces(
    spaces: &BracketSpaces,
    budget: usize,
) -> Result<bool, exact_linalg::LinalgError> {
    let m = spaces.generic_matrix();
    let b: Vec<MPoly> = spaces
        .h_coords_g0()
        .iter()
        .map(|c| MPoly::from_linform(&LinForm::constant(c.clone()), m.nvars).0)
        .collect();
    let r = symbolic_rank(&m, budget)?;
    let ra = symbolic_rank_augmented(&m, &b, budget)?;
    Ok(r == ra)
}

/// Decorated Dynkin diagram of a set of roots: node i and node j are joined
/// by <b_i, b_j^v><b_j, b_i^v> lines, dotted when both pairings are
/// positive. Nodes carry the root index and a long/short flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDiagram {
    /// (0-based positive root index, is_long)
    pub nodes: Vec<(usize, bool)>,
    pub edges: Vec<RepEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepEdge {
    /// positions into `nodes`, i < j
    pub i: usize,
    pub j: usize,
    pub lines: u8,
    pub dotted: bool,
}

pub fn rep_diagram(rs: &RootSystem, roots: &[usize]) -> RepDiagram {
    let nodes: Vec<(usize, bool)> = roots.iter().map(|&r| (r, rs.is_long(r))).collect();
    let mut edges = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let a = rs.pairing_roots(roots[i], roots[j]);
            let b = rs.pairing_roots(roots[j], roots[i]);
            let lines = (a * b).clamp(0, 3) as u8;
            if lines > 0 {
                edges.push(RepEdge {
                    i,
                    j,
                    lines,
                    dotted: a > 0 && b > 0,
                });
            }
        }
    }
    RepDiagram { nodes, edges }
}

/// Simple type of one component of a subsystem request. `short` marks a
/// tilde type (all roots short in the ambient system).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentType {
    pub series: Series,
    pub rank: usize,
    pub short: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl ComponentType {
    pub fn parse(s: &str) -> Option<ComponentType> {
        let s = s.trim();
        let (short, rest) = match s.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let series = match rest.chars().next()? {
            'A' | 'a' => Series::A,
            'B' | 'b' => Series::B,
            'C' | 'c' => Series::C,
            'D' | 'd' => Series::D,
            _ => return None,
        };
        let rank: usize = rest[1..].parse().ok()?;
        if rank == 0 {
            return None;
        }
        if series == Series::D && rank < 3 {
            return None;
        }
        if (series == Series::B || series == Series::C) && (rank < 2 || short) {
            return None;
        }
        Some(ComponentType {
            series,
            rank,
            short,
        })
    }

    /// Cartan matrix with the component's own node ordering.
    fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..n.saturating_sub(1) {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                if self.series == Series::B && n >= 2 {
                    // alpha_{n-1} long, alpha_n short
                    c[n - 2][n - 1] = -2;
                }
                if self.series == Series::C && n >= 2 {
                    c[n - 1][n - 2] = -2;
                }
            }
            Series::D => {
                for i in 0..n - 2 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[n - 3][n - 1] = -1;
                c[n - 1][n - 3] = -1;
            }
        }
        c
    }

    /// Long flags per node in ambient terms; tilde types are all short.
    fn long_flags(&self) -> Vec<bool> {
        let n = self.rank;
        match self.series {
            Series::A | Series::D => vec![!self.short; n],
            Series::B => {
                let mut v = vec![true; n];
                v[n - 1] = false;
                v
            }
            Series::C => {
                let mut v = vec![false; n];
                v[n - 1] = true;
                v
            }
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
        }
    }

    pub fn label(&self) -> String {
        let tilde = if self.short { "~" } else { "" };
        let s = match self.series {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        };
        format!("{tilde}{s}{}", self.rank)
    }
}

/// One subsystem embedding: the chosen roots (a simple system, component by
/// component), the representative e = sum of root vectors, its weighted
/// diagram, and the h of the subsystem's principal sl2 (the sum of the
/// subsystem's positive coroots), for which e lies in g(2).
#[derive(Clone, Debug)]
pub struct SubsystemEmbedding {
    pub roots: Vec<usize>,
    pub e: LieElement,
    pub diagram: WeightedDiagram,
    pub h: LieElement,
}

/// Finds sets of positive roots forming mutually orthogonal simple systems
/// of the requested types, closed inside the ambient root system (so the
/// subalgebra they generate has exactly the requested type). Non-conjugate
/// embeddings are distinguished by their weighted diagrams; one embedding
/// per distinct diagram is returned, sorted by diagram.
pub fn subsystem_representative(
    l: &LieAlgebra,
    types: &[ComponentType],
) -> Result<Vec<SubsystemEmbedding>, LieError> {
    let rs = &l.rs;
    let n = rs.num_positive();
    if types.is_empty() {
        return Err(LieError::Input("at least one component required".into()));
    }
    if rs.max_half_norm() == 1 && types.iter().any(|t| t.short) {
        return Err(LieError::Input(
            "tilde components require two root lengths".into(),
        ));
    }
    let total_rank: usize = types.iter().map(|t| t.rank).sum();
    if total_rank > rs.rank {
        return Err(LieError::NoEmbedding);
    }
    // pairing matrix over positive roots
    let mut pair = vec![vec![0i8; n]; n];
    for i in 0..n {
        for j in 0..n {
            pair[i][j] = rs.pairing_roots(i, j) as i8;
        }
    }
    let cartans: Vec<Vec<Vec<i64>>> = types.iter().map(|t| t.cartan()).collect();
    let flags: Vec<Vec<bool>> = types.iter().map(|t| t.long_flags()).collect();
    let expected_closure: usize = types.iter().map(|t| t.positive_root_count()).sum();

    let mut search = SubsystemSearch {
        l,
        pair: &pair,
        types,
        cartans: &cartans,
        flags: &flags,
        expected_closure,
        chosen: Vec::new(),
        comp_start: Vec::new(),
        by_diagram: HashMap::new(),
    };
    search.component(0);
    let mut out: Vec<SubsystemEmbedding> = search.by_diagram.into_values().collect();
    if out.is_empty() {
        return Err(LieError::NoEmbedding);
    }
    out.sort_by(|a, b| a.diagram.cmp(&b.diagram));
    // Certify each returned embedding: the general weighted_dynkin path must
    // agree with the subsystem shortcut, and e completes to an sl2-triple
    // for the subsystem's own h.
    for emb in &out {
        let wd = weighted_dynkin(l, &emb.e)?;
        if wd != emb.diagram {
            return Err(LieError::Internal(
                "subsystem diagram disagrees with weighted_dynkin".into(),
            ));
        }
        complete_sl2(l, &emb.h, &emb.e)?;
    }
    Ok(out)
}

struct SubsystemSearch<'a> {
    l: &'a LieAlgebra,
    pair: &'a [Vec<i8>],
    types: &'a [ComponentType],
    cartans: &'a [Vec<Vec<i64>>],
    flags: &'a [Vec<bool>],
    expected_closure: usize,
    chosen: Vec<usize>,
    comp_start: Vec<usize>,
    by_diagram: HashMap<WeightedDiagram, SubsystemEmbedding>,
}

impl SubsystemSearch<'_> {
    fn component(&mut self, c: usize) {
        if c == self.types.len() {
            self.finish();
            return;
        }
        self.comp_start.push(self.chosen.len());
        self.node(c, 0);
        self.comp_start.pop();
    }

    fn node(&mut self, c: usize, k: usize) {
        let t = &self.types[c];
        let start = *self.comp_start.last().unwrap();
        if k == t.rank {
            // canonical form: A-chains are listed with smaller endpoint first
            if t.series == Series::A
                && t.rank > 1
                && self.chosen[start] > self.chosen[start + t.rank - 1]
            {
                return;
            }
            // identical component types appear with increasing first root
            if c > 0 && self.types[c - 1] == *t {
                let prev_start = start - t.rank;
                if self.chosen[prev_start] > self.chosen[start] {
                    return;
                }
            }
            self.component(c + 1);
            return;
        }
        let n = self.l.rs.num_positive();
        for r in 0..n {
            if self.chosen.contains(&r) {
                continue;
            }
            if self.l.rs.is_long(r) != self.flags[c][k] {
                continue;
            }
            let mut ok = true;
            // within-component pairings must match the target Cartan matrix
            for kk in 0..k {
                let s = self.chosen[start + kk];
                if self.pair[s][r] as i64 != self.cartans[c][kk][k]
                    || self.pair[r][s] as i64 != self.cartans[c][k][kk]
                {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            // orthogonal to all earlier components
            for &s in &self.chosen[..start] {
                if self.pair[s][r] != 0 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            self.chosen.push(r);
            self.node(c, k + 1);
            self.chosen.pop();
        }
    }

    fn finish(&mut self) {
        let rs = &self.l.rs;
        // closure of the chosen roots under addition inside Phi; the chosen
        // set is rejected unless the closure has exactly the requested size
        // (e.g. two orthogonal short roots in F4 may generate a B2)
        let mut closure: Vec<Vec<i64>> = Vec::new();
        for &r in &self.chosen {
            closure.push(rs.positive_roots[r].clone());
            closure.push(rs.positive_roots[r].iter().map(|&x| -x).collect());
        }
        let mut seen: std::collections::HashSet<Vec<i64>> = closure.iter().cloned().collect();
        let mut frontier = closure.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                for c in &closure {
                    let sum: Vec<i64> = f.iter().zip(c).map(|(a, b)| a + b).collect();
                    if sum.iter().all(|&x| x == 0) {
                        continue;
                    }
                    if rs.signed_index_of(&sum).is_some() && seen.insert(sum.clone()) {
                        next.push(sum);
                    }
                }
            }
            closure.extend(next.iter().cloned());
            frontier = next;
        }
        let positive_count = closure.iter().filter(|c| c.iter().sum::<i64>() > 0).count();
        if positive_count != self.expected_closure {
            return;
        }
        // h of the principal sl2 of the subsystem is the sum of its positive
        // coroots; the orbit diagram is the dominant label vector of that h.
        let rank = rs.rank;
        let mut coords = vec![Rat::zero(); rank];
        for c in &closure {
            if c.iter().sum::<i64>() <= 0 {
                continue;
            }
            let idx = rs.index_of(c).expect("closure member is a positive root");
            for (t, v) in rs.coroot_coeffs(idx).into_iter().enumerate() {
                coords[t] += rat(v);
            }
        }
        let labels = rs.dominant_labels(&coords);
        let Ok(diagram) = labels_to_diagram(self.l.kind(), &labels) else {
            return;
        };
        if self.by_diagram.contains_key(&diagram) {
            return;
        }
        let e = LieElement::from_pairs(
            self.l.kind(),
            self.chosen.iter().map(|&r| (self.l.x_index(r), rat(1))),
        );
        let h = self.l.cartan_element(&coords);
        self.by_diagram.insert(
            diagram.clone(),
            SubsystemEmbedding {
                roots: self.chosen.clone(),
                e,
                diagram,
                h,
            },
        );
    }
}

/// Fraction of seeds for which a single random x from Omega^s already has
/// h in [x, g(-2)]. The solvable subset of g(2) is Zariski dense for any
/// valid diagram, so this rate should sit near 1; the property tests pin
/// it above 95%.
pub fn membership_success_rate(
    l: &LieAlgebra,
    d: &WeightedDiagram,
    seeds: u64,
    omega_bound: i64,
) -> f64 {
    let h = h_from_diagram(l, d);
    let spaces = BracketSpaces::new(l, &h).expect("graded");
    let s = spaces.dim_g2();
    let mut hits = 0usize;
    for seed in 0..seeds {
        let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(0xDE45, seed));
        let mu: Vec<i64> = (0..s)
            .map(|_| sample_omega(&mut rng, omega_bound))
            .collect();
        if spaces.solve_exact(&mu).is_some() {
            hits += 1;
        }
    }
    hits as f64 / seeds as f64
}
