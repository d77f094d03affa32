//! The five exceptional root systems with positive roots in GAP4 order.
//!
//! Internally everything is expressed in GAP simple-root numbering (the
//! numbering used by the embedded golden root tables). Two fixed per-type
//! permutations translate to the printed conventions: one maps GAP node
//! indices to Bourbaki coefficient positions (for root tables), the other
//! maps weighted-diagram display positions to GAP nodes.

use crate::LieError;
use exact_linalg::rat::Rat;
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::fmt;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    G2,
    F4,
    E6,
    E7,
    E8,
}

pub const ALL_KINDS: [Kind; 5] = [Kind::G2, Kind::F4, Kind::E6, Kind::E7, Kind::E8];

impl Kind {
    pub fn rank(self) -> usize {
        match self {
            Kind::G2 => 2,
            Kind::F4 => 4,
            Kind::E6 => 6,
            Kind::E7 => 7,
            Kind::E8 => 8,
        }
    }

    pub fn num_positive_roots(self) -> usize {
        match self {
            Kind::G2 => 6,
            Kind::F4 => 24,
            Kind::E6 => 36,
            Kind::E7 => 63,
            Kind::E8 => 120,
        }
    }

    pub fn dim(self) -> usize {
        2 * self.num_positive_roots() + self.rank()
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::G2 => "G2",
            Kind::F4 => "F4",
            Kind::E6 => "E6",
            Kind::E7 => "E7",
            Kind::E8 => "E8",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s.to_ascii_uppercase().as_str() {
            "G2" => Some(Kind::G2),
            "F4" => Some(Kind::F4),
            "E6" => Some(Kind::E6),
            "E7" => Some(Kind::E7),
            "E8" => Some(Kind::E8),
            _ => None,
        }
    }

    /// Cartan matrix in GAP numbering: `C[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(self) -> Vec<Vec<i64>> {
        match self {
            Kind::G2 => vec![vec![2, -1], vec![-3, 2]],
            Kind::F4 => vec![
                vec![2, 0, -1, 0],
                vec![0, 2, 0, -1],
                vec![-1, 0, 2, -1],
                vec![0, -1, -2, 2],
            ],
            Kind::E6 => e_series_cartan(6),
            Kind::E7 => e_series_cartan(7),
            Kind::E8 => e_series_cartan(8),
        }
    }

    /// GAP node i corresponds to Bourbaki coefficient position
    /// `gap_to_display()[i]` (1-based) in the printed root tables.
    pub fn gap_to_display(self) -> &'static [usize] {
        match self {
            Kind::G2 => &[1, 2],
            Kind::F4 => &[4, 1, 3, 2],
            Kind::E6 => &[1, 2, 3, 4, 5, 6],
            Kind::E7 => &[1, 2, 3, 4, 5, 6, 7],
            Kind::E8 => &[1, 2, 3, 4, 5, 6, 7, 8],
        }
    }

    /// Weighted-diagram display position k (1-based) corresponds to GAP node
    /// `diagram_display_to_gap()[k-1]` (1-based).
    pub fn diagram_display_to_gap(self) -> &'static [usize] {
        match self {
            Kind::G2 => &[2, 1],
            Kind::F4 => &[2, 4, 3, 1],
            Kind::E6 => &[1, 3, 4, 5, 6, 2],
            Kind::E7 => &[1, 3, 4, 5, 6, 7, 2],
            Kind::E8 => &[1, 3, 4, 5, 6, 7, 8, 2],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Bourbaki E-series: chain 1-3-4-5-...-n with node 2 attached to node 4.
fn e_series_cartan(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edges = vec![(1usize, 3usize), (2, 4), (3, 4)];
    for k in 4..n {
        edges.push((k, k + 1));
    }
    for (a, b) in edges {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

/// A root, identified by its coefficient vector over the simple roots (GAP
/// numbering) and its 1-based signed position: +k for the k-th positive
/// root, -k for its negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
    pub index: i64,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub kind: Kind,
    pub rank: usize,
    /// `C[i][j] = <alpha_i, alpha_j^vee>`, GAP numbering.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots as coefficient vectors, GAP order (0-based internally).
    pub positive_roots: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    /// Half squared norms d_alpha = (alpha,alpha)/2, normalized so the
    /// shortest root has d = 1.
    pub half_norms: Vec<i64>,
    d_simple: Vec<i64>,
    /// Symmetrized form B[i][j] = (alpha_i, alpha_j).
    bilinear: Vec<Vec<i64>>,
}

/// Builds the root system with positive roots generated in GAP order: roots
/// are produced height by height; at each height, the roots already listed
/// are scanned in list order and each simple root is added in display
/// (Bourbaki) position order, appending every sum that is a root and not
/// yet listed. This reproduces the GAP4 sequences bit-exactly for all five
/// types (golden tests); iterating the simples in GAP index order does not,
/// for F4, where the two numberings differ.
pub fn build(kind: Kind) -> RootSystem {
    let rank = kind.rank();
    let cartan = kind.cartan();
    // gap indices of the simple roots sorted by display position
    let mut simple_order: Vec<usize> = (0..rank).collect();
    simple_order.sort_by_key(|&i| kind.gap_to_display()[i]);
    let d_simple = simple_half_norms(&cartan);
    let mut bilinear = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            bilinear[i][j] = d_simple[j] * cartan[i][j];
        }
    }

    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    for i in 0..rank {
        let mut c = vec![0i64; rank];
        c[i] = 1;
        index.insert(c.clone(), roots.len());
        roots.push(c);
    }

    let pairing_with_simple = |coeffs: &[i64], j: usize| -> i64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &k)| k * cartan[i][j])
            .sum()
    };

    let mut height_start = 0;
    loop {
        let height_end = roots.len();
        if height_start == height_end {
            break;
        }
        for r in height_start..height_end {
            for &i in &simple_order {
                let c = pairing_with_simple(&roots[r], i);
                // p = length of the alpha_i-string below this root; the
                // probe stops at zero (root minus itself) or off the table
                let mut p = 0i64;
                let mut probe = roots[r].clone();
                loop {
                    probe[i] -= 1;
                    if probe.iter().all(|&x| x == 0) || !index.contains_key(&probe) {
                        break;
                    }
                    p += 1;
                }
                if p - c > 0 {
                    let mut sum = roots[r].clone();
                    sum[i] += 1;
                    if !index.contains_key(&sum) {
                        index.insert(sum.clone(), roots.len());
                        roots.push(sum);
                    }
                }
            }
        }
        height_start = height_end;
    }

    let half_norms = roots
        .iter()
        .map(|c| {
            let mut s = 0i64;
            for i in 0..rank {
                for j in 0..rank {
                    s += c[i] * c[j] * bilinear[i][j];
                }
            }
            debug_assert!(s % 2 == 0);
            s / 2
        })
        .collect();

    RootSystem {
        kind,
        rank,
        cartan,
        positive_roots: roots,
        root_index: index,
        half_norms,
        d_simple,
        bilinear,
    }
}

/// Solves d_j C[i][j] = d_i C[j][i] over the Dynkin graph, normalized to
/// integer values with minimum 1.
fn simple_half_norms(cartan: &[Vec<i64>]) -> Vec<i64> {
    let rank = cartan.len();
    let mut d = vec![Rat::zero(); rank];
    d[0] = exact_linalg::rat(1);
    let mut done = vec![false; rank];
    done[0] = true;
    loop {
        let mut progressed = false;
        for i in 0..rank {
            if !done[i] {
                continue;
            }
            for j in 0..rank {
                if done[j] || cartan[i][j] == 0 {
                    continue;
                }
                // (alpha_i, alpha_j) symmetric: d_j = d_i * C[j][i] / C[i][j]
                d[j] = &d[i] * exact_linalg::ratio(cartan[j][i], cartan[i][j]);
                done[j] = true;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    assert!(done.iter().all(|&b| b), "Dynkin graph must be connected");
    let min = d.iter().min().cloned().unwrap();
    d.iter()
        .map(|x| exact_linalg::rat::to_i64(&(x / &min)).expect("integer ratio"))
        .collect()
}

impl RootSystem {
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// 0-based index of the positive root with these coefficients.
    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_index.get(coeffs).copied()
    }

    /// Looks up a coefficient vector that may be a positive or negative
    /// root; returns the signed 1-based index.
    pub fn signed_index_of(&self, coeffs: &[i64]) -> Option<i64> {
        if let Some(i) = self.index_of(coeffs) {
            return Some(i as i64 + 1);
        }
        let neg: Vec<i64> = coeffs.iter().map(|&x| -x).collect();
        self.index_of(&neg).map(|i| -(i as i64 + 1))
    }

    pub fn root(&self, signed: i64) -> Root {
        assert!(signed != 0);
        let idx = (signed.unsigned_abs() as usize) - 1;
        let mut coeffs = self.positive_roots[idx].clone();
        if signed < 0 {
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
        Root {
            coeffs,
            index: signed,
        }
    }

    /// <alpha, alpha_j^vee> for a coefficient vector (j is 0-based).
    pub fn pairing_coeffs(&self, coeffs: &[i64], j: usize) -> i64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &k)| k * self.cartan[i][j])
            .sum()
    }

    /// <alpha, alpha_j^vee> for a root.
    pub fn pairing(&self, alpha: &Root, j: usize) -> i64 {
        self.pairing_coeffs(&alpha.coeffs, j)
    }

    /// <beta, gamma^vee> = (beta, gamma) / d_gamma for positive roots given
    /// by 0-based indices.
    pub fn pairing_roots(&self, beta: usize, gamma: usize) -> i64 {
        let b = self.inner_product(&self.positive_roots[beta], &self.positive_roots[gamma]);
        let d = self.half_norms[gamma];
        debug_assert!(b % d == 0);
        b / d
    }

    /// Symmetrized inner product of two coefficient vectors.
    pub fn inner_product(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    s += a[i] * b[j] * self.bilinear[i][j];
                }
            }
        }
        s
    }

    pub fn d_simple(&self) -> &[i64] {
        &self.d_simple
    }

    /// Half squared norm of a (0-based) positive root.
    pub fn half_norm(&self, idx: usize) -> i64 {
        self.half_norms[idx]
    }

    pub fn max_half_norm(&self) -> i64 {
        *self.half_norms.iter().max().unwrap()
    }

    /// Long means maximal length. In the simply-laced types every root is
    /// long.
    pub fn is_long(&self, idx: usize) -> bool {
        self.half_norms[idx] == self.max_half_norm()
    }

    /// Coroot of the (0-based) positive root `idx` as integer coefficients
    /// over the simple coroots: alpha^vee = sum_i k_i (d_i / d_alpha)
    /// alpha_i^vee.
    pub fn coroot_coeffs(&self, idx: usize) -> Vec<i64> {
        let d_alpha = self.half_norms[idx];
        self.positive_roots[idx]
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let num = k * self.d_simple[i];
                debug_assert!(num % d_alpha == 0);
                num / d_alpha
            })
            .collect()
    }

    /// Simple-reflection sweep taking h (coordinates over the simple coroot
    /// basis h_1..h_l) into the dominant chamber; returns the label vector
    /// (alpha_1(h), ..., alpha_l(h)). Reflection order does not affect the
    /// result: the dominant representative of a Weyl orbit is unique.
    pub fn dominant_labels(&self, coords: &[Rat]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.rank);
        let mut a = coords.to_vec();
        let labels = |a: &[Rat]| -> Vec<Rat> {
            (0..self.rank)
                .map(|i| {
                    let mut s = Rat::zero();
                    for j in 0..self.rank {
                        if self.cartan[i][j] != 0 {
                            s += exact_linalg::rat(self.cartan[i][j]) * &a[j];
                        }
                    }
                    s
                })
                .collect()
        };
        loop {
            let l = labels(&a);
            match l.iter().position(|x| x.is_negative()) {
                None => return l,
                Some(i) => {
                    // s_i(h) = h - alpha_i(h) h_i
                    let li = l[i].clone();
                    a[i] -= li;
                }
            }
        }
    }

    /// Display (Bourbaki) coefficients of a positive root.
    pub fn display_coeffs(&self, idx: usize) -> Vec<i64> {
        let perm = self.kind.gap_to_display();
        let mut out = vec![0i64; self.rank];
        for (i, &c) in self.positive_roots[idx].iter().enumerate() {
            out[perm[i] - 1] = c;
        }
        out
    }

    /// Parses display coefficients into the GAP coefficient vector.
    pub fn display_to_gap_coeffs(&self, display: &[i64]) -> Vec<i64> {
        let perm = self.kind.gap_to_display();
        (0..self.rank).map(|i| display[perm[i] - 1]).collect()
    }

    /// Checks self-consistency of the generated data.
    pub fn validate(&self) -> Result<(), LieError> {
        if self.positive_roots.len() != self.kind.num_positive_roots() {
            return Err(LieError::Internal(format!(
                "{}: expected {} positive roots, generated {}",
                self.kind,
                self.kind.num_positive_roots(),
                self.positive_roots.len()
            )));
        }
        let mut last_height = 0i64;
        for c in &self.positive_roots {
            let h: i64 = c.iter().sum();
            if h < last_height {
                return Err(LieError::Internal(
                    "positive roots not sorted by height".into(),
                ));
            }
            last_height = h;
        }
        for (i, row) in self.cartan.iter().enumerate() {
            if row[i] != 2 {
                return Err(LieError::Internal("Cartan diagonal must be 2".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if j != i && !(-3..=0).contains(&v) {
                    return Err(LieError::Internal("Cartan off-diagonal range".into()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::rat;

    #[test]
    fn g2_positive_roots_in_order() {
        let rs = build(Kind::G2);
        let expect = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![3, 2],
        ];
        assert_eq!(rs.positive_roots, expect);
        rs.validate().unwrap();
    }

    #[test]
    fn root_counts() {
        for kind in ALL_KINDS {
            let rs = build(kind);
            assert_eq!(rs.num_positive(), kind.num_positive_roots(), "{kind}");
            rs.validate().unwrap();
        }
    }

    #[test]
    fn f4_last_root_display_is_2342() {
        let rs = build(Kind::F4);
        assert_eq!(rs.display_coeffs(23), vec![2, 3, 4, 2]);
    }

    #[test]
    fn e8_highest_root() {
        let rs = build(Kind::E8);
        let last = rs.num_positive() - 1;
        let c = &rs.positive_roots[last];
        assert_eq!(c[1], 3); // alpha_2 coefficient
        assert_eq!(c[3], 6); // alpha_4 coefficient
    }

    #[test]
    fn highest_root_is_long() {
        for kind in ALL_KINDS {
            let rs = build(kind);
            assert!(rs.is_long(rs.num_positive() - 1), "{kind}");
        }
    }

    #[test]
    fn root_lengths_per_type() {
        for kind in ALL_KINDS {
            let rs = build(kind);
            let mut norms: Vec<i64> = rs.half_norms.clone();
            norms.sort();
            norms.dedup();
            match kind {
                Kind::G2 => assert_eq!(norms, vec![1, 3]),
                Kind::F4 => assert_eq!(norms, vec![1, 2]),
                _ => assert_eq!(norms, vec![1]),
            }
        }
    }

    #[test]
    fn pairing_simple_is_two() {
        for kind in ALL_KINDS {
            let rs = build(kind);
            for j in 0..rs.rank {
                let alpha = rs.root(j as i64 + 1);
                assert_eq!(rs.pairing(&alpha, j), 2);
            }
        }
    }

    #[test]
    fn g2_highest_root_pairings() {
        let rs = build(Kind::G2);
        let theta = rs.root(6);
        let mut vals = vec![rs.pairing(&theta, 0), rs.pairing(&theta, 1)];
        vals.sort();
        assert_eq!(vals, vec![0, 1]);
    }

    #[test]
    fn e6_highest_root_pairing_with_branch_node() {
        let rs = build(Kind::E6);
        let theta = rs.root(36);
        // Bourbaki alpha_2 = GAP node 2 in E6
        assert_eq!(rs.pairing(&theta, 1), 1);
    }

    #[test]
    fn closure_under_addition_matches_table() {
        for kind in ALL_KINDS {
            let rs = build(kind);
            let n = rs.num_positive();
            let max_height: i64 = rs.positive_roots[n - 1].iter().sum();
            for i in 0..n {
                for j in 0..n {
                    let sum: Vec<i64> = rs.positive_roots[i]
                        .iter()
                        .zip(&rs.positive_roots[j])
                        .map(|(a, b)| a + b)
                        .collect();
                    let h: i64 = sum.iter().sum();
                    if h > max_height {
                        assert!(rs.index_of(&sum).is_none());
                    }
                    // membership is consistent with the generated list by
                    // construction of index_of; spot-check the string rule
                }
            }
            // every non-simple positive root decomposes as alpha + beta
            for k in rs.rank..n {
                let c = &rs.positive_roots[k];
                let mut found = false;
                'outer: for i in 0..n {
                    let a = &rs.positive_roots[i];
                    let diff: Vec<i64> = c.iter().zip(a).map(|(x, y)| x - y).collect();
                    if diff.iter().all(|&x| x >= 0) && diff.iter().any(|&x| x > 0) {
                        if rs.index_of(&diff).is_some() {
                            found = true;
                            break 'outer;
                        }
                    }
                }
                assert!(found, "{kind} root {k} has no summand decomposition");
            }
        }
    }

    #[test]
    fn dominant_labels_fixed_point() {
        let rs = build(Kind::F4);
        // h with labels all 1: solve via dominance of a dominant element
        let coords: Vec<Rat> = vec![rat(3), rat(5), rat(8), rat(11)];
        let labels = rs.dominant_labels(&coords);
        let again = {
            // feeding back coordinates of an already-dominant h leaves labels
            // unchanged; reconstruct coords from labels via Cartan solve is
            // exercised elsewhere, here apply to the same coords
            rs.dominant_labels(&coords)
        };
        assert_eq!(labels, again);
        assert!(labels.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn dominant_labels_weyl_invariant() {
        let rs = build(Kind::G2);
        // G2 regular h: labels (2,2) from coords (6,10)
        let coords = vec![rat(6), rat(10)];
        let labels = rs.dominant_labels(&coords);
        assert_eq!(labels, vec![rat(2), rat(2)]);
        // arbitrary Weyl translate: apply s_0 then s_1 manually
        let mut a = coords.clone();
        let l0 = rat(2) * &a[0] + rat(-1) * &a[1];
        a[0] -= l0; // s_0
        let l1 = rat(-3) * &a[0] + rat(2) * &a[1];
        a[1] -= l1; // s_1
        assert_eq!(rs.dominant_labels(&a), vec![rat(2), rat(2)]);
    }

    #[test]
    fn coroot_of_g2_highest_root() {
        let rs = build(Kind::G2);
        assert_eq!(rs.coroot_coeffs(5), vec![1, 2]);
    }

    proptest::proptest! {
        // dominant_labels is Weyl-invariant: any sequence of simple
        // reflections applied to h leaves the dominant labels unchanged.
        #[test]
        fn prop_dominant_labels_weyl_invariant(
            coords in proptest::collection::vec(-6i64..=6, 4),
            refl in proptest::collection::vec(0usize..4, 0..12),
        ) {
            let rs = build(Kind::F4);
            let coords: Vec<Rat> = coords.into_iter().map(rat).collect();
            let reference = rs.dominant_labels(&coords);
            let mut a = coords;
            for i in refl {
                // s_i(h) = h - alpha_i(h) h_i
                let mut label = Rat::zero();
                for j in 0..4 {
                    label += rat(rs.cartan[i][j]) * &a[j];
                }
                a[i] -= label;
            }
            proptest::prop_assert_eq!(rs.dominant_labels(&a), reference);
        }
    }
}
