//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Everything runs in exact or certified-randomized arithmetic with
//! fixed seeds.

use exact_linalg::rat::rat;
use lie_orbits::algebra::{bracket, build_algebra, grade, LieAlgebra, LieElement};
use lie_orbits::centralizer::{
    adapted_h, centralizer, centralizer_graded, min_double_centralizer_on, recheck_certificate,
    verify_elashvili_on, CertifyConfig, Conclusion, DoubleCenConfig, LowerBoundMode,
};
use lie_orbits::orbits::{
    complete_sl2, derive_seed, enumerate_orbits, membership_success_rate, nicify,
    subsystem_representative, weighted_dynkin, ComponentType, SearchConfig,
};
use lie_orbits::roots::{build, Kind, ALL_KINDS};
use lie_orbits::tables::{golden_root_table, load_tables, verify_tables};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn algebra(kind: Kind) -> LieAlgebra {
    build_algebra(build(kind))
}

fn pass(criterion: &str) {
    println!("[PASS] {criterion}");
}

// Criterion 1: generated positive-root sequences match the embedded golden
// tables bit-exactly for all five types.
#[test]
fn criterion_1_root_goldens() {
    for kind in ALL_KINDS {
        let rs = build(kind);
        let golden = golden_root_table(kind).unwrap();
        assert_eq!(golden.len(), kind.num_positive_roots(), "{kind}");
        for (i, row) in golden.iter().enumerate() {
            assert_eq!(&rs.display_coeffs(i), row, "{kind} root {}", i + 1);
        }
    }
    pass("criterion 1: root goldens bit-exact for G2/F4/E6/E7/E8 (6/24/36/63/120)");
}

// Criterion 2: full table verification on all four checks.
#[test]
fn criterion_2_table_verification() {
    for (kind, rows) in [(Kind::G2, 4), (Kind::F4, 15), (Kind::E6, 20)] {
        let l = algebra(kind);
        let report = verify_tables(kind, &l).unwrap();
        for row in &report.rows {
            assert!(
                row.all_ok(),
                "{kind} {}: grading {} diagram {} rep {} sl2 {}",
                row.label,
                row.grading_ok,
                row.diagram_ok,
                row.rep_diagram_ok,
                row.sl2_ok
            );
        }
        assert_eq!(report.passed(), rows, "{kind}");
    }
    pass("criterion 2: verify_tables 4/4 (G2), 15/15 (F4), 20/20 (E6) on all checks");
}

// Criterion 3: enumeration counts 4/15/20 for the table types; 44/69 for
// E7/E8, stable across five independent seeds. Every accepted diagram
// carries a verified certificate and round-trips through weighted_dynkin.
#[test]
fn criterion_3_enumeration_counts() {
    let expected = [
        (Kind::G2, 4usize),
        (Kind::F4, 15),
        (Kind::E6, 20),
        (Kind::E7, 44),
        (Kind::E8, 69),
    ];
    for (kind, count) in expected {
        let l = algebra(kind);
        let seeds: &[u64] = match kind {
            Kind::E7 | Kind::E8 => &[1, 2, 3, 4, 5],
            _ => &[1],
        };
        let mut first = None;
        for &seed in seeds {
            let cfg = SearchConfig {
                seed,
                ..Default::default()
            };
            let orbits = enumerate_orbits(&l, &cfg);
            assert_eq!(orbits.len(), count, "{kind} seed {seed}");
            let diagrams: Vec<_> = orbits.iter().map(|o| o.diagram.clone()).collect();
            match &first {
                None => {
                    // certificates and the weighted-diagram round-trip,
                    // checked once per type
                    for o in &orbits {
                        o.triple.verify(&l).unwrap();
                        assert_eq!(
                            weighted_dynkin(&l, &o.rep).unwrap(),
                            o.diagram,
                            "{kind} round-trip"
                        );
                    }
                    first = Some(diagrams);
                }
                Some(f) => assert_eq!(&diagrams, f, "{kind} seed {seed} disagrees"),
            }
        }
    }
    pass("criterion 3: enumeration counts 4/15/20/44/69, stable across 5 seeds for E7/E8");
}

// Criterion 4: Elashvili certification for every enumerated orbit of all
// five types, with dim K^f = rank(g); certificates re-verified from scratch.
#[test]
fn criterion_4_elashvili_certification() {
    for kind in ALL_KINDS {
        let l = algebra(kind);
        let cfg = SearchConfig {
            seed: 40,
            ..Default::default()
        };
        let orbits = enumerate_orbits(&l, &cfg);
        for (i, o) in orbits.iter().enumerate() {
            let e = nicify(&l, &o.triple.h, &o.rep);
            let h = adapted_h(&l, &e).unwrap();
            let grading = grade(&l, &h).unwrap();
            let k = centralizer_graded(&l, &e, &grading).unwrap();
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(40, i as u64));
            let ccfg = CertifyConfig {
                seed: 40,
                ..Default::default()
            };
            let cert = verify_elashvili_on(&l, &e, &k, &mut rng, &ccfg).unwrap();
            assert_eq!(
                cert.conclusion,
                Conclusion::Certified,
                "{kind} orbit {}",
                o.diagram.display_string()
            );
            assert_eq!(cert.dim_kf, l.rs.rank, "{kind}");
            recheck_certificate(&l, &cert).unwrap();
        }
    }
    // the printed table representatives certify as well
    for kind in [Kind::G2, Kind::F4, Kind::E6] {
        let l = algebra(kind);
        for (i, rec) in load_tables(kind).unwrap().iter().enumerate() {
            let e =
                LieElement::from_pairs(kind, rec.rep_roots.iter().map(|&r| (l.x_index(r), rat(1))));
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(41, i as u64));
            let cert = verify_elashvili_on(
                &l,
                &e,
                &centralizer(&l, &e).unwrap(),
                &mut rng,
                &CertifyConfig {
                    seed: 41,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(
                cert.conclusion,
                Conclusion::Certified,
                "{kind} table row {}",
                rec.label
            );
            assert_eq!(cert.dim_kf, l.rs.rank);
        }
    }
    pass("criterion 4: Elashvili certified for every orbit, dim K^f = 2/4/6/7/8; certificates self-verify");
}

// Criterion 5: the minimal double-centralizer dimension equals rank(g)
// except exactly three rows, each abelian with a homogeneous witness
// (ad-h degree 2, the classical "degree -1" in the halved grading adapted
// to f); lower bounds exact for G2, at worst probabilistic for F4/E8.
#[test]
fn criterion_5_double_centralizer_proposition() {
    // expected exceptional rows per type: label or subsystem-derived diagram
    let g2_records = load_tables(Kind::G2).unwrap();
    let f4_records = load_tables(Kind::F4).unwrap();
    let g2_exc = g2_records
        .iter()
        .find(|r| r.label == "A1+~A1")
        .unwrap()
        .diagram
        .clone();
    let f4_exc = f4_records
        .iter()
        .find(|r| r.label == "~A2+A2")
        .unwrap()
        .diagram
        .clone();
    let l8 = algebra(Kind::E8);
    let req: Vec<ComponentType> = ["A5", "A2", "A1"]
        .iter()
        .map(|s| ComponentType::parse(s).unwrap())
        .collect();
    let embs = subsystem_representative(&l8, &req).unwrap();
    assert_eq!(embs.len(), 1, "A5+A2+A1 has a single class in E8");
    let e8_exc = embs[0].diagram.clone();

    for kind in ALL_KINDS {
        let l = algebra(kind);
        let cfg = SearchConfig {
            seed: 50,
            ..Default::default()
        };
        let orbits = enumerate_orbits(&l, &cfg);
        let mut exceptional = Vec::new();
        for (i, o) in orbits.iter().enumerate() {
            let e = nicify(&l, &o.triple.h, &o.rep);
            let h = adapted_h(&l, &e).unwrap();
            let grading = grade(&l, &h).unwrap();
            let k = centralizer_graded(&l, &e, &grading).unwrap();
            let dcfg = DoubleCenConfig {
                seed: 50,
                homogeneous_witness_degree: Some(2),
                ..Default::default()
            };
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(50 ^ 0xDC, i as u64));
            let (report, witness) = min_double_centralizer_on(&l, &e, &k, &mut rng, &dcfg).unwrap();
            assert!(report.min_dim >= l.rs.rank, "Richardson bound");
            if report.min_dim > l.rs.rank {
                // abelian witness required for exceptional rows
                assert!(report.abelian, "{kind} {}", o.diagram.display_string());
                assert_eq!(
                    report.homogeneous_witness_ok,
                    Some(true),
                    "{kind} {} homogeneous witness",
                    o.diagram.display_string()
                );
                match kind {
                    Kind::G2 => assert_eq!(report.mode, LowerBoundMode::SymbolicExact),
                    _ => assert!(
                        matches!(
                            report.mode,
                            LowerBoundMode::SymbolicExact
                                | LowerBoundMode::Probabilistic { neg_log10_eps: 9 }
                        ),
                        "{kind} mode {:?}",
                        report.mode
                    ),
                }
                // the witness is a genuine centralizer member
                assert!(bracket(&l, &e, &witness).unwrap().is_zero());
                exceptional.push((o.diagram.clone(), report.min_dim));
            }
        }
        match kind {
            Kind::G2 => assert_eq!(exceptional, vec![(g2_exc.clone(), 3)], "G2"),
            Kind::F4 => assert_eq!(exceptional, vec![(f4_exc.clone(), 6)], "F4"),
            Kind::E8 => assert_eq!(exceptional, vec![(e8_exc.clone(), 12)], "E8"),
            _ => assert!(exceptional.is_empty(), "{kind} has no exceptional rows"),
        }
    }
    pass("criterion 5: min double-centralizer = rank except (G2,A1+~A1,3), (F4,~A2+A2,6), (E8,A5+A2+A1,12); all abelian with homogeneous witnesses");
}

// Criterion 6: always-on property suites.
#[test]
fn criterion_6_property_suites() {
    // sl2 identities for every produced triple, across all types
    for kind in ALL_KINDS {
        let l = algebra(kind);
        let cfg = SearchConfig {
            seed: 60,
            ..Default::default()
        };
        for o in enumerate_orbits(&l, &cfg) {
            o.triple.verify(&l).unwrap();
            // membership in [e, g(-2)] always completes to a triple
            let t = complete_sl2(&l, &o.triple.h, &o.rep).unwrap();
            t.verify(&l).unwrap();
        }
    }

    // Jacobi exhaustive on G2
    let g2 = algebra(Kind::G2);
    for i in 0..g2.dim {
        for j in 0..g2.dim {
            for k in 0..g2.dim {
                let a = LieElement::from_pairs(Kind::G2, [(i, rat(1))]);
                let b = LieElement::from_pairs(Kind::G2, [(j, rat(1))]);
                let c = LieElement::from_pairs(Kind::G2, [(k, rat(1))]);
                let ab_c = bracket(&g2, &bracket(&g2, &a, &b).unwrap(), &c).unwrap();
                let bc_a = bracket(&g2, &bracket(&g2, &b, &c).unwrap(), &a).unwrap();
                let ca_b = bracket(&g2, &bracket(&g2, &c, &a).unwrap(), &b).unwrap();
                let mut sum = ab_c;
                sum.add_scaled(&bc_a, &rat(1));
                sum.add_scaled(&ca_b, &rat(1));
                assert!(sum.is_zero(), "Jacobi fails at ({i},{j},{k})");
            }
        }
    }

    // N = +-(p+1) exhaustive per type
    for kind in ALL_KINDS {
        let l = algebra(kind);
        let rs = &l.rs;
        let n = l.n_pos;
        let signed: Vec<i64> = (1..=n as i64).chain((1..=n as i64).map(|i| -i)).collect();
        for &a in &signed {
            for &b in &signed {
                if a == b || a == -b {
                    continue;
                }
                let ca = rs.root(a).coeffs;
                let cb = rs.root(b).coeffs;
                let sum: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
                if rs.signed_index_of(&sum).is_none() {
                    continue;
                }
                let ea = if a > 0 {
                    l.x(a as usize - 1)
                } else {
                    l.y((-a) as usize - 1)
                };
                let eb = if b > 0 {
                    l.x(b as usize - 1)
                } else {
                    l.y((-b) as usize - 1)
                };
                let br = bracket(&l, &ea, &eb).unwrap();
                let nval = exact_linalg::rat::to_i64(br.coeffs.values().next().unwrap()).unwrap();
                let mut p = 0i64;
                let mut probe = cb.clone();
                loop {
                    for (x, y) in probe.iter_mut().zip(&ca) {
                        *x -= y;
                    }
                    if probe.iter().all(|&v| v == 0) || rs.signed_index_of(&probe).is_none() {
                        break;
                    }
                    p += 1;
                }
                assert_eq!(nval.abs(), p + 1, "{kind} N({a},{b})");
            }
        }
    }

    // dim C_{e,x} >= rank(g) on every sample (explicit sampling on top of
    // the hard check inside the scan)
    let l = algebra(Kind::F4);
    let e = LieElement::from_pairs(Kind::F4, [7usize, 8, 9, 17].map(|r| (r, rat(1))));
    let h = adapted_h(&l, &e).unwrap();
    let grading = grade(&l, &h).unwrap();
    let k = centralizer_graded(&l, &e, &grading).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(66);
    for _ in 0..50 {
        let p = exact_linalg::modular::random_prime(&mut rng);
        let t: Vec<i64> = (0..k.dim())
            .map(|_| {
                let v: i64 = rng.gen_range(-50..=50);
                if v == 0 {
                    1
                } else {
                    v
                }
            })
            .collect();
        let b = k.ad_form_mod(&t, p).unwrap();
        assert!(k.dim() - b.rank() >= l.rs.rank);
    }

    // density of the solvable set as a statistical test: single-shot
    // success rate > 95% per
    // valid diagram of G2 and F4, over 200 seeds with Omega = {-20..20}\{0}
    for kind in [Kind::G2, Kind::F4] {
        let l = algebra(kind);
        let cfg = SearchConfig {
            seed: 61,
            ..Default::default()
        };
        for o in enumerate_orbits(&l, &cfg) {
            let rate = membership_success_rate(&l, &o.diagram, 200, 20);
            assert!(
                rate > 0.95,
                "{kind} {}: success rate {rate}",
                o.diagram.display_string()
            );
        }
    }
    pass("criterion 6: sl2 identities, Jacobi (G2 exhaustive), N = +-(p+1) exhaustive, Richardson bound on samples, membership density > 95%");
}

// Criterion 7: centralizer dimensions via the exact kernel agree with an
// independent brute-force commutant computation over a small prime field
// for every G2 orbit.
#[test]
fn criterion_7_g2_oracle_equivalence() {
    let l = algebra(Kind::G2);
    let cfg = SearchConfig {
        seed: 70,
        ..Default::default()
    };
    let orbits = enumerate_orbits(&l, &cfg);
    assert_eq!(orbits.len(), 4);
    for o in &orbits {
        let e = nicify(&l, &o.triple.h, &o.rep);
        let k = centralizer(&l, &e).unwrap();
        // independent oracle: textbook Gauss-Jordan kernel dimension of the
        // ad matrix over F_10007, written from scratch here
        let p: i64 = 10007;
        let dim = l.dim;
        let mut m = vec![vec![0i64; dim]; dim];
        for (&i, c) in &e.coeffs {
            for j in 0..dim {
                let (entries, sign) = l.basis_bracket(i, j);
                for &(kk, v) in entries {
                    let c_int = exact_linalg::rat::to_i64(c).expect("nicified integer");
                    m[kk as usize][j] = (m[kk as usize][j] + sign * v * c_int).rem_euclid(p);
                }
            }
        }
        let rank = brute_force_rank_mod(&mut m, p);
        let kernel_dim = dim - rank;
        assert_eq!(
            k.dim(),
            kernel_dim,
            "G2 orbit {}: exact {} vs mod-p oracle {}",
            o.diagram.display_string(),
            k.dim(),
            kernel_dim
        );
    }
    // the regular orbit has a 2-dimensional (abelian) centralizer, and its
    // index form is identically zero
    let regular = orbits
        .iter()
        .find(|o| o.diagram.display_string() == "2 2")
        .unwrap();
    let e = nicify(&l, &regular.triple.h, &regular.rep);
    let k = centralizer(&l, &e).unwrap();
    assert_eq!(k.dim(), 2);
    assert!(k.is_abelian());
    let a = k.index_form_matrix();
    let mut rng = ChaCha12Rng::seed_from_u64(71);
    let sample: Vec<i64> = (-50..=50).filter(|&x| x != 0).collect();
    assert_eq!(a.generic_rank_lower_bound(5, &sample, &mut rng), 0);
    pass("criterion 7: G2 centralizer dimensions agree with the brute-force prime-field commutant for every orbit");
}

fn brute_force_rank_mod(m: &mut [Vec<i64>], p: i64) -> usize {
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] % p != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = mod_inverse(m[rank][c].rem_euclid(p), p);
        for x in m[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for r in 0..rows {
            if r != rank && m[r][c] % p != 0 {
                let f = m[r][c].rem_euclid(p);
                for cc in 0..cols {
                    m[r][cc] = (m[r][cc] - f * m[rank][cc]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // Fermat, p prime
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

// Supplementary checks tied to the section-5 machinery: the G2 subregular
// ad-form matrix has symbolic rank 1 (all 2x2 minors vanish identically,
// checked by direct expansion) and random evaluations never exceed it.
#[test]
fn g2_subregular_ad_form_rank_one() {
    let l = algebra(Kind::G2);
    let e = LieElement::from_pairs(Kind::G2, [(1usize, rat(1)), (3, rat(1))]);
    let h = adapted_h(&l, &e).unwrap();
    let grading = grade(&l, &h).unwrap();
    let k = centralizer_graded(&l, &e, &grading).unwrap();
    assert_eq!(k.dim(), 4);
    let b = k.ad_form_matrix();
    assert_eq!(exact_linalg::symbolic_rank(&b, 100_000).unwrap(), 1);
    // independent oracle: every 2x2 minor vanishes identically
    let entries: Vec<Vec<exact_linalg::MPoly>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| exact_linalg::MPoly::from_linform(b.get(i, j), 4).0)
                .collect()
        })
        .collect();
    for r0 in 0..4 {
        for r1 in r0 + 1..4 {
            for c0 in 0..4 {
                for c1 in c0 + 1..4 {
                    let ad = entries[r0][c0].mul(&entries[r1][c1], 100_000).unwrap();
                    let bc = entries[r0][c1].mul(&entries[r1][c0], 100_000).unwrap();
                    assert!(ad.sub(&bc).is_zero(), "minor ({r0},{r1})x({c0},{c1})");
                }
            }
        }
    }
    // a random evaluation has rank <= 1
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    for _ in 0..20 {
        let t: Vec<exact_linalg::Rat> = (0..4).map(|_| rat(rng.gen_range(-50..=50))).collect();
        assert!(b.eval(&t).unwrap().rank() <= 1);
    }
    // the whole-algebra path agrees with a fresh (non-graded) centralizer
    let k2 = centralizer(&l, &e).unwrap();
    assert_eq!(k2.dim(), 4);
    pass(
        "supplementary: G2 subregular ad-form has symbolic rank 1 (2x2 minors vanish identically)",
    );
}

// E8 spot dimensions: the minimal orbit centralizer has dimension 190 =
// 248 - 58, cross-checked against an independent count of the ad-e image.
#[test]
fn e8_minimal_orbit_dimensions() {
    let l = algebra(Kind::E8);
    let e = l.x(l.n_pos - 1);
    let h = adapted_h(&l, &e).unwrap();
    let grading = grade(&l, &h).unwrap();
    let k = centralizer_graded(&l, &e, &grading).unwrap();
    assert_eq!(k.dim(), 190);
    let rank_ad = lie_orbits::algebra::ad_matrix(&l, &e).rank();
    assert_eq!(rank_ad, 58);
    assert_eq!(l.dim - rank_ad, 190);
    pass("supplementary: E8 minimal orbit centralizer has dimension 190 (ad-e image 58)");
}

// Subsystem constructor examples: a single A1 in any type is the
// highest-root orbit.
#[test]
fn subsystem_a1_everywhere() {
    for kind in [Kind::G2, Kind::F4, Kind::E6] {
        let l = algebra(kind);
        let embs = subsystem_representative(&l, &[ComponentType::parse("A1").unwrap()]).unwrap();
        assert_eq!(embs.len(), 1, "{kind}");
        let theta = l.n_pos - 1;
        assert_eq!(
            embs[0].diagram,
            weighted_dynkin(&l, &l.x(theta)).unwrap(),
            "{kind}"
        );
    }
    pass("supplementary: [A1] subsystems give the highest-root orbit in G2/F4/E6");
}
