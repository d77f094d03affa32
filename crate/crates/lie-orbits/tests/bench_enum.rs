use lie_orbits::algebra::build_algebra;
use lie_orbits::orbits::{enumerate_diagrams, SearchConfig};
use lie_orbits::roots::{build, Kind};

#[test]
#[ignore]
fn bench_enumeration() {
    for kind in [Kind::E6, Kind::E7, Kind::E8] {
        let t0 = std::time::Instant::now();
        let l = build_algebra(build(kind));
        let cfg = SearchConfig {
            seed: 1,
            ..Default::default()
        };
        let diags = enumerate_diagrams(&l, &cfg);
        println!(
            "{kind}: {} valid diagrams in {:?}",
            diags.len(),
            t0.elapsed()
        );
    }
}
