use lie_orbits::algebra::build_algebra;
use lie_orbits::orbits::{subsystem_representative, ComponentType};
use lie_orbits::roots::{build, Kind};

#[test]
#[ignore]
fn bench_e8_a5_a2_a1() {
    let l = build_algebra(build(Kind::E8));
    let req: Vec<ComponentType> = ["A5", "A2", "A1"]
        .iter()
        .map(|s| ComponentType::parse(s).unwrap())
        .collect();
    let t0 = std::time::Instant::now();
    let embs = subsystem_representative(&l, &req).unwrap();
    println!(
        "E8 [A5,A2,A1]: {} embedding class(es) in {:?}",
        embs.len(),
        t0.elapsed()
    );
    for e in &embs {
        println!(
            "  diagram {} roots {:?}",
            e.diagram.display_string(),
            e.roots.iter().map(|r| r + 1).collect::<Vec<_>>()
        );
    }
}
