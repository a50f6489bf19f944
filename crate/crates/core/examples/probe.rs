use qflag::suite::*;
use qflag::cartan::{RootSystem, Weight};
use qflag::repbuild::{build_irrep, fundamental_sln};
use std::sync::Arc;
use std::time::Instant;

fn main() {
    let a1 = Arc::new(RootSystem::parse("A1").unwrap());
    for rep in [
        build_irrep(&a1, &Weight(vec![1])).unwrap(),
        build_irrep(&a1, &Weight(vec![2])).unwrap(),
        fundamental_sln(3),
    ] {
        let t = Instant::now();
        let checks = matrix_unit_checks(&rep, EXACT_BUDGET_DIM3);
        let ok = checks.iter().all(|c| c.passed);
        let oracles: Vec<String> = checks.iter().filter_map(|c| c.oracle.map(|o| o.to_string())).collect();
        println!("{}: ok={} oracles={:?} in {:.2?}", rep.label(), ok, oracles, t.elapsed());
    }
    let t = Instant::now();
    let checks = sl2_pairing_checks();
    println!("sl2 pairing: ok={} in {:.2?}", checks.iter().all(|c| c.passed), t.elapsed());
    let t = Instant::now();
    let checks = sl3_adjoint_checks();
    println!("sl3 adjoint: ok={} in {:.2?}", checks.iter().all(|c| c.passed), t.elapsed());
    let t = Instant::now();
    let mut checks = Vec::new();
    for (name, crosscheck) in [("A2", 4), ("B2", 4), ("G2", 1)] {
        checks.extend(family_checks(name, 8, crosscheck));
    }
    println!("families: ok={} in {:.2?}", checks.iter().all(|c| c.passed), t.elapsed());
    let t = Instant::now();
    let checks = structural_checks(0);
    println!("structural: ok={} in {:.2?}", checks.iter().all(|c| c.passed), t.elapsed());
    let t = Instant::now();
    let mut checks = Vec::new();
    for (r, n) in [(1, 2), (1, 3), (2, 4)] {
        checks.extend(grassmannian_checks(r, n));
    }
    println!("grassmannians: ok={} in {:.2?}", checks.iter().all(|c| c.passed), t.elapsed());
}
