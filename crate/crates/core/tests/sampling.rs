mod common;

use common::{all_outcomes, empirical, rng, tableau_distribution, tv};
use qq_core::noise::sample;
use qq_core::{Circuit, DenseState, GateKind, SnfSampler, Strategy};
use rand::Rng;

fn dense_born(c: &Circuit) -> Vec<f64> {
    let all: Vec<usize> = (0..c.n()).collect();
    DenseState::run(c).unwrap().born_distribution(&all).unwrap()
}

#[test]
fn affine_orbit_matches_dense_born_rule() {
    let mut r = rng(2);
    for i in 0..200 {
        let d = [2u32, 3, 5][i % 3];
        let n = r.gen_range(1..=3);
        let c = Circuit::random_clifford(n, d, r.gen_range(1..=12), &mut r).unwrap();
        let t = c.clean_tableau().unwrap();
        let all: Vec<usize> = (0..n).collect();
        let exact = tableau_distribution(&t, &all);
        let dense = dense_born(&c);
        for (a, b) in exact.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-10, "circuit {i}:\n{}", c.serialize());
        }
    }
}

#[test]
fn tableau_state_matches_dense_state() {
    let mut r = rng(3);
    for i in 0..60 {
        let d = [2u32, 3, 4, 5, 6][i % 5];
        let n = r.gen_range(1..=2);
        let c = Circuit::random_clifford(n, d, 8, &mut r).unwrap();
        let psi = c.clean_tableau().unwrap().to_statevector::<f64>().unwrap();
        assert!(psi.approx_eq_up_to_phase(&DenseState::run(&c).unwrap(), 1e-9), "{}", c.serialize());
    }
}

#[test]
fn snf_sampler_matches_dense_in_composite_dimension() {
    let mut r = rng(4);
    for i in 0..50 {
        let d = [4u32, 6][i % 2];
        let n = r.gen_range(1..=2);
        let c = Circuit::random_clifford(n, d, r.gen_range(1..=10), &mut r).unwrap();
        let sampler = SnfSampler::new(&c.clean_tableau().unwrap()).unwrap();
        let dense = dense_born(&c);
        let support: Vec<Vec<u32>> =
            all_outcomes(n, d).into_iter().zip(&dense).filter(|(_, &p)| p > 1e-12).map(|(o, _)| o).collect();
        assert_eq!(sampler.support(), support, "{}", c.serialize());
        let w = 1.0 / support.len() as f64;
        assert!(dense.iter().all(|&p| p < 1e-12 || (p - w).abs() < 1e-10));

        let shots = sampler.sample_shots(10_000, i as u64);
        assert!(shots.iter().all(|s| sampler.satisfies(s)));
        assert!(tv(&empirical(&shots, d), &dense) < 0.05);
    }
}

#[test]
fn ghz_statistics() {
    let mut c = Circuit::new(3, 3).unwrap();
    c.push_gate(GateKind::H, &[0]).unwrap();
    c.push_gate(GateKind::Cnot, &[0, 1]).unwrap();
    c.push_gate(GateKind::Cnot, &[1, 2]).unwrap();
    c.measure_all().unwrap();
    let shots = sample(&c, Strategy::Direct, 3000, 7).unwrap();
    let mut counts = [0usize; 3];
    for s in &shots {
        assert!(s[0] == s[1] && s[1] == s[2], "{s:?}");
        counts[s[0] as usize] += 1;
    }
    let sigma = (3000.0 * (1.0 / 3.0) * (2.0 / 3.0f64)).sqrt();
    for k in counts {
        assert!((k as f64 - 1000.0).abs() < 3.0 * sigma, "{counts:?}");
    }
}

#[test]
fn uniform_superposition_and_basis_states() {
    for d in [2u32, 3, 4, 6] {
        let mut c = Circuit::new(2, d).unwrap();
        c.push_gate(GateKind::H, &[0]).unwrap();
        c.push_gate(GateKind::H, &[1]).unwrap();
        let p = dense_born(&c);
        assert!(p.iter().all(|&x| (x - 1.0 / (d * d) as f64).abs() < 1e-12));
        let s = SnfSampler::new(&c.clean_tableau().unwrap()).unwrap();
        assert_eq!(s.support().len(), (d * d) as usize);
    }
}
