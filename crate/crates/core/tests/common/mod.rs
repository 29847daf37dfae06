#![allow(dead_code)]

use qq_core::dense::{outcome_digits, outcome_index};
use qq_core::tableau::AffineSampler;
use qq_core::{Circuit, DensityMatrix, NoiseModel, Op, Tableau};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn empirical(samples: &[Vec<u32>], d: u32) -> Vec<f64> {
    let len = samples.first().map_or(0, Vec::len);
    let mut p = vec![0.0; (d as usize).pow(len as u32)];
    for s in samples {
        p[outcome_index(s, d)] += 1.0;
    }
    let total = samples.len() as f64;
    p.iter_mut().for_each(|x| *x /= total);
    p
}

pub fn tv(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0
}

/// Exact outcome distribution of a prime-`d` tableau over `measured`, from the
/// uniform affine orbit.
pub fn tableau_distribution(t: &Tableau, measured: &[usize]) -> Vec<f64> {
    let d = t.d();
    let sampler = AffineSampler::new(t, &mut rng(0)).unwrap();
    let orbit = sampler.orbit();
    let w = 1.0 / orbit.len() as f64;
    let mut p = vec![0.0; (d as usize).pow(measured.len() as u32)];
    for v in orbit {
        let picked: Vec<u32> = measured.iter().map(|&q| v[q]).collect();
        p[outcome_index(&picked, d)] += w;
    }
    p
}

pub fn dense_distribution(c: &Circuit, measured: &[usize]) -> Vec<f64> {
    DensityMatrix::run(c).unwrap().born_distribution(measured).unwrap()
}

/// Random gate circuit followed by up to `sites` noise ops at random
/// positions and a full terminal measurement.
pub fn random_noisy_circuit(n: usize, d: u32, gates: usize, sites: usize, r: &mut impl Rng) -> Circuit {
    let mut c = Circuit::random_clifford(n, d, gates, r).unwrap();
    for _ in 0..sites {
        let p = r.gen_range(0.05..0.6);
        let model = match r.gen_range(0..3) {
            0 => NoiseModel::depolarizing(p, d).unwrap(),
            1 => NoiseModel::dephasing(p, d).unwrap(),
            _ => NoiseModel::dit_flip(p, d).unwrap(),
        };
        let id = c.register_model(model).unwrap();
        let at = r.gen_range(0..=c.len());
        c.insert(at, Op::Noise { model: id, qudit: r.gen_range(0..n) }).unwrap();
    }
    c.measure_all().unwrap();
    c
}

pub fn all_outcomes(len: usize, d: u32) -> Vec<Vec<u32>> {
    (0..(d as usize).pow(len as u32)).map(|i| outcome_digits(i, len, d)).collect()
}
