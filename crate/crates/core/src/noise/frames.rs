use rand::Rng;

use crate::circuit::{Circuit, Op};
use crate::error::Result;
use crate::gate::Gate;
use crate::noise::{clean_tableau, measure_copy, terminal, unmeasured};
use crate::rng::{par_shots, setup_rng};

/// Accumulated error `X^a Z^b`, phases dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliFrame {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl PauliFrame {
    pub fn identity(n: usize) -> Self {
        PauliFrame { a: vec![0; n], b: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&v| v == 0)
    }

    pub fn conjugate(&mut self, gate: Gate, qudits: &[usize], d: u32) {
        gate.conjugate(&mut self.a, &mut self.b, qudits, d);
    }

    /// Multiplies in `X^α Z^β` on qudit `q`.
    pub fn apply_weyl(&mut self, q: usize, alpha: u32, beta: u32, d: u32) {
        self.a[q] = (self.a[q] + alpha) % d;
        self.b[q] = (self.b[q] + beta) % d;
    }
}

/// Options for [`pauli_frame_run_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrameOptions {
    /// Start each frame from a uniformly random `Z^b` (a stabilizer of
    /// `|0…0⟩`). Without it only the reference outcome's error-shifted copies
    /// are produced, which is exact only when every outcome is deterministic.
    pub randomize_b: bool,
}

impl Default for FrameOptions {
    fn default() -> Self {
        FrameOptions { randomize_b: true }
    }
}

/// Samples a circuit with terminal measurements by propagating Pauli frames
/// around one noiseless reference outcome.
pub fn pauli_frame_run(c: &Circuit, shots: usize, seed: u64) -> Result<Vec<Vec<u32>>> {
    pauli_frame_run_with(c, shots, seed, FrameOptions::default())
}

pub fn pauli_frame_run_with(c: &Circuit, shots: usize, seed: u64, opts: FrameOptions) -> Result<Vec<Vec<u32>>> {
    let term = terminal(c)?;
    let (n, d) = (c.n(), c.d());
    let t = clean_tableau(c, term.body)?;
    let all: Vec<usize> = (0..n).collect();
    let reference = measure_copy(&t, &all, &mut setup_rng(seed))?;
    Ok(par_shots(shots, seed, |_, rng| {
        let mut f = PauliFrame::identity(n);
        if opts.randomize_b {
            f.b.iter_mut().for_each(|b| *b = rng.gen_range(0..d));
        }
        propagate(c, term.body, &mut f, rng);
        term.measured.iter().map(|&q| (reference[q] + f.a[q]) % d).collect()
    }))
}

/// Final frame of every shot, no measurement (the frame-propagation cost
/// alone).
pub fn final_frames(c: &Circuit, shots: usize, seed: u64, opts: FrameOptions) -> Result<Vec<PauliFrame>> {
    let body = unmeasured(c)?;
    let (n, d) = (c.n(), c.d());
    Ok(par_shots(shots, seed, |_, rng| {
        let mut f = PauliFrame::identity(n);
        if opts.randomize_b {
            f.b.iter_mut().for_each(|b| *b = rng.gen_range(0..d));
        }
        propagate(c, body, &mut f, rng);
        f
    }))
}

/// Pushes `f` through `body`, multiplying in one draw per noise site.
pub(crate) fn propagate(c: &Circuit, body: &[Op], f: &mut PauliFrame, rng: &mut impl Rng) {
    let d = c.d();
    for op in body {
        match op {
            Op::Gate { gate, qudits } => f.conjugate(*gate, qudits, d),
            Op::Noise { model, qudit } => {
                let (alpha, beta) = c.model(*model).sample(rng);
                f.apply_weyl(*qudit, alpha, beta, d);
            }
            Op::Measure(_) => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{all_gates, GateKind};
    use crate::noise::NoiseModel;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hadamard_rotates_frame() {
        let mut f = PauliFrame { a: vec![1, 2], b: vec![2, 0] };
        f.conjugate(Gate::new(GateKind::H), &[0], 3);
        assert_eq!((f.a[0], f.b[0]), (1, 1));
        assert_eq!((f.a[1], f.b[1]), (2, 0));
        let before = f.clone();
        f.conjugate(Gate::new(GateKind::I), &[1], 3);
        assert_eq!(f, before);
    }

    #[test]
    fn gate_then_dagger_restores_frame() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in [2, 3, 4, 5, 6] {
            for g in all_gates(d) {
                for _ in 0..20 {
                    let qs: Vec<usize> = if g.arity() == 1 { vec![rng.gen_range(0..3)] } else { vec![2, 0] };
                    let mut f = PauliFrame {
                        a: (0..3).map(|_| rng.gen_range(0..d)).collect(),
                        b: (0..3).map(|_| rng.gen_range(0..d)).collect(),
                    };
                    let before = f.clone();
                    f.conjugate(g, &qs, d);
                    f.conjugate(g.inverse(), &qs, d);
                    assert_eq!(f, before, "{g} d={d}");
                }
            }
        }
    }

    #[test]
    fn zero_noise_repeats_reference() {
        let mut c = Circuit::new(2, 3).unwrap();
        c.push_gate(GateKind::X, &[1]).unwrap();
        c.push_noise(NoiseModel::depolarizing(0.0, 3).unwrap(), 0).unwrap();
        c.measure_all().unwrap();
        assert!(pauli_frame_run(&c, 50, 0).unwrap().iter().all(|m| m == &vec![0, 1]));
    }

    #[test]
    fn certain_flip_is_uniform_on_nonzero() {
        let mut c = Circuit::new(1, 3).unwrap();
        c.push_noise(NoiseModel::dit_flip(1.0, 3).unwrap(), 0).unwrap();
        c.measure_all().unwrap();
        let out = pauli_frame_run(&c, 4000, 5).unwrap();
        let ones = out.iter().filter(|m| m[0] == 1).count() as f64;
        assert!(out.iter().all(|m| m[0] != 0));
        assert!((ones - 2000.0).abs() < 3.0 * 1000f64.sqrt());
    }
}
