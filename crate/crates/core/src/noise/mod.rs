//! Weyl noise channels and the three ways of simulating them.
//!
//! * `direct`: every shot runs the tableau and applies a sampled `W(a,b)` at
//!   each noise site.
//! * `frames`: one noiseless reference run, then per shot a Pauli frame is
//!   pushed through the Cliffords and the outcome is `reference + a`.
//! * `push`: one noiseless run records the tableau columns at each site; per
//!   shot the sampled errors become a phase shift `Δτ` on the final tableau.

mod fidelity;
mod frames;
pub mod model;
mod push;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::circuit::{Circuit, Op};
use crate::composite::SnfSampler;
use crate::error::{Error, Result};
use crate::modular::is_prime;
use crate::rng::{par_shots, setup_rng, ShotRng};
use crate::tableau::{AffineSampler, Tableau};

pub use fidelity::{fidelity_frames, fidelity_push, FidelityEstimate};
pub use frames::{final_frames, pauli_frame_run, pauli_frame_run_with, FrameOptions, PauliFrame};
pub use model::{NoiseKind, NoiseModel};
pub use push::{PushPlan, PushSamples};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    #[default]
    Direct,
    Frames,
    Push,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Direct, Strategy::Frames, Strategy::Push];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Direct => "direct",
            Strategy::Frames => "frames",
            Strategy::Push => "push",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Strategy::Direct),
            "frames" | "frame" => Ok(Strategy::Frames),
            "push" => Ok(Strategy::Push),
            other => Err(Error::Unsupported(format!("unknown noise strategy '{other}'"))),
        }
    }
}

/// A circuit whose measurements all sit in one trailing block.
pub(crate) struct Terminal<'a> {
    pub body: &'a [Op],
    pub measured: Vec<usize>,
}

pub(crate) fn terminal(c: &Circuit) -> Result<Terminal<'_>> {
    let ops = c.ops();
    let mut start = ops.len();
    while start > 0 && ops[start - 1].is_measure() {
        start -= 1;
    }
    if start == ops.len() {
        return Err(Error::NoMeasurement);
    }
    if ops[..start].iter().any(Op::is_measure) {
        return Err(Error::Unsupported("mid-circuit measurement with this strategy".into()));
    }
    let measured = ops[start..].iter().flat_map(Op::qudits).collect();
    Ok(Terminal { body: &ops[..start], measured })
}

/// Ops before the trailing measurement block (all ops if there is none).
pub(crate) fn unmeasured(c: &Circuit) -> Result<&[Op]> {
    match terminal(c) {
        Ok(t) => Ok(t.body),
        Err(Error::NoMeasurement) if c.ops().iter().any(Op::is_measure) => {
            Err(Error::Unsupported("mid-circuit measurement with this strategy".into()))
        }
        Err(Error::NoMeasurement) => Ok(c.ops()),
        Err(e) => Err(e),
    }
}

/// Runs the gate ops of `body` on a fresh tableau, ignoring noise.
pub(crate) fn clean_tableau(c: &Circuit, body: &[Op]) -> Result<Tableau> {
    let mut t = Tableau::new(c.n(), c.d(), true)?;
    for op in body {
        if let Op::Gate { gate, qudits } = op {
            t.apply_gate(*gate, qudits)?;
        }
    }
    Ok(t)
}

/// Samples `(a, b)` from `model` and applies it to qudit `q` of `t`.
pub fn apply_noise_direct(t: &mut Tableau, model: &NoiseModel, q: usize, rng: &mut impl Rng) -> Result<(u32, u32)> {
    if model.d() != t.d() {
        return Err(Error::DimensionMismatch(format!("noise model for d = {} on a d = {} tableau", model.d(), t.d())));
    }
    let (a, b) = model.sample(rng);
    if (a, b) != (0, 0) {
        t.apply_weyl(a, b, q)?;
    }
    Ok((a, b))
}

/// Measures `qudits` in order on a copy of `t`. Any `d` is accepted: prime
/// dimensions use the tableau measurement, composite ones the Smith-form
/// sampler (one joint draw, then the listed coordinates).
pub(crate) fn measure_copy(t: &Tableau, qudits: &[usize], rng: &mut ShotRng) -> Result<Vec<u32>> {
    if is_prime(t.d() as u64) {
        t.clone().measure_subset(qudits, rng)
    } else {
        let all = SnfSampler::new(t)?.sample(rng);
        Ok(qudits.iter().map(|&q| all[q]).collect())
    }
}

fn direct_shot(c: &Circuit, rng: &mut ShotRng) -> Result<Vec<u32>> {
    let mut t = Tableau::new(c.n(), c.d(), true)?;
    let mut out = Vec::new();
    for op in c.ops() {
        match op {
            Op::Gate { gate, qudits } => t.apply_gate(*gate, qudits)?,
            Op::Noise { model, qudit } => {
                apply_noise_direct(&mut t, c.model(*model), *qudit, rng)?;
            }
            Op::Measure(qs) => out.extend(t.measure_subset(qs, rng)?),
        }
    }
    Ok(out)
}

fn direct_shot_composite(c: &Circuit, term: &Terminal<'_>, rng: &mut ShotRng) -> Result<Vec<u32>> {
    let mut t = Tableau::new(c.n(), c.d(), true)?;
    for op in term.body {
        match op {
            Op::Gate { gate, qudits } => t.apply_gate(*gate, qudits)?,
            Op::Noise { model, qudit } => {
                apply_noise_direct(&mut t, c.model(*model), *qudit, rng)?;
            }
            Op::Measure(_) => unreachable!(),
        }
    }
    measure_copy(&t, &term.measured, rng)
}

/// Per-shot full simulation with sampled Weyl errors. Prime `d` allows
/// measurements anywhere; composite `d` needs them at the end.
pub fn direct_run(c: &Circuit, shots: usize, seed: u64) -> Result<Vec<Vec<u32>>> {
    if !c.ops().iter().any(Op::is_measure) {
        return Err(Error::NoMeasurement);
    }
    if is_prime(c.d() as u64) {
        par_shots(shots, seed, |_, rng| direct_shot(c, rng)).into_iter().collect()
    } else {
        let term = terminal(c).map_err(|e| match e {
            Error::Unsupported(_) => {
                Error::Unsupported(format!("mid-circuit measurement needs a prime dimension (d = {})", c.d()))
            }
            e => e,
        })?;
        par_shots(shots, seed, |_, rng| direct_shot_composite(c, &term, rng)).into_iter().collect()
    }
}

/// Final phase column of every shot's noisy tableau; measurements are not
/// performed.
pub fn direct_phases(c: &Circuit, shots: usize, seed: u64) -> Result<Vec<Vec<u32>>> {
    let body = unmeasured(c)?;
    par_shots(shots, seed, |_, rng| {
        let mut t = Tableau::new(c.n(), c.d(), true)?;
        for op in body {
            match op {
                Op::Gate { gate, qudits } => t.apply_gate(*gate, qudits)?,
                Op::Noise { model, qudit } => {
                    apply_noise_direct(&mut t, c.model(*model), *qudit, rng)?;
                }
                Op::Measure(_) => unreachable!(),
            }
        }
        Ok(t.phases())
    })
    .into_iter()
    .collect()
}

/// Noiseless sampling from one prepared sampler (affine for prime `d`, Smith
/// form otherwise).
pub fn clean_run(c: &Circuit, shots: usize, seed: u64) -> Result<Vec<Vec<u32>>> {
    let term = terminal(c)?;
    if term.body.iter().any(Op::is_noise) {
        return Err(Error::Unsupported("clean sampling of a noisy circuit".into()));
    }
    let t = clean_tableau(c, term.body)?;
    let pick = |all: Vec<u32>| term.measured.iter().map(|&q| all[q]).collect::<Vec<u32>>();
    if is_prime(c.d() as u64) {
        let sampler = AffineSampler::new(&t, &mut setup_rng(seed))?;
        Ok(par_shots(shots, seed, |_, rng| pick(sampler.sample(rng))))
    } else {
        let sampler = SnfSampler::new(&t)?;
        Ok(par_shots(shots, seed, |_, rng| pick(sampler.sample(rng))))
    }
}

/// Outcome matrix (`shots` rows, one column per measured qudit in circuit
/// order) with the chosen noise strategy. Noiseless circuits with terminal
/// measurements take the prepared-sampler path whatever the strategy.
pub fn sample(c: &Circuit, strategy: Strategy, shots: usize, seed: u64) -> Result<Vec<Vec<u32>>> {
    let noiseless = c.noise_count() == 0;
    if noiseless && terminal(c).is_ok() {
        return clean_run(c, shots, seed);
    }
    match strategy {
        Strategy::Direct => direct_run(c, shots, seed),
        Strategy::Frames => pauli_frame_run(c, shots, seed),
        Strategy::Push => PushPlan::build(c)?.sample(shots, seed).map(|s| s.outcomes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind;

    fn ghz(d: u32) -> Circuit {
        let mut c = Circuit::new(3, d).unwrap();
        c.push_gate(GateKind::H, &[0]).unwrap();
        c.push_gate(GateKind::Cnot, &[0, 1]).unwrap();
        c.push_gate(GateKind::Cnot, &[1, 2]).unwrap();
        c
    }

    #[test]
    fn strategy_names() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("bogus".parse::<Strategy>().is_err());
    }

    #[test]
    fn z_error_on_ghz_shifts_phase() {
        let c = ghz(3);
        let mut t = clean_tableau(&c, c.ops()).unwrap();
        let before = t.clone();
        t.apply_weyl(0, 1, 0).unwrap();
        assert_eq!(t.stabilizer(0).r, 4);
        for (a, b) in before.rows().iter().zip(t.rows()) {
            assert_eq!((&a.x, &a.z), (&b.x, &b.z));
        }
    }

    #[test]
    fn identity_draw_leaves_tableau() {
        let c = ghz(3);
        let mut t = clean_tableau(&c, c.ops()).unwrap();
        let before = t.clone();
        let m = NoiseModel::depolarizing(0.0, 3).unwrap();
        let mut rng = setup_rng(0);
        assert_eq!(apply_noise_direct(&mut t, &m, 1, &mut rng).unwrap(), (0, 0));
        assert_eq!(t, before);
        let wrong = NoiseModel::depolarizing(0.1, 5).unwrap();
        assert!(apply_noise_direct(&mut t, &wrong, 1, &mut rng).is_err());
    }

    #[test]
    fn terminal_split() {
        let mut c = ghz(3);
        assert_eq!(terminal(&c).err(), Some(Error::NoMeasurement));
        c.measure(&[2]).unwrap();
        c.measure(&[0, 1]).unwrap();
        let term = terminal(&c).unwrap();
        assert_eq!(term.body.len(), 3);
        assert_eq!(term.measured, vec![2, 0, 1]);
        c.push_gate(GateKind::H, &[0]).unwrap();
        c.measure(&[0]).unwrap();
        assert!(matches!(terminal(&c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn mid_circuit_measurement_direct() {
        let mut c = Circuit::new(1, 3).unwrap();
        c.push_gate(GateKind::H, &[0]).unwrap();
        c.measure(&[0]).unwrap();
        c.push_gate(GateKind::X, &[0]).unwrap();
        c.measure(&[0]).unwrap();
        for row in direct_run(&c, 200, 1).unwrap() {
            assert_eq!(row[1], (row[0] + 1) % 3);
        }
        let mut c4 = Circuit::new(1, 4).unwrap();
        c4.measure(&[0]).unwrap();
        c4.push_gate(GateKind::X, &[0]).unwrap();
        c4.measure(&[0]).unwrap();
        assert!(matches!(direct_run(&c4, 1, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn clean_sampling_is_deterministic() {
        let mut c = ghz(3);
        c.measure_all().unwrap();
        let a = sample(&c, Strategy::Direct, 300, 7).unwrap();
        assert_eq!(a, sample(&c, Strategy::Push, 300, 7).unwrap());
        assert!(a.iter().all(|m| m[0] == m[1] && m[1] == m[2]));
        let mut c4 = ghz(4);
        c4.measure(&[2, 0]).unwrap();
        assert!(sample(&c4, Strategy::Frames, 100, 3).unwrap().iter().all(|m| m.len() == 2 && m[0] == m[1]));
    }
}
