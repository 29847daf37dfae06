use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use clap::{Args, ValueEnum};
use qq_core::noise::{direct_phases, final_frames, FrameOptions, PushPlan};
use qq_core::rng::setup_rng;
use qq_core::{Circuit, NoiseModel};

use crate::failure::Failure;
use crate::StrategyArg;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    /// Vary the gate count at fixed `--n`.
    Gates,
    /// Vary the qudit count with `G = n²`.
    Qudits,
    Both,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Sweep::Both)]
    pub mode: Sweep,

    /// Qudit count for the gate sweep.
    #[arg(long, default_value_t = 24)]
    pub n: usize,

    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512,1024")]
    pub gates: Vec<usize>,

    #[arg(long, value_delimiter = ',', default_value = "4,8,12,16,20,24")]
    pub qudits: Vec<usize>,

    #[arg(long, default_value_t = 3)]
    pub d: u32,

    /// Depolarizing probability after every gate.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,

    #[arg(long, default_value_t = 10)]
    pub circuits: usize,

    #[arg(long, default_value_t = 3)]
    pub reps: usize,

    #[arg(long, default_value_t = 1000)]
    pub shots: usize,

    #[arg(long, value_enum, value_delimiter = ',', default_value = "frames,push")]
    pub strategies: Vec<StrategyArg>,
}

/// Computes only the per-shot end state: final frames, `Δτ`, or the direct
/// tableau's phase column. Nothing is measured.
fn time_once(c: &Circuit, strategy: StrategyArg, shots: usize, seed: u64) -> Result<f64, Failure> {
    let start = Instant::now();
    match strategy {
        StrategyArg::Frames => {
            black_box(final_frames(c, shots, seed, FrameOptions::default())?);
        }
        StrategyArg::Push => {
            let plan = PushPlan::build(c)?;
            black_box(plan.delta_tau_shots(shots, seed));
        }
        StrategyArg::Direct => {
            black_box(direct_phases(c, shots, seed)?);
        }
    }
    Ok(start.elapsed().as_secs_f64())
}

fn name(s: StrategyArg) -> &'static str {
    match s {
        StrategyArg::Direct => "direct",
        StrategyArg::Frames => "frames",
        StrategyArg::Push => "push",
    }
}

pub fn bench(args: &BenchArgs, seed: u64) -> Result<String, Failure> {
    let model = NoiseModel::depolarizing(args.p, args.d)?;
    let mut points = Vec::new();
    if matches!(args.mode, Sweep::Gates | Sweep::Both) {
        points.extend(args.gates.iter().map(|&g| (args.n, g)));
    }
    if matches!(args.mode, Sweep::Qudits | Sweep::Both) {
        points.extend(args.qudits.iter().map(|&n| (n, n * n)));
    }
    let mut rng = setup_rng(seed);
    let mut out = String::from("n,G,strategy,seconds\n");
    for (n, g) in points {
        let circuits = (0..args.circuits)
            .map(|_| Circuit::random_clifford(n, args.d, g, &mut rng)?.add_noise_after_each_gate(model.clone()))
            .collect::<qq_core::Result<Vec<_>>>()?;
        for &s in &args.strategies {
            let mut total = 0.0;
            for rep in 0..args.reps {
                for c in &circuits {
                    total += time_once(c, s, args.shots, seed.wrapping_add(rep as u64))?;
                }
            }
            let mean = total / (args.reps * circuits.len()).max(1) as f64;
            writeln!(out, "{n},{g},{},{mean:.6e}", name(s)).unwrap();
        }
    }
    Ok(out)
}
