use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use qq_core::dense::outcome_digits;
use qq_core::modular::is_prime;
use qq_core::noise::{self, apply_noise_direct, fidelity_frames, fidelity_push, FidelityEstimate};
use qq_core::rng::{par_shots, shot_rng};
use qq_core::{Circuit, DenseState, DensityMatrix, Op, SnfSampler, Tableau};
use rand::Rng;
use serde::Serialize;

use crate::failure::Failure;
use crate::{Backend, FidelityArgs, Format, InputArgs, Method, RunArgs, SampleArgs};

pub fn load(input: &InputArgs) -> Result<Circuit, Failure> {
    let text = match (&input.input, &input.circuit) {
        (_, Some(inline)) => inline.replace(';', "\n"),
        (Some(p), None) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::runtime(format!("stdin: {e}")))?;
            s
        }
        (Some(p), None) => std::fs::read_to_string(p).map_err(|e| Failure::runtime(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(Failure::invalid("no circuit given")),
    };
    Ok(Circuit::parse(&text)?)
}

/// Splits off the trailing measurement block: (index where it starts, qudits).
fn trailing_measures(c: &Circuit) -> (usize, Vec<usize>) {
    let ops = c.ops();
    let mut start = ops.len();
    while start > 0 && ops[start - 1].is_measure() {
        start -= 1;
    }
    (start, ops[start..].iter().flat_map(Op::qudits).collect())
}

fn measured_qudits(c: &Circuit) -> Vec<usize> {
    c.ops().iter().filter(|op| op.is_measure()).flat_map(Op::qudits).collect()
}

fn result_line(outcomes: &[u32]) -> String {
    let parts: Vec<String> = outcomes.iter().map(u32::to_string).collect();
    format!("Measurement result: [{}]\n", parts.join(" "))
}

fn outcome_key(digits: &[u32], d: u32) -> String {
    let parts: Vec<String> = digits.iter().map(u32::to_string).collect();
    parts.join(if d <= 10 { "" } else { "," })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RunReport {
    name: String,
    tableau: String,
    post_measurement: Option<String>,
    reduced: Option<String>,
    outcomes: Vec<u32>,
}

pub fn run(args: &RunArgs, seed: u64) -> Result<String, Failure> {
    let c = load(&args.input)?;
    let d = c.d();
    let prime = is_prime(d as u64);
    if let Some(&k) = args.replay.iter().find(|&&k| k >= d) {
        return Err(Failure::invalid(format!("replay outcome {k} is not below d = {d}")));
    }
    if args.reduce && !prime {
        return Err(Failure::unsupported(format!(
            "--reduce needs post-measurement tableaus, which require a prime dimension (d = {d})"
        )));
    }
    if args.backend == Backend::Dense {
        return run_dense(args, &c, seed);
    }

    let mut rng = shot_rng(seed, 0);
    let mut replay = args.replay.iter().copied();
    let mut draw = |rng: &mut qq_core::rng::ShotRng, d: u32| replay.next().unwrap_or_else(|| rng.gen_range(0..d));

    let (start, measured) = trailing_measures(&c);
    let mut t = Tableau::new(c.n(), d, true)?;
    let mut outcomes = Vec::new();
    for op in &c.ops()[..start] {
        match op {
            Op::Gate { gate, qudits } => t.apply_gate(*gate, qudits)?,
            Op::Noise { model, qudit } => {
                apply_noise_direct(&mut t, c.model(*model), *qudit, &mut rng)?;
            }
            Op::Measure(qs) => {
                if !prime {
                    return Err(Failure::unsupported(format!(
                        "mid-circuit measurement needs a prime dimension (d = {d})"
                    )));
                }
                for &q in qs {
                    outcomes.push(t.measure_with(q, |d| draw(&mut rng, d))?.outcome);
                }
            }
        }
    }

    let mut report = RunReport {
        name: c.name().unwrap_or("Circuit").to_string(),
        tableau: t.to_string(),
        post_measurement: None,
        reduced: None,
        outcomes: Vec::new(),
    };
    if !measured.is_empty() {
        if prime {
            let before = t.clone();
            let mut last = Vec::new();
            for &q in &measured {
                let k = t.measure_with(q, |d| draw(&mut rng, d))?.outcome;
                last.push((q, k));
                outcomes.push(k);
            }
            report.post_measurement = Some(t.to_string());
            if args.reduce {
                report.reduced = Some(reduced(before, &last)?);
            }
        } else {
            if !args.replay.is_empty() {
                return Err(Failure::unsupported(format!("--replay needs a prime dimension (d = {d})")));
            }
            let all = SnfSampler::new(&t)?.sample(&mut rng);
            outcomes.extend(measured.iter().map(|&q| all[q]));
        }
    }
    report.outcomes = outcomes;

    if args.format == Format::Json {
        return Ok(json(&report));
    }
    let mut out = String::new();
    if args.draw {
        out.push_str(&c.render_ascii());
        out.push('\n');
    }
    writeln!(out, "{} tableau", report.name).unwrap();
    out.push_str(&report.tableau);
    if let Some(post) = &report.post_measurement {
        out.push('\n');
        out.push_str("Post-measurement tableau\n");
        out.push_str(post);
    }
    if let Some(red) = &report.reduced {
        out.push('\n');
        out.push_str(red);
    }
    if !report.outcomes.is_empty() {
        out.push('\n');
        out.push_str(&result_line(&report.outcomes));
    }
    Ok(out)
}

/// Replays the recorded outcomes on `t`, dropping each measured qudit while
/// more than one remains.
fn reduced(mut t: Tableau, record: &[(usize, u32)]) -> Result<String, Failure> {
    let mut alive: Vec<usize> = (0..t.n()).collect();
    for &(q, k) in record {
        let Some(pos) = alive.iter().position(|&a| a == q) else { continue };
        let m = t.measure_forced(pos, k)?;
        if alive.len() > 1 {
            t = t.reduce(&m)?;
            alive.remove(pos);
        }
    }
    let labels: Vec<String> = alive.iter().map(|q| format!("q{q}")).collect();
    Ok(format!("Reduced tableau ({})\n{t}", labels.join(" ")))
}

/// Born distribution of the measured qudits under the exact dense backend.
fn dense_distribution(c: &Circuit, measured: &[usize]) -> Result<Vec<f64>, Failure> {
    if c.noise_count() == 0 {
        Ok(DenseState::run(c)?.born_distribution(measured)?)
    } else {
        Ok(DensityMatrix::run(c)?.born_distribution(measured)?)
    }
}

fn pick(probs: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

fn require_terminal(c: &Circuit) -> Result<(usize, Vec<usize>), Failure> {
    let (start, measured) = trailing_measures(c);
    if c.ops()[..start].iter().any(Op::is_measure) {
        return Err(Failure::unsupported("the dense backend needs all measurements at the end"));
    }
    Ok((start, measured))
}

fn run_dense(args: &RunArgs, c: &Circuit, seed: u64) -> Result<String, Failure> {
    if args.reduce || !args.replay.is_empty() {
        return Err(Failure::unsupported("--reduce and --replay need the tableau backend"));
    }
    let (_, measured) = require_terminal(c)?;
    let all: Vec<usize> = (0..c.n()).collect();
    let populations = dense_distribution(c, &all)?;
    let outcomes = if measured.is_empty() {
        Vec::new()
    } else {
        let probs = dense_distribution(c, &measured)?;
        outcome_digits(pick(&probs, shot_rng(seed, 0).gen()), measured.len(), c.d())
    };
    let name = c.name().unwrap_or("Circuit");
    if args.format == Format::Json {
        let pops: BTreeMap<String, f64> = populations
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 1e-12)
            .map(|(i, &p)| (outcome_key(&outcome_digits(i, c.n(), c.d()), c.d()), p))
            .collect();
        return Ok(json(&serde_json::json!({ "name": name, "populations": pops, "outcomes": outcomes })));
    }
    let mut out = String::new();
    if args.draw {
        out.push_str(&c.render_ascii());
        out.push('\n');
    }
    writeln!(out, "{name} populations").unwrap();
    for (i, p) in populations.iter().enumerate() {
        if *p > 1e-12 {
            writeln!(out, "|{}> {p:.6}", outcome_key(&outcome_digits(i, c.n(), c.d()), c.d())).unwrap();
        }
    }
    if !outcomes.is_empty() {
        out.push('\n');
        out.push_str(&result_line(&outcomes));
    }
    Ok(out)
}

pub fn sample(args: &SampleArgs, seed: u64) -> Result<String, Failure> {
    let c = load(&args.input)?;
    let shots = args.shots as usize;
    let (qudits, rows) = match args.backend {
        Backend::Tableau => (measured_qudits(&c), noise::sample(&c, args.strategy.into(), shots, seed)?),
        Backend::Dense => {
            let (_, measured) = require_terminal(&c)?;
            if measured.is_empty() {
                return Err(qq_core::Error::NoMeasurement.into());
            }
            let probs = dense_distribution(&c, &measured)?;
            let rows = par_shots(shots, seed, |_, rng| outcome_digits(pick(&probs, rng.gen()), measured.len(), c.d()));
            (measured, rows)
        }
    };
    Ok(render_samples(&qudits, &rows, c.d(), args.format))
}

fn render_samples(qudits: &[usize], rows: &[Vec<u32>], d: u32, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            let header: Vec<String> = qudits.iter().map(|q| format!("q{q}")).collect();
            writeln!(out, "{}", header.join(",")).unwrap();
            for row in rows {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                writeln!(out, "{}", cells.join(",")).unwrap();
            }
        }
        Format::Json => out = json(&serde_json::json!({ "qudits": qudits, "outcomes": rows })),
        Format::Text => {
            let mut counts: BTreeMap<&[u32], usize> = BTreeMap::new();
            for row in rows {
                *counts.entry(row).or_default() += 1;
            }
            for (k, v) in counts {
                writeln!(out, "{} {v}", outcome_key(k, d)).unwrap();
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sweep {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.from];
        }
        let h = (self.to - self.from) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| ((self.from + h * i as f64) * 1e12).round() / 1e12).collect()
    }
}

pub fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else { return Err("expected p0:p1:steps".into()) };
    let prob = |t: &str| match t.parse::<f64>() {
        Ok(p) if (0.0..=1.0).contains(&p) => Ok(p),
        _ => Err(format!("'{t}' is not a probability")),
    };
    let steps =
        n.parse::<usize>().ok().filter(|&k| k >= 1).ok_or_else(|| format!("'{n}' is not a positive step count"))?;
    Ok(Sweep { from: prob(a)?, to: prob(b)?, steps })
}

#[derive(Serialize)]
struct FidelityPoint {
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    estimate: f64,
    stderr: f64,
    shots: usize,
}

/// Exact `⟨ψ|ρ|ψ⟩` with `ψ` the noiseless output of the gate ops.
fn dense_fidelity(c: &Circuit) -> Result<FidelityEstimate, Failure> {
    let (start, _) = require_terminal(c)?;
    let mut body = Circuit::new(c.n(), c.d())?;
    let mut clean = Circuit::new(c.n(), c.d())?;
    for op in &c.ops()[..start] {
        match op {
            Op::Gate { gate, qudits } => {
                body.push_gate(*gate, qudits)?;
                clean.push_gate(*gate, qudits)?;
            }
            Op::Noise { model, qudit } => {
                body.push_noise(c.model(*model).clone(), *qudit)?;
            }
            Op::Measure(_) => unreachable!(),
        }
    }
    let f = DensityMatrix::run(&body)?.fidelity(&DenseState::run(&clean)?);
    Ok(FidelityEstimate { estimate: f, stderr: 0.0, shots: 0 })
}

pub fn fidelity(args: &FidelityArgs, seed: u64) -> Result<String, Failure> {
    let c = load(&args.input)?;
    let shots = args.shots as usize;
    let estimate = |c: &Circuit| -> Result<FidelityEstimate, Failure> {
        match (args.backend, args.method) {
            (Backend::Dense, _) => dense_fidelity(c),
            (Backend::Tableau, Method::Push) => Ok(fidelity_push(c, shots, seed)?),
            (Backend::Tableau, Method::Frames) => Ok(fidelity_frames(c, shots, seed)?),
        }
    };
    let point = |p: Option<f64>, e: FidelityEstimate| FidelityPoint {
        p,
        estimate: e.estimate,
        stderr: e.stderr,
        shots: e.shots,
    };
    match args.sweep {
        None => Ok(json(&point(None, estimate(&c)?))),
        Some(sweep) => {
            let mut points = Vec::new();
            for p in sweep.points() {
                points.push(point(Some(p), estimate(&c.with_noise_probability(p)?)?));
            }
            Ok(json(&points))
        }
    }
}
