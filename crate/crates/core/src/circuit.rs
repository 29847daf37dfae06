//! Circuit representation, editing, the `QQC 1` text format and ASCII drawing.
//!
//! Text format, one operation per line, `#` starts a comment:
//!
//! ```text
//! QQC 1
//! dim 3
//! qudits 3
//! name GHZ
//! H 0
//! CNOT 0 1
//! NOISE DEPOL(0.01) 1
//! W(1,2) 2
//! M 0 1 2
//! ```

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};
use crate::noise::NoiseModel;
use crate::tableau::{check_dimension, Tableau};

pub type ModelId = usize;

#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Gate { gate: Gate, qudits: Vec<usize> },
    Noise { model: ModelId, qudit: usize },
    Measure(Vec<usize>),
}

impl Op {
    pub fn gate(gate: impl Into<Gate>, qudits: &[usize]) -> Op {
        Op::Gate { gate: gate.into(), qudits: qudits.to_vec() }
    }

    pub fn qudits(&self) -> Vec<usize> {
        match self {
            Op::Gate { qudits, .. } => qudits.clone(),
            Op::Noise { qudit, .. } => vec![*qudit],
            Op::Measure(qs) => qs.clone(),
        }
    }

    pub fn is_gate(&self) -> bool {
        matches!(self, Op::Gate { .. })
    }

    pub fn is_noise(&self) -> bool {
        matches!(self, Op::Noise { .. })
    }

    pub fn is_measure(&self) -> bool {
        matches!(self, Op::Measure(_))
    }
}

#[derive(Clone, Debug)]
pub struct Circuit {
    n: usize,
    d: u32,
    name: Option<String>,
    ops: Vec<Op>,
    models: Vec<NoiseModel>,
}

/// Noise ops compare by the model they refer to, not by registry index.
impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.d, &self.name, self.ops.len()) == (other.n, other.d, &other.name, other.ops.len())
            && self.ops.iter().zip(&other.ops).all(|pair| match pair {
                (Op::Noise { model: a, qudit: p }, Op::Noise { model: b, qudit: q }) => {
                    p == q && self.models[*a] == other.models[*b]
                }
                (a, b) => a == b,
            })
    }
}

impl Circuit {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        check_dimension(d)?;
        if n == 0 {
            return Err(Error::InvalidQuditCount);
        }
        Ok(Circuit { n, d, name: None, ops: Vec::new(), models: Vec::new() })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn models(&self) -> &[NoiseModel] {
        &self.models
    }

    pub fn model(&self, id: ModelId) -> &NoiseModel {
        &self.models[id]
    }

    pub fn gate_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_gate()).count()
    }

    pub fn noise_count(&self) -> usize {
        self.ops.iter().filter(|op| op.is_noise()).count()
    }

    /// Adds a model to the registry, reusing the id of an equal model.
    pub fn register_model(&mut self, model: NoiseModel) -> Result<ModelId> {
        if model.d() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "noise model for d = {} in a d = {} circuit",
                model.d(),
                self.d
            )));
        }
        if let Some(id) = self.models.iter().position(|m| m == &model) {
            return Ok(id);
        }
        self.models.push(model);
        Ok(self.models.len() - 1)
    }

    fn validate(&self, op: &Op) -> Result<()> {
        match op {
            Op::Gate { gate, qudits } => gate.validate(qudits, self.n, self.d),
            Op::Noise { model, qudit } => {
                if *model >= self.models.len() {
                    return Err(Error::IndexOutOfRange { index: *model, n: self.models.len() });
                }
                self.check_qudit(*qudit)
            }
            Op::Measure(qs) => {
                if qs.is_empty() {
                    return Err(Error::DimensionMismatch("measurement of no qudits".into()));
                }
                for (i, &q) in qs.iter().enumerate() {
                    self.check_qudit(q)?;
                    if qs[..i].contains(&q) {
                        return Err(Error::DimensionMismatch(format!("qudit {q} measured twice in one op")));
                    }
                }
                Ok(())
            }
        }
    }

    fn check_qudit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::IndexOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }

    pub fn append(&mut self, op: Op) -> Result<&mut Self> {
        self.validate(&op)?;
        self.ops.push(op);
        Ok(self)
    }

    pub fn insert(&mut self, index: usize, op: Op) -> Result<&mut Self> {
        if index > self.ops.len() {
            return Err(Error::IndexOutOfRange { index, n: self.ops.len() + 1 });
        }
        self.validate(&op)?;
        self.ops.insert(index, op);
        Ok(self)
    }

    pub fn replace(&mut self, index: usize, op: Op) -> Result<Op> {
        if index >= self.ops.len() {
            return Err(Error::IndexOutOfRange { index, n: self.ops.len() });
        }
        self.validate(&op)?;
        Ok(std::mem::replace(&mut self.ops[index], op))
    }

    pub fn remove(&mut self, index: usize) -> Result<Op> {
        if index >= self.ops.len() {
            return Err(Error::IndexOutOfRange { index, n: self.ops.len() });
        }
        Ok(self.ops.remove(index))
    }

    pub fn push_gate(&mut self, gate: impl Into<Gate>, qudits: &[usize]) -> Result<&mut Self> {
        self.append(Op::gate(gate, qudits))
    }

    pub fn push_noise(&mut self, model: NoiseModel, qudit: usize) -> Result<&mut Self> {
        let id = self.register_model(model)?;
        self.append(Op::Noise { model: id, qudit })
    }

    pub fn measure(&mut self, qudits: &[usize]) -> Result<&mut Self> {
        self.append(Op::Measure(qudits.to_vec()))
    }

    pub fn measure_all(&mut self) -> Result<&mut Self> {
        let all: Vec<usize> = (0..self.n).collect();
        self.measure(&all)
    }

    /// `self` followed by `other`; the model registries are merged.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if (self.n, self.d) != (other.n, other.d) {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose a ({}, d={}) circuit with a ({}, d={}) circuit",
                self.n, self.d, other.n, other.d
            )));
        }
        let mut out = self.clone();
        let remap: Vec<ModelId> = other.models.iter().map(|m| out.register_model(m.clone())).collect::<Result<_>>()?;
        for op in &other.ops {
            out.ops.push(match op {
                Op::Noise { model, qudit } => Op::Noise { model: remap[*model], qudit: *qudit },
                other => other.clone(),
            });
        }
        Ok(out)
    }

    /// Reversed gate sequence with every gate daggered.
    pub fn inverse(&self) -> Result<Circuit> {
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in self.ops.iter().rev() {
            match op {
                Op::Gate { gate, qudits } => ops.push(Op::Gate { gate: gate.inverse(), qudits: qudits.clone() }),
                Op::Noise { .. } => return Err(Error::NotInvertibleCircuit("noise")),
                Op::Measure(_) => return Err(Error::NotInvertibleCircuit("measurements")),
            }
        }
        Ok(Circuit { n: self.n, d: self.d, name: self.name.clone(), ops, models: Vec::new() })
    }

    /// `self` followed by its inverse; maps `|0…0⟩` back to itself.
    pub fn mirror(&self) -> Result<Circuit> {
        self.compose(&self.inverse()?)
    }

    /// One noise op after every gate, on the gate's last qudit (the target of a
    /// two-qudit gate).
    pub fn add_noise_after_each_gate(&self, model: NoiseModel) -> Result<Circuit> {
        let mut out = self.clone();
        let id = out.register_model(model)?;
        out.ops.clear();
        for op in &self.ops {
            out.ops.push(op.clone());
            if let Op::Gate { qudits, .. } = op {
                out.ops.push(Op::Noise { model: id, qudit: *qudits.last().unwrap() });
            }
        }
        Ok(out)
    }

    fn trailing_measure_start(&self) -> usize {
        let mut start = self.ops.len();
        while start > 0 && self.ops[start - 1].is_measure() {
            start -= 1;
        }
        start
    }

    /// Moves every noise op, in order, to just before the trailing measurement
    /// block. This is a structural edit: channels are not conjugated through
    /// the gates they pass.
    pub fn shift_noise_to_end(&self) -> Circuit {
        let split = self.trailing_measure_start();
        let (body, tail) = self.ops.split_at(split);
        let mut ops: Vec<Op> = body.iter().filter(|op| !op.is_noise()).cloned().collect();
        ops.extend(body.iter().filter(|op| op.is_noise()).cloned());
        ops.extend(tail.iter().cloned());
        Circuit { ops, ..self.clone() }
    }

    /// Moves every noise op, in order, to the start of the circuit (structural).
    pub fn shift_noise_to_start(&self) -> Circuit {
        let mut ops: Vec<Op> = self.ops.iter().filter(|op| op.is_noise()).cloned().collect();
        ops.extend(self.ops.iter().filter(|op| !op.is_noise()).cloned());
        Circuit { ops, ..self.clone() }
    }

    /// Inserts one noise op per qudit between moment `depth − 1` and moment
    /// `depth` of the layered schedule (see [`Circuit::moments`]).
    pub fn insert_noise_layer(&self, depth: usize, model: NoiseModel) -> Result<Circuit> {
        let moments = self.moments();
        let total = moments.iter().map(|m| m + 1).max().unwrap_or(0);
        if depth > total {
            return Err(Error::IndexOutOfRange { index: depth, n: total + 1 });
        }
        let mut out = self.clone();
        let id = out.register_model(model)?;
        let before = self.ops.iter().zip(&moments).filter(|(_, &m)| m < depth).map(|(op, _)| op.clone());
        let after = self.ops.iter().zip(&moments).filter(|(_, &m)| m >= depth).map(|(op, _)| op.clone());
        let mut ops: Vec<Op> = before.collect();
        ops.extend((0..self.n).map(|q| Op::Noise { model: id, qudit: q }));
        ops.extend(after);
        out.ops = ops;
        Ok(out)
    }

    /// Replaces every noise op by a sampled `W(a,b)` gate; identity draws vanish.
    pub fn realize_noise(&self, rng: &mut impl Rng) -> Circuit {
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            match op {
                Op::Noise { model, qudit } => {
                    let (a, b) = self.models[*model].sample(rng);
                    if (a, b) != (0, 0) {
                        ops.push(Op::gate(GateKind::W(a, b), &[*qudit]));
                    }
                }
                other => ops.push(other.clone()),
            }
        }
        Circuit { n: self.n, d: self.d, name: self.name.clone(), ops, models: Vec::new() }
    }

    /// Copy with every noise model re-instantiated at strength `p`.
    pub fn with_noise_probability(&self, p: f64) -> Result<Circuit> {
        let models = self.models.iter().map(|m| m.with_probability(p)).collect::<Result<_>>()?;
        Ok(Circuit { models, ..self.clone() })
    }

    /// Greedy layering: each op lands one past the latest op touching any wire
    /// in its span (two-qudit gates and measurements block the wires between
    /// their endpoints as well).
    pub fn moments(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.n];
        self.ops
            .iter()
            .map(|op| {
                let qs = op.qudits();
                let lo = *qs.iter().min().unwrap();
                let hi = *qs.iter().max().unwrap();
                let m = level[lo..=hi].iter().copied().max().unwrap_or(0);
                for l in &mut level[lo..=hi] {
                    *l = m + 1;
                }
                m
            })
            .collect()
    }

    /// ASCII drawing: one row per qudit, time left to right.
    pub fn render_ascii(&self) -> String {
        let moments = self.moments();
        let depth = moments.iter().map(|m| m + 1).max().unwrap_or(0);
        let mut cells: Vec<Vec<String>> = vec![vec![String::new(); depth]; self.n];
        for (op, &m) in self.ops.iter().zip(&moments) {
            match op {
                Op::Gate { gate, qudits } if qudits.len() == 2 => {
                    let (a, b) = (qudits[0], qudits[1]);
                    let (la, lb) = match gate.kind {
                        GateKind::Cnot => ("*".to_string(), if gate.dagger { "(-)" } else { "(+)" }.to_string()),
                        GateKind::Cz => ("*".to_string(), if gate.dagger { "ZDAG" } else { "Z" }.to_string()),
                        _ => ("x".to_string(), "x".to_string()),
                    };
                    cells[a][m] = la;
                    cells[b][m] = lb;
                    for row in cells.iter_mut().take(a.max(b)).skip(a.min(b) + 1) {
                        row[m] = "|".to_string();
                    }
                }
                Op::Gate { gate, qudits } => cells[qudits[0]][m] = gate.mnemonic(),
                Op::Noise { model, qudit } => cells[*qudit][m] = format!("{{N{model}}}"),
                Op::Measure(qs) => {
                    for &q in qs {
                        cells[q][m] = "M".to_string();
                    }
                }
            }
        }
        let widths: Vec<usize> =
            (0..depth).map(|m| cells.iter().map(|row| row[m].chars().count()).max().unwrap_or(0).max(1)).collect();
        let label_width = format!("q{}", self.n - 1).len();
        let mut out = String::new();
        for (q, row) in cells.iter().enumerate() {
            let _ = write!(out, "{:<label_width$}: -", format!("q{q}"));
            for (cell, &w) in row.iter().zip(&widths) {
                let len = cell.chars().count();
                let left = (w - len) / 2;
                let right = w - len - left;
                let _ = write!(out, "{}{}{}--", "-".repeat(left), cell, "-".repeat(right));
            }
            out.push('\n');
        }
        if !self.models.is_empty() {
            let legend: Vec<String> = self.models.iter().enumerate().map(|(i, m)| format!("N{i}: {m}")).collect();
            let _ = writeln!(out, "{}", legend.join("  "));
        }
        out
    }

    /// Tableau after every gate op from `|0…0⟩`; noise and measurements are
    /// skipped.
    pub fn clean_tableau(&self) -> Result<Tableau> {
        let mut t = Tableau::new(self.n, self.d, true)?;
        for op in &self.ops {
            if let Op::Gate { gate, qudits } = op {
                t.apply_gate(*gate, qudits)?;
            }
        }
        Ok(t)
    }

    /// Canonical `QQC 1` text.
    pub fn serialize(&self) -> String {
        let mut out = format!("QQC 1\ndim {}\nqudits {}\n", self.d, self.n);
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name {name}");
        }
        for op in &self.ops {
            let line = match op {
                Op::Gate { gate, qudits } => {
                    let qs: Vec<String> = qudits.iter().map(usize::to_string).collect();
                    format!("{} {}", gate.mnemonic(), qs.join(" "))
                }
                Op::Noise { model, qudit } => format!("NOISE {} {qudit}", self.models[*model]),
                Op::Measure(qs) => {
                    let qs: Vec<String> = qs.iter().map(usize::to_string).collect();
                    format!("M {}", qs.join(" "))
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let mut header = |key: &str| -> Result<(usize, String)> {
            let (ln, line) = lines.next().ok_or_else(|| Error::parse(0, format!("missing '{key}' line")))?;
            let value = line
                .strip_prefix(key)
                .filter(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace))
                .ok_or_else(|| Error::parse(ln, format!("expected '{key}'")))?;
            Ok((ln, value.trim().to_string()))
        };
        let (ln, version) = header("QQC")?;
        if version != "1" {
            return Err(Error::parse(ln, format!("unsupported format version '{version}'")));
        }
        let (ln, d) = header("dim")?;
        let d: u32 = d.parse().map_err(|_| Error::parse(ln, format!("bad dimension '{d}'")))?;
        let (ln, n) = header("qudits")?;
        let n: usize = n.parse().map_err(|_| Error::parse(ln, format!("bad qudit count '{n}'")))?;
        let mut circuit = Circuit::new(n, d).map_err(|e| Error::parse(ln, e.to_string()))?;
        if let Some((_, line)) = lines.peek() {
            if let Some(name) = line.strip_prefix("name").filter(|r| r.starts_with(char::is_whitespace)) {
                circuit.name = Some(name.trim().to_string());
                lines.next();
            }
        }
        for (ln, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let indices = |toks: &[&str]| -> Result<Vec<usize>> {
                toks.iter()
                    .map(|t| t.parse::<usize>().map_err(|_| Error::parse(ln, format!("bad qudit index '{t}'"))))
                    .collect()
            };
            let op = match tokens[0] {
                "M" => Op::Measure(indices(&tokens[1..])?),
                "NOISE" => {
                    if tokens.len() != 3 {
                        return Err(Error::parse(ln, "expected 'NOISE <MODEL>(<params>) <qudit>'"));
                    }
                    let model = NoiseModel::parse(tokens[1], d).map_err(|e| Error::parse(ln, e))?;
                    let qudit = indices(&tokens[2..])?[0];
                    let id = circuit.register_model(model).map_err(|e| Error::parse(ln, e.to_string()))?;
                    Op::Noise { model: id, qudit }
                }
                mnemonic => {
                    let gate = Gate::parse_mnemonic(mnemonic)
                        .ok_or_else(|| Error::parse(ln, format!("unknown gate '{mnemonic}'")))?;
                    Op::Gate { gate, qudits: indices(&tokens[1..])? }
                }
            };
            circuit.append(op).map_err(|e| Error::parse(ln, e.to_string()))?;
        }
        Ok(circuit)
    }

    /// Uniformly random gates from the Clifford set (plain and daggered, plus
    /// random `W(a,b)`) on random qudits.
    pub fn random_clifford(n: usize, d: u32, gates: usize, rng: &mut impl Rng) -> Result<Circuit> {
        let mut c = Circuit::new(n, d)?;
        let singles = [GateKind::H, GateKind::S, GateKind::X, GateKind::Y, GateKind::Z, GateKind::W(0, 0)];
        for _ in 0..gates {
            let two = n >= 2 && rng.gen_bool(0.4);
            let dagger = rng.gen_bool(0.5);
            if two {
                let kind = GateKind::TWO_QUDIT[rng.gen_range(0..3)];
                let a = rng.gen_range(0..n);
                let mut b = rng.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                c.push_gate(Gate { kind, dagger }, &[a, b])?;
            } else {
                let mut kind = singles[rng.gen_range(0..singles.len())];
                if kind == GateKind::W(0, 0) {
                    kind = GateKind::W(rng.gen_range(0..d), rng.gen_range(0..d));
                }
                c.push_gate(Gate { kind, dagger }, &[rng.gen_range(0..n)])?;
            }
        }
        Ok(c)
    }
}
