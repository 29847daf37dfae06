//! Stabilizer tableau engine: gates, measurement, affine sampling, reduction.
//!
//! Rows `0..n` are destabilizers and rows `n..2n` stabilizers (only the
//! stabilizers when the tableau is not full). Each row is a [`PauliRow`]. The
//! initial state `|0…0⟩` has stabilizers `Z_i` and destabilizers `X_i`, so
//! every pair satisfies `⟨⟨d_i, s_i⟩⟩ = 1`, a value all updates preserve.

use std::fmt;

use num_complex::Complex;
use rand::Rng;

use crate::dense::{check_cutoff, StateVector, DEFAULT_CUTOFF};
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::modular::{is_prime, mod_inverse, rref_mod_p, MAX_DIMENSION};
use crate::rng::par_shots;
use crate::scalar::Real;
use crate::weyl::{row_power, symplectic, PauliRow};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    n: usize,
    d: u32,
    full: bool,
    rows: Vec<PauliRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasurementKind {
    /// Random outcome; `pivot` is the index of the stabilizer/destabilizer pair
    /// rewritten by the measurement.
    Random {
        pivot: usize,
    },
    Deterministic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub qudit: usize,
    pub outcome: u32,
    pub kind: MeasurementKind,
}

impl Measurement {
    pub fn is_random(&self) -> bool {
        matches!(self.kind, MeasurementKind::Random { .. })
    }
}

pub(crate) fn check_dimension(d: u32) -> Result<()> {
    if !(2..=MAX_DIMENSION).contains(&d) {
        return Err(Error::InvalidDimension(d));
    }
    Ok(())
}

impl Tableau {
    pub fn new(n: usize, d: u32, full: bool) -> Result<Self> {
        check_dimension(d)?;
        if n == 0 {
            return Err(Error::InvalidQuditCount);
        }
        let mut rows = Vec::with_capacity(2 * n);
        if full {
            rows.extend((0..n).map(|i| PauliRow::single(n, i, 1, 0, 0)));
        }
        rows.extend((0..n).map(|i| PauliRow::single(n, i, 0, 1, 0)));
        Ok(Tableau { n, d, full, rows })
    }

    /// Builds a tableau from explicit rows; pass an empty `destabilizers` list
    /// for a stabilizer-only tableau. Shapes and ranges are checked, the group
    /// invariants are not (see [`Tableau::check_invariants`]).
    pub fn from_rows(d: u32, destabilizers: Vec<PauliRow>, stabilizers: Vec<PauliRow>) -> Result<Self> {
        check_dimension(d)?;
        let n = stabilizers.len();
        let full = !destabilizers.is_empty();
        if full && destabilizers.len() != n {
            return Err(Error::InvalidTableau(format!("{} destabilizers for {n} stabilizers", destabilizers.len())));
        }
        let rows: Vec<PauliRow> = destabilizers.into_iter().chain(stabilizers).collect();
        for row in &rows {
            if row.x.len() != n || row.z.len() != n {
                return Err(Error::InvalidTableau(format!("row of width {} in an {n}-qudit tableau", row.x.len())));
            }
            if row.x.iter().chain(&row.z).any(|&v| v >= d) || row.r >= 2 * d {
                return Err(Error::InvalidTableau(format!("unreduced entry in row {row}")));
            }
        }
        Ok(Tableau { n, d, full, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn rows(&self) -> &[PauliRow] {
        &self.rows
    }

    fn stab_offset(&self) -> usize {
        if self.full {
            self.n
        } else {
            0
        }
    }

    pub fn stabilizers(&self) -> &[PauliRow] {
        &self.rows[self.stab_offset()..]
    }

    pub fn destabilizers(&self) -> &[PauliRow] {
        &self.rows[..self.stab_offset()]
    }

    pub fn stabilizer(&self, i: usize) -> &PauliRow {
        &self.rows[self.stab_offset() + i]
    }

    pub fn destabilizer(&self, i: usize) -> &PauliRow {
        assert!(self.full, "stabilizer-only tableau has no destabilizers");
        &self.rows[i]
    }

    /// Phase column, one entry per row.
    pub fn phases(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.r).collect()
    }

    /// X and Z columns of qudit `q`, one entry per row.
    pub fn column(&self, q: usize) -> (Vec<u32>, Vec<u32>) {
        (self.rows.iter().map(|r| r.x[q]).collect(), self.rows.iter().map(|r| r.z[q]).collect())
    }

    /// Adds `shift[i]` to the phase of row `i` (mod `2d`).
    pub fn shift_phases(&mut self, shift: &[u32]) {
        assert_eq!(shift.len(), self.rows.len());
        let two_d = 2 * self.d;
        for (row, &s) in self.rows.iter_mut().zip(shift) {
            row.r = (row.r + s % two_d) % two_d;
        }
    }

    fn check_qudit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::IndexOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: Gate, qudits: &[usize]) -> Result<()> {
        gate.validate(qudits, self.n, self.d)?;
        for row in &mut self.rows {
            gate.conjugate_row(row, qudits, self.d);
        }
        Ok(())
    }

    /// Applies a `W(a,b)` error to qudit `q`; only the phase column changes.
    pub fn apply_weyl(&mut self, a: u32, b: u32, q: usize) -> Result<()> {
        self.check_qudit(q)?;
        for row in &mut self.rows {
            row.conjugate_by_weyl(q, a % self.d, b % self.d, self.d);
        }
        Ok(())
    }

    /// Checks the stabilizer-group invariants; returns the first violation.
    pub fn check_invariants(&self) -> Result<()> {
        let d = self.d;
        let bad = |m: String| Err(Error::InvalidTableau(m));
        for row in &self.rows {
            if d % 2 == 1 && row.r % 2 == 1 {
                return bad(format!("odd phase {} in odd dimension", row.r));
            }
        }
        let stabs = self.stabilizers();
        for i in 0..stabs.len() {
            for j in i + 1..stabs.len() {
                if symplectic(&stabs[i], &stabs[j], d) != 0 {
                    return bad(format!("stabilizers {i} and {j} do not commute"));
                }
            }
        }
        if !self.full {
            return Ok(());
        }
        let destabs = self.destabilizers();
        let c = symplectic(&destabs[0], &stabs[0], d);
        if c == 0 {
            return bad("destabilizer 0 commutes with its stabilizer".into());
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let p = symplectic(&destabs[i], &stabs[j], d);
                let expected = if i == j { c } else { 0 };
                if p != expected {
                    return bad(format!("⟨⟨d{i}, s{j}⟩⟩ = {p}, expected {expected}"));
                }
                if j > i && symplectic(&destabs[i], &destabs[j], d) != 0 {
                    return bad(format!("destabilizers {i} and {j} do not commute"));
                }
            }
        }
        Ok(())
    }

    fn require_measurable(&self) -> Result<()> {
        if !self.full {
            return Err(Error::NotFullTableau);
        }
        if !is_prime(self.d as u64) {
            return Err(Error::CompositeDimension(self.d));
        }
        Ok(())
    }

    /// Product of stabilizers equal to `τ^r Z_q` when no stabilizer has an
    /// X-component on `q`.
    fn deterministic_row(&self, q: usize) -> PauliRow {
        let n = self.n;
        let mut g = PauliRow::identity(n);
        for j in 0..n {
            let k = self.rows[j].x[q];
            if k != 0 {
                g.mul_pow_assign(&self.rows[n + j], k, self.d);
            }
        }
        debug_assert!(g.is_diagonal() && g.r % 2 == 0);
        g
    }

    /// Measures qudit `q` in the computational basis. `draw` supplies the
    /// outcome when it is random (it receives `d`); deterministic outcomes
    /// ignore it.
    pub fn measure_with(&mut self, q: usize, draw: impl FnOnce(u32) -> u32) -> Result<Measurement> {
        self.require_measurable()?;
        self.check_qudit(q)?;
        let (n, d) = (self.n, self.d);
        let Some(p) = (0..n).find(|&j| self.rows[n + j].x[q] != 0) else {
            let g = self.deterministic_row(q);
            let outcome = (d - (g.r / 2) % d) % d;
            return Ok(Measurement { qudit: q, outcome, kind: MeasurementKind::Deterministic });
        };
        let lead = self.rows[n + p].x[q];
        if lead != 1 {
            let inv = mod_inverse(lead as u64, d as u64)? as u32;
            self.rows[n + p] = row_power(&self.rows[n + p], inv, d);
        }
        let pivot = self.rows[n + p].clone();
        for idx in 0..2 * n {
            if idx == n + p || idx == p {
                continue;
            }
            let e = self.rows[idx].x[q];
            if e != 0 {
                self.rows[idx].mul_pow_assign(&pivot, d - e, d);
            }
        }
        let outcome = draw(d) % d;
        self.rows[p] = pivot;
        self.rows[n + p] = PauliRow::single(n, q, 0, 1, (2 * d - 2 * outcome) % (2 * d));
        Ok(Measurement { qudit: q, outcome, kind: MeasurementKind::Random { pivot: p } })
    }

    pub fn measure(&mut self, q: usize, rng: &mut impl Rng) -> Result<Measurement> {
        self.measure_with(q, |d| rng.gen_range(0..d))
    }

    /// Measures with a forced outcome `k` in the random case.
    pub fn measure_forced(&mut self, q: usize, k: u32) -> Result<Measurement> {
        self.measure_with(q, |_| k)
    }

    pub fn measure_all(&mut self, rng: &mut impl Rng) -> Result<Vec<u32>> {
        let all: Vec<usize> = (0..self.n).collect();
        self.measure_subset(&all, rng)
    }

    pub fn measure_subset(&mut self, qudits: &[usize], rng: &mut impl Rng) -> Result<Vec<u32>> {
        qudits.iter().map(|&q| self.measure(q, rng).map(|m| m.outcome)).collect()
    }

    /// Drops a measured qudit, returning the tableau of the remaining `n − 1`.
    ///
    /// `self` must be the tableau right after `m` was produced. Random case:
    /// the measured stabilizer `τ^{-2k} Z_q` clears `z_q` from the other
    /// stabilizers, then its pair is removed. Deterministic case: the implied
    /// `τ^r Z_q` clears `z_q`, forward elimination over the stabilizer block
    /// exposes the one redundant row, and the destabilizers follow every row
    /// operation with the dual update so the pairing survives.
    pub fn reduce(&self, m: &Measurement) -> Result<Tableau> {
        self.require_measurable()?;
        self.check_qudit(m.qudit)?;
        let (n, d, q) = (self.n, self.d, m.qudit);
        let mut destabs: Vec<PauliRow> = self.destabilizers().to_vec();
        let mut stabs: Vec<PauliRow> = self.stabilizers().to_vec();
        let drop = match m.kind {
            MeasurementKind::Random { pivot } => {
                let sp = stabs[pivot].clone();
                if !(sp.is_diagonal() && sp.z.iter().enumerate().all(|(i, &v)| v == u32::from(i == q))) {
                    return Err(Error::InvalidTableau("measured row is not Z on the measured qudit".into()));
                }
                for (j, s) in stabs.iter_mut().enumerate() {
                    let e = s.z[q];
                    if j != pivot && e != 0 {
                        s.mul_pow_assign(&sp, d - e, d);
                    }
                }
                pivot
            }
            MeasurementKind::Deterministic => {
                let t = self.deterministic_row(q);
                for s in stabs.iter_mut() {
                    let e = s.z[q];
                    if e != 0 {
                        s.mul_pow_assign(&t, d - e, d);
                    }
                }
                let mut used = vec![false; n];
                for col in 0..2 * n {
                    let entry = |row: &PauliRow| if col < n { row.x[col] } else { row.z[col - n] };
                    let Some(p) = (0..n).find(|&j| !used[j] && entry(&stabs[j]) != 0) else {
                        continue;
                    };
                    used[p] = true;
                    let inv = mod_inverse(entry(&stabs[p]) as u64, d as u64)?;
                    let pivot = stabs[p].clone();
                    for j in 0..n {
                        let e = entry(&stabs[j]);
                        if used[j] || e == 0 {
                            continue;
                        }
                        let lambda = (e as u64 * inv % d as u64) as u32;
                        stabs[j].mul_pow_assign(&pivot, d - lambda, d);
                        let dual = destabs[j].clone();
                        destabs[p].mul_pow_assign(&dual, lambda, d);
                    }
                }
                let Some(zero) = (0..n).find(|&j| !used[j]) else {
                    return Err(Error::InvalidTableau("no redundant stabilizer after elimination".into()));
                };
                if !stabs[zero].is_identity() {
                    return Err(Error::InvalidTableau("redundant stabilizer is not the identity".into()));
                }
                zero
            }
        };
        destabs.remove(drop);
        stabs.remove(drop);
        for row in destabs.iter_mut().chain(stabs.iter_mut()) {
            row.x.remove(q);
            row.z.remove(q);
        }
        // restore mutual commutation of the destabilizers: d_k ← d_k · s_j^μ
        let m_left = destabs.len();
        for k in 0..m_left {
            for j in 0..k {
                let e = symplectic(&destabs[j], &destabs[k], d);
                if e == 0 {
                    continue;
                }
                let c = symplectic(&destabs[j], &stabs[j], d);
                let c_inv = mod_inverse(c as u64, d as u64)? as u64;
                let mu = ((d as u64 - e as u64) * c_inv % d as u64) as u32;
                let s = stabs[j].clone();
                destabs[k].mul_pow_assign(&s, mu, d);
            }
        }
        let rows = destabs.into_iter().chain(stabs).collect();
        Ok(Tableau { n: n - 1, d, full: true, rows })
    }

    /// Measures `q` and returns the outcome with the reduced tableau.
    pub fn measure_reduce(&self, q: usize, rng: &mut impl Rng) -> Result<(Measurement, Tableau)> {
        let mut t = self.clone();
        let m = t.measure(q, rng)?;
        let reduced = t.reduce(&m)?;
        Ok((m, reduced))
    }

    /// Common `+1` eigenvector of the stabilizers, phase-canonicalized.
    pub fn to_statevector<T: Real>(&self) -> Result<StateVector<T>> {
        check_cutoff(self.d, self.n, DEFAULT_CUTOFF)?;
        let stabs = self.stabilizers();
        if self.full {
            self.check_invariants()?;
        } else if is_prime(self.d as u64) {
            let mat: Vec<Vec<u32>> = stabs.iter().map(|s| s.x.iter().chain(&s.z).copied().collect()).collect();
            if rref_mod_p(&mat, self.d).rank != self.n {
                return Err(Error::InvalidTableau("stabilizers are not independent".into()));
            }
        }
        let seed: Option<Vec<u32>> = if self.full && is_prime(self.d as u64) {
            let mut copy = self.clone();
            Some((0..self.n).map(|q| copy.measure_forced(q, 0).map(|m| m.outcome)).collect::<Result<_>>()?)
        } else {
            None
        };
        let dim = check_cutoff(self.d, self.n, DEFAULT_CUTOFF)?;
        let candidates: Box<dyn Iterator<Item = Vec<u32>>> = match seed {
            Some(v) => Box::new(std::iter::once(v)),
            None => Box::new((0..dim).map(|i| crate::dense::outcome_digits(i, self.n, self.d))),
        };
        let powers: Vec<Vec<PauliRow>> =
            stabs.iter().map(|s| (1..self.d).map(|m| row_power(s, m, self.d)).collect()).collect();
        let inv_d = T::one() / T::from_u32(self.d).unwrap();
        let tol = T::from_f64(1e-6).unwrap();
        for digits in candidates {
            let mut psi = StateVector::<T>::basis(self.n, self.d, &digits)?;
            for pw in &powers {
                let mut acc: Vec<Complex<T>> = psi.amplitudes().to_vec();
                for g in pw {
                    let mut term = psi.clone();
                    term.apply_row(g);
                    for (a, b) in acc.iter_mut().zip(term.amplitudes()) {
                        *a = *a + *b;
                    }
                }
                let scaled = acc.into_iter().map(|a| a * inv_d).collect();
                psi = StateVector::from_amplitudes(self.n, self.d, scaled)?;
            }
            if psi.norm_sqr() > tol {
                psi.normalize();
                psi.canonicalize_phase();
                return Ok(psi);
            }
        }
        Err(Error::InvalidTableau("stabilizers have no common +1 eigenvector".into()))
    }

    /// Text container: `QQT 1`, `n`, `d`, `full` lines, then one row per line
    /// (`x… z… r`, space separated).
    pub fn save(&self) -> String {
        let mut out = format!("QQT 1\nn {}\nd {}\nfull {}\n", self.n, self.d, u8::from(self.full));
        for row in &self.rows {
            let fields: Vec<String> =
                row.x.iter().chain(&row.z).chain(std::iter::once(&row.r)).map(u32::to_string).collect();
            out.push_str(&fields.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn load(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let mut next = |what: &str| lines.next().ok_or_else(|| Error::parse(0, format!("missing {what}")));
        let (ln, header) = next("header")?;
        if header != "QQT 1" {
            return Err(Error::parse(ln, "expected header 'QQT 1'"));
        }
        let mut field = |key: &str| -> Result<u64> {
            let (ln, line) = next(key)?;
            let value = line
                .strip_prefix(key)
                .map(str::trim)
                .ok_or_else(|| Error::parse(ln, format!("expected '{key} <value>'")))?;
            value.parse().map_err(|_| Error::parse(ln, format!("bad {key} value '{value}'")))
        };
        let n = field("n")? as usize;
        let d = field("d")? as u32;
        let full = match field("full")? {
            0 => false,
            1 => true,
            v => return Err(Error::parse(0, format!("full flag must be 0 or 1, got {v}"))),
        };
        let count = if full { 2 * n } else { n };
        let mut rows = Vec::with_capacity(count);
        for _ in 0..count {
            let (ln, line) = next("row")?;
            let vals: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad entry '{t}'"))))
                .collect::<Result<_>>()?;
            if vals.len() != 2 * n + 1 {
                return Err(Error::parse(ln, format!("expected {} entries, got {}", 2 * n + 1, vals.len())));
            }
            rows.push(PauliRow::new(vals[..n].to_vec(), vals[n..2 * n].to_vec(), vals[2 * n]));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content"));
        }
        let stabs = rows.split_off(if full { n } else { 0 });
        Tableau::from_rows(d, rows, stabs)
    }
}

impl fmt::Display for Tableau {
    /// The grid listing: header, destabilizers, separator, stabilizers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        write!(f, "#  |")?;
        for q in 0..n {
            write!(f, " {:>2}", format!("x{q}"))?;
        }
        write!(f, " |")?;
        for q in 0..n {
            write!(f, " {:>2}", format!("z{q}"))?;
        }
        writeln!(f, " | tau")?;
        let rule = "-".repeat(6 + 6 * n);
        writeln!(f, "{rule}")?;
        for (i, row) in self.destabilizers().iter().enumerate() {
            writeln!(f, "d{i} |{row}")?;
        }
        if self.full {
            writeln!(f, "{rule}")?;
        }
        for (i, row) in self.stabilizers().iter().enumerate() {
            writeln!(f, "s{i} |{row}")?;
        }
        Ok(())
    }
}

/// Outcome sampler over the affine space `v₀ + rowspan(B)` of a prime-`d` state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSampler {
    d: u32,
    v0: Vec<u32>,
    basis: Vec<Vec<u32>>,
}

impl AffineSampler {
    /// `v₀` comes from one full measurement of a copy; `B` is the reduced row
    /// echelon form of the stabilizer X-block.
    pub fn new(t: &Tableau, rng: &mut impl Rng) -> Result<Self> {
        t.require_measurable()?;
        let xs: Vec<Vec<u32>> = t.stabilizers().iter().map(|s| s.x.clone()).collect();
        let rref = rref_mod_p(&xs, t.d);
        let v0 = t.clone().measure_all(rng)?;
        Ok(AffineSampler { d: t.d, v0, basis: rref.basis().to_vec() })
    }

    pub fn from_parts(d: u32, v0: Vec<u32>, basis: Vec<Vec<u32>>) -> Self {
        AffineSampler { d, v0, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn v0(&self) -> &[u32] {
        &self.v0
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let d = self.d as u64;
        let mut v: Vec<u64> = self.v0.iter().map(|&x| x as u64).collect();
        for (row, &c) in self.basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (acc, &b) in v.iter_mut().zip(row) {
                *acc += c as u64 * b as u64;
            }
        }
        v.into_iter().map(|x| (x % d) as u32).collect()
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Vec<u32> {
        let coeffs: Vec<u32> = (0..self.rank()).map(|_| rng.gen_range(0..self.d)).collect();
        self.combine(&coeffs)
    }

    /// `shots` independent samples, one RNG stream per shot.
    pub fn sample_shots(&self, shots: usize, seed: u64) -> Vec<Vec<u32>> {
        par_shots(shots, seed, |_, rng| self.sample(rng))
    }

    /// Every outcome of the affine space, each with probability `d^{-k}`.
    pub fn orbit(&self) -> Vec<Vec<u32>> {
        let k = self.rank();
        let total = (self.d as usize).pow(k as u32);
        (0..total)
            .map(|idx| {
                let coeffs = crate::dense::outcome_digits(idx, k, self.d);
                self.combine(&coeffs)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn row(x: &[u32], z: &[u32], r: u32) -> PauliRow {
        PauliRow::new(x.to_vec(), z.to_vec(), r)
    }

    fn ghz() -> Tableau {
        let mut t = Tableau::new(3, 3, true).unwrap();
        t.apply_gate(Gate::new(GateKind::H), &[0]).unwrap();
        t.apply_gate(Gate::new(GateKind::Cnot), &[0, 1]).unwrap();
        t.apply_gate(Gate::new(GateKind::Cnot), &[1, 2]).unwrap();
        t
    }

    #[test]
    fn initial_state() {
        let t = Tableau::new(1, 2, true).unwrap();
        assert_eq!(t.stabilizer(0), &row(&[0], &[1], 0));
        assert_eq!(t.destabilizer(0), &row(&[1], &[0], 0));
        t.check_invariants().unwrap();
        assert_eq!(Tableau::new(1, 1, true), Err(Error::InvalidDimension(1)));
        assert_eq!(Tableau::new(0, 3, true), Err(Error::InvalidQuditCount));
        let psi = Tableau::new(2, 3, true).unwrap().to_statevector::<f64>().unwrap();
        assert!((psi.amplitude(&[0, 0]).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_listing() {
        let t = ghz();
        let expected = "\
#  | x0 x1 x2 | z0 z1 z2 | tau
------------------------
d0 |  0  0  0 |  1  0  0 | 0
d1 |  0  1  1 |  0  0  0 | 0
d2 |  0  0  1 |  0  0  0 | 0
------------------------
s0 |  2  2  2 |  0  0  0 | 0
s1 |  0  0  0 |  2  1  0 | 0
s2 |  0  0  0 |  0  2  1 | 0
";
        assert_eq!(t.to_string(), expected);
    }

    #[test]
    fn ghz_forced_measurement() {
        let mut t = ghz();
        let m = t.measure_forced(0, 2).unwrap();
        assert_eq!(m.kind, MeasurementKind::Random { pivot: 0 });
        assert_eq!(t.destabilizer(0), &row(&[1, 1, 1], &[0, 0, 0], 0));
        assert_eq!(t.stabilizer(0), &row(&[0, 0, 0], &[1, 0, 0], 2));
        let m1 = t.measure_forced(1, 0).unwrap();
        let m2 = t.measure_forced(2, 0).unwrap();
        assert_eq!((m1.outcome, m1.kind), (2, MeasurementKind::Deterministic));
        assert_eq!((m2.outcome, m2.kind), (2, MeasurementKind::Deterministic));
        t.check_invariants().unwrap();
    }

    #[test]
    fn fresh_measurement_is_deterministic_zero() {
        let mut t = Tableau::new(3, 5, true).unwrap();
        let before = t.clone();
        let m = t.measure_forced(1, 3).unwrap();
        assert_eq!((m.outcome, m.kind), (0, MeasurementKind::Deterministic));
        assert_eq!(t, before);
    }

    #[test]
    fn measurement_requires_full_prime_tableau() {
        let mut t = Tableau::new(2, 3, false).unwrap();
        assert_eq!(t.measure_forced(0, 0), Err(Error::NotFullTableau));
        let mut t = Tableau::new(2, 4, true).unwrap();
        assert_eq!(t.measure_forced(0, 0), Err(Error::CompositeDimension(4)));
    }

    fn example3_start() -> Tableau {
        Tableau::from_rows(
            3,
            vec![row(&[0, 0, 0], &[0, 2, 0], 2), row(&[2, 0, 2], &[1, 0, 2], 0), row(&[0, 0, 1], &[0, 2, 1], 4)],
            vec![row(&[1, 1, 1], &[0, 0, 0], 0), row(&[0, 0, 0], &[2, 1, 0], 2), row(&[0, 0, 0], &[2, 0, 1], 0)],
        )
        .unwrap()
    }

    #[test]
    fn example3_reduction() {
        let mut t = example3_start();
        t.check_invariants().unwrap();
        let m = t.measure_forced(2, 1).unwrap();
        assert_eq!(m.kind, MeasurementKind::Random { pivot: 0 });
        let expected_post = Tableau::from_rows(
            3,
            vec![row(&[1, 1, 1], &[0, 0, 0], 0), row(&[0, 1, 0], &[1, 0, 2], 0), row(&[2, 2, 0], &[0, 2, 1], 4)],
            vec![row(&[0, 0, 0], &[0, 0, 1], 4), row(&[0, 0, 0], &[2, 1, 0], 2), row(&[0, 0, 0], &[2, 0, 1], 0)],
        )
        .unwrap();
        assert_eq!(t, expected_post);
        let r1 = t.reduce(&m).unwrap();
        let expected_mid = Tableau::from_rows(
            3,
            vec![row(&[0, 1], &[1, 0], 0), row(&[2, 2], &[0, 2], 4)],
            vec![row(&[0, 0], &[2, 1], 2), row(&[0, 0], &[2, 0], 2)],
        )
        .unwrap();
        assert_eq!(r1, expected_mid);
        r1.check_invariants().unwrap();

        let mut r1m = r1.clone();
        let m1 = r1m.measure_forced(1, 2).unwrap();
        assert_eq!((m1.outcome, m1.kind), (0, MeasurementKind::Deterministic));
        let r2 = r1m.reduce(&m1).unwrap();
        let expected_final = Tableau::from_rows(3, vec![row(&[2], &[1], 2)], vec![row(&[0], &[2], 2)]).unwrap();
        assert_eq!(r2, expected_final);
        r2.check_invariants().unwrap();
        // τ²Z² fixes |1⟩
        let mut last = r2.clone();
        assert_eq!(last.measure_forced(0, 0).unwrap().outcome, 1);
    }

    #[test]
    fn reduce_fresh_pair() {
        let mut t = Tableau::new(2, 3, true).unwrap();
        let m = t.measure_forced(0, 0).unwrap();
        let r = t.reduce(&m).unwrap();
        assert_eq!(r, Tableau::new(1, 3, true).unwrap());
    }

    #[test]
    fn affine_sampler_ghz() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = AffineSampler::new(&ghz(), &mut rng).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.basis(), &[vec![1, 1, 1]]);
        let mut orbit = s.orbit();
        orbit.sort();
        assert_eq!(orbit, vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);

        let fresh = AffineSampler::new(&Tableau::new(3, 5, true).unwrap(), &mut rng).unwrap();
        assert_eq!(fresh.rank(), 0);
        assert!(fresh.sample_shots(20, 1).iter().all(|v| v == &vec![0, 0, 0]));
    }

    #[test]
    fn save_load_round_trip() {
        let t = example3_start();
        assert_eq!(Tableau::load(&t.save()).unwrap(), t);
        let s = Tableau::new(2, 4, false).unwrap();
        assert_eq!(Tableau::load(&s.save()).unwrap(), s);
        assert!(Tableau::load("QQT 2\n").is_err());
        assert!(Tableau::load("QQT 1\nn 1\nd 3\nfull 1\n1 0 0\n").is_err());
    }

    #[test]
    fn stabilizer_only_statevector() {
        let mut t = Tableau::new(2, 4, false).unwrap();
        t.apply_gate(Gate::new(GateKind::H), &[0]).unwrap();
        t.apply_gate(Gate::new(GateKind::Cnot), &[0, 1]).unwrap();
        let psi = t.to_statevector::<f64>().unwrap();
        let p = psi.born_distribution(&[0, 1]).unwrap();
        for (i, v) in p.iter().enumerate() {
            let expected = if i % 5 == 0 { 0.25 } else { 0.0 };
            assert!((v - expected).abs() < 1e-12);
        }
    }
}
