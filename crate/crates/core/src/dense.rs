//! Brute-force statevector and density-matrix backend.
//!
//! This is the reference every faster path is checked against. Basis index
//! `j` encodes qudit digits with qudit 0 as the most significant digit. A
//! density matrix on `n` qudits is stored row-major and treated as a vector on
//! `2n` qudits: ket digits first, bra digits after.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use rand::Rng;

use crate::circuit::{Circuit, Op};
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::noise::NoiseModel;
use crate::scalar::Real;
use crate::weyl::{tau_pow, weyl_matrix, PauliRow};

/// Default limit on stored complex entries (`d^n` for states, `d^{2n}` for
/// density matrices).
pub const DEFAULT_CUTOFF: usize = 1 << 20;

/// Returns `d^n` if it does not exceed `cutoff`.
pub fn check_cutoff(d: u32, n: usize, cutoff: usize) -> Result<usize> {
    let mut size: u128 = 1;
    for _ in 0..n {
        size *= d as u128;
        if size > cutoff as u128 {
            let required = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            return Err(Error::TooLarge { required, limit: cutoff });
        }
    }
    Ok(size as usize)
}

#[inline]
fn c<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Operator<T> {
    pub fn zeros(dim: usize) -> Self {
        Operator { dim, data: vec![Complex::new(T::zero(), T::zero()); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op[(i, i)] = c(T::one());
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.dim;
        (0..n).map(|i| (0..n).fold(c(T::zero()), |acc, j| acc + self.data[i * n + j] * v[j])).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Operator { dim: self.dim, data: self.data.iter().map(|v| v.conj()).collect() }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Operator { dim: self.dim, data: self.data.iter().map(|&v| v * s).collect() }
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (a, b) = (self.dim, rhs.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let s = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k, j * b + l)] = s * rhs.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let tol = T::from_f64(tol).unwrap();
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| (*a - *b).norm() <= tol)
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let tol = T::from_f64(tol).unwrap();
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| i == j || self.data[i * n + j].norm() <= tol))
    }

    /// Lifts a local operator on `qudits` to the full `n`-qudit register.
    pub fn embed(local: &Self, qudits: &[usize], n: usize, d: u32) -> Result<Self> {
        let dim = check_cutoff(d, n, DEFAULT_CUTOFF)?;
        let mut out = Self::zeros(dim);
        for col in 0..dim {
            let mut e = vec![c(T::zero()); dim];
            e[col] = c(T::one());
            apply_local(&mut e, n, d, local, qudits);
            for (row, v) in e.into_iter().enumerate() {
                out[(row, col)] = v;
            }
        }
        Ok(out)
    }

    /// Full-register unitary of a gate.
    pub fn gate(gate: Gate, qudits: &[usize], n: usize, d: u32) -> Result<Self> {
        gate.validate(qudits, n, d)?;
        Self::embed(&gate.local_matrix(d), qudits, n, d)
    }
}

impl<T> Index<(usize, usize)> for Operator<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Operator<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

fn digits_of(mut idx: usize, n: usize, d: u32) -> Vec<u32> {
    let mut digits = vec![0u32; n];
    for q in (0..n).rev() {
        digits[q] = (idx % d as usize) as u32;
        idx /= d as usize;
    }
    digits
}

/// Applies a `d^k × d^k` operator to the listed qudits of an `n`-qudit vector.
fn apply_local<T: Real>(amps: &mut [Complex<T>], n: usize, d: u32, local: &Operator<T>, qudits: &[usize]) {
    let du = d as usize;
    let strides: Vec<usize> = qudits.iter().map(|&q| du.pow((n - 1 - q) as u32)).collect();
    let m = local.dim();
    let offsets: Vec<usize> = (0..m)
        .map(|l| {
            let mut rem = l;
            let mut off = 0;
            for s in strides.iter().rev() {
                off += (rem % du) * s;
                rem /= du;
            }
            off
        })
        .collect();
    let mut buf = vec![c(T::zero()); m];
    for base in 0..amps.len() {
        if strides.iter().any(|&s| (base / s) % du != 0) {
            continue;
        }
        for (l, off) in offsets.iter().enumerate() {
            buf[l] = amps[base + off];
        }
        for (i, off) in offsets.iter().enumerate() {
            let mut acc = c(T::zero());
            for (j, b) in buf.iter().enumerate() {
                acc = acc + local[(i, j)] * *b;
            }
            amps[base + off] = acc;
        }
    }
}

/// Applies the monomial operator of a row, `τ^r ⊗ X^x Z^z`.
fn apply_row<T: Real>(amps: &[Complex<T>], n: usize, d: u32, row: &PauliRow) -> Vec<Complex<T>> {
    let du = d as usize;
    let mut out = vec![c(T::zero()); amps.len()];
    let two_d = 2 * d as u64;
    for (col, &a) in amps.iter().enumerate() {
        if a.re == T::zero() && a.im == T::zero() {
            continue;
        }
        let digits = digits_of(col, n, d);
        let mut e = row.r as u64;
        let mut target = 0usize;
        for q in 0..n {
            e += 2 * (row.z[q] as u64 * digits[q] as u64 % d as u64);
            target = target * du + ((digits[q] + row.x[q]) % d) as usize;
        }
        out[target] = a * tau_pow::<T>((e % two_d) as i64, d);
    }
    out
}

/// Pure state on `n` qudits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    n: usize,
    d: u32,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn zero(n: usize, d: u32) -> Result<Self> {
        Self::basis(n, d, &vec![0; n])
    }

    pub fn basis(n: usize, d: u32, digits: &[u32]) -> Result<Self> {
        Self::basis_with_cutoff(n, d, digits, DEFAULT_CUTOFF)
    }

    pub fn basis_with_cutoff(n: usize, d: u32, digits: &[u32], cutoff: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let dim = check_cutoff(d, n, cutoff)?;
        let mut amps = vec![c(T::zero()); dim];
        amps[index_of(digits, d)] = c(T::one());
        Ok(StateVector { n, d, amps })
    }

    pub fn from_amplitudes(n: usize, d: u32, amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = check_cutoff(d, n, DEFAULT_CUTOFF)?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch(format!("{} amplitudes for a {dim}-dimensional space", amps.len())));
        }
        Ok(StateVector { n, d, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, digits: &[u32]) -> Complex<T> {
        self.amps[index_of(digits, self.d)]
    }

    pub fn apply_gate(&mut self, gate: Gate, qudits: &[usize]) -> Result<()> {
        gate.validate(qudits, self.n, self.d)?;
        apply_local(&mut self.amps, self.n, self.d, &gate.local_matrix(self.d), qudits);
        Ok(())
    }

    pub fn apply_operator(&mut self, local: &Operator<T>, qudits: &[usize]) {
        apply_local(&mut self.amps, self.n, self.d, local, qudits);
    }

    pub fn apply_weyl(&mut self, a: u32, b: u32, qudit: usize) {
        apply_local(&mut self.amps, self.n, self.d, &weyl_matrix(a, b, self.d), &[qudit]);
    }

    pub fn apply_row(&mut self, row: &PauliRow) {
        self.amps = apply_row(&self.amps, self.n, self.d, row);
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn normalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        for a in &mut self.amps {
            *a = *a / norm;
        }
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps.iter().zip(&other.amps).fold(c(T::zero()), |acc, (a, b)| acc + a.conj() * b)
    }

    /// Rotates the global phase so the first amplitude above 1e−9 is real positive.
    pub fn canonicalize_phase(&mut self) {
        let tol = T::from_f64(1e-9).unwrap();
        if let Some(first) = self.amps.iter().find(|a| a.norm() > tol).copied() {
            let rot = first.conj() / first.norm();
            for a in &mut self.amps {
                *a = *a * rot;
            }
        }
    }

    pub fn approx_eq_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.canonicalize_phase();
        b.canonicalize_phase();
        let tol = T::from_f64(tol).unwrap();
        a.n == b.n && a.amps.iter().zip(&b.amps).all(|(x, y)| (*x - *y).norm() <= tol)
    }

    /// Marginal computational-basis distribution of `measured`, indexed with
    /// the first listed qudit most significant.
    pub fn born_distribution(&self, measured: &[usize]) -> Result<Vec<f64>> {
        check_measured(measured, self.n)?;
        let du = self.d as usize;
        let mut probs = vec![0.0; du.pow(measured.len() as u32)];
        for (idx, a) in self.amps.iter().enumerate() {
            let digits = digits_of(idx, self.n, self.d);
            let key = measured.iter().fold(0, |k, &q| k * du + digits[q] as usize);
            probs[key] += a.norm_sqr().to_f64().unwrap();
        }
        Ok(probs)
    }

    /// Samples a full computational-basis outcome.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<u32> {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut chosen = self.amps.len() - 1;
        for (idx, a) in self.amps.iter().enumerate() {
            acc += a.norm_sqr().to_f64().unwrap();
            if u < acc {
                chosen = idx;
                break;
            }
        }
        digits_of(chosen, self.n, self.d)
    }

    /// Gate-only simulation of a circuit from `|0…0⟩`.
    pub fn run(circuit: &Circuit) -> Result<Self> {
        let mut s = Self::zero(circuit.n(), circuit.d())?;
        for op in circuit.ops() {
            match op {
                Op::Gate { gate, qudits } => s.apply_gate(*gate, qudits)?,
                Op::Noise { .. } => return Err(Error::Unsupported("noise on a pure state".into())),
                Op::Measure(_) => {}
            }
        }
        Ok(s)
    }
}

pub(crate) fn index_of(digits: &[u32], d: u32) -> usize {
    digits.iter().fold(0, |k, &v| k * d as usize + v as usize)
}

fn check_measured(measured: &[usize], n: usize) -> Result<()> {
    for &q in measured {
        if q >= n {
            return Err(Error::IndexOutOfRange { index: q, n });
        }
    }
    Ok(())
}

/// Mixed state on `n` qudits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator<T> {
    n: usize,
    d: u32,
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DensityOperator<T> {
    pub fn zero(n: usize, d: u32) -> Result<Self> {
        Self::from_state(&StateVector::zero(n, d)?)
    }

    pub fn from_state(psi: &StateVector<T>) -> Result<Self> {
        Self::from_state_with_cutoff(psi, DEFAULT_CUTOFF)
    }

    pub fn from_state_with_cutoff(psi: &StateVector<T>, cutoff: usize) -> Result<Self> {
        check_cutoff(psi.d, 2 * psi.n, cutoff)?;
        let dim = psi.amps.len();
        let mut data = vec![c(T::zero()); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = psi.amps[i] * psi.amps[j].conj();
            }
        }
        Ok(DensityOperator { n: psi.n, d: psi.d, dim, data })
    }

    pub fn maximally_mixed(n: usize, d: u32) -> Result<Self> {
        check_cutoff(d, 2 * n, DEFAULT_CUTOFF)?;
        let dim = check_cutoff(d, n, DEFAULT_CUTOFF)?;
        let mut data = vec![c(T::zero()); dim * dim];
        let w = T::one() / T::from_usize(dim).unwrap();
        for i in 0..dim {
            data[i * dim + i] = c(w);
        }
        Ok(DensityOperator { n, d, dim, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.dim + j]
    }

    /// `ρ ← U ρ U†` for a local operator on `qudits`.
    pub fn apply_operator(&mut self, local: &Operator<T>, qudits: &[usize]) {
        apply_local(&mut self.data, 2 * self.n, self.d, local, qudits);
        let bra: Vec<usize> = qudits.iter().map(|q| q + self.n).collect();
        apply_local(&mut self.data, 2 * self.n, self.d, &local.conj(), &bra);
    }

    pub fn apply_gate(&mut self, gate: Gate, qudits: &[usize]) -> Result<()> {
        gate.validate(qudits, self.n, self.d)?;
        self.apply_operator(&gate.local_matrix(self.d), qudits);
        Ok(())
    }

    /// `ρ ← Σ_{a,b} q_{a,b} W(a,b) ρ W(a,b)†` on one qudit.
    pub fn apply_channel(&mut self, model: &NoiseModel, qudit: usize) -> Result<()> {
        if model.d() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "noise model for d = {} on a d = {} register",
                model.d(),
                self.d
            )));
        }
        check_measured(&[qudit], self.n)?;
        let mut acc = vec![c(T::zero()); self.data.len()];
        for &((a, b), q) in model.entries() {
            if q == 0.0 {
                continue;
            }
            let mut term = self.clone();
            term.apply_operator(&weyl_matrix(a, b, self.d), &[qudit]);
            let w = T::from_f64(q).unwrap();
            for (x, t) in acc.iter_mut().zip(&term.data) {
                *x = *x + *t * w;
            }
        }
        self.data = acc;
        Ok(())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(c(T::zero()), |acc, i| acc + self.data[i * self.dim + i])
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let tol = T::from_f64(tol).unwrap();
        (0..self.dim).all(|i| (0..self.dim).all(|j| (self.entry(i, j) - self.entry(j, i).conj()).norm() <= tol))
    }

    /// `⟨v|ρ|v⟩` for an arbitrary (unnormalized) vector.
    pub fn expectation(&self, v: &[Complex<T>]) -> Complex<T> {
        let mut acc = c(T::zero());
        for i in 0..self.dim {
            let mut row = c(T::zero());
            for j in 0..self.dim {
                row = row + self.data[i * self.dim + j] * v[j];
            }
            acc = acc + v[i].conj() * row;
        }
        acc
    }

    /// `⟨ψ|ρ|ψ⟩`, clipped to `[0, 1]`.
    pub fn fidelity(&self, psi: &StateVector<T>) -> f64 {
        self.expectation(&psi.amps).re.to_f64().unwrap().clamp(0.0, 1.0)
    }

    pub fn born_distribution(&self, measured: &[usize]) -> Result<Vec<f64>> {
        check_measured(measured, self.n)?;
        let du = self.d as usize;
        let mut probs = vec![0.0; du.pow(measured.len() as u32)];
        for idx in 0..self.dim {
            let digits = digits_of(idx, self.n, self.d);
            let key = measured.iter().fold(0, |k, &q| k * du + digits[q] as usize);
            probs[key] += self.entry(idx, idx).re.to_f64().unwrap();
        }
        Ok(probs)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let tol = T::from_f64(tol).unwrap();
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| (*a - *b).norm() <= tol)
    }

    /// Exact channel simulation of a circuit from `|0…0⟩`; measurement ops are
    /// skipped, so they must be terminal for the result to be meaningful.
    pub fn run(circuit: &Circuit) -> Result<Self> {
        let mut rho = Self::zero(circuit.n(), circuit.d())?;
        for op in circuit.ops() {
            match op {
                Op::Gate { gate, qudits } => rho.apply_gate(*gate, qudits)?,
                Op::Noise { model, qudit } => rho.apply_channel(circuit.model(*model), *qudit)?,
                Op::Measure(_) => {}
            }
        }
        Ok(rho)
    }
}

/// Lists every outcome (as digit vectors) in the order used by `born_distribution`.
pub fn outcome_digits(index: usize, len: usize, d: u32) -> Vec<u32> {
    digits_of(index, len, d)
}

pub fn outcome_index(digits: &[u32], d: u32) -> usize {
    index_of(digits, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{all_gates, GateKind};

    fn ghz(d: u32) -> StateVector<f64> {
        let mut s = StateVector::zero(3, d).unwrap();
        s.apply_gate(Gate::new(GateKind::H), &[0]).unwrap();
        s.apply_gate(Gate::new(GateKind::Cnot), &[0, 1]).unwrap();
        s.apply_gate(Gate::new(GateKind::Cnot), &[1, 2]).unwrap();
        s
    }

    #[test]
    fn ghz_amplitudes() {
        let s = ghz(3);
        let w = 1.0 / 3f64.sqrt();
        for idx in 0..27 {
            let digits = digits_of(idx, 3, 3);
            let expected = if digits.iter().all(|&v| v == digits[0]) { w } else { 0.0 };
            assert!((s.amps[idx] - c(expected)).norm() < 1e-12, "{digits:?}");
        }
        let p = s.born_distribution(&[0, 1, 2]).unwrap();
        for (i, v) in p.iter().enumerate() {
            let expected = if [0, 13, 26].contains(&i) { 1.0 / 3.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_and_inverse_round_trip() {
        let before = ghz(4);
        let mut s = before.clone();
        s.apply_gate(Gate::new(GateKind::I), &[1]).unwrap();
        assert_eq!(s, before);
        for g in all_gates(4) {
            let qs: &[usize] = if g.arity() == 2 { &[2, 0] } else { &[1] };
            s.apply_gate(g, qs).unwrap();
            s.apply_gate(g.inverse(), qs).unwrap();
        }
        assert!(s.approx_eq_up_to_phase(&before, 1e-12));
        assert!((s.inner(&before) - c(1.0)).norm() < 1e-10);
    }

    #[test]
    fn uniform_superposition_born() {
        let mut s = StateVector::<f64>::zero(2, 3).unwrap();
        s.apply_gate(Gate::new(GateKind::H), &[0]).unwrap();
        s.apply_gate(Gate::new(GateKind::H), &[1]).unwrap();
        for p in s.born_distribution(&[0, 1]).unwrap() {
            assert!((p - 1.0 / 9.0).abs() < 1e-12);
        }
        assert_eq!(StateVector::<f64>::zero(2, 3).unwrap().born_distribution(&[1]).unwrap(), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn cutoff_is_enforced() {
        assert!(matches!(StateVector::<f64>::zero(21, 2), Err(Error::TooLarge { .. })));
        assert!(StateVector::<f64>::zero(20, 2).is_ok());
        let psi = StateVector::<f64>::zero(11, 2).unwrap();
        assert!(matches!(DensityOperator::from_state(&psi), Err(Error::TooLarge { .. })));
        assert!(check_cutoff(3, 3, 26).is_err());
        assert_eq!(check_cutoff(3, 3, 27).unwrap(), 27);
    }

    #[test]
    fn gate_unitaries_embed() {
        for d in 2..=5 {
            for g in all_gates(d) {
                let qs: &[usize] = if g.arity() == 2 { &[1, 0] } else { &[1] };
                let u = Operator::<f64>::gate(g, qs, 2, d).unwrap();
                let id = Operator::identity(u.dim());
                assert!(u.mul(&u.adjoint()).approx_eq(&id, 1e-12));
            }
        }
    }

    #[test]
    fn pure_density_matches_state_path() {
        let psi = ghz(2);
        let mut rho = DensityOperator::zero(3, 2).unwrap();
        rho.apply_gate(Gate::new(GateKind::H), &[0]).unwrap();
        rho.apply_gate(Gate::new(GateKind::Cnot), &[0, 1]).unwrap();
        rho.apply_gate(Gate::new(GateKind::Cnot), &[1, 2]).unwrap();
        assert!(rho.approx_eq(&DensityOperator::from_state(&psi).unwrap(), 1e-10));
        assert!((rho.fidelity(&psi) - 1.0).abs() < 1e-10);
        assert!(rho.is_hermitian(1e-12));
        assert!((rho.trace() - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn maximally_mixed_fidelity() {
        let rho = DensityOperator::<f64>::maximally_mixed(2, 3).unwrap();
        let psi = ghz(3);
        let psi2 = StateVector::zero(2, 3).unwrap();
        assert!((rho.fidelity(&psi2) - 1.0 / 9.0).abs() < 1e-12);
        assert_eq!(psi.n(), 3);
    }

    #[test]
    fn single_precision_backend() {
        let mut s = StateVector::<f32>::zero(2, 3).unwrap();
        s.apply_gate(Gate::new(GateKind::H), &[0]).unwrap();
        s.apply_gate(Gate::new(GateKind::Cnot), &[0, 1]).unwrap();
        let p = s.born_distribution(&[0, 1]).unwrap();
        assert!((p[0] - 1.0 / 3.0).abs() < 1e-5);
        assert!((p[4] - 1.0 / 3.0).abs() < 1e-5);
    }
}
