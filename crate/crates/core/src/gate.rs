//! The Clifford gate set and its action on exponent rows.

use std::fmt;

use num_complex::Complex;

use crate::dense::Operator;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::weyl::{omega_pow, tau_pow, PauliRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    /// `W(a,b) = τ^{-ab} X^a Z^b`
    W(u32, u32),
    H,
    S,
    Cnot,
    Cz,
    Swap,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::W(..) => "W",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
        }
    }

    pub const ONE_QUDIT_CLIFFORDS: [GateKind; 6] =
        [GateKind::I, GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::S];
    pub const TWO_QUDIT: [GateKind; 3] = [GateKind::Cnot, GateKind::Cz, GateKind::Swap];
}

/// A gate together with a dagger flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub dagger: bool,
}

impl From<GateKind> for Gate {
    fn from(kind: GateKind) -> Self {
        Gate { kind, dagger: false }
    }
}

impl Gate {
    pub const fn new(kind: GateKind) -> Self {
        Gate { kind, dagger: false }
    }

    pub const fn dag(kind: GateKind) -> Self {
        Gate { kind, dagger: true }
    }

    pub fn arity(self) -> usize {
        self.kind.arity()
    }

    pub fn inverse(self) -> Self {
        Gate { kind: self.kind, dagger: !self.dagger }
    }

    /// Text mnemonic: `H`, `HDAG`, `W(1,2)`, `WDAG(1,2)`, `CNOT`, …
    pub fn mnemonic(self) -> String {
        let suffix = if self.dagger { "DAG" } else { "" };
        match self.kind {
            GateKind::W(a, b) => format!("W{suffix}({a},{b})"),
            k => format!("{}{suffix}", k.name()),
        }
    }

    /// Parses a mnemonic (case-sensitive). `CX` is accepted for `CNOT`.
    pub fn parse_mnemonic(s: &str) -> Option<Gate> {
        if let Some(rest) = s.strip_prefix('W') {
            let (dagger, rest) = match rest.strip_prefix("DAG") {
                Some(r) => (true, r),
                None => (false, rest),
            };
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            let (a, b) = inner.split_once(',')?;
            let a = a.trim().parse().ok()?;
            let b = b.trim().parse().ok()?;
            return Some(Gate { kind: GateKind::W(a, b), dagger });
        }
        let (base, dagger) = match s.strip_suffix("DAG") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let kind = match base {
            "I" => GateKind::I,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "CNOT" | "CX" => GateKind::Cnot,
            "CZ" => GateKind::Cz,
            "SWAP" => GateKind::Swap,
            _ => return None,
        };
        Some(Gate { kind, dagger })
    }

    /// Checks gate parameters and target indices against a register.
    pub fn validate(self, qudits: &[usize], n: usize, d: u32) -> Result<()> {
        if qudits.len() != self.arity() {
            return Err(Error::DimensionMismatch(format!(
                "{} acts on {} qudit(s), got {}",
                self.mnemonic(),
                self.arity(),
                qudits.len()
            )));
        }
        for &q in qudits {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, n });
            }
        }
        if qudits.len() == 2 && qudits[0] == qudits[1] {
            return Err(Error::ControlEqualsTarget(qudits[0]));
        }
        if let GateKind::W(a, b) = self.kind {
            if a >= d || b >= d {
                return Err(Error::DimensionMismatch(format!("W({a},{b}) exponents must be below d = {d}")));
            }
        }
        Ok(())
    }

    /// Conjugation `g ↦ G g G†` on exponent vectors.
    ///
    /// Updates `x` and `z` at the gate's qudits in place, reading every
    /// right-hand side from the pre-gate values, and returns the τ-phase
    /// increment mod `2d`.
    pub fn conjugate(self, x: &mut [u32], z: &mut [u32], qudits: &[usize], d: u32) -> u32 {
        let dd = d as i64;
        let m = |v: i64| v.rem_euclid(dd) as u32;
        let sign: i64 = if self.dagger { -1 } else { 1 };
        let q = qudits[0];
        let (xq, zq) = (x[q] as i64, z[q] as i64);
        let delta: i64 = match self.kind {
            GateKind::I => 0,
            GateKind::X => -2 * zq * sign,
            GateKind::Z => 2 * xq * sign,
            GateKind::Y => 2 * (xq - zq) * sign,
            GateKind::W(a, b) => 2 * (b as i64 * xq - a as i64 * zq) * sign,
            GateKind::H => {
                if self.dagger {
                    x[q] = m(zq);
                    z[q] = m(-xq);
                } else {
                    x[q] = m(-zq);
                    z[q] = m(xq);
                }
                -2 * xq * zq
            }
            GateKind::S => {
                z[q] = m(zq + sign * xq);
                let delta = if d % 2 == 0 { xq * xq } else { xq * (xq - 1) };
                sign * delta
            }
            GateKind::Cnot => {
                let t = qudits[1];
                x[t] = m(x[t] as i64 + sign * xq);
                z[q] = m(zq - sign * z[t] as i64);
                0
            }
            GateKind::Cz => {
                let t = qudits[1];
                let xt = x[t] as i64;
                z[q] = m(zq + sign * xt);
                z[t] = m(z[t] as i64 + sign * xq);
                2 * xq * xt * sign
            }
            GateKind::Swap => {
                let t = qudits[1];
                x.swap(q, t);
                z.swap(q, t);
                0
            }
        };
        delta.rem_euclid(2 * dd) as u32
    }

    pub fn conjugate_row(self, row: &mut PauliRow, qudits: &[usize], d: u32) {
        let delta = self.conjugate(&mut row.x, &mut row.z, qudits, d);
        row.r = (row.r + delta) % (2 * d);
    }

    /// Dense unitary on the gate's own qudits (`d` or `d²` square), first listed
    /// qudit most significant.
    pub fn local_matrix<T: Real>(self, d: u32) -> Operator<T> {
        let base = self.base_matrix::<T>(d);
        if self.dagger {
            base.adjoint()
        } else {
            base
        }
    }

    fn base_matrix<T: Real>(self, d: u32) -> Operator<T> {
        let du = d as usize;
        let one = Complex::new(T::one(), T::zero());
        let weyl = |a: u32, b: u32| crate::weyl::weyl_matrix::<T>(a % d, b % d, d);
        match self.kind {
            GateKind::I => Operator::identity(du),
            GateKind::X => weyl(1, 0),
            GateKind::Z => weyl(0, 1),
            GateKind::Y => weyl(1, 1),
            GateKind::W(a, b) => weyl(a, b),
            GateKind::H => {
                let mut op = Operator::zeros(du);
                let norm = T::from_u32(d).unwrap().sqrt().recip();
                for j in 0..du {
                    for k in 0..du {
                        op[(j, k)] = omega_pow::<T>((j * k) as i64, d) * norm;
                    }
                }
                op
            }
            GateKind::S => {
                let mut op = Operator::zeros(du);
                for j in 0..du as i64 {
                    op[(j as usize, j as usize)] =
                        if d % 2 == 0 { tau_pow(j * j, d) } else { omega_pow(j * (j - 1) / 2, d) };
                }
                op
            }
            GateKind::Cnot => {
                let mut op = Operator::zeros(du * du);
                for c in 0..du {
                    for t in 0..du {
                        op[(c * du + (t + c) % du, c * du + t)] = one;
                    }
                }
                op
            }
            GateKind::Cz => {
                let mut op = Operator::zeros(du * du);
                for c in 0..du {
                    for t in 0..du {
                        op[(c * du + t, c * du + t)] = omega_pow((c * t) as i64, d);
                    }
                }
                op
            }
            GateKind::Swap => {
                let mut op = Operator::zeros(du * du);
                for a in 0..du {
                    for b in 0..du {
                        op[(b * du + a, a * du + b)] = one;
                    }
                }
                op
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.mnemonic())
    }
}

/// Every gate of the set for dimension `d`, plain and daggered, with all
/// `W(a,b)` instances.
pub fn all_gates(d: u32) -> Vec<Gate> {
    let mut kinds: Vec<GateKind> = GateKind::ONE_QUDIT_CLIFFORDS.to_vec();
    kinds.extend(GateKind::TWO_QUDIT);
    for a in 0..d {
        for b in 0..d {
            kinds.push(GateKind::W(a, b));
        }
    }
    kinds.into_iter().flat_map(|k| [Gate::new(k), Gate::dag(k)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mnemonic_round_trip() {
        for g in all_gates(3) {
            assert_eq!(Gate::parse_mnemonic(&g.mnemonic()), Some(g));
        }
        assert_eq!(Gate::parse_mnemonic("CX"), Some(Gate::new(GateKind::Cnot)));
        assert_eq!(Gate::parse_mnemonic("CXDAG"), Some(Gate::dag(GateKind::Cnot)));
        assert_eq!(Gate::parse_mnemonic("W( 1, 2)"), Some(Gate::new(GateKind::W(1, 2))));
        assert_eq!(Gate::parse_mnemonic("Q"), None);
        assert_eq!(Gate::parse_mnemonic("W(1)"), None);
        assert_eq!(Gate::dag(GateKind::H).to_string(), "HDAG");
    }

    #[test]
    fn validation() {
        let cnot = Gate::new(GateKind::Cnot);
        assert!(cnot.validate(&[0, 1], 2, 3).is_ok());
        assert_eq!(cnot.validate(&[0, 0], 2, 3), Err(Error::ControlEqualsTarget(0)));
        assert!(matches!(cnot.validate(&[0, 2], 2, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(Gate::new(GateKind::W(3, 0)).validate(&[0], 1, 3).is_err());
        assert!(Gate::new(GateKind::H).validate(&[0, 1], 2, 3).is_err());
    }

    #[test]
    fn hadamard_frame_rule() {
        let (mut x, mut z) = (vec![1u32], vec![2u32]);
        Gate::new(GateKind::H).conjugate(&mut x, &mut z, &[0], 3);
        assert_eq!((x[0], z[0]), (1, 1));
    }

    #[test]
    fn local_matrices_are_unitary() {
        for d in 2..=5 {
            for g in all_gates(d) {
                let u = g.local_matrix::<f64>(d);
                let id = Operator::identity(u.dim());
                assert!(u.mul(&u.adjoint()).approx_eq(&id, 1e-12), "{g} d={d}");
                let inv = g.inverse().local_matrix::<f64>(d);
                assert!(u.mul(&inv).approx_eq(&id, 1e-12));
            }
        }
    }
}
