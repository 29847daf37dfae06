//! Weyl operators as exponent rows.
//!
//! A [`PauliRow`] `(x, z, r)` stands for the operator `τ^r · ⊗_q X^{x_q} Z^{z_q}`
//! with `τ = exp(πi(d²+1)/d)` and `ω = τ² = exp(2πi/d)`. Keeping the plain
//! `X^x Z^z` order (rather than the symmetric `W(a,b) = τ^{-ab} X^a Z^b`) makes
//! the product law exact:
//!
//! `τ^{r₁} X^{x₁}Z^{z₁} · τ^{r₂} X^{x₂}Z^{z₂} = τ^{r₁+r₂+2 z₁·x₂} X^{x₁+x₂} Z^{z₁+z₂}`.

use std::fmt;

use num_complex::Complex;

use crate::dense::{check_cutoff, Operator, DEFAULT_CUTOFF};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// One Weyl generator: X-exponents, Z-exponents and a τ-phase exponent mod `2d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PauliRow {
    pub x: Vec<u32>,
    pub z: Vec<u32>,
    pub r: u32,
}

impl PauliRow {
    pub fn identity(n: usize) -> Self {
        PauliRow { x: vec![0; n], z: vec![0; n], r: 0 }
    }

    pub fn new(x: Vec<u32>, z: Vec<u32>, r: u32) -> Self {
        assert_eq!(x.len(), z.len(), "x and z blocks differ in length");
        PauliRow { x, z, r }
    }

    /// `τ^r X_q^a Z_q^b` on an `n`-qudit register.
    pub fn single(n: usize, q: usize, a: u32, b: u32, r: u32) -> Self {
        let mut row = Self::identity(n);
        row.x[q] = a;
        row.z[q] = b;
        row.r = r;
        row
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        self.r == 0 && self.is_phase_free_identity()
    }

    /// True when the X and Z blocks vanish, whatever the phase.
    pub fn is_phase_free_identity(&self) -> bool {
        self.x.iter().all(|&v| v == 0) && self.z.iter().all(|&v| v == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.x.iter().all(|&v| v == 0)
    }

    /// `self ← self · rhs`.
    pub fn mul_assign(&mut self, rhs: &PauliRow, d: u32) {
        debug_assert_eq!(self.n(), rhs.n());
        let d64 = d as u64;
        let mut cross = 0u64;
        for q in 0..self.x.len() {
            cross += self.z[q] as u64 * rhs.x[q] as u64 % d64;
            self.x[q] = ((self.x[q] as u64 + rhs.x[q] as u64) % d64) as u32;
            self.z[q] = ((self.z[q] as u64 + rhs.z[q] as u64) % d64) as u32;
        }
        let two_d = 2 * d64;
        self.r = ((self.r as u64 + rhs.r as u64 + 2 * (cross % d64)) % two_d) as u32;
    }

    /// `self ← self · rhs^k`.
    pub fn mul_pow_assign(&mut self, rhs: &PauliRow, k: u32, d: u32) {
        if k == 0 {
            return;
        }
        let p = row_power(rhs, k, d);
        self.mul_assign(&p, d);
    }

    /// Adds `2(b·x_q − a·z_q)` to the phase: conjugation by `W(a,b)` on qudit `q`.
    pub fn conjugate_by_weyl(&mut self, q: usize, a: u32, b: u32, d: u32) {
        let shift = weyl_phase_shift(self.x[q], self.z[q], a, b, d);
        self.r = (self.r + shift) % (2 * d);
    }

    pub fn dense<T: Real>(&self, d: u32) -> Result<Operator<T>> {
        dense_row(self, d)
    }

    /// Human-readable operator string, e.g. `τ^2 X^1Z^2 ⊗ I ⊗ Z^1`.
    pub fn operator_string(&self) -> String {
        let factors: Vec<String> = self
            .x
            .iter()
            .zip(&self.z)
            .map(|(&a, &b)| match (a, b) {
                (0, 0) => "I".to_string(),
                (a, 0) => format!("X^{a}"),
                (0, b) => format!("Z^{b}"),
                (a, b) => format!("X^{a}Z^{b}"),
            })
            .collect();
        let body = if factors.is_empty() { "I".to_string() } else { factors.join(" ⊗ ") };
        if self.r == 0 {
            body
        } else {
            format!("τ^{} {}", self.r, body)
        }
    }
}

impl fmt::Display for PauliRow {
    /// Grid form `x… | z… | r` with two-wide columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.x {
            write!(f, " {v:>2}")?;
        }
        write!(f, " |")?;
        for v in &self.z {
            write!(f, " {v:>2}")?;
        }
        write!(f, " | {}", self.r)
    }
}

/// Phase-column shift `2(b·x − a·z) mod 2d` caused by a `W(a,b)` error.
#[inline]
pub fn weyl_phase_shift(x: u32, z: u32, a: u32, b: u32, d: u32) -> u32 {
    let d64 = d as u64;
    let v = (b as u64 * x as u64 + (d64 - a as u64 % d64) * z as u64) % d64;
    (2 * v) as u32
}

pub fn compose(a: &PauliRow, b: &PauliRow, d: u32) -> Result<PauliRow> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("rows act on {} and {} qudits", a.n(), b.n())));
    }
    let mut out = a.clone();
    out.mul_assign(b, d);
    Ok(out)
}

/// `g^k` in closed form: `(k·x, k·z, k·r + k(k−1)·(z·x))`.
pub fn row_power(g: &PauliRow, k: u32, d: u32) -> PauliRow {
    let d64 = d as u64;
    let k64 = k as u64;
    let zx = g.z.iter().zip(&g.x).map(|(&z, &x)| z as u64 * x as u64 % d64).sum::<u64>() % d64;
    // k(k−1) is even, so 2·(k(k−1)/2 mod d)·(z·x) is exact mod 2d
    let half = (k64 * k64.saturating_sub(1) / 2) % d64;
    let r = (k64 % (2 * d64) * g.r as u64 + 2 * (half * zx % d64)) % (2 * d64);
    PauliRow {
        x: g.x.iter().map(|&v| (k64 * v as u64 % d64) as u32).collect(),
        z: g.z.iter().map(|&v| (k64 * v as u64 % d64) as u32).collect(),
        r: r as u32,
    }
}

/// `x_a·z_b − x_b·z_a mod d`; zero iff the two operators commute.
pub fn symplectic_product(a: &PauliRow, b: &PauliRow, d: u32) -> Result<u32> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("rows act on {} and {} qudits", a.n(), b.n())));
    }
    Ok(symplectic(a, b, d))
}

#[inline]
pub(crate) fn symplectic(a: &PauliRow, b: &PauliRow, d: u32) -> u32 {
    let d64 = d as u64;
    let mut acc = 0u64;
    for q in 0..a.x.len() {
        acc += a.x[q] as u64 * b.z[q] as u64 % d64;
        acc += (d64 - b.x[q] as u64 * a.z[q] as u64 % d64) % d64;
    }
    (acc % d64) as u32
}

/// A power of τ, stored as an exponent mod `2d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase {
    pub tau_exponent: u32,
    pub d: u32,
}

impl Phase {
    pub fn tau(k: i64, d: u32) -> Self {
        Phase { tau_exponent: k.rem_euclid(2 * d as i64) as u32, d }
    }

    pub fn omega(k: i64, d: u32) -> Self {
        Self::tau(2 * k, d)
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase::tau(self.tau_exponent as i64 + other.tau_exponent as i64, self.d)
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        tau_pow(self.tau_exponent as i64, self.d)
    }
}

/// `exp(2πi·num/den)` with the fraction reduced before the single exponential.
pub(crate) fn root_of_unity<T: Real>(num: i64, den: u64) -> Complex<T> {
    let num = num.rem_euclid(den as i64) as u64;
    if num == 0 {
        return Complex::new(T::one(), T::zero());
    }
    if 4 * num == den {
        return Complex::new(T::zero(), T::one());
    }
    if 2 * num == den {
        return Complex::new(-T::one(), T::zero());
    }
    if 4 * num == 3 * den {
        return Complex::new(T::zero(), -T::one());
    }
    let angle = T::TAU() * T::from_u64(num).unwrap() / T::from_u64(den).unwrap();
    Complex::new(angle.cos(), angle.sin())
}

/// `τ^k = exp(2πi·(d²+1)k / 2d)`.
pub fn tau_pow<T: Real>(k: i64, d: u32) -> Complex<T> {
    let two_d = 2 * d as i64;
    let e = ((d as i64 * d as i64 + 1) % two_d) * k.rem_euclid(two_d);
    root_of_unity(e, two_d as u64)
}

pub fn omega_pow<T: Real>(k: i64, d: u32) -> Complex<T> {
    root_of_unity(k, d as u64)
}

/// Dense matrix of `τ^r ⊗_q X^{x_q} Z^{z_q}`, qudit 0 most significant.
///
/// Each column has a single nonzero entry whose τ-exponent is assembled in
/// integers before the one exponential is taken.
pub fn dense_row<T: Real>(g: &PauliRow, d: u32) -> Result<Operator<T>> {
    let n = g.n();
    let dim = check_cutoff(d, n, DEFAULT_CUTOFF)?;
    let mut op = Operator::zeros(dim);
    let two_d = 2 * d as u64;
    let mut digits = vec![0u32; n];
    for col in 0..dim {
        let mut rem = col;
        for q in (0..n).rev() {
            digits[q] = (rem % d as usize) as u32;
            rem /= d as usize;
        }
        let mut e = g.r as u64;
        let mut row = 0usize;
        for q in 0..n {
            e += 2 * (g.z[q] as u64 * digits[q] as u64 % d as u64);
            row = row * d as usize + ((digits[q] + g.x[q]) % d) as usize;
        }
        op[(row, col)] = tau_pow((e % two_d) as i64, d);
    }
    Ok(op)
}

/// `W(a,b) = τ^{-ab} X^a Z^b` on a single qudit.
pub fn weyl_matrix<T: Real>(a: u32, b: u32, d: u32) -> Operator<T> {
    let r = Phase::tau(-(a as i64) * b as i64, d).tau_exponent;
    dense_row(&PauliRow::single(1, 0, a % d, b % d, r), d).expect("single qudit fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn row(x: &[u32], z: &[u32], r: u32) -> PauliRow {
        PauliRow::new(x.to_vec(), z.to_vec(), r)
    }

    fn random_row(rng: &mut impl Rng, n: usize, d: u32) -> PauliRow {
        PauliRow {
            x: (0..n).map(|_| rng.gen_range(0..d)).collect(),
            z: (0..n).map(|_| rng.gen_range(0..d)).collect(),
            r: rng.gen_range(0..2 * d),
        }
    }

    #[test]
    fn compose_reproduces_row_elimination() {
        let s0 = row(&[0, 0, 0], &[0, 0, 1], 4);
        let mut s2 = row(&[0, 0, 0], &[2, 0, 1], 0);
        s2 = compose(&s2, &s0, 3).unwrap();
        s2 = compose(&s2, &s0, 3).unwrap();
        assert_eq!(s2, row(&[0, 0, 0], &[2, 0, 0], 2));

        let d1 = row(&[0, 1], &[1, 0], 0);
        let d2 = row(&[2, 2], &[0, 2], 4);
        assert_eq!(compose(&d1, &d2, 3).unwrap(), row(&[2, 0], &[1, 2], 2));
    }

    #[test]
    fn compose_identity_and_mismatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_row(&mut rng, 3, 5);
        assert_eq!(compose(&PauliRow::identity(3), &g, 5).unwrap(), g);
        assert_eq!(compose(&g, &PauliRow::identity(3), 5).unwrap(), g);
        assert!(matches!(compose(&g, &PauliRow::identity(2), 5), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn x_then_z_versus_z_then_x() {
        let x = row(&[1], &[0], 0);
        let z = row(&[0], &[1], 0);
        let xz = compose(&x, &z, 3).unwrap();
        let zx = compose(&z, &x, 3).unwrap();
        assert_eq!((xz.x.clone(), xz.z.clone()), (zx.x.clone(), zx.z.clone()));
        assert_eq!((zx.r + 6 - xz.r) % 6, 2);
        let lhs = dense_row::<f64>(&z, 3).unwrap().mul(&dense_row(&x, 3).unwrap());
        assert!(lhs.approx_eq(&dense_row(&zx, 3).unwrap(), 1e-12));
    }

    #[test]
    fn row_power_examples() {
        let g = row(&[2, 2, 2], &[0, 0, 0], 0);
        assert_eq!(row_power(&g, 2, 3), row(&[1, 1, 1], &[0, 0, 0], 0));
        assert!(row_power(&g, 0, 3).is_identity());

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let mut g = random_row(&mut rng, 1, 5);
            g.r &= !1;
            let p = row_power(&g, 5, 5);
            assert!(p.is_phase_free_identity());
            assert_eq!(p.r % 10, 0);
            let mut dense = Operator::<f64>::identity(5);
            let m = dense_row::<f64>(&g, 5).unwrap();
            for _ in 0..5 {
                dense = dense.mul(&m);
            }
            assert!(dense.approx_eq(&Operator::identity(5), 1e-12));
        }
    }

    #[test]
    fn row_power_matches_repeated_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [2u32, 3, 4, 5, 6] {
            for _ in 0..40 {
                let g = random_row(&mut rng, 3, d);
                let mut acc = PauliRow::identity(3);
                for k in 0..(2 * d + 2) {
                    assert_eq!(row_power(&g, k, d), acc, "d={d} k={k}");
                    acc.mul_assign(&g, d);
                }
                assert!(row_power(&g, d, d).is_phase_free_identity());
            }
        }
    }

    #[test]
    fn symplectic_examples() {
        let stabs = [row(&[2, 2, 2], &[0, 0, 0], 0), row(&[0, 0, 0], &[2, 1, 0], 0), row(&[0, 0, 0], &[0, 2, 1], 0)];
        for a in &stabs {
            for b in &stabs {
                assert_eq!(symplectic_product(a, b, 3).unwrap(), 0);
            }
        }
        let x = row(&[1], &[0], 0);
        let z = row(&[0], &[1], 0);
        assert_eq!(symplectic_product(&x, &z, 3).unwrap(), 1);
        assert_eq!(symplectic_product(&z, &x, 3).unwrap(), 2);
    }

    #[test]
    fn symplectic_antisymmetric_and_bilinear() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in [2u32, 3, 4, 5] {
            for _ in 0..100 {
                let a = random_row(&mut rng, 3, d);
                let b = random_row(&mut rng, 3, d);
                let c = random_row(&mut rng, 3, d);
                let ab = symplectic(&a, &b, d);
                assert_eq!((ab + symplectic(&b, &a, d)) % d, 0);
                assert_eq!(symplectic(&a, &a, d), 0);
                let ac = compose(&a, &c, d).unwrap();
                assert_eq!(symplectic(&ac, &b, d), (ab + symplectic(&c, &b, d)) % d);
                let bc = compose(&b, &c, d).unwrap();
                assert_eq!(symplectic(&a, &bc, d), (ab + symplectic(&a, &c, d)) % d);
            }
        }
    }

    #[test]
    fn composition_law_matches_dense_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..500 {
            let d = [2u32, 3, 4, 5][i % 4];
            let n = 1 + i % 2;
            let a = random_row(&mut rng, n, d);
            let b = random_row(&mut rng, n, d);
            let da = dense_row::<f64>(&a, d).unwrap();
            let db = dense_row::<f64>(&b, d).unwrap();
            let prod = dense_row::<f64>(&compose(&a, &b, d).unwrap(), d).unwrap();
            assert!(da.mul(&db).approx_eq(&prod, 1e-12));
            // AB = ω^{−⟨⟨a,b⟩⟩} BA
            let w = omega_pow::<f64>(-(symplectic(&a, &b, d) as i64), d);
            assert!(da.mul(&db).approx_eq(&db.mul(&da).scale(w), 1e-12));
        }
    }

    #[test]
    fn weyl_table_entries() {
        let w = weyl_matrix::<f64>(1, 1, 3);
        let omega = omega_pow::<f64>(1, 3);
        assert!((w[(1, 0)] - omega).norm() < 1e-12);
        assert!((w[(2, 1)] - omega * omega).norm() < 1e-12);
        assert!((w[(0, 2)] - Complex::new(1.0, 0.0)).norm() < 1e-12);
        assert!(weyl_matrix::<f64>(0, 0, 4).approx_eq(&Operator::identity(4), 1e-15));
    }

    #[test]
    fn qubit_tau_is_i() {
        let t = tau_pow::<f64>(1, 2);
        assert!((t - Complex::new(0.0, 1.0)).norm() < 1e-15);
        let i = Complex::new(0.0, 1.0);
        let zero = Complex::new(0.0, 0.0);
        let mut y = Operator::<f64>::zeros(2);
        y[(0, 1)] = -i;
        y[(1, 0)] = i;
        // τ·XZ is the textbook Y; the symmetric W(1,1) = τ^{-1}XZ is its negative
        assert!(dense_row::<f64>(&row(&[1], &[1], 1), 2).unwrap().approx_eq(&y, 1e-15));
        assert!(weyl_matrix::<f64>(1, 1, 2).approx_eq(&y.scale(Complex::new(-1.0, 0.0)), 1e-15));
        assert_eq!(y[(0, 0)], zero);
    }

    #[test]
    fn phase_helpers() {
        assert_eq!(Phase::omega(1, 3), Phase::tau(2, 3));
        assert_eq!(Phase::tau(-1, 3).tau_exponent, 5);
        let p = Phase::tau(3, 4).mul(Phase::tau(7, 4));
        assert_eq!(p.tau_exponent, 2);
        let c: Complex<f64> = Phase::omega(1, 4).to_complex();
        assert!((c - Complex::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn weyl_shift_formula() {
        assert_eq!(weyl_phase_shift(2, 0, 0, 1, 3), 4);
        let mut g = row(&[2, 2, 2], &[0, 0, 0], 0);
        g.conjugate_by_weyl(0, 0, 1, 3);
        assert_eq!(g.r, 4);
        assert_eq!((g.x.clone(), g.z.clone()), (vec![2, 2, 2], vec![0, 0, 0]));
    }

    #[test]
    fn weyl_shift_is_dense_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for d in [2u32, 3, 4, 5] {
            for _ in 0..30 {
                let g = random_row(&mut rng, 2, d);
                let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
                let w = weyl_matrix::<f64>(a, b, d).kron(&Operator::identity(d as usize));
                let conj = w.mul(&dense_row(&g, d).unwrap()).mul(&w.adjoint());
                let mut h = g.clone();
                h.conjugate_by_weyl(0, a, b, d);
                assert!(conj.approx_eq(&dense_row(&h, d).unwrap(), 1e-12));
            }
        }
    }

    #[test]
    fn rendering() {
        let g = row(&[0, 1, 1], &[2, 0, 1], 4);
        assert_eq!(g.to_string(), "  0  1  1 |  2  0  1 | 4");
        assert_eq!(g.operator_string(), "τ^4 Z^2 ⊗ X^1 ⊗ X^1Z^1");
        assert_eq!(PauliRow::identity(2).operator_string(), "I ⊗ I");
    }
}
