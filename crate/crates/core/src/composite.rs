//! Measurement sampling for arbitrary (including composite) `d`.
//!
//! A product of stabilizers `S(u) = Π s_j^{u_j}` is diagonal exactly when
//! `X_sᵀ u ≡ 0 (mod d)`. Each kernel generator `u` yields one diagonal
//! stabilizer `τ^r Z^b`, and every outcome `m` must satisfy `b·m ≡ −r/2`.
//! Stacking these gives `B m ≡ c`, which the Smith form `D = U B V` splits
//! into independent congruences `D_ii y_i ≡ (U c)_i` with `m = V y`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};
use crate::modular::{kernel_mod_d, smith_normal_form, solve_congruence, CongruenceSolutions};
use crate::rng::par_shots;
use crate::tableau::Tableau;
use crate::weyl::PauliRow;
use crate::IntMatrix;

#[derive(Clone, Debug)]
pub struct SnfSampler {
    d: u32,
    n: usize,
    kernel: Vec<Vec<u32>>,
    b: Vec<Vec<u32>>,
    c: Vec<u32>,
    u: Vec<Vec<u32>>,
    v: Vec<Vec<u32>>,
    diag: Vec<u32>,
    solutions: Vec<CongruenceSolutions>,
}

impl SnfSampler {
    pub fn new(t: &Tableau) -> Result<Self> {
        let (n, d) = (t.n(), t.d());
        let stabs = t.stabilizers();
        let xs_t: Vec<Vec<u32>> = (0..n).map(|q| stabs.iter().map(|s| s.x[q]).collect()).collect();
        let kernel = kernel_mod_d(&IntMatrix::from_residues(&xs_t, stabs.len()), d);
        let mut b = Vec::with_capacity(kernel.len());
        let mut c = Vec::with_capacity(kernel.len());
        for u in &kernel {
            let mut g = PauliRow::identity(n);
            for (s, &e) in stabs.iter().zip(u) {
                g.mul_pow_assign(s, e, d);
            }
            if !g.is_diagonal() {
                return Err(Error::InconsistentSystem("kernel product has an X component".into()));
            }
            if g.r % 2 == 1 {
                return Err(Error::InconsistentSystem(format!("odd phase exponent {} on a diagonal stabilizer", g.r)));
            }
            b.push(g.z);
            c.push((d - (g.r / 2) % d) % d);
        }
        let snf = smith_normal_form(&IntMatrix::from_residues(&b, n));
        let diag: Vec<u32> = snf.diagonal().iter().map(|x| residue(x, d)).collect();
        let mut sampler = SnfSampler {
            d,
            n,
            kernel,
            b,
            c: Vec::new(),
            u: snf.u.to_residues(d),
            v: snf.v.to_residues(d),
            diag,
            solutions: Vec::new(),
        };
        sampler.solutions = sampler.solve(&c)?;
        sampler.c = c;
        Ok(sampler)
    }

    fn solve(&self, c: &[u32]) -> Result<Vec<CongruenceSolutions>> {
        let d = self.d as u64;
        let uc: Vec<u32> = self
            .u
            .iter()
            .map(|row| (row.iter().zip(c).map(|(&a, &b)| a as u64 * b as u64 % d).sum::<u64>() % d) as u32)
            .collect();
        for (i, &rhs) in uc.iter().enumerate().skip(self.diag.len()) {
            if rhs != 0 {
                return Err(Error::InconsistentSystem(format!("constraint {i} reduces to 0 ≡ {rhs}")));
            }
        }
        (0..self.n)
            .map(|i| {
                let (s, rhs) = match self.diag.get(i) {
                    Some(&s) => (s, uc[i]),
                    None => (0, 0),
                };
                solve_congruence(s as i64, rhs as i64, self.d).map_err(|e| Error::InconsistentSystem(e.to_string()))
            })
            .collect()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Constraint system `B m ≡ c (mod d)`.
    pub fn constraints(&self) -> (&[Vec<u32>], &[u32]) {
        (&self.b, &self.c)
    }

    pub fn kernel(&self) -> &[Vec<u32>] {
        &self.kernel
    }

    pub fn satisfies(&self, m: &[u32]) -> bool {
        let d = self.d as u64;
        self.b
            .iter()
            .zip(&self.c)
            .all(|(row, &c)| row.iter().zip(m).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % d == c as u64)
    }

    fn map_back(&self, y: &[u32]) -> Vec<u32> {
        let d = self.d as u64;
        self.v
            .iter()
            .map(|row| (row.iter().zip(y).map(|(&a, &b)| a as u64 * b as u64 % d).sum::<u64>() % d) as u32)
            .collect()
    }

    fn draw(&self, sols: &[CongruenceSolutions], rng: &mut impl Rng) -> Vec<u32> {
        let y: Vec<u32> = sols.iter().map(|s| s.nth(rng.gen_range(0..s.count), self.d)).collect();
        self.map_back(&y)
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Vec<u32> {
        let m = self.draw(&self.solutions, rng);
        debug_assert!(self.satisfies(&m));
        m
    }

    pub fn sample_shots(&self, shots: usize, seed: u64) -> Vec<Vec<u32>> {
        par_shots(shots, seed, |_, rng| self.sample(rng))
    }

    /// Samples the state whose stabilizer phases are shifted by `stab_shift`
    /// (one even τ-exponent per stabilizer row). Only the right-hand side
    /// changes, so the decomposition is reused.
    pub fn sample_shifted(&self, stab_shift: &[u32], rng: &mut impl Rng) -> Result<Vec<u32>> {
        let d = self.d as u64;
        let c: Vec<u32> = self
            .kernel
            .iter()
            .zip(&self.c)
            .map(|(u, &c)| {
                let half: u64 = u.iter().zip(stab_shift).map(|(&a, &s)| a as u64 * (s as u64 / 2) % d).sum();
                ((c as u64 + d - half % d) % d) as u32
            })
            .collect();
        let sols = self.solve(&c)?;
        Ok(self.draw(&sols, rng))
    }

    /// Every outcome the sampler can emit; the distribution is uniform on it.
    pub fn support(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for s in &self.solutions {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..s.count).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(s.nth(k, self.d));
                        p
                    })
                })
                .collect();
        }
        let mut support: Vec<Vec<u32>> = out.iter().map(|y| self.map_back(y)).collect();
        support.sort();
        support
    }
}

fn residue(x: &BigInt, d: u32) -> u32 {
    let m = BigInt::from(d);
    (((x % &m) + &m) % &m).to_u32().expect("residue fits")
}
