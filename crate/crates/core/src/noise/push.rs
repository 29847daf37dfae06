use rand::Rng;

use crate::circuit::{Circuit, ModelId, Op};
use crate::composite::SnfSampler;
use crate::error::Result;
use crate::modular::is_prime;
use crate::noise::{terminal, unmeasured, NoiseModel};
use crate::rng::{par_shots, ShotRng};
use crate::tableau::Tableau;

/// One noise site: the qudit's X and Z columns (all `2n` rows) just before it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub model: ModelId,
    pub qudit: usize,
    pub x: Vec<u32>,
    pub z: Vec<u32>,
}

/// Everything a shot needs after one noiseless simulation.
#[derive(Clone, Debug)]
pub struct PushPlan {
    d: u32,
    models: Vec<NoiseModel>,
    sites: Vec<Site>,
    clean: Tableau,
    measured: Vec<usize>,
    snf: Option<SnfSampler>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushSamples {
    pub delta_tau: Vec<Vec<u32>>,
    pub outcomes: Vec<Vec<u32>>,
}

impl PushPlan {
    /// Simulates `c` once without noise. A trailing measurement block is
    /// remembered for sampling; a circuit without measurements is accepted
    /// (fidelity estimation only needs `Δτ`).
    pub fn build(c: &Circuit) -> Result<Self> {
        let (body, measured) = match terminal(c) {
            Ok(t) => (t.body, t.measured),
            Err(_) => (unmeasured(c)?, Vec::new()),
        };
        let mut t = Tableau::new(c.n(), c.d(), true)?;
        let mut sites = Vec::with_capacity(c.noise_count());
        for op in body {
            match op {
                Op::Gate { gate, qudits } => t.apply_gate(*gate, qudits)?,
                Op::Noise { model, qudit } => {
                    let (x, z) = t.column(*qudit);
                    sites.push(Site { model: *model, qudit: *qudit, x, z });
                }
                Op::Measure(_) => unreachable!(),
            }
        }
        let snf = if is_prime(c.d() as u64) || measured.is_empty() { None } else { Some(SnfSampler::new(&t)?) };
        Ok(PushPlan { d: c.d(), models: c.models().to_vec(), sites, clean: t, measured, snf })
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn clean(&self) -> &Tableau {
        &self.clean
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    /// Draws one `(α, β)` per site, in circuit order.
    pub fn draw(&self, rng: &mut impl Rng) -> Vec<(u32, u32)> {
        self.sites.iter().map(|s| self.models[s.model].sample(rng)).collect()
    }

    /// `Δτ = Σ_k 2(β_k x_k − α_k z_k) mod 2d` over all rows.
    pub fn delta_tau(&self, draws: &[(u32, u32)]) -> Vec<u32> {
        let two_d = 2 * self.d as u64;
        let rows = self.clean.rows().len();
        let mut acc = vec![0u64; rows];
        for (site, &(alpha, beta)) in self.sites.iter().zip(draws) {
            if (alpha, beta) == (0, 0) {
                continue;
            }
            let (alpha, beta) = (2 * alpha as u64, 2 * beta as u64);
            for (i, v) in acc.iter_mut().enumerate() {
                let plus = beta * site.x[i] as u64;
                let minus = alpha * site.z[i] as u64 % two_d;
                *v = (*v + plus + two_d - minus) % two_d;
            }
        }
        acc.into_iter().map(|v| v as u32).collect()
    }

    /// True when `Δτ` vanishes on every stabilizer row.
    pub fn stabilizers_unchanged(&self, delta: &[u32]) -> bool {
        delta[self.clean.n()..].iter().all(|&v| v == 0)
    }

    /// The final noisy tableau for one set of draws.
    pub fn noisy_tableau(&self, draws: &[(u32, u32)]) -> Tableau {
        let mut t = self.clean.clone();
        t.shift_phases(&self.delta_tau(draws));
        t
    }

    fn shot(&self, rng: &mut ShotRng) -> Result<(Vec<u32>, Vec<u32>)> {
        let delta = self.delta_tau(&self.draw(rng));
        let outcome = match &self.snf {
            None => {
                let mut t = self.clean.clone();
                t.shift_phases(&delta);
                t.measure_subset(&self.measured, rng)?
            }
            Some(snf) => {
                let all = snf.sample_shifted(&delta[self.clean.n()..], rng)?;
                self.measured.iter().map(|&q| all[q]).collect()
            }
        };
        Ok((delta, outcome))
    }

    /// Per-shot `Δτ` only, without measuring.
    pub fn delta_tau_shots(&self, shots: usize, seed: u64) -> Vec<Vec<u32>> {
        par_shots(shots, seed, |_, rng| self.delta_tau(&self.draw(rng)))
    }

    /// Per-shot `Δτ` vectors and outcomes.
    pub fn sample(&self, shots: usize, seed: u64) -> Result<PushSamples> {
        if self.measured.is_empty() {
            return Err(crate::error::Error::NoMeasurement);
        }
        let rows: Vec<(Vec<u32>, Vec<u32>)> =
            par_shots(shots, seed, |_, rng| self.shot(rng)).into_iter().collect::<Result<_>>()?;
        let (delta_tau, outcomes) = rows.into_iter().unzip();
        Ok(PushSamples { delta_tau, outcomes })
    }
}
