//! Survival-probability estimates for gate-plus-noise circuits.
//!
//! Both estimators draw one `(α, β)` per site in circuit order from the shot's
//! stream, so for a given seed they see exactly the same errors.

use crate::circuit::Circuit;
use crate::error::Result;
use crate::noise::frames::propagate;
use crate::noise::{unmeasured, PauliFrame, PushPlan};
use crate::rng::par_shots;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub shots: usize,
}

impl FidelityEstimate {
    pub fn from_successes(successes: usize, shots: usize) -> Self {
        let f = successes as f64 / shots.max(1) as f64;
        FidelityEstimate { estimate: f, stderr: (f * (1.0 - f) / shots.max(1) as f64).sqrt(), shots }
    }
}

/// Success iff the pushed phase shift vanishes on every stabilizer row.
pub fn fidelity_push(c: &Circuit, shots: usize, seed: u64) -> Result<FidelityEstimate> {
    let plan = PushPlan::build(c)?;
    if plan.sites().is_empty() {
        return Ok(FidelityEstimate::from_successes(shots, shots));
    }
    let hits = par_shots(shots, seed, |_, rng| plan.stabilizers_unchanged(&plan.delta_tau(&plan.draw(rng))));
    Ok(FidelityEstimate::from_successes(hits.into_iter().filter(|&ok| ok).count(), shots))
}

/// Success iff the frame started at the identity is the identity at the end.
pub fn fidelity_frames(c: &Circuit, shots: usize, seed: u64) -> Result<FidelityEstimate> {
    let body = unmeasured(c)?;
    let hits = par_shots(shots, seed, |_, rng| {
        let mut f = PauliFrame::identity(c.n());
        propagate(c, body, &mut f, rng);
        f.is_trivial()
    });
    Ok(FidelityEstimate::from_successes(hits.into_iter().filter(|&ok| ok).count(), shots))
}
