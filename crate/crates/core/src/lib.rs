//! Stabilizer simulation of noisy Clifford circuits on qudits of any
//! dimension `d ≥ 2`.
//!
//! The tableau engine ([`Tableau`]) tracks destabilizer and stabilizer rows
//! `τ^r X^x Z^z`. Measurement samples with the CHP-style update for prime `d`
//! and with a Smith-normal-form solver ([`SnfSampler`]) for composite `d`.
//! Weyl noise is simulated directly, with Pauli frames, or by pushing every
//! error into a final phase shift ([`noise`]). The [`dense`] module is a
//! brute-force statevector/density-matrix reference used as a test oracle.

pub mod circuit;
pub mod composite;
pub mod dense;
pub mod error;
pub mod gate;
pub mod modular;
pub mod noise;
pub mod rng;
pub mod scalar;
pub mod tableau;
pub mod weyl;

pub use circuit::{Circuit, ModelId, Op};
pub use composite::SnfSampler;
pub use error::{Error, Result};
pub use gate::{Gate, GateKind};
pub use noise::{NoiseModel, Strategy};
pub use tableau::{AffineSampler, Measurement, MeasurementKind, Tableau};
pub use weyl::{PauliRow, Phase};

pub type IntMatrix = modular::IntMatrixOf<num_bigint::BigInt>;
pub type DenseState = dense::StateVector<f64>;
pub type DenseState32 = dense::StateVector<f32>;
pub type DensityMatrix = dense::DensityOperator<f64>;
