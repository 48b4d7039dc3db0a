//! NEGF transport of a 1D device solved with a variational quantum linear
//! solver on an exact statevector simulator, checked against a dense
//! classical oracle.
//!
//! Numeric code is generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases below fix the common `f64` instantiations.

pub mod device;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod pauli;
pub mod qsim;
pub mod scalar;
pub mod vqls;

pub use error::{Error, Result};

pub type QState64 = qsim::QState<f64>;
pub type QState32 = qsim::QState<f32>;
pub type Circuit64 = qsim::Circuit<f64>;
pub type Circuit32 = qsim::Circuit<f32>;
pub type OperatorSum64 = pauli::OperatorSum<f64>;
pub type OperatorSum32 = pauli::OperatorSum<f32>;
pub type ComplexMatrix64 = linalg::ComplexMatrix<f64>;
pub type DeviceSpec64 = device::DeviceSpec<f64>;
pub type DeviceSpec32 = device::DeviceSpec<f32>;
pub type EnergyGrid64 = device::EnergyGrid<f64>;
pub type AssembledSystem64 = device::AssembledSystem<f64>;
pub type TransportResult64 = oracle::TransportResult<f64>;
pub type VqlsProblem64 = vqls::VqlsProblem<f64>;
pub type VqlsConfig64 = vqls::VqlsConfig<f64>;
pub type RunResult64 = vqls::RunResult<f64>;
pub type RestartStats64 = vqls::RestartStats<f64>;
pub type Complex64 = scalar::C<f64>;
