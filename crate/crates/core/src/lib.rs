//! Charging dynamics of two- and three-cell XXZ spin-chain quantum batteries.
//!
//! The numeric layers ([`linalg`], [`model`], [`dynamics`], [`metrics`]) are
//! generic over the [`Real`] scalar (`f32` or `f64`). The [`scenario`]
//! runner and the `qubattery` binary work in `f64`.

pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod model;
pub mod scalar;
pub mod scenario;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type ComplexMatrix64 = linalg::ComplexMatrix<f64>;
pub type ComplexMatrix32 = linalg::ComplexMatrix<f32>;
pub type EigenDecomposition64 = linalg::EigenDecomposition<f64>;
pub type BatteryParams64 = model::BatteryParams<f64>;
pub type BatteryParams32 = model::BatteryParams<f32>;
pub type BatteryState64 = model::BatteryState<f64>;
pub type BatteryState32 = model::BatteryState<f32>;
pub type TwoCellSpectrum64 = dynamics::TwoCellSpectrum<f64>;
pub type StateCoefficients64 = dynamics::StateCoefficients<f64>;
pub type ChargeTrace64 = metrics::ChargeTrace<f64>;
pub type AveragedSummary64 = metrics::AveragedSummary<f64>;
