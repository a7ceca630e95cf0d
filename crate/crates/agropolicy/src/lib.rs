//! Policy laboratory for agricultural taxation: per-hectare burdens under
//! the five practical tax regimes, minimum-tax-liability (MTL) bill
//! variants, a calibrated partial-equilibrium land market with welfare
//! decomposition, distributional incidence across income cohorts,
//! informal-land accounting, and farm-size segmentation — all driven by a
//! flat text scenario file and rendered as deterministic reports.

pub mod equilibrium;
pub mod error;
pub mod fiscal;
pub mod incidence;
pub mod land_accounts;
pub mod money;
pub mod report;
pub mod scenario;
pub mod segmentation;

pub use error::ModelError;
pub use scenario::{Scenario, ScenarioError};
