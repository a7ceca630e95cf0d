use thiserror::Error;

/// Errors raised by the analysis modules (as opposed to scenario-file
/// diagnostics, which carry line numbers and live in [`crate::scenario`]).
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("not a decimal number: `{0}`")]
    BadNumber(String),
    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },
    #[error("no MTL bill selected")]
    NoBill,
    #[error("demand elasticity must be negative, got {0}")]
    NonNegativeElasticity(f64),
    #[error("combined demand slope b + d = {0} must be negative")]
    BadSlopes(f64),
    #[error("elasticity grid is empty")]
    EmptyGrid,
    #[error("cohort annual income must be positive")]
    ZeroIncome,
    #[error("own-use land {osg} mln ha exceeds household land {household} mln ha")]
    OsgExceedsHousehold { osg: f64, household: f64 },
}

impl ModelError {
    pub fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        ModelError::Invalid {
            what,
            why: why.into(),
        }
    }
}
