//! Shadow-sector land accounting: the land-balance residual that measures
//! informally used land, and the shadow share of agricultural output.

use serde::Serialize;

use crate::error::ModelError;
use crate::money::{is_non_negative, is_positive};

/// National land-balance inputs, million hectares.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandBalanceInputs {
    pub total_ag_land: f64,
    pub enterprise_cultivated: f64,
    pub household_cultivated: f64,
    /// Occupied territories excluded from the balance.
    pub occupied_adjustment: f64,
    /// Land declared under the 4th-group single tax.
    pub declared_ep4: f64,
    /// Land assumed used by 2nd-group entrepreneurs, share of `share_base`.
    pub ep2_share: f64,
    /// Own-use household plots (tax-exempt up to 2 ha).
    pub osg_own_use: f64,
    /// Registered but uncultivated land, share of `share_base`.
    pub uncultivated_share: f64,
    /// Base the two share assumptions apply to, million hectares.
    pub share_base: f64,
}

impl LandBalanceInputs {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [
            ("total_ag_land", self.total_ag_land),
            ("enterprise_cultivated", self.enterprise_cultivated),
            ("household_cultivated", self.household_cultivated),
            ("occupied_adjustment", self.occupied_adjustment),
            ("declared_ep4", self.declared_ep4),
            ("osg_own_use", self.osg_own_use),
            ("share_base", self.share_base),
        ] {
            if !is_non_negative(v) {
                return Err(ModelError::invalid(
                    "land balance",
                    format!("{name} must be non-negative"),
                ));
            }
        }
        for (name, s) in [
            ("ep2_share", self.ep2_share),
            ("uncultivated_share", self.uncultivated_share),
        ] {
            if !(0.0..=1.0).contains(&s) {
                return Err(ModelError::invalid(
                    "land balance",
                    format!("{name} must lie in [0, 1]"),
                ));
            }
        }
        Ok(())
    }
}

/// Every term of the balance, so reports can print the full audit trail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandBalanceResult {
    pub cultivated_total: f64,
    pub declared_ep4: f64,
    pub ep2_assumed: f64,
    pub osg_own_use: f64,
    pub uncultivated_assumed: f64,
    pub explained: f64,
    pub informal: f64,
    /// Informal land over (total - occupied).
    pub informal_share: f64,
    /// Inputs explain more land than is cultivated.
    pub over_explained: bool,
}

/// Cultivated land not accounted for by any declared or assumed use.
pub fn land_balance(inputs: &LandBalanceInputs) -> Result<LandBalanceResult, ModelError> {
    inputs.validate()?;
    let cultivated_total =
        inputs.enterprise_cultivated + inputs.household_cultivated - inputs.occupied_adjustment;
    let ep2_assumed = inputs.ep2_share * inputs.share_base;
    let uncultivated_assumed = inputs.uncultivated_share * inputs.share_base;
    let explained = inputs.declared_ep4 + ep2_assumed + inputs.osg_own_use + uncultivated_assumed;
    let informal = cultivated_total - explained;
    let denominator = inputs.total_ag_land - inputs.occupied_adjustment;
    Ok(LandBalanceResult {
        cultivated_total,
        declared_ep4: inputs.declared_ep4,
        ep2_assumed,
        osg_own_use: inputs.osg_own_use,
        uncultivated_assumed,
        explained,
        informal,
        informal_share: if denominator > 0.0 { informal / denominator } else { f64::NAN },
        over_explained: informal < 0.0,
    })
}

/// Which land fraction scales the household output share. Published
/// estimates use both readings, so the mode is explicit rather than implied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShadowOutputMode {
    /// Flat one-third shortcut.
    FlatThird,
    /// Informal fraction of household land: (household - own-use) / household.
    Residual,
}

impl ShadowOutputMode {
    pub fn label(self) -> &'static str {
        match self {
            ShadowOutputMode::FlatThird => "flat_third",
            ShadowOutputMode::Residual => "residual",
        }
    }
}

/// Shadow share of agricultural output implied by the household output share.
pub fn shadow_output_share(
    household_output_share: f64,
    osg_land: f64,
    household_land: f64,
    mode: ShadowOutputMode,
) -> Result<f64, ModelError> {
    if !(0.0..=1.0).contains(&household_output_share) {
        return Err(ModelError::invalid(
            "shadow output",
            "household_output_share must lie in [0, 1]",
        ));
    }
    if !is_positive(osg_land) || osg_land > household_land {
        return Err(ModelError::OsgExceedsHousehold {
            osg: osg_land,
            household: household_land,
        });
    }
    Ok(match mode {
        ShadowOutputMode::FlatThird => household_output_share / 3.0,
        ShadowOutputMode::Residual => {
            household_output_share * (household_land - osg_land) / household_land
        }
    })
}
