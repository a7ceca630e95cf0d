//! Partial-equilibrium land-lease market with two producer groups:
//! commercial farms (CF, registered legal entities) and individual family
//! farms (IF, unregistered households). A per-hectare MTL wedge shifts the
//! IF demand schedule; welfare changes are exact trapezoids, which is the
//! closed form for linear demand.

use serde::Serialize;

use crate::error::ModelError;
use crate::fiscal::{self, LandClass, MtlPolicy, PayerKind, TaxParameters};
use crate::money::{is_positive, to_f64};

/// Linear land demand `D(r) = intercept + slope * r`, slope < 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearDemand {
    pub intercept: f64,
    pub slope: f64,
}

impl LinearDemand {
    pub fn quantity(&self, rent: f64) -> f64 {
        self.intercept + self.slope * rent
    }
}

/// Observed market state the demands are fitted to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarketCalibration {
    /// Total leased/cultivated land, hectares.
    pub total_land: f64,
    /// Land cultivated by commercial farms, hectares.
    pub enterprise_land: f64,
    /// Observed rent paid by commercial farms, UAH/ha/yr.
    pub enterprise_rent: f64,
    /// Observed rent faced by family farms, UAH/ha/yr.
    pub household_rent: f64,
    pub elasticity_cf: f64,
    pub elasticity_if: f64,
}

impl MarketCalibration {
    pub fn household_land(&self) -> f64 {
        self.total_land - self.enterprise_land
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(is_positive(self.enterprise_land) && self.enterprise_land < self.total_land) {
            return Err(ModelError::invalid(
                "market calibration",
                "enterprise land must lie strictly between 0 and total land",
            ));
        }
        if !is_positive(self.enterprise_rent) || !is_positive(self.household_rent) {
            return Err(ModelError::invalid("market calibration", "rents must be positive"));
        }
        if self.elasticity_cf >= 0.0 {
            return Err(ModelError::NonNegativeElasticity(self.elasticity_cf));
        }
        if self.elasticity_if >= 0.0 {
            return Err(ModelError::NonNegativeElasticity(self.elasticity_if));
        }
        Ok(())
    }
}

/// Fit a linear demand through the observed (land, rent) point with the
/// given point elasticity: intercept = L(1 - e), slope = e L / r.
pub fn calibrate_demand(
    observed_land: f64,
    observed_rent: f64,
    elasticity: f64,
) -> Result<LinearDemand, ModelError> {
    if elasticity >= 0.0 {
        return Err(ModelError::NonNegativeElasticity(elasticity));
    }
    if !is_positive(observed_land) || !is_positive(observed_rent) {
        return Err(ModelError::invalid(
            "demand calibration",
            "observed land and rent must be positive",
        ));
    }
    Ok(LinearDemand {
        intercept: observed_land * (1.0 - elasticity),
        slope: elasticity * observed_land / observed_rent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equilibrium {
    /// Market rent received by landowners, UAH/ha/yr.
    pub rent: f64,
    pub land_cf: f64,
    pub land_if: f64,
    /// Per-hectare wedge charged on IF land.
    pub wedge: f64,
    /// IF demand was driven to zero; all land shifted to CF.
    pub corner: bool,
    /// Interior rent came out negative; inputs are outside the model's
    /// meaningful range.
    pub degenerate: bool,
}

/// Clear the market `D_cf(r) + D_if(r + t) = L_T` for the landowner rent r.
pub fn solve_equilibrium(
    d_cf: LinearDemand,
    d_if: LinearDemand,
    total_land: f64,
    wedge: f64,
) -> Result<Equilibrium, ModelError> {
    let combined_slope = d_cf.slope + d_if.slope;
    if combined_slope >= 0.0 {
        return Err(ModelError::BadSlopes(combined_slope));
    }
    if wedge < 0.0 {
        return Err(ModelError::invalid("wedge", "must be non-negative"));
    }
    let rent =
        (total_land - d_cf.intercept - d_if.intercept - d_if.slope * wedge) / combined_slope;
    let land_if = d_if.quantity(rent + wedge);
    if land_if < 0.0 {
        // IF demand exhausted: all land to CF at the rent clearing CF alone
        let corner_rent = (total_land - d_cf.intercept) / d_cf.slope;
        return Ok(Equilibrium {
            rent: corner_rent,
            land_cf: total_land,
            land_if: 0.0,
            wedge,
            corner: true,
            degenerate: corner_rent < 0.0,
        });
    }
    let land_cf = total_land - land_if;
    Ok(Equilibrium {
        rent,
        land_cf,
        land_if,
        wedge,
        corner: false,
        degenerate: rent < 0.0,
    })
}

/// Stakeholder surplus changes between a baseline and a taxed equilibrium,
/// total UAH per year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WelfareOutcome {
    /// Change in the landowner rent, UAH/ha.
    pub delta_rent: f64,
    /// Land moving from family farms to commercial farms, ha.
    pub land_reallocated: f64,
    pub d_surplus_cf: f64,
    pub d_surplus_if: f64,
    pub d_landowners: f64,
    pub budget_revenue: f64,
    pub dwl: f64,
    pub corner: bool,
}

impl WelfareOutcome {
    pub fn zero() -> Self {
        WelfareOutcome {
            delta_rent: 0.0,
            land_reallocated: 0.0,
            d_surplus_cf: 0.0,
            d_surplus_if: 0.0,
            d_landowners: 0.0,
            budget_revenue: 0.0,
            dwl: 0.0,
            corner: false,
        }
    }

    pub fn metrics(&self) -> [(&'static str, f64); 7] {
        [
            ("d_surplus_cf", self.d_surplus_cf),
            ("d_surplus_if", self.d_surplus_if),
            ("d_landowners", self.d_landowners),
            ("budget_revenue", self.budget_revenue),
            ("dwl", self.dwl),
            ("land_reallocated_ha", self.land_reallocated),
            ("delta_rent_uah_ha", self.delta_rent),
        ]
    }
}

/// Trapezoid decomposition of the welfare change. The five money entries
/// (CF, IF, landowners, budget, DWL) sum to zero by construction.
pub fn welfare_decompose(base: &Equilibrium, taxed: &Equilibrium, wedge: f64) -> WelfareOutcome {
    let r0 = base.rent;
    let r1 = taxed.rent;
    let d_surplus_cf = (r0 - r1) * (base.land_cf + taxed.land_cf) / 2.0;
    let d_surplus_if = -((r1 + wedge) - r0) * (base.land_if + taxed.land_if) / 2.0;
    let total_land = base.land_cf + base.land_if;
    let d_landowners = (r1 - r0) * total_land;
    let budget_revenue = wedge * taxed.land_if;
    let dwl = -(d_surplus_cf + d_surplus_if + d_landowners + budget_revenue);
    WelfareOutcome {
        delta_rent: r1 - r0,
        land_reallocated: taxed.land_cf - base.land_cf,
        d_surplus_cf,
        d_surplus_if,
        d_landowners,
        budget_revenue,
        dwl,
        corner: taxed.corner,
    }
}

/// How the equilibrium wedge is derived from the MTL policy.
///
/// Informally used land generates no declared taxes that could be credited
/// against the MTL, so the wedge is the gross liability at the configured
/// rate class. Under bill 3131-d the model's family-farm group is priced at
/// the individual-farm rate by default; the scenario can override the class
/// or pin an explicit wedge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WedgeConfig {
    pub payer_kind: PayerKind,
    pub land_class: LandClass,
    /// Explicit per-hectare wedge, bypassing the policy-derived one.
    pub override_uah_per_ha: Option<f64>,
}

impl Default for WedgeConfig {
    fn default() -> Self {
        WedgeConfig {
            payer_kind: PayerKind::RegisteredIndividualEntrepreneur,
            land_class: LandClass::Arable,
            override_uah_per_ha: None,
        }
    }
}

/// Per-hectare annual wedge implied by the MTL policy; 0 when no bill is
/// selected.
pub fn policy_wedge(
    policy: &MtlPolicy,
    params: &TaxParameters,
    config: &WedgeConfig,
) -> Result<f64, ModelError> {
    if let Some(w) = config.override_uah_per_ha {
        if w < 0.0 {
            return Err(ModelError::invalid("wedge override", "must be non-negative"));
        }
        return Ok(w);
    }
    if policy.bill == fiscal::Bill::None {
        return Ok(0.0);
    }
    let gross = fiscal::mtl_gross_for(config.land_class, config.payer_kind, policy, params)?;
    Ok(to_f64(gross))
}

/// Calibrate both demands, solve the baseline and taxed equilibria and
/// decompose the welfare change, all in UAH.
pub fn run_policy_welfare(
    calibration: &MarketCalibration,
    policy: &MtlPolicy,
    params: &TaxParameters,
    wedge_config: &WedgeConfig,
) -> Result<WelfareOutcome, ModelError> {
    calibration.validate()?;
    let wedge = policy_wedge(policy, params, wedge_config)?;
    run_wedge_welfare(calibration, wedge)
}

/// Same as [`run_policy_welfare`] but with the wedge already resolved.
pub fn run_wedge_welfare(
    calibration: &MarketCalibration,
    wedge: f64,
) -> Result<WelfareOutcome, ModelError> {
    calibration.validate()?;
    let d_cf = calibrate_demand(
        calibration.enterprise_land,
        calibration.enterprise_rent,
        calibration.elasticity_cf,
    )?;
    let d_if = calibrate_demand(
        calibration.household_land(),
        calibration.household_rent,
        calibration.elasticity_if,
    )?;
    let base = solve_equilibrium(d_cf, d_if, calibration.total_land, 0.0)?;
    let taxed = solve_equilibrium(d_cf, d_if, calibration.total_land, wedge)?;
    Ok(welfare_decompose(&base, &taxed, wedge))
}

/// Min/max of one welfare metric over the elasticity grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricRange {
    pub min: f64,
    pub max: f64,
}

impl MetricRange {
    fn of(v: f64) -> Self {
        MetricRange { min: v, max: v }
    }

    fn absorb(&mut self, v: f64) {
        if v < self.min {
            self.min = v;
        }
        if v > self.max {
            self.max = v;
        }
    }

    /// Closed-interval overlap test against a target range.
    pub fn overlaps(&self, lo: f64, hi: f64) -> bool {
        self.max >= lo && self.min <= hi
    }
}

/// Envelope of welfare metrics over an elasticity grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub wedge: f64,
    pub points: usize,
    pub metrics: Vec<(&'static str, MetricRange)>,
    pub corner_hit: bool,
}

impl SweepReport {
    pub fn metric(&self, name: &str) -> Option<MetricRange> {
        self.metrics.iter().find(|(n, _)| *n == name).map(|(_, r)| *r)
    }
}

/// Evaluate the welfare model on every (elasticity_cf, elasticity_if) pair
/// and aggregate per-metric min/max. Aggregation is order-independent.
pub fn sweep_elasticities(
    calibration: &MarketCalibration,
    policy: &MtlPolicy,
    params: &TaxParameters,
    wedge_config: &WedgeConfig,
    grid: &[(f64, f64)],
) -> Result<SweepReport, ModelError> {
    if grid.is_empty() {
        return Err(ModelError::EmptyGrid);
    }
    let wedge = policy_wedge(policy, params, wedge_config)?;
    let mut metrics: Option<Vec<(&'static str, MetricRange)>> = None;
    let mut corner_hit = false;
    for &(e_cf, e_if) in grid {
        let cal = MarketCalibration {
            elasticity_cf: e_cf,
            elasticity_if: e_if,
            ..*calibration
        };
        let outcome = run_wedge_welfare(&cal, wedge)?;
        corner_hit |= outcome.corner;
        match metrics.as_mut() {
            None => metrics = Some(outcome.metrics().map(|(n, v)| (n, MetricRange::of(v))).to_vec()),
            Some(ranges) => {
                for ((_, range), (_, v)) in ranges.iter_mut().zip(outcome.metrics()) {
                    range.absorb(v);
                }
            }
        }
    }
    Ok(SweepReport {
        wedge,
        points: grid.len(),
        metrics: metrics.expect("non-empty grid"),
        corner_hit,
    })
}
