//! Distributional burden of an MTL policy across household income cohorts:
//! net MTL on the cohort's land as a share of its annual income.

use serde::Serialize;

use crate::error::ModelError;
use crate::fiscal::{self, DefaultBases, MtlPolicy, Regime, TaxParameters};
use crate::money::{is_positive, to_f64};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncomeCohort {
    pub label: String,
    pub annual_income: f64,
    pub land_held: f64,
    pub household_count: Option<u64>,
}

impl IncomeCohort {
    pub fn validate(&self) -> Result<(), ModelError> {
        if !is_positive(self.annual_income) {
            return Err(ModelError::ZeroIncome);
        }
        if self.land_held < 0.0 {
            return Err(ModelError::invalid("cohort", "land_held must be non-negative"));
        }
        Ok(())
    }
}

/// Net MTL per hectare for a shadow household under the default bases.
pub fn household_net_mtl_per_ha(
    params: &TaxParameters,
    policy: &MtlPolicy,
    bases: &DefaultBases,
) -> Result<f64, ModelError> {
    let profile = bases.profile(Regime::HouseholdShadow);
    Ok(to_f64(fiscal::mtl_net(&profile, params, policy)?))
}

/// Annual MTL burden as a fraction of cohort income.
pub fn cohort_burden(
    cohort: &IncomeCohort,
    params: &TaxParameters,
    policy: &MtlPolicy,
    bases: &DefaultBases,
) -> Result<f64, ModelError> {
    cohort.validate()?;
    let net = household_net_mtl_per_ha(params, policy, bases)?;
    Ok(net * cohort.land_held / cohort.annual_income)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncidenceRow {
    pub label: String,
    pub burden: f64,
}

/// One burden row per cohort, in input order.
pub fn incidence_table(
    cohorts: &[IncomeCohort],
    params: &TaxParameters,
    policy: &MtlPolicy,
    bases: &DefaultBases,
) -> Result<Vec<IncidenceRow>, ModelError> {
    if cohorts.is_empty() {
        return Err(ModelError::invalid("cohorts", "list must be non-empty"));
    }
    cohorts
        .iter()
        .map(|c| {
            Ok(IncidenceRow {
                label: c.label.clone(),
                burden: cohort_burden(c, params, policy, bases)?,
            })
        })
        .collect()
}

/// Parse the cohort CSV: `label,annual_income_uah,land_ha[,households]`.
pub fn parse_cohort_csv(text: &str) -> Result<Vec<IncomeCohort>, ModelError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ModelError::invalid("cohort csv", "empty file"))?;
    let header = header.trim();
    if header != "label,annual_income_uah,land_ha"
        && header != "label,annual_income_uah,land_ha,households"
    {
        return Err(ModelError::invalid(
            "cohort csv",
            format!("unexpected header `{header}`"),
        ));
    }
    let mut cohorts = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 3 || fields.len() > 4 {
            return Err(ModelError::invalid(
                "cohort csv",
                format!("line {}: expected 3 or 4 fields", i + 1),
            ));
        }
        let parse_num = |s: &str| -> Result<f64, ModelError> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| ModelError::invalid("cohort csv", format!("line {}: bad number `{s}`", i + 1)))
        };
        let cohort = IncomeCohort {
            label: fields[0].trim().to_string(),
            annual_income: parse_num(fields[1])?,
            land_held: parse_num(fields[2])?,
            household_count: match fields.get(3) {
                Some(s) if !s.trim().is_empty() => Some(parse_num(s)? as u64),
                _ => None,
            },
        };
        cohort.validate()?;
        cohorts.push(cohort);
    }
    Ok(cohorts)
}
