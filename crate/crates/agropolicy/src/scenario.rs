//! Scenario files: flat `[section] key = value` text, one line per
//! assumption. Every key has a shipped default, so an empty file is the
//! default calibration; unknown keys and out-of-range values are errors
//! with line numbers. A fully resolved echo of the scenario is written
//! next to every result set and must re-parse to the identical scenario.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use thiserror::Error;

use crate::equilibrium::{MarketCalibration, WedgeConfig};
use crate::fiscal::{Bill, DefaultBases, LandClass, MtlPolicy, PayerKind, TaxKind, TaxParameters};
use crate::land_accounts::{LandBalanceInputs, ShadowOutputMode};
use crate::money::{format_decimal, parse_decimal, Rational};
use crate::segmentation::{Product, ProductTech, SegmentBand, SegmentScheme};

/// The versioned default calibration. Every assumed input lives here,
/// not in code.
pub const DEFAULT_CALIBRATION: &str = include_str!("../data/default_calibration.cfg");
/// Synthetic cohort file (land back-solved to the published anchor bars).
pub const DEFAULT_COHORTS: &str = include_str!("../data/cohorts.csv");
/// Sample farm batch for the segmentation command.
pub const DEFAULT_FARMS: &str = include_str!("../data/farms.csv");

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl ScenarioError {
    fn at(file: &str, line: usize, message: impl Into<String>) -> Self {
        ScenarioError::Parse {
            file: file.to_string(),
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarketBlock {
    pub calibration: MarketCalibration,
    pub cf_grid: Vec<f64>,
    pub if_grid: Vec<f64>,
    pub wedge: WedgeConfig,
}

impl MarketBlock {
    /// Cross product of the two elasticity grids, CF-major.
    pub fn grid(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.cf_grid.len() * self.if_grid.len());
        for &cf in &self.cf_grid {
            for &hh in &self.if_grid {
                out.push((cf, hh));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LandBlock {
    pub inputs: LandBalanceInputs,
    pub household_output_share: f64,
    pub shadow_output_mode: ShadowOutputMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationConfig {
    pub economic_scheme: SegmentScheme,
    pub tax_code_cap_uah: f64,
    pub tax_code_employee_cap: u32,
    /// Derived from the cap and the EUR rate; kept alongside the economic
    /// scheme rather than merged with it.
    pub tax_code_scheme: SegmentScheme,
    pub techs: Vec<ProductTech>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub tax: TaxParameters,
    pub bases: DefaultBases,
    pub mtl: MtlPolicy,
    pub market: MarketBlock,
    pub land: LandBlock,
    pub segmentation: SegmentationConfig,
    pub cohorts_path: Option<PathBuf>,
    pub farms_path: Option<PathBuf>,
    pub out_dir: PathBuf,
}

impl Scenario {
    /// Neutral seed; the shipped calibration file sets every field.
    fn seed() -> Scenario {
        let zero = Rational::from_integer(0);
        Scenario {
            name: String::new(),
            tax: TaxParameters {
                ngo_per_ha: zero,
                rate_cit: zero,
                rate_pit: zero,
                rate_military: zero,
                rate_ssc: zero,
                rate_vat: zero,
                rate_land_tax: zero,
                rate_single_tax4: zero,
                uah_per_usd: 1.0,
                uah_per_eur: 1.0,
                local_taxes: BTreeSet::new(),
            },
            bases: DefaultBases {
                rent_paid_per_ha: zero,
                wage_bill_per_ha: zero,
                revenue_per_ha: zero,
                input_purchases_per_ha: zero,
                taxable_profit_per_ha: zero,
            },
            mtl: MtlPolicy {
                bill: Bill::None,
                flat_rate: zero,
                rate_pasture_garden: zero,
                rate_registered_entrepreneur: zero,
                rate_other: zero,
                creditable_taxes: BTreeSet::new(),
                household_creditable_taxes: BTreeSet::new(),
                phase_in: Vec::new(),
                evaluation_year: 0,
            },
            market: MarketBlock {
                calibration: MarketCalibration {
                    total_land: 1.0,
                    enterprise_land: 0.5,
                    enterprise_rent: 1.0,
                    household_rent: 1.0,
                    elasticity_cf: -1.0,
                    elasticity_if: -1.0,
                },
                cf_grid: Vec::new(),
                if_grid: Vec::new(),
                wedge: WedgeConfig::default(),
            },
            land: LandBlock {
                inputs: LandBalanceInputs {
                    total_ag_land: 0.0,
                    enterprise_cultivated: 0.0,
                    household_cultivated: 0.0,
                    occupied_adjustment: 0.0,
                    declared_ep4: 0.0,
                    ep2_share: 0.0,
                    osg_own_use: 0.0,
                    uncultivated_share: 0.0,
                    share_base: 0.0,
                },
                household_output_share: 0.0,
                shadow_output_mode: ShadowOutputMode::FlatThird,
            },
            segmentation: SegmentationConfig {
                economic_scheme: SegmentScheme {
                    name: "economic_code".to_string(),
                    bands: Vec::new(),
                },
                tax_code_cap_uah: 0.0,
                tax_code_employee_cap: 0,
                tax_code_scheme: SegmentScheme {
                    name: "tax_code".to_string(),
                    bands: Vec::new(),
                },
                techs: Vec::new(),
            },
            cohorts_path: None,
            farms_path: None,
            out_dir: PathBuf::from("out"),
        }
    }

    /// The shipped default calibration with no overlay.
    pub fn shipped_defaults() -> Result<Scenario, ScenarioError> {
        Self::from_defaults_text(DEFAULT_CALIBRATION, "default_calibration.cfg")
    }

    /// Parse an alternative defaults file (the `AGROPOLICY_DEFAULTS` hook).
    pub fn from_defaults_text(text: &str, file: &str) -> Result<Scenario, ScenarioError> {
        let mut scn = Scenario::seed();
        apply(&mut scn, text, file)?;
        scn.finalize(file)?;
        Ok(scn)
    }

    /// Defaults overlaid with a user scenario file.
    pub fn from_overlay_text(
        defaults: &Scenario,
        text: &str,
        file: &str,
    ) -> Result<Scenario, ScenarioError> {
        let mut scn = defaults.clone();
        apply(&mut scn, text, file)?;
        scn.finalize(file)?;
        Ok(scn)
    }

    fn finalize(&mut self, file: &str) -> Result<(), ScenarioError> {
        let err = |msg: String| ScenarioError::at(file, 0, msg);
        self.tax.validate().map_err(|e| err(e.to_string()))?;
        self.mtl.validate().map_err(|e| err(e.to_string()))?;
        self.market
            .calibration
            .validate()
            .map_err(|e| err(e.to_string()))?;
        if self.market.cf_grid.is_empty() || self.market.if_grid.is_empty() {
            return Err(err("elasticity grids must be non-empty".to_string()));
        }
        self.land.inputs.validate().map_err(|e| err(e.to_string()))?;
        self.segmentation
            .economic_scheme
            .validate()
            .map_err(|e| err(e.to_string()))?;
        if self.segmentation.techs.is_empty() {
            return Err(err("no product technologies configured".to_string()));
        }
        // derived tax-code scheme: one capped band plus the open remainder
        let cap_eur_mln = self.segmentation.tax_code_cap_uah / self.tax.uah_per_eur / 1e6;
        self.segmentation.tax_code_scheme = SegmentScheme {
            name: "tax_code".to_string(),
            bands: vec![
                SegmentBand {
                    name: "single_tax_group3".to_string(),
                    income_min_eur_mln: 0.0,
                    income_max_eur_mln: Some(cap_eur_mln),
                    employee_cap: Some(self.segmentation.tax_code_employee_cap),
                },
                SegmentBand {
                    name: "above_single_tax_group3".to_string(),
                    income_min_eur_mln: cap_eur_mln,
                    income_max_eur_mln: None,
                    employee_cap: None,
                },
            ],
        };
        Ok(())
    }

    /// Fully resolved scenario text; parsing it back yields `self`.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let dec = format_decimal;
        let _ = writeln!(s, "[scenario]");
        let _ = writeln!(s, "name = {}", self.name);
        let _ = writeln!(s);
        let _ = writeln!(s, "[tax]");
        let _ = writeln!(s, "ngo_per_ha = {}", dec(self.tax.ngo_per_ha));
        let _ = writeln!(s, "rate_cit = {}", dec(self.tax.rate_cit));
        let _ = writeln!(s, "rate_pit = {}", dec(self.tax.rate_pit));
        let _ = writeln!(s, "rate_military = {}", dec(self.tax.rate_military));
        let _ = writeln!(s, "rate_ssc = {}", dec(self.tax.rate_ssc));
        let _ = writeln!(s, "rate_vat = {}", dec(self.tax.rate_vat));
        let _ = writeln!(s, "rate_land_tax = {}", dec(self.tax.rate_land_tax));
        let _ = writeln!(s, "rate_single_tax4 = {}", dec(self.tax.rate_single_tax4));
        let _ = writeln!(s, "uah_per_usd = {}", self.tax.uah_per_usd);
        let _ = writeln!(s, "uah_per_eur = {}", self.tax.uah_per_eur);
        let _ = writeln!(s, "local_taxes = {}", tax_set(&self.tax.local_taxes));
        let _ = writeln!(s);
        let _ = writeln!(s, "[bases]");
        let _ = writeln!(s, "rent_paid_per_ha = {}", dec(self.bases.rent_paid_per_ha));
        let _ = writeln!(s, "wage_bill_per_ha = {}", dec(self.bases.wage_bill_per_ha));
        let _ = writeln!(s, "revenue_per_ha = {}", dec(self.bases.revenue_per_ha));
        let _ = writeln!(
            s,
            "input_purchases_per_ha = {}",
            dec(self.bases.input_purchases_per_ha)
        );
        let _ = writeln!(
            s,
            "taxable_profit_per_ha = {}",
            dec(self.bases.taxable_profit_per_ha)
        );
        let _ = writeln!(s);
        let _ = writeln!(s, "[mtl]");
        let _ = writeln!(s, "bill = {}", self.mtl.bill.label());
        let _ = writeln!(s, "flat_rate = {}", dec(self.mtl.flat_rate));
        let _ = writeln!(s, "rate_pasture_garden = {}", dec(self.mtl.rate_pasture_garden));
        let _ = writeln!(
            s,
            "rate_registered_entrepreneur = {}",
            dec(self.mtl.rate_registered_entrepreneur)
        );
        let _ = writeln!(s, "rate_other = {}", dec(self.mtl.rate_other));
        let _ = writeln!(s, "creditable_taxes = {}", tax_set(&self.mtl.creditable_taxes));
        let _ = writeln!(
            s,
            "household_creditable_taxes = {}",
            tax_set(&self.mtl.household_creditable_taxes)
        );
        let _ = writeln!(
            s,
            "phase_in = {}",
            self.mtl
                .phase_in
                .iter()
                .map(|p| dec(*p))
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(s, "evaluation_year = {}", self.mtl.evaluation_year);
        let _ = writeln!(s);
        let _ = writeln!(s, "[market]");
        let c = &self.market.calibration;
        let _ = writeln!(s, "total_land_ha = {}", c.total_land);
        let _ = writeln!(s, "enterprise_land_ha = {}", c.enterprise_land);
        let _ = writeln!(s, "enterprise_rent_uah_ha = {}", c.enterprise_rent);
        let _ = writeln!(s, "household_rent_uah_ha = {}", c.household_rent);
        let _ = writeln!(s, "elasticity_cf = {}", c.elasticity_cf);
        let _ = writeln!(s, "elasticity_if = {}", c.elasticity_if);
        let _ = writeln!(s, "elasticity_cf_grid = {}", join_f64(&self.market.cf_grid));
        let _ = writeln!(s, "elasticity_if_grid = {}", join_f64(&self.market.if_grid));
        let _ = writeln!(s, "wedge_payer = {}", payer_label(self.market.wedge.payer_kind));
        let _ = writeln!(
            s,
            "wedge_land_class = {}",
            match self.market.wedge.land_class {
                LandClass::Arable => "arable",
                LandClass::PastureOrGarden => "pasture_or_garden",
            }
        );
        if let Some(w) = self.market.wedge.override_uah_per_ha {
            let _ = writeln!(s, "wedge_uah_per_ha = {w}");
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "[land_balance]");
        let li = &self.land.inputs;
        let _ = writeln!(s, "total_ag_land_mln_ha = {}", li.total_ag_land);
        let _ = writeln!(s, "enterprise_cultivated_mln_ha = {}", li.enterprise_cultivated);
        let _ = writeln!(s, "household_cultivated_mln_ha = {}", li.household_cultivated);
        let _ = writeln!(s, "occupied_adjustment_mln_ha = {}", li.occupied_adjustment);
        let _ = writeln!(s, "declared_ep4_mln_ha = {}", li.declared_ep4);
        let _ = writeln!(s, "ep2_share = {}", li.ep2_share);
        let _ = writeln!(s, "osg_own_use_mln_ha = {}", li.osg_own_use);
        let _ = writeln!(s, "uncultivated_share = {}", li.uncultivated_share);
        let _ = writeln!(s, "share_base_mln_ha = {}", li.share_base);
        let _ = writeln!(
            s,
            "household_output_share = {}",
            self.land.household_output_share
        );
        let _ = writeln!(s, "shadow_output_mode = {}", self.land.shadow_output_mode.label());
        let _ = writeln!(s);
        let _ = writeln!(s, "[segmentation]");
        for band in &self.segmentation.economic_scheme.bands {
            let max = band
                .income_max_eur_mln
                .map(|v| v.to_string())
                .unwrap_or_else(|| "inf".to_string());
            let cap = band
                .employee_cap
                .map(|v| v.to_string())
                .unwrap_or_else(|| "inf".to_string());
            let _ = writeln!(
                s,
                "band = {}|{}|{}|{}",
                band.name, band.income_min_eur_mln, max, cap
            );
        }
        let _ = writeln!(s, "tax_code_cap_uah = {}", self.segmentation.tax_code_cap_uah);
        let _ = writeln!(
            s,
            "tax_code_employee_cap = {}",
            self.segmentation.tax_code_employee_cap
        );
        for tech in &self.segmentation.techs {
            let _ = writeln!(s, "price_{} = {}", tech.product.label(), tech.price_uah_per_tonne);
            let _ = writeln!(s, "yield_{} = {}", tech.product.label(), tech.yield_per_unit);
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "[io]");
        if let Some(p) = &self.cohorts_path {
            let _ = writeln!(s, "cohorts_path = {}", p.display());
        }
        if let Some(p) = &self.farms_path {
            let _ = writeln!(s, "farms_path = {}", p.display());
        }
        let _ = writeln!(s, "out_dir = {}", self.out_dir.display());
        s
    }
}

fn tax_set(set: &BTreeSet<TaxKind>) -> String {
    set.iter().map(|k| k.name()).collect::<Vec<_>>().join(",")
}

fn join_f64(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn payer_label(p: PayerKind) -> &'static str {
    match p {
        PayerKind::LegalEntity => "legal_entity",
        PayerKind::RegisteredIndividualEntrepreneur => "registered_entrepreneur",
        PayerKind::UnregisteredHousehold => "unregistered_household",
    }
}

struct Ctx<'a> {
    file: &'a str,
    line: usize,
    /// First `band =` line in this file resets the inherited band list.
    bands_reset: bool,
}

impl Ctx<'_> {
    fn err(&self, msg: impl Into<String>) -> ScenarioError {
        ScenarioError::at(self.file, self.line, msg)
    }
}

fn apply(scn: &mut Scenario, text: &str, file: &str) -> Result<(), ScenarioError> {
    let mut section = String::new();
    let mut ctx = Ctx {
        file,
        line: 0,
        bands_reset: false,
    };
    for (idx, raw) in text.lines().enumerate() {
        ctx.line = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| ctx.err("malformed section header"))?
                .trim();
            const SECTIONS: [&str; 7] = [
                "scenario",
                "tax",
                "bases",
                "mtl",
                "market",
                "land_balance",
                "segmentation",
            ];
            if !SECTIONS.contains(&name) && name != "io" {
                return Err(ctx.err(format!("unknown section `[{name}]`")));
            }
            section = name.to_string();
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ctx.err("expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        if section.is_empty() {
            return Err(ctx.err("key before any [section] header"));
        }
        apply_key(scn, &mut ctx, &section, key, value)?;
    }
    Ok(())
}

fn apply_key(
    scn: &mut Scenario,
    ctx: &mut Ctx,
    section: &str,
    key: &str,
    value: &str,
) -> Result<(), ScenarioError> {
    let rational = |ctx: &Ctx, v: &str| -> Result<Rational, ScenarioError> {
        parse_decimal(v).map_err(|e| ctx.err(e.to_string()))
    };
    let rate = |ctx: &Ctx, v: &str| -> Result<Rational, ScenarioError> {
        let r = rational(ctx, v)?;
        if r < Rational::from_integer(0) || r > Rational::from_integer(1) {
            return Err(ctx.err(format!("`{key}` must lie in [0, 1], got {v}")));
        }
        Ok(r)
    };
    let float = |ctx: &Ctx, v: &str| -> Result<f64, ScenarioError> {
        v.parse::<f64>()
            .map_err(|_| ctx.err(format!("not a number: `{v}`")))
    };
    let share = |ctx: &Ctx, v: &str| -> Result<f64, ScenarioError> {
        let x = float(ctx, v)?;
        if !(0.0..=1.0).contains(&x) {
            return Err(ctx.err(format!("`{key}` must lie in [0, 1], got {v}")));
        }
        Ok(x)
    };
    let float_list = |ctx: &Ctx, v: &str| -> Result<Vec<f64>, ScenarioError> {
        v.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| float(ctx, s.trim()))
            .collect()
    };
    let taxes = |ctx: &Ctx, v: &str| -> Result<BTreeSet<TaxKind>, ScenarioError> {
        v.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| TaxKind::parse(s.trim()).map_err(|e| ctx.err(e.to_string())))
            .collect()
    };

    match (section, key) {
        ("scenario", "name") => scn.name = value.to_string(),

        ("tax", "ngo_per_ha") => scn.tax.ngo_per_ha = rational(ctx, value)?,
        ("tax", "rate_cit") => scn.tax.rate_cit = rate(ctx, value)?,
        ("tax", "rate_pit") => scn.tax.rate_pit = rate(ctx, value)?,
        ("tax", "rate_military") => scn.tax.rate_military = rate(ctx, value)?,
        ("tax", "rate_ssc") => scn.tax.rate_ssc = rate(ctx, value)?,
        ("tax", "rate_vat") => scn.tax.rate_vat = rate(ctx, value)?,
        ("tax", "rate_land_tax") => scn.tax.rate_land_tax = rate(ctx, value)?,
        ("tax", "rate_single_tax4") => scn.tax.rate_single_tax4 = rate(ctx, value)?,
        ("tax", "uah_per_usd") => scn.tax.uah_per_usd = float(ctx, value)?,
        ("tax", "uah_per_eur") => scn.tax.uah_per_eur = float(ctx, value)?,
        ("tax", "local_taxes") => scn.tax.local_taxes = taxes(ctx, value)?,

        ("bases", "rent_paid_per_ha") => scn.bases.rent_paid_per_ha = rational(ctx, value)?,
        ("bases", "wage_bill_per_ha") => scn.bases.wage_bill_per_ha = rational(ctx, value)?,
        ("bases", "revenue_per_ha") => scn.bases.revenue_per_ha = rational(ctx, value)?,
        ("bases", "input_purchases_per_ha") => {
            scn.bases.input_purchases_per_ha = rational(ctx, value)?
        }
        ("bases", "taxable_profit_per_ha") => {
            scn.bases.taxable_profit_per_ha = rational(ctx, value)?
        }

        ("mtl", "bill") => {
            scn.mtl.bill = match value {
                "none" => Bill::None,
                "3131" => Bill::Bill3131,
                "3131d" => Bill::Bill3131d,
                other => return Err(ctx.err(format!("unknown bill `{other}`"))),
            }
        }
        ("mtl", "flat_rate") => scn.mtl.flat_rate = rate(ctx, value)?,
        ("mtl", "rate_pasture_garden") => scn.mtl.rate_pasture_garden = rate(ctx, value)?,
        ("mtl", "rate_registered_entrepreneur") => {
            scn.mtl.rate_registered_entrepreneur = rate(ctx, value)?
        }
        ("mtl", "rate_other") => scn.mtl.rate_other = rate(ctx, value)?,
        ("mtl", "creditable_taxes") => scn.mtl.creditable_taxes = taxes(ctx, value)?,
        ("mtl", "household_creditable_taxes") => {
            scn.mtl.household_creditable_taxes = taxes(ctx, value)?
        }
        ("mtl", "phase_in") => {
            scn.mtl.phase_in = value
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| rate(ctx, s.trim()))
                .collect::<Result<_, _>>()?
        }
        ("mtl", "evaluation_year") => {
            scn.mtl.evaluation_year = value
                .parse()
                .map_err(|_| ctx.err(format!("not a year index: `{value}`")))?
        }

        ("market", "total_land_ha") => scn.market.calibration.total_land = float(ctx, value)?,
        ("market", "enterprise_land_ha") => {
            scn.market.calibration.enterprise_land = float(ctx, value)?
        }
        ("market", "enterprise_rent_uah_ha") => {
            scn.market.calibration.enterprise_rent = float(ctx, value)?
        }
        ("market", "household_rent_uah_ha") => {
            scn.market.calibration.household_rent = float(ctx, value)?
        }
        ("market", "elasticity_cf") => scn.market.calibration.elasticity_cf = float(ctx, value)?,
        ("market", "elasticity_if") => scn.market.calibration.elasticity_if = float(ctx, value)?,
        ("market", "elasticity_cf_grid") => scn.market.cf_grid = float_list(ctx, value)?,
        ("market", "elasticity_if_grid") => scn.market.if_grid = float_list(ctx, value)?,
        ("market", "wedge_payer") => {
            scn.market.wedge.payer_kind = match value {
                "legal_entity" => PayerKind::LegalEntity,
                "registered_entrepreneur" => PayerKind::RegisteredIndividualEntrepreneur,
                "unregistered_household" => PayerKind::UnregisteredHousehold,
                other => return Err(ctx.err(format!("unknown payer kind `{other}`"))),
            }
        }
        ("market", "wedge_land_class") => {
            scn.market.wedge.land_class = match value {
                "arable" => LandClass::Arable,
                "pasture_or_garden" => LandClass::PastureOrGarden,
                other => return Err(ctx.err(format!("unknown land class `{other}`"))),
            }
        }
        ("market", "wedge_uah_per_ha") => {
            scn.market.wedge.override_uah_per_ha = Some(float(ctx, value)?)
        }

        ("land_balance", "total_ag_land_mln_ha") => {
            scn.land.inputs.total_ag_land = float(ctx, value)?
        }
        ("land_balance", "enterprise_cultivated_mln_ha") => {
            scn.land.inputs.enterprise_cultivated = float(ctx, value)?
        }
        ("land_balance", "household_cultivated_mln_ha") => {
            scn.land.inputs.household_cultivated = float(ctx, value)?
        }
        ("land_balance", "occupied_adjustment_mln_ha") => {
            scn.land.inputs.occupied_adjustment = float(ctx, value)?
        }
        ("land_balance", "declared_ep4_mln_ha") => {
            scn.land.inputs.declared_ep4 = float(ctx, value)?
        }
        ("land_balance", "ep2_share") => scn.land.inputs.ep2_share = share(ctx, value)?,
        ("land_balance", "osg_own_use_mln_ha") => {
            scn.land.inputs.osg_own_use = float(ctx, value)?
        }
        ("land_balance", "uncultivated_share") => {
            scn.land.inputs.uncultivated_share = share(ctx, value)?
        }
        ("land_balance", "share_base_mln_ha") => scn.land.inputs.share_base = float(ctx, value)?,
        ("land_balance", "household_output_share") => {
            scn.land.household_output_share = share(ctx, value)?
        }
        ("land_balance", "shadow_output_mode") => {
            scn.land.shadow_output_mode = match value {
                "flat_third" => ShadowOutputMode::FlatThird,
                "residual" => ShadowOutputMode::Residual,
                other => return Err(ctx.err(format!("unknown shadow output mode `{other}`"))),
            }
        }

        ("segmentation", "band") => {
            if !ctx.bands_reset {
                scn.segmentation.economic_scheme.bands.clear();
                ctx.bands_reset = true;
            }
            let parts: Vec<&str> = value.split('|').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(ctx.err("band needs `name|income_min|income_max|employee_cap`"));
            }
            let parse_bound = |s: &str| -> Result<Option<f64>, ScenarioError> {
                if s == "inf" {
                    Ok(None)
                } else {
                    Ok(Some(float(ctx, s)?))
                }
            };
            scn.segmentation.economic_scheme.bands.push(SegmentBand {
                name: parts[0].to_string(),
                income_min_eur_mln: float(ctx, parts[1])?,
                income_max_eur_mln: parse_bound(parts[2])?,
                employee_cap: match parts[3] {
                    "inf" => None,
                    s => Some(
                        s.parse()
                            .map_err(|_| ctx.err(format!("bad employee cap `{s}`")))?,
                    ),
                },
            });
        }
        ("segmentation", "tax_code_cap_uah") => {
            scn.segmentation.tax_code_cap_uah = float(ctx, value)?
        }
        ("segmentation", "tax_code_employee_cap") => {
            scn.segmentation.tax_code_employee_cap = value
                .parse()
                .map_err(|_| ctx.err(format!("bad employee cap `{value}`")))?
        }
        ("segmentation", k) if k.starts_with("price_") || k.starts_with("yield_") => {
            let (field, product) = k.split_once('_').expect("checked prefix");
            let product = Product::parse(product).map_err(|e| ctx.err(e.to_string()))?;
            let v = float(ctx, value)?;
            let tech = match scn
                .segmentation
                .techs
                .iter_mut()
                .find(|t| t.product == product)
            {
                Some(t) => t,
                None => {
                    scn.segmentation.techs.push(ProductTech {
                        product,
                        price_uah_per_tonne: 0.0,
                        yield_per_unit: 0.0,
                    });
                    scn.segmentation.techs.last_mut().expect("just pushed")
                }
            };
            if field == "price" {
                tech.price_uah_per_tonne = v;
            } else {
                tech.yield_per_unit = v;
            }
        }

        ("io", "cohorts_path") => scn.cohorts_path = Some(PathBuf::from(value)),
        ("io", "farms_path") => scn.farms_path = Some(PathBuf::from(value)),
        ("io", "out_dir") => scn.out_dir = PathBuf::from(value),

        (sec, k) => return Err(ctx.err(format!("unknown key `{k}` in section `[{sec}]`"))),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::money::ratio;

    #[test]
    fn shipped_defaults_resolve() {
        let scn = Scenario::shipped_defaults().unwrap();
        assert_eq!(scn.name, "default");
        assert_eq!(scn.tax.ngo_per_ha, ratio(28_000, 1));
        assert_eq!(scn.tax.rate_single_tax4, ratio(95, 10_000));
        assert_eq!(scn.mtl.bill, Bill::None);
        assert_eq!(scn.market.cf_grid.len(), 5);
        assert_eq!(scn.market.if_grid.len(), 3);
        assert_eq!(scn.market.grid().len(), 15);
        assert_eq!(scn.segmentation.economic_scheme.bands.len(), 6);
        assert_eq!(scn.segmentation.techs.len(), 5);
    }

    #[test]
    fn empty_overlay_equals_defaults() {
        let defaults = Scenario::shipped_defaults().unwrap();
        let scn = Scenario::from_overlay_text(&defaults, "", "empty.cfg").unwrap();
        assert_eq!(scn, defaults);
    }

    #[test]
    fn out_of_range_rate_rejected_with_line() {
        let defaults = Scenario::shipped_defaults().unwrap();
        let err = Scenario::from_overlay_text(&defaults, "[tax]\nrate_land_tax = 1.5\n", "x.cfg")
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("x.cfg:2"), "{msg}");
        assert!(msg.contains("[0, 1]"), "{msg}");
    }

    #[test]
    fn unknown_key_and_section_rejected() {
        let defaults = Scenario::shipped_defaults().unwrap();
        assert!(Scenario::from_overlay_text(&defaults, "[tax]\nbogus = 1\n", "x.cfg").is_err());
        assert!(Scenario::from_overlay_text(&defaults, "[nope]\n", "x.cfg").is_err());
        assert!(Scenario::from_overlay_text(&defaults, "stray = 1\n", "x.cfg").is_err());
    }

    #[test]
    fn phase_in_resolution_for_3131d() {
        let defaults = Scenario::shipped_defaults().unwrap();
        let scn = Scenario::from_overlay_text(
            &defaults,
            "[mtl]\nbill = 3131d\nevaluation_year = 0\n",
            "x.cfg",
        )
        .unwrap();
        assert_eq!(scn.mtl.phase_multiplier(), ratio(1, 2));
    }

    #[test]
    fn echo_round_trips() {
        let defaults = Scenario::shipped_defaults().unwrap();
        let overlay = "[mtl]\nbill = 3131\n[market]\nelasticity_cf = -0.6\n";
        let scn = Scenario::from_overlay_text(&defaults, overlay, "x.cfg").unwrap();
        let echo = scn.echo();
        let back = Scenario::from_overlay_text(&defaults, &echo, "echo.cfg").unwrap();
        assert_eq!(back, scn);
    }

    #[test]
    fn band_overlay_replaces_rather_than_appends() {
        let defaults = Scenario::shipped_defaults().unwrap();
        let overlay = "[segmentation]\nband = only|0|inf|inf\n";
        let scn = Scenario::from_overlay_text(&defaults, overlay, "x.cfg").unwrap();
        assert_eq!(scn.segmentation.economic_scheme.bands.len(), 1);
    }
}
