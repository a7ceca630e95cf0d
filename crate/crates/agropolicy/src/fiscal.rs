//! Per-hectare tax burdens under the five tax regimes and the
//! minimum-tax-liability (MTL) arithmetic of bills 3131 and 3131-d.
//!
//! Everything here is exact rational arithmetic in UAH per hectare;
//! rounding to whole hryvnias happens only in the report layer.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::ModelError;
use crate::money::{is_positive, ratio, round_uah, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Regime {
    GeneralLegalEntity,
    SingleTax4VatPayer,
    SingleTax4NonVat,
    HouseholdShadow,
    HouseholdDeclared,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::GeneralLegalEntity,
        Regime::SingleTax4VatPayer,
        Regime::SingleTax4NonVat,
        Regime::HouseholdShadow,
        Regime::HouseholdDeclared,
    ];

    pub fn is_household(self) -> bool {
        matches!(self, Regime::HouseholdShadow | Regime::HouseholdDeclared)
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::GeneralLegalEntity => "general_legal_entity",
            Regime::SingleTax4VatPayer => "single_tax4_vat_payer",
            Regime::SingleTax4NonVat => "single_tax4_non_vat",
            Regime::HouseholdShadow => "household_shadow",
            Regime::HouseholdDeclared => "household_declared",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LandClass {
    Arable,
    PastureOrGarden,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PayerKind {
    LegalEntity,
    RegisteredIndividualEntrepreneur,
    UnregisteredHousehold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TaxKind {
    Cit,
    SingleTax,
    LandTax,
    Pit,
    Ssc,
    Military,
    Vat,
}

impl TaxKind {
    pub fn name(self) -> &'static str {
        match self {
            TaxKind::Cit => "cit",
            TaxKind::SingleTax => "single_tax",
            TaxKind::LandTax => "land_tax",
            TaxKind::Pit => "pit",
            TaxKind::Ssc => "ssc",
            TaxKind::Military => "military",
            TaxKind::Vat => "vat",
        }
    }

    pub fn parse(s: &str) -> Result<TaxKind, ModelError> {
        match s {
            "cit" => Ok(TaxKind::Cit),
            "single_tax" => Ok(TaxKind::SingleTax),
            "land_tax" => Ok(TaxKind::LandTax),
            "pit" => Ok(TaxKind::Pit),
            "ssc" => Ok(TaxKind::Ssc),
            "military" => Ok(TaxKind::Military),
            "vat" => Ok(TaxKind::Vat),
            other => Err(ModelError::invalid("tax kind", other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Destination {
    Local,
    Central,
}

/// Statutory rates and bases for one scenario year.
#[derive(Debug, Clone, PartialEq)]
pub struct TaxParameters {
    /// Normative monetary valuation of land, UAH per hectare.
    pub ngo_per_ha: Rational,
    pub rate_cit: Rational,
    pub rate_pit: Rational,
    pub rate_military: Rational,
    pub rate_ssc: Rational,
    pub rate_vat: Rational,
    /// Land tax, as a fraction of NGO.
    pub rate_land_tax: Rational,
    /// Single tax of the 4th group, as a fraction of NGO.
    pub rate_single_tax4: Rational,
    pub uah_per_usd: f64,
    pub uah_per_eur: f64,
    /// Tax kinds accruing to local budgets; everything else is central.
    pub local_taxes: BTreeSet<TaxKind>,
}

impl TaxParameters {
    pub fn validate(&self) -> Result<(), ModelError> {
        let unit = ratio(1, 1);
        for (name, r) in [
            ("rate_cit", self.rate_cit),
            ("rate_pit", self.rate_pit),
            ("rate_military", self.rate_military),
            ("rate_ssc", self.rate_ssc),
            ("rate_vat", self.rate_vat),
            ("rate_land_tax", self.rate_land_tax),
            ("rate_single_tax4", self.rate_single_tax4),
        ] {
            if r < zero() || r > unit {
                return Err(ModelError::invalid(
                    "tax rate",
                    format!("{name} must lie in [0, 1]"),
                ));
            }
        }
        if self.ngo_per_ha < zero() {
            return Err(ModelError::invalid("ngo_per_ha", "must be non-negative"));
        }
        if !is_positive(self.uah_per_usd) || !is_positive(self.uah_per_eur) {
            return Err(ModelError::invalid("exchange rate", "must be positive"));
        }
        Ok(())
    }

    pub fn destination(&self, kind: TaxKind) -> Destination {
        if self.local_taxes.contains(&kind) {
            Destination::Local
        } else {
            Destination::Central
        }
    }
}

/// One producer: its regime and per-hectare economic bases.
#[derive(Debug, Clone, PartialEq)]
pub struct FarmProfile {
    pub regime: Regime,
    pub land_ha: f64,
    pub land_class: LandClass,
    pub payer_kind: PayerKind,
    pub rent_paid_per_ha: Rational,
    pub wage_bill_per_ha: Rational,
    pub revenue_per_ha: Rational,
    pub input_purchases_per_ha: Rational,
    pub taxable_profit_per_ha: Rational,
}

impl FarmProfile {
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, v) in [
            ("rent_paid_per_ha", self.rent_paid_per_ha),
            ("wage_bill_per_ha", self.wage_bill_per_ha),
            ("revenue_per_ha", self.revenue_per_ha),
            ("input_purchases_per_ha", self.input_purchases_per_ha),
            ("taxable_profit_per_ha", self.taxable_profit_per_ha),
        ] {
            if v < zero() {
                return Err(ModelError::invalid(
                    "farm profile",
                    format!("{name} must be non-negative"),
                ));
            }
        }
        if !is_positive(self.land_ha) {
            return Err(ModelError::invalid("farm profile", "land_ha must be > 0"));
        }
        if self.regime.is_household() && self.payer_kind != PayerKind::UnregisteredHousehold {
            return Err(ModelError::invalid(
                "farm profile",
                "household regimes require an unregistered-household payer",
            ));
        }
        Ok(())
    }
}

/// Default per-hectare bases shared by the shipped calibration.
#[derive(Debug, Clone, PartialEq)]
pub struct DefaultBases {
    pub rent_paid_per_ha: Rational,
    pub wage_bill_per_ha: Rational,
    pub revenue_per_ha: Rational,
    pub input_purchases_per_ha: Rational,
    pub taxable_profit_per_ha: Rational,
}

impl DefaultBases {
    /// One-hectare profile for a regime under these bases.
    pub fn profile(&self, regime: Regime) -> FarmProfile {
        FarmProfile {
            regime,
            land_ha: 1.0,
            land_class: LandClass::Arable,
            payer_kind: if regime.is_household() {
                PayerKind::UnregisteredHousehold
            } else {
                PayerKind::LegalEntity
            },
            rent_paid_per_ha: self.rent_paid_per_ha,
            wage_bill_per_ha: self.wage_bill_per_ha,
            revenue_per_ha: self.revenue_per_ha,
            input_purchases_per_ha: self.input_purchases_per_ha,
            taxable_profit_per_ha: self.taxable_profit_per_ha,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaxComponent {
    pub kind: TaxKind,
    pub amount_per_ha: Rational,
    pub destination: Destination,
    /// Paid as a tax agent (withheld on behalf of employees, landowners
    /// or customers) rather than on the producer's own account.
    pub agent: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaxAssessment {
    pub regime: Regime,
    pub components: Vec<TaxComponent>,
    pub total_per_ha: Rational,
    pub own_per_ha: Rational,
    pub agent_per_ha: Rational,
}

impl TaxAssessment {
    pub fn component(&self, kind: TaxKind) -> Rational {
        self.components
            .iter()
            .filter(|c| c.kind == kind)
            .map(|c| c.amount_per_ha)
            .sum()
    }

    /// PIT + SSC + military, the grouped row of the burden report.
    pub fn labour_and_rent_taxes(&self) -> Rational {
        self.component(TaxKind::Pit) + self.component(TaxKind::Ssc) + self.component(TaxKind::Military)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bill {
    None,
    Bill3131,
    Bill3131d,
}

impl Bill {
    pub fn label(self) -> &'static str {
        match self {
            Bill::None => "none",
            Bill::Bill3131 => "3131",
            Bill::Bill3131d => "3131d",
        }
    }
}

/// Which bill applies and its rate schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct MtlPolicy {
    pub bill: Bill,
    /// Bill 3131: flat rate, fraction of NGO.
    pub flat_rate: Rational,
    /// Bill 3131-d rate schedule.
    pub rate_pasture_garden: Rational,
    pub rate_registered_entrepreneur: Rational,
    pub rate_other: Rational,
    /// Taxes a registered payer may credit against the MTL.
    pub creditable_taxes: BTreeSet<TaxKind>,
    /// Taxes an unregistered household may credit (land tax only).
    pub household_creditable_taxes: BTreeSet<TaxKind>,
    /// Transition multipliers for registered individual family farms,
    /// year 0 first; years beyond the list are fully phased in.
    pub phase_in: Vec<Rational>,
    pub evaluation_year: usize,
}

impl MtlPolicy {
    pub fn validate(&self) -> Result<(), ModelError> {
        let unit = ratio(1, 1);
        for (name, r) in [
            ("flat_rate", self.flat_rate),
            ("rate_pasture_garden", self.rate_pasture_garden),
            ("rate_registered_entrepreneur", self.rate_registered_entrepreneur),
            ("rate_other", self.rate_other),
        ] {
            if r < zero() || r > unit {
                return Err(ModelError::invalid(
                    "mtl rate",
                    format!("{name} must lie in [0, 1]"),
                ));
            }
        }
        let mut prev = zero();
        for (i, p) in self.phase_in.iter().enumerate() {
            if *p < zero() || *p > unit {
                return Err(ModelError::invalid(
                    "phase_in",
                    format!("entry {i} must lie in [0, 1]"),
                ));
            }
            if *p < prev {
                return Err(ModelError::invalid("phase_in", "must be non-decreasing"));
            }
            prev = *p;
        }
        Ok(())
    }

    /// Phase-in multiplier for the evaluation year; 1 once the schedule
    /// is exhausted.
    pub fn phase_multiplier(&self) -> Rational {
        self.phase_in
            .get(self.evaluation_year)
            .copied()
            .unwrap_or_else(|| ratio(1, 1))
    }
}

/// Gross MTL per hectare before any tax credit.
pub fn mtl_gross(
    profile: &FarmProfile,
    policy: &MtlPolicy,
    params: &TaxParameters,
) -> Result<Rational, ModelError> {
    mtl_gross_for(profile.land_class, profile.payer_kind, policy, params)
}

/// Gross MTL for a land class and payer kind. Bill 3131 is a flat rate;
/// bill 3131-d differentiates by land class and payer, with the transition
/// multiplier applied to registered individual family farms only.
pub fn mtl_gross_for(
    land_class: LandClass,
    payer_kind: PayerKind,
    policy: &MtlPolicy,
    params: &TaxParameters,
) -> Result<Rational, ModelError> {
    match policy.bill {
        Bill::None => Err(ModelError::NoBill),
        Bill::Bill3131 => Ok(policy.flat_rate * params.ngo_per_ha),
        Bill::Bill3131d => {
            let rate = if land_class == LandClass::PastureOrGarden {
                policy.rate_pasture_garden
            } else {
                match payer_kind {
                    PayerKind::RegisteredIndividualEntrepreneur => {
                        policy.rate_registered_entrepreneur * policy.phase_multiplier()
                    }
                    _ => policy.rate_other,
                }
            };
            Ok(rate * params.ngo_per_ha)
        }
    }
}

/// Taxes already paid that count against the MTL. Registered payers credit
/// the configured set; unregistered households credit land tax only. VAT is
/// never creditable.
pub fn mtl_creditable(
    assessment: &TaxAssessment,
    profile: &FarmProfile,
    policy: &MtlPolicy,
) -> Rational {
    let set = if profile.payer_kind == PayerKind::UnregisteredHousehold {
        &policy.household_creditable_taxes
    } else {
        &policy.creditable_taxes
    };
    assessment
        .components
        .iter()
        .filter(|c| c.kind != TaxKind::Vat && set.contains(&c.kind))
        .map(|c| c.amount_per_ha)
        .sum()
}

/// Net additional MTL burden per hectare: max(0, gross - creditable).
pub fn mtl_net(
    profile: &FarmProfile,
    params: &TaxParameters,
    policy: &MtlPolicy,
) -> Result<Rational, ModelError> {
    if policy.bill == Bill::None {
        return Ok(zero());
    }
    let assessment = assess_taxes(profile, params)?;
    let gross = mtl_gross(profile, policy, params)?;
    let credit = mtl_creditable(&assessment, profile, policy);
    Ok(if gross > credit { gross - credit } else { zero() })
}

/// Per-hectare taxes borne under the profile's regime.
pub fn assess_taxes(
    profile: &FarmProfile,
    params: &TaxParameters,
) -> Result<TaxAssessment, ModelError> {
    profile.validate()?;
    params.validate()?;

    let land_tax = params.rate_land_tax * params.ngo_per_ha;
    let single_tax = params.rate_single_tax4 * params.ngo_per_ha;
    let labour_base = profile.rent_paid_per_ha + profile.wage_bill_per_ha;
    let pit_on_labour = params.rate_pit * labour_base;
    let military_on_labour = params.rate_military * labour_base;
    let ssc_on_wages = params.rate_ssc * profile.wage_bill_per_ha;
    let vat_on_inputs = params.rate_vat * profile.input_purchases_per_ha;

    let mut components: Vec<TaxComponent> = Vec::new();
    let mut push = |kind: TaxKind, amount: Rational, agent: bool| {
        components.push(TaxComponent {
            kind,
            amount_per_ha: amount,
            destination: params.destination(kind),
            agent,
        });
    };

    match profile.regime {
        Regime::GeneralLegalEntity => {
            push(TaxKind::Cit, params.rate_cit * profile.taxable_profit_per_ha, false);
            // paid on behalf of the landowners whose plots the firm rents
            push(TaxKind::LandTax, land_tax, true);
            push(TaxKind::Pit, pit_on_labour, true);
            push(TaxKind::Ssc, ssc_on_wages, true);
            push(TaxKind::Military, military_on_labour, true);
            // VAT-registered: VAT is borne by final consumers
        }
        Regime::SingleTax4VatPayer => {
            push(TaxKind::SingleTax, single_tax, false);
            push(TaxKind::Pit, pit_on_labour, true);
            push(TaxKind::Ssc, ssc_on_wages, true);
            push(TaxKind::Military, military_on_labour, true);
        }
        Regime::SingleTax4NonVat => {
            push(TaxKind::SingleTax, single_tax, false);
            push(TaxKind::Pit, pit_on_labour, true);
            push(TaxKind::Ssc, ssc_on_wages, true);
            push(TaxKind::Military, military_on_labour, true);
            // without VAT registration input VAT cannot be reclaimed
            push(TaxKind::Vat, vat_on_inputs, true);
        }
        Regime::HouseholdShadow => {
            push(TaxKind::LandTax, land_tax, false);
            push(TaxKind::Vat, vat_on_inputs, false);
        }
        Regime::HouseholdDeclared => {
            push(TaxKind::LandTax, land_tax, false);
            push(TaxKind::Pit, params.rate_pit * profile.revenue_per_ha, false);
            push(TaxKind::Military, params.rate_military * profile.revenue_per_ha, false);
            push(TaxKind::Vat, vat_on_inputs, false);
        }
    }

    let total_per_ha: Rational = components.iter().map(|c| c.amount_per_ha).sum();
    let agent_per_ha: Rational = components
        .iter()
        .filter(|c| c.agent)
        .map(|c| c.amount_per_ha)
        .sum();
    Ok(TaxAssessment {
        regime: profile.regime,
        own_per_ha: total_per_ha - agent_per_ha,
        agent_per_ha,
        total_per_ha,
        components,
    })
}

/// One row of the regime burden table, rounded to whole UAH per hectare.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BurdenRow {
    pub regime: &'static str,
    pub baseline_uah_ha: i64,
    pub mtl_net_uah_ha: i64,
    pub total_uah_ha: i64,
}

/// Baseline burden, net MTL and combined total for every regime under the
/// default bases.
pub fn burden_table(
    params: &TaxParameters,
    policy: &MtlPolicy,
    bases: &DefaultBases,
) -> Result<Vec<BurdenRow>, ModelError> {
    let mut rows = Vec::with_capacity(Regime::ALL.len());
    for regime in Regime::ALL {
        let profile = bases.profile(regime);
        let assessment = assess_taxes(&profile, params)?;
        let net = mtl_net(&profile, params, policy)?;
        rows.push(BurdenRow {
            regime: regime.label(),
            baseline_uah_ha: round_uah(assessment.total_per_ha),
            mtl_net_uah_ha: round_uah(net),
            total_uah_ha: round_uah(assessment.total_per_ha + net),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Scenario;

    fn defaults() -> Scenario {
        Scenario::shipped_defaults().expect("defaults parse")
    }

    fn totals(scn: &Scenario) -> Vec<i64> {
        Regime::ALL
            .iter()
            .map(|&r| {
                let p = scn.bases.profile(r);
                round_uah(assess_taxes(&p, &scn.tax).unwrap().total_per_ha)
            })
            .collect()
    }

    #[test]
    fn reproduces_published_regime_totals() {
        let scn = defaults();
        assert_eq!(totals(&scn), vec![2_172, 1_362, 2_748, 1_526, 4_334]);
    }

    #[test]
    fn general_regime_components() {
        let scn = defaults();
        let a = assess_taxes(&scn.bases.profile(Regime::GeneralLegalEntity), &scn.tax).unwrap();
        assert_eq!(round_uah(a.component(TaxKind::Cit)), 936);
        assert_eq!(round_uah(a.component(TaxKind::LandTax)), 140);
        assert_eq!(round_uah(a.labour_and_rent_taxes()), 1_096);
        assert_eq!(round_uah(a.component(TaxKind::Vat)), 0);
        assert_eq!(round_uah(a.own_per_ha), 936);
        assert_eq!(round_uah(a.agent_per_ha), 1_236);
    }

    #[test]
    fn single_tax_non_vat_components() {
        let scn = defaults();
        let a = assess_taxes(&scn.bases.profile(Regime::SingleTax4NonVat), &scn.tax).unwrap();
        assert_eq!(round_uah(a.component(TaxKind::SingleTax)), 266);
        assert_eq!(round_uah(a.labour_and_rent_taxes()), 1_096);
        assert_eq!(round_uah(a.component(TaxKind::Vat)), 1_386);
        assert_eq!(round_uah(a.total_per_ha), 2_748);
    }

    #[test]
    fn declared_household_components() {
        let scn = defaults();
        let a = assess_taxes(&scn.bases.profile(Regime::HouseholdDeclared), &scn.tax).unwrap();
        assert_eq!(round_uah(a.component(TaxKind::LandTax)), 140);
        assert_eq!(round_uah(a.labour_and_rent_taxes()), 2_808);
        assert_eq!(round_uah(a.component(TaxKind::Vat)), 1_386);
        assert_eq!(round_uah(a.total_per_ha), 4_334);
        assert_eq!(a.agent_per_ha, zero());
    }

    #[test]
    fn zero_bases_and_zero_ngo_yield_zero_total() {
        let scn = defaults();
        let mut params = scn.tax.clone();
        params.ngo_per_ha = zero();
        let bases = DefaultBases {
            rent_paid_per_ha: zero(),
            wage_bill_per_ha: zero(),
            revenue_per_ha: zero(),
            input_purchases_per_ha: zero(),
            taxable_profit_per_ha: zero(),
        };
        for regime in Regime::ALL {
            let a = assess_taxes(&bases.profile(regime), &params).unwrap();
            assert_eq!(a.total_per_ha, zero(), "{regime:?}");
        }
    }

    #[test]
    fn negative_base_rejected() {
        let scn = defaults();
        let mut profile = scn.bases.profile(Regime::GeneralLegalEntity);
        profile.rent_paid_per_ha = ratio(-1, 1);
        assert!(assess_taxes(&profile, &scn.tax).is_err());
    }

    #[test]
    fn household_payer_invariant_enforced() {
        let scn = defaults();
        let mut profile = scn.bases.profile(Regime::HouseholdShadow);
        profile.payer_kind = PayerKind::LegalEntity;
        assert!(assess_taxes(&profile, &scn.tax).is_err());
    }

    #[test]
    fn mtl_gross_flat_and_differentiated() {
        let scn = defaults();
        let mut policy = scn.mtl.clone();
        policy.bill = Bill::Bill3131;
        let p = scn.bases.profile(Regime::HouseholdShadow);
        assert_eq!(mtl_gross(&p, &policy, &scn.tax).unwrap(), ratio(1_400, 1));

        policy.bill = Bill::Bill3131d;
        // pastures and gardens: 1%
        assert_eq!(
            mtl_gross_for(LandClass::PastureOrGarden, PayerKind::LegalEntity, &policy, &scn.tax)
                .unwrap(),
            ratio(280, 1)
        );
        // registered individual farm, fully phased: 2%
        assert_eq!(
            mtl_gross_for(
                LandClass::Arable,
                PayerKind::RegisteredIndividualEntrepreneur,
                &policy,
                &scn.tax
            )
            .unwrap(),
            ratio(560, 1)
        );
        // everyone else: 4.5%
        assert_eq!(
            mtl_gross_for(LandClass::Arable, PayerKind::UnregisteredHousehold, &policy, &scn.tax)
                .unwrap(),
            ratio(1_260, 1)
        );
    }

    #[test]
    fn mtl_gross_phase_in_and_zero_ngo() {
        let scn = defaults();
        let mut policy = scn.mtl.clone();
        policy.bill = Bill::Bill3131d;
        policy.evaluation_year = 0;
        let phased = mtl_gross_for(
            LandClass::Arable,
            PayerKind::RegisteredIndividualEntrepreneur,
            &policy,
            &scn.tax,
        )
        .unwrap();
        assert_eq!(phased, ratio(280, 1)); // 2% * 28,000 * 0.5

        policy.bill = Bill::Bill3131;
        let mut params = scn.tax.clone();
        params.ngo_per_ha = zero();
        let p = scn.bases.profile(Regime::HouseholdShadow);
        assert_eq!(mtl_gross(&p, &policy, &params).unwrap(), zero());
    }

    #[test]
    fn creditable_amounts_by_regime() {
        let scn = defaults();
        let policy = MtlPolicy {
            bill: Bill::Bill3131,
            ..scn.mtl.clone()
        };
        let general = scn.bases.profile(Regime::GeneralLegalEntity);
        let a = assess_taxes(&general, &scn.tax).unwrap();
        assert_eq!(round_uah(mtl_creditable(&a, &general, &policy)), 2_172);

        let st = scn.bases.profile(Regime::SingleTax4NonVat);
        let a = assess_taxes(&st, &scn.tax).unwrap();
        assert_eq!(round_uah(mtl_creditable(&a, &st, &policy)), 1_362);

        let hh = scn.bases.profile(Regime::HouseholdDeclared);
        let a = assess_taxes(&hh, &scn.tax).unwrap();
        assert_eq!(round_uah(mtl_creditable(&a, &hh, &policy)), 140);
    }

    #[test]
    fn net_burden_under_bill_3131() {
        let scn = defaults();
        let policy = MtlPolicy {
            bill: Bill::Bill3131,
            ..scn.mtl.clone()
        };
        let expect: [(Regime, i64); 5] = [
            (Regime::GeneralLegalEntity, 0),
            (Regime::SingleTax4VatPayer, 38),
            (Regime::SingleTax4NonVat, 38),
            (Regime::HouseholdShadow, 1_260),
            (Regime::HouseholdDeclared, 1_260),
        ];
        for (regime, want) in expect {
            let p = scn.bases.profile(regime);
            assert_eq!(round_uah(mtl_net(&p, &scn.tax, &policy).unwrap()), want, "{regime:?}");
        }
    }

    #[test]
    fn burden_table_no_policy_identity() {
        let scn = defaults();
        let rows = burden_table(&scn.tax, &scn.mtl, &scn.bases).unwrap();
        assert!(rows.iter().all(|r| r.mtl_net_uah_ha == 0));
        assert!(rows.iter().all(|r| r.total_uah_ha == r.baseline_uah_ha));
    }

    #[test]
    fn burden_table_bill_3131_household_total() {
        let scn = defaults();
        let policy = MtlPolicy {
            bill: Bill::Bill3131,
            ..scn.mtl.clone()
        };
        let rows = burden_table(&scn.tax, &policy, &scn.bases).unwrap();
        let hh = rows.iter().find(|r| r.regime == "household_shadow").unwrap();
        assert_eq!(hh.baseline_uah_ha, 1_526);
        assert_eq!(hh.mtl_net_uah_ha, 1_260);
        assert_eq!(hh.total_uah_ha, 2_786);
    }

    #[test]
    fn regime_ordering_under_bill_3131() {
        let scn = defaults();
        let policy = MtlPolicy {
            bill: Bill::Bill3131,
            ..scn.mtl.clone()
        };
        let net = |r: Regime| mtl_net(&scn.bases.profile(r), &scn.tax, &policy).unwrap();
        assert!(net(Regime::HouseholdShadow) > net(Regime::SingleTax4VatPayer));
        assert!(net(Regime::HouseholdDeclared) > net(Regime::SingleTax4NonVat));
        assert!(net(Regime::SingleTax4VatPayer) >= net(Regime::GeneralLegalEntity));
    }
}
