//! Deterministic report rendering: fixed column orders, floats at six
//! significant digits, money in whole UAH plus USD millions to one
//! decimal. No timestamps here — run metadata lives in a sidecar so data
//! files are byte-identical across reruns.

use std::fmt::Write as _;

use serde_json::json;

use crate::equilibrium::SweepReport;
use crate::error::ModelError;
use crate::fiscal::{assess_taxes, burden_table, Regime, TaxKind};
use crate::incidence::IncidenceRow;
use crate::land_accounts::LandBalanceResult;
use crate::money::round_uah;
use crate::scenario::Scenario;
use crate::segmentation::SegmentRow;

/// Six significant digits, plain decimal notation.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let precision = (5 - magnitude).max(0) as usize;
    format!("{x:.precision$}")
}

fn fmt_uah_whole(x: f64) -> String {
    format!("{}", x.round() as i64)
}

fn fmt_usd_mln(x_uah: f64, uah_per_usd: f64) -> String {
    // `+ 0.0` folds IEEE negative zero into plain zero before printing
    format!("{:.1}", x_uah / uah_per_usd / 1e6 + 0.0)
}

/// Per-regime tax components and totals, whole UAH per hectare.
pub fn taxes_csv(scn: &Scenario) -> Result<String, ModelError> {
    let mut out = String::from(
        "regime,cit,single_tax,land_tax,pit,ssc,military,vat,own_uah_ha,agent_uah_ha,total_uah_ha\n",
    );
    const KINDS: [TaxKind; 7] = [
        TaxKind::Cit,
        TaxKind::SingleTax,
        TaxKind::LandTax,
        TaxKind::Pit,
        TaxKind::Ssc,
        TaxKind::Military,
        TaxKind::Vat,
    ];
    for regime in Regime::ALL {
        let assessment = assess_taxes(&scn.bases.profile(regime), &scn.tax)?;
        let _ = write!(out, "{}", regime.label());
        for kind in KINDS {
            let _ = write!(out, ",{}", round_uah(assessment.component(kind)));
        }
        let _ = writeln!(
            out,
            ",{},{},{}",
            round_uah(assessment.own_per_ha),
            round_uah(assessment.agent_per_ha),
            round_uah(assessment.total_per_ha)
        );
    }
    Ok(out)
}

/// Baseline vs. MTL burden per regime.
pub fn mtl_csv(scn: &Scenario) -> Result<String, ModelError> {
    let mut out = String::from("regime,baseline_uah_ha,mtl_net_uah_ha,total_uah_ha\n");
    for row in burden_table(&scn.tax, &scn.mtl, &scn.bases)? {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.regime, row.baseline_uah_ha, row.mtl_net_uah_ha, row.total_uah_ha
        );
    }
    Ok(out)
}

/// Sweep envelope per welfare metric. Non-monetary metrics (hectares,
/// rent per hectare) leave the USD columns empty.
pub fn welfare_csv(sweep: &SweepReport, uah_per_usd: f64) -> String {
    let mut out = String::from("metric,min_uah,max_uah,min_usd,max_usd\n");
    for (name, range) in &sweep.metrics {
        if *name == "land_reallocated_ha" || *name == "delta_rent_uah_ha" {
            let _ = writeln!(out, "{name},{},{},,", fmt_sig6(range.min), fmt_sig6(range.max));
        } else {
            let _ = writeln!(
                out,
                "{name},{},{},{},{}",
                fmt_uah_whole(range.min),
                fmt_uah_whole(range.max),
                fmt_usd_mln(range.min, uah_per_usd),
                fmt_usd_mln(range.max, uah_per_usd)
            );
        }
    }
    out
}

/// Cohort burden shares in percent.
pub fn incidence_csv(rows: &[IncidenceRow]) -> String {
    let mut out = String::from("label,burden_pct\n");
    for row in rows {
        let _ = writeln!(out, "{},{}", row.label, fmt_sig6(row.burden * 100.0));
    }
    out
}

/// Every term of the land balance, not just the residual, plus the
/// shadow-output share.
pub fn land_balance_csv(result: &LandBalanceResult, output_share: f64) -> String {
    let mut out = String::from("term,value,unit\n");
    let mut row = |term: &str, value: f64, unit: &str| {
        let _ = writeln!(out, "{term},{},{unit}", fmt_sig6(value));
    };
    row("cultivated_total", result.cultivated_total, "mln_ha");
    row("declared_ep4", result.declared_ep4, "mln_ha");
    row("ep2_assumed", result.ep2_assumed, "mln_ha");
    row("osg_own_use", result.osg_own_use, "mln_ha");
    row("uncultivated_assumed", result.uncultivated_assumed, "mln_ha");
    row("explained", result.explained, "mln_ha");
    row("informal", result.informal, "mln_ha");
    row("informal_share", result.informal_share * 100.0, "pct");
    row("shadow_output_share", output_share * 100.0, "pct");
    out
}

/// Per-farm classification, size column empty when no product was given.
pub fn segmentation_csv(rows: &[SegmentRow]) -> String {
    let mut out = String::from("farm_id,segment,estimated_size\n");
    for row in rows {
        let size = row
            .estimated_size
            .map(fmt_sig6)
            .unwrap_or_default();
        let _ = writeln!(out, "{},{},{}", row.farm_id, row.segment, size);
    }
    out
}

/// Structured aggregate of every section that ran.
#[derive(Default)]
pub struct AggregateReport {
    pub taxes: Option<serde_json::Value>,
    pub mtl: Option<serde_json::Value>,
    pub welfare: Option<serde_json::Value>,
    pub incidence: Option<serde_json::Value>,
    pub shadow: Option<serde_json::Value>,
    pub segmentation: Option<serde_json::Value>,
}

impl AggregateReport {
    pub fn to_json(&self, scn: &Scenario) -> String {
        let mut root = serde_json::Map::new();
        root.insert("scenario".into(), json!(scn.name));
        root.insert("bill".into(), json!(scn.mtl.bill.label()));
        let mut insert = |key: &str, value: &Option<serde_json::Value>| {
            if let Some(v) = value {
                root.insert(key.into(), v.clone());
            }
        };
        insert("taxes", &self.taxes);
        insert("mtl", &self.mtl);
        insert("welfare", &self.welfare);
        insert("incidence", &self.incidence);
        insert("shadow", &self.shadow);
        insert("segmentation", &self.segmentation);
        let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(root))
            .expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

/// JSON fragment for the welfare sweep.
pub fn welfare_json(sweep: &SweepReport, uah_per_usd: f64) -> serde_json::Value {
    let metrics: serde_json::Map<String, serde_json::Value> = sweep
        .metrics
        .iter()
        .map(|(name, range)| {
            let mut m = serde_json::Map::new();
            m.insert("min".into(), json!(range.min));
            m.insert("max".into(), json!(range.max));
            if *name != "land_reallocated_ha" && *name != "delta_rent_uah_ha" {
                m.insert(
                    "min_usd_mln".into(),
                    json!(range.min / uah_per_usd / 1e6),
                );
                m.insert(
                    "max_usd_mln".into(),
                    json!(range.max / uah_per_usd / 1e6),
                );
            }
            (name.to_string(), serde_json::Value::Object(m))
        })
        .collect();
    json!({
        "wedge_uah_per_ha": sweep.wedge,
        "grid_points": sweep.points,
        "corner_hit": sweep.corner_hit,
        "metrics": metrics,
    })
}

/// JSON fragment for the shadow-sector estimates. Flags where the model
/// lands relative to the published upper bounds so the discrepancy is in
/// the report, not only in prose.
pub fn shadow_json(result: &LandBalanceResult, output_share: f64) -> serde_json::Value {
    const PUBLISHED_LAND_SHARE_UPPER_PCT: f64 = 18.0;
    const PUBLISHED_OUTPUT_SHARE_UPPER_PCT: f64 = 12.0;
    json!({
        "cultivated_total_mln_ha": result.cultivated_total,
        "declared_ep4_mln_ha": result.declared_ep4,
        "ep2_assumed_mln_ha": result.ep2_assumed,
        "osg_own_use_mln_ha": result.osg_own_use,
        "uncultivated_assumed_mln_ha": result.uncultivated_assumed,
        "explained_mln_ha": result.explained,
        "informal_mln_ha": result.informal,
        "informal_share_pct": result.informal_share * 100.0,
        "over_explained": result.over_explained,
        "shadow_output_share_pct": output_share * 100.0,
        "published_land_share_upper_pct": PUBLISHED_LAND_SHARE_UPPER_PCT,
        "published_output_share_upper_pct": PUBLISHED_OUTPUT_SHARE_UPPER_PCT,
        "output_share_exceeds_published_bound":
            output_share * 100.0 > PUBLISHED_OUTPUT_SHARE_UPPER_PCT,
    })
}
