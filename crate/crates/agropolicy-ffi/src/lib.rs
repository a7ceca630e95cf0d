//! C ABI over the agropolicy core: opaque scenario handles, integer
//! status codes, and a thread-local last-error message. The header is
//! generated into `include/agropolicy.h` at build time.
//!
//! Ownership rules: every `*_new`/`*_parse` constructor is paired with
//! `agro_scenario_free`; strings passed in are borrowed NUL-terminated
//! UTF-8; nothing is retained across calls.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use agropolicy::equilibrium::{run_policy_welfare, sweep_elasticities};
use agropolicy::fiscal::{assess_taxes, mtl_net, Regime};
use agropolicy::land_accounts::land_balance;
use agropolicy::money::{round_uah, to_f64};
use agropolicy::scenario::Scenario;

/// Status codes mirroring the CLI exit taxonomy, plus FFI-specific ones.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgroStatus {
    AgroOk = 0,
    /// Scenario text or model inputs were rejected.
    AgroConfigError = 2,
    /// The computation raised a flag (corner solution, over-explained land).
    AgroComputationFlag = 3,
    /// A pointer argument was NULL.
    AgroNullPointer = 5,
    /// A string argument was not valid UTF-8.
    AgroInvalidUtf8 = 6,
    /// Unexpected internal failure.
    AgroInternalError = 7,
}

/// Tax regimes, in the same order the core enumerates them.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgroRegime {
    AgroGeneralLegalEntity = 0,
    AgroSingleTax4VatPayer = 1,
    AgroSingleTax4NonVat = 2,
    AgroHouseholdShadow = 3,
    AgroHouseholdDeclared = 4,
}

impl From<AgroRegime> for Regime {
    fn from(r: AgroRegime) -> Regime {
        match r {
            AgroRegime::AgroGeneralLegalEntity => Regime::GeneralLegalEntity,
            AgroRegime::AgroSingleTax4VatPayer => Regime::SingleTax4VatPayer,
            AgroRegime::AgroSingleTax4NonVat => Regime::SingleTax4NonVat,
            AgroRegime::AgroHouseholdShadow => Regime::HouseholdShadow,
            AgroRegime::AgroHouseholdDeclared => Regime::HouseholdDeclared,
        }
    }
}

/// Point-calibration welfare outcome in UAH (annual).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgroWelfare {
    pub wedge_uah_per_ha: f64,
    pub delta_rent_uah_per_ha: f64,
    pub land_reallocated_ha: f64,
    pub d_surplus_cf_uah: f64,
    pub d_surplus_if_uah: f64,
    pub d_landowners_uah: f64,
    pub budget_revenue_uah: f64,
    pub dwl_uah: f64,
    /// Nonzero when the taxed equilibrium hit the corner.
    pub corner: u8,
}

/// Informal-land accounting result (million hectares unless noted).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgroLandBalance {
    pub cultivated_total_mln_ha: f64,
    pub explained_mln_ha: f64,
    pub informal_mln_ha: f64,
    pub informal_share: f64,
    /// Nonzero when declared sources exceed cultivated land.
    pub over_explained: u8,
}

/// Opaque fully resolved scenario.
pub struct AgroScenario {
    inner: Scenario,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn clear_error() {
    LAST_ERROR.with(|e| e.borrow_mut().clear());
}

/// Copy the last error message on this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must point to at least `len` writable bytes, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn agro_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

fn guard<F: FnOnce() -> AgroStatus>(f: F) -> AgroStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            AgroStatus::AgroInternalError
        }
    }
}

unsafe fn borrow_scenario<'a>(handle: *const AgroScenario) -> Option<&'a Scenario> {
    handle.as_ref().map(|h| &h.inner)
}

/// Create a scenario holding the shipped default calibration.
///
/// # Safety
/// `out` must be a valid pointer to a scenario-handle slot.
#[no_mangle]
pub unsafe extern "C" fn agro_scenario_default(out: *mut *mut AgroScenario) -> AgroStatus {
    guard(|| {
        let Some(out) = out.as_mut() else {
            set_error("out pointer is NULL");
            return AgroStatus::AgroNullPointer;
        };
        match Scenario::shipped_defaults() {
            Ok(scn) => {
                clear_error();
                *out = Box::into_raw(Box::new(AgroScenario { inner: scn }));
                AgroStatus::AgroOk
            }
            Err(e) => {
                set_error(e.to_string());
                AgroStatus::AgroConfigError
            }
        }
    })
}

/// Parse scenario text (overlaying the shipped defaults) into a handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn agro_scenario_parse(
    text: *const c_char,
    out: *mut *mut AgroScenario,
) -> AgroStatus {
    guard(|| {
        let Some(out) = out.as_mut() else {
            set_error("out pointer is NULL");
            return AgroStatus::AgroNullPointer;
        };
        if text.is_null() {
            set_error("scenario text is NULL");
            return AgroStatus::AgroNullPointer;
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            set_error("scenario text is not UTF-8");
            return AgroStatus::AgroInvalidUtf8;
        };
        let defaults = match Scenario::shipped_defaults() {
            Ok(d) => d,
            Err(e) => {
                set_error(e.to_string());
                return AgroStatus::AgroConfigError;
            }
        };
        match Scenario::from_overlay_text(&defaults, text, "<ffi>") {
            Ok(scn) => {
                clear_error();
                *out = Box::into_raw(Box::new(AgroScenario { inner: scn }));
                AgroStatus::AgroOk
            }
            Err(e) => {
                set_error(e.to_string());
                AgroStatus::AgroConfigError
            }
        }
    })
}

/// Release a scenario handle. NULL is a no-op.
///
/// # Safety
/// `handle` must come from a constructor in this library and not be
/// freed twice.
#[no_mangle]
pub unsafe extern "C" fn agro_scenario_free(handle: *mut AgroScenario) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Baseline tax burden for one regime, whole UAH per hectare.
///
/// # Safety
/// `handle` must be a live scenario handle; `out` a valid i64 slot.
#[no_mangle]
pub unsafe extern "C" fn agro_tax_total_uah_ha(
    handle: *const AgroScenario,
    regime: AgroRegime,
    out: *mut i64,
) -> AgroStatus {
    guard(|| {
        let (Some(scn), Some(out)) = (borrow_scenario(handle), out.as_mut()) else {
            set_error("NULL handle or out pointer");
            return AgroStatus::AgroNullPointer;
        };
        let profile = scn.bases.profile(regime.into());
        match assess_taxes(&profile, &scn.tax) {
            Ok(assessment) => {
                clear_error();
                *out = round_uah(assessment.total_per_ha);
                AgroStatus::AgroOk
            }
            Err(e) => {
                set_error(e.to_string());
                AgroStatus::AgroConfigError
            }
        }
    })
}

/// Net additional MTL burden for one regime under the scenario's bill,
/// whole UAH per hectare.
///
/// # Safety
/// `handle` must be a live scenario handle; `out` a valid i64 slot.
#[no_mangle]
pub unsafe extern "C" fn agro_mtl_net_uah_ha(
    handle: *const AgroScenario,
    regime: AgroRegime,
    out: *mut i64,
) -> AgroStatus {
    guard(|| {
        let (Some(scn), Some(out)) = (borrow_scenario(handle), out.as_mut()) else {
            set_error("NULL handle or out pointer");
            return AgroStatus::AgroNullPointer;
        };
        let profile = scn.bases.profile(regime.into());
        match mtl_net(&profile, &scn.tax, &scn.mtl) {
            Ok(net) => {
                clear_error();
                *out = round_uah(net);
                AgroStatus::AgroOk
            }
            Err(e) => {
                set_error(e.to_string());
                AgroStatus::AgroConfigError
            }
        }
    })
}

/// Welfare outcome at the scenario's point elasticities. Returns the
/// computation-flag status when the equilibrium hit the corner.
///
/// # Safety
/// `handle` must be a live scenario handle; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn agro_welfare(
    handle: *const AgroScenario,
    out: *mut AgroWelfare,
) -> AgroStatus {
    guard(|| {
        let (Some(scn), Some(out)) = (borrow_scenario(handle), out.as_mut()) else {
            set_error("NULL handle or out pointer");
            return AgroStatus::AgroNullPointer;
        };
        let wedge = match agropolicy::equilibrium::policy_wedge(
            &scn.mtl,
            &scn.tax,
            &scn.market.wedge,
        ) {
            Ok(w) => w,
            Err(e) => {
                set_error(e.to_string());
                return AgroStatus::AgroConfigError;
            }
        };
        match run_policy_welfare(&scn.market.calibration, &scn.mtl, &scn.tax, &scn.market.wedge)
        {
            Ok(w) => {
                clear_error();
                *out = AgroWelfare {
                    wedge_uah_per_ha: wedge,
                    delta_rent_uah_per_ha: w.delta_rent,
                    land_reallocated_ha: w.land_reallocated,
                    d_surplus_cf_uah: w.d_surplus_cf,
                    d_surplus_if_uah: w.d_surplus_if,
                    d_landowners_uah: w.d_landowners,
                    budget_revenue_uah: w.budget_revenue,
                    dwl_uah: w.dwl,
                    corner: w.corner as u8,
                };
                if w.corner {
                    AgroStatus::AgroComputationFlag
                } else {
                    AgroStatus::AgroOk
                }
            }
            Err(e) => {
                set_error(e.to_string());
                AgroStatus::AgroConfigError
            }
        }
    })
}

/// Deadweight-loss envelope (UAH) over the scenario's elasticity grid.
///
/// # Safety
/// `handle` must be a live scenario handle; both outs valid f64 slots.
#[no_mangle]
pub unsafe extern "C" fn agro_dwl_range_uah(
    handle: *const AgroScenario,
    out_min: *mut f64,
    out_max: *mut f64,
) -> AgroStatus {
    guard(|| {
        let (Some(scn), Some(out_min), Some(out_max)) =
            (borrow_scenario(handle), out_min.as_mut(), out_max.as_mut())
        else {
            set_error("NULL handle or out pointer");
            return AgroStatus::AgroNullPointer;
        };
        match sweep_elasticities(
            &scn.market.calibration,
            &scn.mtl,
            &scn.tax,
            &scn.market.wedge,
            &scn.market.grid(),
        ) {
            Ok(sweep) => {
                let range = sweep.metric("dwl").expect("dwl metric always present");
                clear_error();
                *out_min = range.min;
                *out_max = range.max;
                if sweep.corner_hit {
                    AgroStatus::AgroComputationFlag
                } else {
                    AgroStatus::AgroOk
                }
            }
            Err(e) => {
                set_error(e.to_string());
                AgroStatus::AgroConfigError
            }
        }
    })
}

/// Informal-land balance under the scenario's inputs. Returns the
/// computation-flag status when declared sources over-explain the land.
///
/// # Safety
/// `handle` must be a live scenario handle; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn agro_land_balance(
    handle: *const AgroScenario,
    out: *mut AgroLandBalance,
) -> AgroStatus {
    guard(|| {
        let (Some(scn), Some(out)) = (borrow_scenario(handle), out.as_mut()) else {
            set_error("NULL handle or out pointer");
            return AgroStatus::AgroNullPointer;
        };
        match land_balance(&scn.land.inputs) {
            Ok(r) => {
                clear_error();
                *out = AgroLandBalance {
                    cultivated_total_mln_ha: r.cultivated_total,
                    explained_mln_ha: r.explained,
                    informal_mln_ha: r.informal,
                    informal_share: r.informal_share,
                    over_explained: r.over_explained as u8,
                };
                if r.over_explained {
                    AgroStatus::AgroComputationFlag
                } else {
                    AgroStatus::AgroOk
                }
            }
            Err(e) => {
                set_error(e.to_string());
                AgroStatus::AgroConfigError
            }
        }
    })
}

/// Per-hectare policy wedge implied by the scenario's bill, UAH.
///
/// # Safety
/// `handle` must be a live scenario handle; `out` a valid f64 slot.
#[no_mangle]
pub unsafe extern "C" fn agro_policy_wedge_uah_ha(
    handle: *const AgroScenario,
    out: *mut f64,
) -> AgroStatus {
    guard(|| {
        let (Some(scn), Some(out)) = (borrow_scenario(handle), out.as_mut()) else {
            set_error("NULL handle or out pointer");
            return AgroStatus::AgroNullPointer;
        };
        match agropolicy::equilibrium::policy_wedge(&scn.mtl, &scn.tax, &scn.market.wedge) {
            Ok(w) => {
                clear_error();
                *out = w;
                AgroStatus::AgroOk
            }
            Err(e) => {
                set_error(e.to_string());
                AgroStatus::AgroConfigError
            }
        }
    })
}

// `to_f64` is re-exported so bindings that only link the FFI crate can
// still convert rationals coming from future extensions.
#[doc(hidden)]
pub fn _keep_to_f64_linked(x: agropolicy::money::Rational) -> f64 {
    to_f64(x)
}
