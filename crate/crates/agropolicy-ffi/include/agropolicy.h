#ifndef AGROPOLICY_H
#define AGROPOLICY_H

/* Generated by cbindgen from agropolicy-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Tax regimes, in the same order the core enumerates them.
 */
typedef enum AgroRegime {
  AGRO_GENERAL_LEGAL_ENTITY = 0,
  AGRO_SINGLE_TAX4_VAT_PAYER = 1,
  AGRO_SINGLE_TAX4_NON_VAT = 2,
  AGRO_HOUSEHOLD_SHADOW = 3,
  AGRO_HOUSEHOLD_DECLARED = 4,
} AgroRegime;

/**
 * Status codes mirroring the CLI exit taxonomy, plus FFI-specific ones.
 */
typedef enum AgroStatus {
  AGRO_OK = 0,
  /**
   * Scenario text or model inputs were rejected.
   */
  AGRO_CONFIG_ERROR = 2,
  /**
   * The computation raised a flag (corner solution, over-explained land).
   */
  AGRO_COMPUTATION_FLAG = 3,
  /**
   * A pointer argument was NULL.
   */
  AGRO_NULL_POINTER = 5,
  /**
   * A string argument was not valid UTF-8.
   */
  AGRO_INVALID_UTF8 = 6,
  /**
   * Unexpected internal failure.
   */
  AGRO_INTERNAL_ERROR = 7,
} AgroStatus;

/**
 * Opaque fully resolved scenario.
 */
typedef struct AgroScenario AgroScenario;

/**
 * Point-calibration welfare outcome in UAH (annual).
 */
typedef struct AgroWelfare {
  double wedge_uah_per_ha;
  double delta_rent_uah_per_ha;
  double land_reallocated_ha;
  double d_surplus_cf_uah;
  double d_surplus_if_uah;
  double d_landowners_uah;
  double budget_revenue_uah;
  double dwl_uah;
  /**
   * Nonzero when the taxed equilibrium hit the corner.
   */
  uint8_t corner;
} AgroWelfare;

/**
 * Informal-land accounting result (million hectares unless noted).
 */
typedef struct AgroLandBalance {
  double cultivated_total_mln_ha;
  double explained_mln_ha;
  double informal_mln_ha;
  double informal_share;
  /**
   * Nonzero when declared sources exceed cultivated land.
   */
  uint8_t over_explained;
} AgroLandBalance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message on this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length in bytes.
 *
 * # Safety
 * `buf` must point to at least `len` writable bytes, or be NULL.
 */
uintptr_t agro_last_error_message(char *buf, uintptr_t len);

/**
 * Create a scenario holding the shipped default calibration.
 *
 * # Safety
 * `out` must be a valid pointer to a scenario-handle slot.
 */
enum AgroStatus agro_scenario_default(struct AgroScenario **out);

/**
 * Parse scenario text (overlaying the shipped defaults) into a handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` a valid slot.
 */
enum AgroStatus agro_scenario_parse(const char *text, struct AgroScenario **out);

/**
 * Release a scenario handle. NULL is a no-op.
 *
 * # Safety
 * `handle` must come from a constructor in this library and not be
 * freed twice.
 */
void agro_scenario_free(struct AgroScenario *handle);

/**
 * Baseline tax burden for one regime, whole UAH per hectare.
 *
 * # Safety
 * `handle` must be a live scenario handle; `out` a valid i64 slot.
 */
enum AgroStatus agro_tax_total_uah_ha(const struct AgroScenario *handle,
                                      enum AgroRegime regime,
                                      int64_t *out);

/**
 * Net additional MTL burden for one regime under the scenario's bill,
 * whole UAH per hectare.
 *
 * # Safety
 * `handle` must be a live scenario handle; `out` a valid i64 slot.
 */
enum AgroStatus agro_mtl_net_uah_ha(const struct AgroScenario *handle,
                                    enum AgroRegime regime,
                                    int64_t *out);

/**
 * Welfare outcome at the scenario's point elasticities. Returns the
 * computation-flag status when the equilibrium hit the corner.
 *
 * # Safety
 * `handle` must be a live scenario handle; `out` a valid slot.
 */
enum AgroStatus agro_welfare(const struct AgroScenario *handle, struct AgroWelfare *out);

/**
 * Deadweight-loss envelope (UAH) over the scenario's elasticity grid.
 *
 * # Safety
 * `handle` must be a live scenario handle; both outs valid f64 slots.
 */
enum AgroStatus agro_dwl_range_uah(const struct AgroScenario *handle,
                                   double *out_min,
                                   double *out_max);

/**
 * Informal-land balance under the scenario's inputs. Returns the
 * computation-flag status when declared sources over-explain the land.
 *
 * # Safety
 * `handle` must be a live scenario handle; `out` a valid slot.
 */
enum AgroStatus agro_land_balance(const struct AgroScenario *handle, struct AgroLandBalance *out);

/**
 * Per-hectare policy wedge implied by the scenario's bill, UAH.
 *
 * # Safety
 * `handle` must be a live scenario handle; `out` a valid f64 slot.
 */
enum AgroStatus agro_policy_wedge_uah_ha(const struct AgroScenario *handle, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* AGROPOLICY_H */
