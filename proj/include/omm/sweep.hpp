#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omm/features.hpp"
#include "omm/response.hpp"
#include "omm/steady_state.hpp"

namespace omm {

enum class SweepMode {
  fixed_effective,  ///< detunings and G_cb, G_mb imposed directly; no mean-field solve
  fixed_bare,       ///< mean-field fixed point re-solved in every cell
};

std::string_view to_string(SweepMode m);
SweepMode sweep_mode_from_string(std::string_view name);

struct SweepAxis {
  std::string name;  ///< SystemParams field, or delta_c, delta_m, G_cb, G_mb
  std::vector<double> values;
};

struct SweepSpec {
  SystemParams base;
  /// Used in fixed-effective mode only; base.delta_c0 / delta_m0 then act as
  /// the effective detunings.
  double G_cb = 0.0;
  double G_mb = 0.0;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::vector<double> delta_grid;
  std::vector<Quantity> quantities{Quantity::lambda, Quantity::lambda_tilde, Quantity::fwm};
  SweepMode mode = SweepMode::fixed_effective;
  FeatureOptions features;
};

/// Throws InvalidInput on unknown axis names, non-finite axis values or a grid
/// that is not strictly increasing.
void validate(const SweepSpec& spec);

struct SweepCell {
  double axis1 = 0.0;
  std::optional<double> axis2;
  bool excluded = false;
  std::string error;  ///< why the cell was excluded
  std::vector<ResponsePoint> spectrum;
  std::vector<FeatureSet> features;  ///< aligned with spec.quantities
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepCell> cells;  ///< axis1 outer, axis2 inner
  std::string engine_version;
};

inline constexpr std::string_view kEngineVersion = "omm 1.0.0";

/// The working point of one cell, before any response is computed.
WorkingPoint cell_working_point(const SweepSpec& spec, double v1, std::optional<double> v2);

/// Every cell is independent; `workers` threads share them and the result is
/// identical for any worker count. Numerical failures mark the cell excluded.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

/// Long format `axis1,axis2,delta,quantity,value`; excluded cells carry nan.
/// Pass a quantity to restrict the rows to it.
std::string export_csv(const SweepResult& result, std::optional<Quantity> only = std::nullopt);

/// Nested per-cell arrays plus features, stable key order.
std::string export_json(const SweepResult& result);
SweepResult parse_sweep_json(const std::string& text);

/// Per-cell features only.
std::string export_features_json(const SweepResult& result);

}  // namespace omm
