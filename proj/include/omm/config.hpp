#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "omm/coupling.hpp"
#include "omm/errors.hpp"
#include "omm/params.hpp"
#include "omm/sweep.hpp"

namespace omm {

/// Malformed or inconsistent configuration; the message names the line or field.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

using ConfigDocument = nlohmann::ordered_json;

/// Parses a config document; syntax errors report line and column.
ConfigDocument parse_config(std::string_view text, const std::string& origin = "<config>");
ConfigDocument load_config(const std::string& path);

/// Applies one `key=value` override. A key without a dot addresses the params
/// section; dotted keys address nested objects (`sweep.points=401`). The value
/// is read as JSON and falls back to a plain string.
void apply_override(ConfigDocument& doc, std::string_view assignment);

struct CouplingConfig {
  MaterialParams material;
  std::string mode_file;   ///< CSV path; empty when an analytic mode is used
  std::string sidecar;     ///< defaults to mode_file + ".json"
  std::string analytic;    ///< uniform-gradient | trace-free | sine; empty for a file
  std::size_t n = 17;      ///< nodes per axis for analytic modes
  std::array<double, 3> lengths{1e-3, 1e-3, 1e-3};
};

/// Everything a subcommand needs, in normalized units (omega_b = 1).
struct RunConfig {
  SystemParams params;
  /// Effective working point for fixed-effective mode; missing detunings fall
  /// back to the bare ones, missing couplings to zero.
  double delta_c = 0.0;
  double delta_m = 0.0;
  double G_cb = 0.0;
  double G_mb = 0.0;
  bool has_effective = false;  ///< any of the four effective keys was given
  bool physical = false;       ///< a physical block was present
  SweepMode mode = SweepMode::fixed_effective;
  double delta_min = -2.0;
  double delta_max = 2.0;
  int points = 2001;
  int workers = 1;
  std::optional<SweepSpec> sweep;  ///< present when the sweep section names axis1
  std::optional<CouplingConfig> coupling;
  ConfigDocument effective;  ///< the document after overrides, echoed in outputs
};

/// Interprets a document; unknown keys and wrong types raise ConfigError.
RunConfig interpret(const ConfigDocument& doc);

/// The working point selected by cfg.mode.
WorkingPoint working_point(const RunConfig& cfg);

std::vector<double> delta_grid(const RunConfig& cfg);

}  // namespace omm
