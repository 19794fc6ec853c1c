#pragma once

#include <span>
#include <vector>

#include "omm/steady_state.hpp"

namespace omm {

/// Closed-form vs sideband-oracle agreement over a detuning grid.
struct DiscrepancyReport {
  double max_rel = 0.0;
  double mean_rel = 0.0;
  double worst_delta = 0.0;
  std::size_t compared = 0;
  std::vector<double> excluded_poles;  ///< detunings where either route hit a pole
};

/// |a - b| / max(|a|, |b|), zero when both vanish.
double relative_difference(cplx a, cplx b);

/// Per-detuning relative differences of c_- and c_+ between the closed forms
/// and the 8x8 oracle; poles are excluded and listed, never fatal.
DiscrepancyReport compare(const SystemParams& p, const SteadyState& ss,
                          const EffectiveCouplings& eff, std::span<const double> deltas,
                          int workers = 1);

inline DiscrepancyReport compare(const WorkingPoint& wp, std::span<const double> deltas,
                                 int workers = 1) {
  return compare(wp.params, wp.ss, wp.eff, deltas, workers);
}

}  // namespace omm
