#include "omm/verify.hpp"

#include <algorithm>
#include <optional>

#include "omm/errors.hpp"
#include "omm/oracle.hpp"
#include "omm/parallel.hpp"
#include "omm/response.hpp"

namespace omm {

double relative_difference(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

DiscrepancyReport compare(const SystemParams& p, const SteadyState& ss,
                          const EffectiveCouplings& eff, std::span<const double> deltas,
                          int workers) {
  std::vector<std::optional<double>> rel(deltas.size());
  parallel_for(deltas.size(), workers, [&](std::size_t i) {
    try {
      const auto closed = response_point(p, ss, eff, deltas[i]);
      const auto exact = solve(assemble(p, ss, eff, deltas[i]));
      rel[i] = std::max(relative_difference(closed.c_minus, exact.c_minus),
                        relative_difference(closed.c_plus, exact.c_plus));
    } catch (const PoleError&) {
      rel[i] = std::nullopt;
    }
  });

  DiscrepancyReport report;
  double sum = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!rel[i]) {
      report.excluded_poles.push_back(deltas[i]);
      continue;
    }
    ++report.compared;
    sum += *rel[i];
    if (report.compared == 1 || *rel[i] > report.max_rel) {
      report.max_rel = *rel[i];
      report.worst_delta = deltas[i];
    }
  }
  report.mean_rel = report.compared ? sum / report.compared : 0.0;
  return report;
}

}  // namespace omm
