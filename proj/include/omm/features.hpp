#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "omm/response.hpp"

namespace omm {

enum class Quantity { lambda, lambda_tilde, fwm };

std::string_view to_string(Quantity q);
/// Throws InvalidInput for unknown names.
Quantity quantity_from_string(std::string_view name);
double value_of(const ResponsePoint& r, Quantity q);

struct Extremum {
  double delta = 0.0;
  double value = 0.0;  ///< height of a peak or depth (value) of a dip
  double prominence = 0.0;
};

struct FeatureSet {
  std::vector<Extremum> peaks;  ///< sorted by delta
  std::vector<Extremum> dips;   ///< sorted by delta
  int peak_count = 0;
  double asymmetry = 0.0;
};

struct FeatureOptions {
  /// Extrema whose prominence is below this fraction of the dynamic range are dropped.
  double prominence = 0.01;
  /// Half-width of the mirror comparison around the dominant peak, in delta units.
  double asymmetry_window = 0.1;
};

/// Discrete local extrema of y(x) with three-point parabolic refinement of
/// position and height, filtered by topographic prominence.
///
/// `asymmetry` is the largest mismatch |y(x0 - s) - y(x0 + s)|, s up to the
/// window, around the global maximum x0, divided by the dynamic range: zero for
/// a line that is mirror-symmetric about its peak, near one when a sharp Fano
/// feature sits on one flank.
///
/// Needs at least 5 points on a uniform grid; throws InvalidInput otherwise.
FeatureSet detect_features(std::span<const double> x, std::span<const double> y,
                           const FeatureOptions& opts = {});

FeatureSet detect_features(std::span<const ResponsePoint> spectrum, Quantity q,
                           const FeatureOptions& opts = {});

}  // namespace omm
