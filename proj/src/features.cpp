#include "omm/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omm/errors.hpp"

namespace omm {

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::lambda: return "lambda";
    case Quantity::lambda_tilde: return "lambda_tilde";
    case Quantity::fwm: return "fwm";
  }
  return "?";
}

Quantity quantity_from_string(std::string_view name) {
  if (name == "lambda") return Quantity::lambda;
  if (name == "lambda_tilde") return Quantity::lambda_tilde;
  if (name == "fwm") return Quantity::fwm;
  throw InvalidInput("unknown quantity '" + std::string(name) + "'");
}

double value_of(const ResponsePoint& r, Quantity q) {
  switch (q) {
    case Quantity::lambda: return r.lambda;
    case Quantity::lambda_tilde: return r.lambda_tilde;
    case Quantity::fwm: return r.fwm;
  }
  return 0.0;
}

namespace {

// Prominence of a local maximum at i: height above the higher of the two
// lowest points reached before climbing above y[i] on either side.
double prominence_of_max(std::span<const double> y, std::size_t i) {
  double left = y[i];
  for (std::size_t k = i; k-- > 0;) {
    if (y[k] > y[i]) break;
    left = std::min(left, y[k]);
  }
  double right = y[i];
  for (std::size_t k = i + 1; k < y.size(); ++k) {
    if (y[k] > y[i]) break;
    right = std::min(right, y[k]);
  }
  return y[i] - std::max(left, right);
}

Extremum refine(std::span<const double> x, std::span<const double> y, std::size_t i, double h) {
  Extremum e{x[i], y[i], 0.0};
  const double a = y[i - 1], b = y[i], c = y[i + 1];
  const double curv = a - 2.0 * b + c;
  if (curv != 0.0) {
    const double offset = std::clamp(0.5 * (a - c) / curv, -0.5, 0.5);
    e.delta = x[i] + offset * h;
    e.value = b - 0.25 * (a - c) * offset;
  }
  return e;
}

// Catmull-Rom cubic through the four nearest samples (linear at the ends).
double interpolate(std::span<const double> y, double x0, double h, double x) {
  const double t = (x - x0) / h;
  const auto n = y.size();
  auto i = static_cast<std::size_t>(std::clamp(std::floor(t), 0.0, static_cast<double>(n - 2)));
  const double u = t - static_cast<double>(i);
  if (i == 0 || i + 2 >= n) return y[i] + u * (y[i + 1] - y[i]);
  const double p0 = y[i - 1], p1 = y[i], p2 = y[i + 1], p3 = y[i + 2];
  return p1 + 0.5 * u * (p2 - p0 + u * (2 * p0 - 5 * p1 + 4 * p2 - p3 + u * (3 * (p1 - p2) + p3 - p0)));
}

std::vector<Extremum> maxima(std::span<const double> x, std::span<const double> y, double h,
                             double threshold) {
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    const double prom = prominence_of_max(y, i);
    if (prom < threshold || prom <= 0.0) continue;
    auto e = refine(x, y, i, h);
    e.prominence = prom;
    out.push_back(e);
  }
  return out;
}

}  // namespace

FeatureSet detect_features(std::span<const double> x, std::span<const double> y,
                           const FeatureOptions& opts) {
  if (x.size() != y.size()) throw InvalidInput("detect_features: x and y differ in length");
  if (x.size() < 5) throw InvalidInput("detect_features: need at least 5 points");
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  if (!(h > 0)) throw InvalidInput("detect_features: grid must be increasing");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs((x[i] - x[i - 1]) - h) > 1e-6 * h) {
      throw InvalidInput("detect_features: grid is not uniform at index " + std::to_string(i));
    }
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw InvalidInput("detect_features: non-finite sample");
  }

  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double range = *hi_it - *lo_it;
  FeatureSet fs;
  if (range <= 0.0) return fs;
  const double threshold = opts.prominence * range;

  fs.peaks = maxima(x, y, h, threshold);
  std::vector<double> neg(y.size());
  std::transform(y.begin(), y.end(), neg.begin(), [](double v) { return -v; });
  fs.dips = maxima(x, neg, h, threshold);
  for (auto& d : fs.dips) d.value = -d.value;
  fs.peak_count = static_cast<int>(fs.peaks.size());

  // Mirror about the refined maximum so an off-node peak does not read as asymmetric.
  const auto top = static_cast<std::size_t>(hi_it - y.begin());
  const double x0 = top > 0 && top + 1 < y.size() ? refine(x, y, top, h).delta : x[top];
  const double lo = x.front(), hi = x.back();
  const auto reach = static_cast<std::size_t>(std::floor(opts.asymmetry_window / h + 1e-9));
  double mismatch = 0.0;
  for (std::size_t k = 1; k <= reach; ++k) {
    const double s = k * h;
    if (x0 - s < lo || x0 + s > hi) break;
    mismatch = std::max(mismatch, std::abs(interpolate(y, lo, h, x0 - s) - interpolate(y, lo, h, x0 + s)));
  }
  fs.asymmetry = mismatch / range;
  return fs;
}

FeatureSet detect_features(std::span<const ResponsePoint> spectrum, Quantity q,
                           const FeatureOptions& opts) {
  std::vector<double> x(spectrum.size()), y(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    x[i] = spectrum[i].delta;
    y[i] = value_of(spectrum[i], q);
  }
  return detect_features(x, y, opts);
}

}  // namespace omm
