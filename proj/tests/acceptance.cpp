// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "omm/coupling.hpp"
#include "omm/csv.hpp"
#include "omm/errors.hpp"
#include "omm/features.hpp"
#include "omm/figures.hpp"
#include "omm/stability.hpp"
#include "omm/sweep.hpp"
#include "omm/verify.hpp"
#include "reference.hpp"

using namespace omm;

namespace {

// Tolerances, pinned.
constexpr double kOracleTol = 1e-10;
constexpr double kOracleSeconds = 10.0;
constexpr int kOracleSets = 1000;
constexpr double kIdentityTol = 1e-12;
constexpr double kScalingTol = 1e-12;
constexpr double kResidualTol = 1e-12;
constexpr double kCubicTol = 1e-10;
constexpr double kFeatureTol = 0.02;
constexpr double kQuadratureTol = 1e-8;
constexpr double kFactorLo = 3.5, kFactorHi = 4.5;
constexpr double kBareCoupling = 1e-3;
constexpr int kGrid = 2001;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;
  void note(const std::string& s) { details.push_back(s); }
  void require(bool ok, const std::string& s) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok    " : "FAIL  ") + s);
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_of(const std::vector<ResponsePoint>& s, Quantity q) {
  double m = -INFINITY;
  for (const auto& p : s) m = std::max(m, value_of(p, q));
  return m;
}

// Fixed-effective working point of one sweep cell of a figure.
std::vector<std::pair<std::string, WorkingPoint>> figure_points(int grid) {
  std::vector<std::pair<std::string, WorkingPoint>> out;
  for (const auto& f : figure_configs(grid)) {
    const auto& s = f.spec;
    for (double v1 : s.axis1.values) {
      const std::vector<std::optional<double>> v2s =
          s.axis2 ? std::vector<std::optional<double>>(s.axis2->values.begin(), s.axis2->values.end())
                  : std::vector<std::optional<double>>{std::nullopt};
      for (const auto& v2 : v2s) {
        std::string label = f.id + " " + s.axis1.name + "=" + format_double(v1);
        if (v2) label += " " + s.axis2->name + "=" + format_double(*v2);
        out.emplace_back(label, cell_working_point(s, v1, v2));
      }
    }
  }
  return out;
}

// --- criteria -------------------------------------------------------------

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20241015);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto grid = uniform_grid(-2.0, 2.0, 101);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  int accepted = 0, tried = 0;
  std::size_t compared = 0, poles = 0;
  while (accepted < kOracleSets) {
    ++tried;
    SystemParams p;
    p.kappa_c = 0.01 + 0.49 * u(rng);
    p.kappa_m = 0.001 + 0.099 * u(rng);
    p.gamma_b = std::pow(10.0, -6 + 3 * u(rng));
    const double dc = 0.5 + u(rng);
    const double dm = 1.5 * u(rng);
    const cplx gcb = std::polar(0.1 * u(rng), 2 * M_PI * u(rng));
    const cplx gmb = std::polar(0.8 * u(rng), 2 * M_PI * u(rng));
    const auto wp = fixed_effective(p, dc, dm, gcb, gmb);
    if (!assess_stability(drift_matrix(wp)).stable) continue;
    ++accepted;
    const auto rep = compare(wp, grid);
    worst = std::max(worst, rep.max_rel);
    compared += rep.compared;
    poles += rep.excluded_poles.size();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.note(fmt("%d stable sets (%d drawn), %zu detunings compared, %zu poles excluded", accepted, tried,
             compared, poles));
  o.require(worst <= kOracleTol, fmt("max relative difference %.3e <= %.0e", worst, kOracleTol));
  o.require(secs < kOracleSeconds, fmt("runtime %.2f s < %.0f s", secs, kOracleSeconds));
  return o;
}

Outcome bare_cavity_identity() {
  Outcome o;
  const auto grid = uniform_grid(-2.0, 2.0, kGrid);
  double worst = 0, fwm = 0;
  for (double dc : {0.8, 1.0, 1.2}) {
    for (double gmb : {0.0, 0.2, 0.5, 0.8}) {
      for (double dm : {0.0, 0.5, 1.0}) {
        const auto wp = fixed_effective(table1_params(), dc, dm, 0.0, gmb);
        for (const auto& r : spectrum(wp, grid)) {
          const cplx expect = 2 * 0.1 / cplx(0.1, dc - r.delta);
          worst = std::max(worst, relative_difference(r.eps_T, expect));
          fwm = std::max(fwm, r.fwm);
        }
      }
    }
  }
  o.require(worst <= kIdentityTol, fmt("eps_T vs 2k_c/(k_c + i(D_c - d)): %.3e <= %.0e", worst, kIdentityTol));
  o.require(fwm == 0.0, fmt("max FWM %.3e == 0", fwm));
  return o;
}

Outcome probe_scaling() {
  Outcome o;
  const auto grid = uniform_grid(-2.0, 2.0, kGrid);
  double worst_t = 0, worst_f = 0;
  for (double dm : {0.0, 0.5, 1.0}) {
    auto wp = fixed_effective(table1_params(), 1.0, dm, kTable1Gcb, kTable1Gmb);
    const auto ref = spectrum(wp, grid);
    for (double e : {1e-3, 1.0, 1e3}) {
      wp.params.eps_p = e;
      const auto s = spectrum(wp, grid);
      for (std::size_t i = 0; i < s.size(); ++i) {
        worst_t = std::max(worst_t, relative_difference(s[i].eps_T, ref[i].eps_T));
        worst_f = std::max(worst_f, relative_difference(s[i].fwm, ref[i].fwm));
      }
    }
  }
  o.require(worst_t <= kScalingTol, fmt("eps_T over eps_p in {1e-3, 1, 1e3}: %.3e <= %.0e", worst_t, kScalingTol));
  o.require(worst_f <= kScalingTol, fmt("FWM over eps_p in {1e-3, 1, 1e3}: %.3e <= %.0e", worst_f, kScalingTol));
  return o;
}

Outcome steady_state_residuals() {
  Outcome o;
  double worst = 0, worst_target = 0;
  int configs = 0;
  std::string worst_label;
  for (const auto& [label, wp] : figure_points(5)) {
    const double gcb = std::abs(wp.eff.G_cb), gmb = std::abs(wp.eff.G_mb);
    const auto bare = bare_for_effective(wp.params, wp.ss.delta_c, wp.ss.delta_m, gcb, gmb,
                                         kBareCoupling, kBareCoupling);
    const auto roots = solve_steady_state(bare);
    for (const auto& r : roots) {
      if (r.residual > worst) {
        worst = r.residual;
        worst_label = label;
      }
    }
    // The designed fixed point must be among the roots.
    double best = INFINITY;
    for (const auto& r : roots) best = std::min(best, std::abs(r.delta_m - wp.ss.delta_m) + std::abs(r.delta_c - wp.ss.delta_c));
    worst_target = std::max(worst_target, best);
    ++configs;
  }
  o.note(fmt("%d figure working points realized with bare g_cb = g_mb = %.0e", configs, kBareCoupling));
  o.require(worst <= kResidualTol, fmt("max residual %.3e <= %.0e (%s)", worst, kResidualTol, worst_label.c_str()));
  o.require(worst_target <= 1e-9, fmt("target detunings recovered to %.3e", worst_target));

  double cubic = 0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int roots_seen = 0;
  for (int k = 0; k < 200; ++k) {
    SystemParams p;
    p.kappa_m = 0.01 + 0.2 * u(rng);
    p.g_mb = 0.1 * u(rng) + 1e-3;
    p.omega_rabi = 20 * u(rng);
    p.delta_m0 = -2 + 4 * u(rng);
    p.eps_L = 5 * u(rng);
    const double a = -p.delta_m0, b = p.kappa_m * p.kappa_m;
    const double c = -p.delta_m0 * b + p.g_mb * p.g_mb * p.omega_rabi * p.omega_rabi / p.omega_b;
    const auto xs = test::cubic_roots(a, b, c);
    const auto roots = solve_steady_state(p);
    if (roots.size() != xs.size()) {
      cubic = INFINITY;
      continue;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double q = (test::polish_cubic(xs[i], a, b, c) - p.delta_m0) / p.g_mb;
      cubic = std::max(cubic, std::abs(roots[i].q_s - q) / std::max(1.0, std::abs(q)));
      ++roots_seen;
    }
  }
  o.require(cubic <= kCubicTol, fmt("g_cb = 0 vs closed-form cubic over %d roots: %.3e <= %.0e", roots_seen, cubic, kCubicTol));
  return o;
}

Outcome fig2a_features() {
  Outcome o;
  const auto ref = figure_config("fig2a_no_magnon", kGrid);
  const auto r0 = run_sweep(ref.spec);
  const auto& s = r0.cells.at(0).spectrum;
  // Each half-window holds one sideband dip; the one at -omega_b is tiny on the
  // full scale, so it is located within its own half.
  for (int side : {-1, 1}) {
    std::vector<ResponsePoint> half;
    for (const auto& p : s) {
      if (side * p.delta > 0) half.push_back(p);
    }
    const auto f = detect_features(half, Quantity::lambda);
    const Extremum* best = nullptr;
    for (const auto& d : f.dips) {
      if (!best || std::abs(d.delta - side) < std::abs(best->delta - side)) best = &d;
    }
    o.require(best && std::abs(best->delta - side) <= kFeatureTol,
              fmt("G_mb = 0: Lambda dip at %+.4f, within %.2f of %+d", best ? best->delta : NAN, kFeatureTol, side));
  }
  const auto fig = figure_config("fig2a", kGrid);
  const auto r = run_sweep(fig.spec);
  std::map<double, double> asym;
  for (const auto& c : r.cells) asym[c.axis1] = c.features.at(0).asymmetry;
  for (const auto& [dm, a] : asym) o.note(fmt("Delta_m = %.1f: asymmetry proxy %.4f", dm, a));
  o.require(asym.at(1.0) < asym.at(0.3), fmt("asymmetry at Delta_m = 1 (%.4f) < at 0.3 (%.4f)", asym.at(1.0), asym.at(0.3)));
  return o;
}

// Peak count and positions frozen from the first engine run.
struct Baseline {
  double delta_m;
  std::vector<double> peaks;
};
const std::vector<Baseline> kFig5Baseline = {
    {0.5, {-1.1220, 0.0, 1.1220}},
    {0.6, {-1.1499, -0.2105, 0.2105, 1.1499}},
    {0.7, {-1.1815, -0.3147, 0.3147, 1.1815}},
    {0.8, {-1.2177, -0.4003, 0.4003, 1.2177}},
    {0.9, {-1.2596, -0.4741, 0.4741, 1.2596}},
    {1.0, {-1.3077, -0.5381, 0.5381, 1.3077}},
};
constexpr double kBaselineTol = 1e-3;

Outcome fig5_features() {
  Outcome o;
  const auto fig = figure_config("fig5a", kGrid);
  const auto r = run_sweep(fig.spec);
  const std::size_t fwm = 2;  // quantities are lambda, lambda_tilde, fwm
  for (const auto& c : r.cells) {
    const auto& f = c.features.at(fwm);
    std::string where;
    for (const auto& p : f.peaks) where += fmt(" %+.4f", p.delta);
    if (c.axis1 <= 0.4 + 1e-12) {
      bool ok = f.peak_count == 2;
      if (ok) ok = std::abs(f.peaks[0].delta + 1) <= kFeatureTol && std::abs(f.peaks[1].delta - 1) <= kFeatureTol;
      o.require(ok, fmt("Delta_m = %.1f: %d peak(s) at%s; want two within %.2f of -1, +1", c.axis1, f.peak_count,
                        where.c_str(), kFeatureTol));
    } else {
      const Baseline* b = nullptr;
      for (const auto& x : kFig5Baseline) {
        if (std::abs(x.delta_m - c.axis1) < 1e-9) b = &x;
      }
      bool ok = b && b->peaks.size() == f.peaks.size();
      for (std::size_t i = 0; ok && i < f.peaks.size(); ++i) ok = std::abs(b->peaks[i] - f.peaks[i].delta) <= kBaselineTol;
      o.require(ok, fmt("Delta_m = %.1f: %d peak(s) at%s; frozen baseline", c.axis1, f.peak_count, where.c_str()));
    }
  }
  return o;
}

Outcome fig7_monotonicity() {
  Outcome o;
  auto maxima = [](const char* id) {
    const auto r = run_sweep(figure_config(id, kGrid).spec);
    std::vector<std::pair<double, double>> out;
    for (const auto& c : r.cells) out.emplace_back(c.axis1, max_of(c.spectrum, Quantity::fwm));
    return out;
  };
  const auto km = maxima("fig7b");
  std::string line;
  bool inc = true;
  for (std::size_t i = 0; i < km.size(); ++i) {
    line += fmt(" %.3g:%.6g", km[i].first, km[i].second);
    if (i > 0) inc = inc && km[i].second > km[i - 1].second;
  }
  o.require(inc, "max FWM strictly increases with kappa_m (kappa_m:max)" + line);
  const auto kc = maxima("fig7a");
  line.clear();
  bool dec = true;
  for (std::size_t i = 0; i < kc.size(); ++i) {
    line += fmt(" %.3g:%.6g", kc[i].first, kc[i].second);
    if (i > 0) dec = dec && kc[i].second < kc[i - 1].second;
  }
  o.require(dec, "max FWM strictly decreases as kappa_c decreases from 0.1 (kappa_c:max)" + line);
  return o;
}

Outcome appendix_quadrature() {
  Outcome o;
  const std::array<double, 3> box{2e-3, 1e-3, 0.5e-3};
  auto integral = [&](AnalyticMode k, std::array<std::size_t, 3> n) {
    const auto g = analytic_mode(k, n, box);
    MaterialParams m;
    m.volume = g.volume();
    m.d_zpm = 1e-15;
    return magnon_phonon_coupling(g, m);
  };
  const double scale = box[1] * box[2];
  {
    const auto res = integral(AnalyticMode::uniform_gradient, {9, 5, 5});
    const MaterialParams m;
    const double g = m.B1 * m.gamma * 1e-15 / (m.M_s * box[0]);
    o.require(std::abs(res.g_mb - g) <= kQuadratureTol * g,
              fmt("uniform gradient: g = %.10g vs B1 gamma d/(M_s L_x) = %.10g", res.g_mb, g));
  }
  {
    const auto res = integral(AnalyticMode::trace_free, {9, 9, 9});
    o.require(std::abs(res.integral_value) <= kQuadratureTol * scale,
              fmt("trace-free: integral %.3e (scale %.1e)", res.integral_value, scale));
  }
  {
    const double exact = analytic_integral(AnalyticMode::sine, box);
    const double c = integral(AnalyticMode::sine, {33, 33, 33}).integral_value;
    const double f = integral(AnalyticMode::sine, {65, 65, 65}).integral_value;
    const double factor = (c - exact) / (f - exact);
    o.require(factor >= kFactorLo && factor <= kFactorHi,
              fmt("sine: error ratio on halving %.4f in [%.1f, %.1f]", factor, kFactorLo, kFactorHi));
    const double rc = integral(AnalyticMode::sine, {257, 2, 2}).integral_value;
    const double rf = integral(AnalyticMode::sine, {513, 2, 2}).integral_value;
    const double rich = richardson(rc, rf);
    o.require(std::abs(rich - exact) <= kQuadratureTol * exact,
              fmt("sine: Richardson %.12g vs 2 L_y L_z = %.12g (rel %.2e)", rich, exact, std::abs(rich - exact) / exact));
  }
  return o;
}

Outcome stability() {
  Outcome o;
  int total = 0, unstable = 0;
  double worst = -INFINITY;
  std::string worst_label;
  std::map<std::string, int> per_figure;
  for (const auto& [label, wp] : figure_points(5)) {
    const auto rep = assess_stability(drift_matrix(wp));
    ++total;
    if (!rep.stable) {
      ++unstable;
      ++per_figure[label.substr(0, label.find(' '))];
      o.note(fmt("unstable: %s (max Re %.4f)", label.c_str(), rep.margin));
    }
    if (rep.margin > worst) {
      worst = rep.margin;
      worst_label = label;
    }
  }
  o.require(unstable == 0, fmt("%d of %d figure working points stable; largest real part %.4g (%s)",
                               total - unstable, total, worst, worst_label.c_str()));
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto spec = figure_config("fig5a", kGrid).spec;
  const auto one = export_csv(run_sweep(spec, 1));
  for (int w : {2, 8}) {
    const auto other = export_csv(run_sweep(spec, w));
    o.require(other == one, fmt("%d workers: %zu bytes, identical to 1 worker", w, other.size()));
  }
  return o;
}

Outcome fig5c_monotone() {
  Outcome o;
  const auto r = run_sweep(figure_config("fig5c", kGrid).spec);
  std::string line;
  bool ok = true;
  double prev = -INFINITY;
  for (const auto& c : r.cells) {
    const double m = max_of(c.spectrum, Quantity::fwm);
    line += fmt(" %.2f:%.5g", c.axis1, m);
    ok = ok && m >= prev;
    prev = m;
  }
  o.require(ok, "max FWM non-decreasing in Delta_c at Delta_m = 0.4 (Delta_c:max)" + line);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence (1000 random stable sets)", oracle_equivalence},
      {"bare-cavity identity", bare_cavity_identity},
      {"probe-scaling invariance", probe_scaling},
      {"steady-state residual and cubic match", steady_state_residuals},
      {"Fig. 2(a) features", fig2a_features},
      {"Fig. 5 features", fig5_features},
      {"Fig. 7 monotonicity", fig7_monotonicity},
      {"coupling quadrature", appendix_quadrature},
      {"stability of figure parameter sets", stability},
      {"sweep determinism across 1, 2, 8 workers", determinism},
  };
  const std::vector<std::pair<std::string, std::function<Outcome()>>> properties{
      {"Fig. 5(C) max FWM monotone in Delta_c", fig5c_monotone},
  };
  int failures = 0;
  auto run = [&](const std::string& tag, const auto& list) {
    for (const auto& [name, fn] : list) {
      const auto t0 = std::chrono::steady_clock::now();
      Outcome out;
      try {
        out = fn();
      } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("%s [%s] %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", tag.c_str(), name.c_str(), secs);
      for (const auto& d : out.details) std::printf("      %s\n", d.c_str());
      failures += !out.pass;
    }
  };
  run("PRIMARY", criteria);
  run("PROPERTY", properties);
  std::printf("%d criterion/criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
