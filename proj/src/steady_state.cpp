#include "omm/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "omm/errors.hpp"

namespace omm {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double cavity_denominator(const SystemParams& p, double q) {
  const double d = p.delta_c0 - p.g_cb * q;
  return p.kappa_c * p.kappa_c + d * d;
}

double magnon_denominator(const SystemParams& p, double q) {
  const double d = p.delta_m0 + p.g_mb * q;
  return p.kappa_m * p.kappa_m + d * d;
}

// Samples clustered around a Lorentzian centre, denser near the middle.
void add_cluster(std::vector<double>& xs, double centre, double width, int n, double lo,
                 double hi) {
  if (!std::isfinite(centre) || !(width > 0) || n < 2) return;
  const double reach = std::asinh(1e3);
  for (int i = 0; i < n; ++i) {
    const double t = -reach + 2.0 * reach * i / (n - 1);
    const double x = centre + width * std::sinh(t);
    if (x > lo && x < hi) xs.push_back(x);
  }
}

double bisect(const SystemParams& p, double a, double b, double fa, double rtol) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (b - a <= rtol * std::max({1.0, std::abs(a), std::abs(b)})) break;
    const double fm = fixed_point_defect(p, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Zero of the defect's slope inside [a, b], given the slope sa at a.
double bisect_slope(const SystemParams& p, double a, double b, double sa, double rtol) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b || b - a <= rtol * std::max({1.0, std::abs(a), std::abs(b)})) break;
    const double sm = fixed_point_defect_derivative(p, mid);
    if ((sm < 0) == (sa < 0)) {
      a = mid;
      sa = sm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

double newton_polish(const SystemParams& p, double q, double lo, double hi) {
  const double d = fixed_point_defect(p, q);
  const double dd = fixed_point_defect_derivative(p, q);
  if (d == 0.0 || dd == 0.0 || !std::isfinite(dd)) return q;
  const double next = q - d / dd;
  const double span = hi - lo;
  if (!std::isfinite(next) || next < lo - span || next > hi + span) return q;
  return std::abs(fixed_point_defect(p, next)) < std::abs(d) ? next : q;
}

// Newton on the defect of `p` from q0; nullopt when it does not settle.
std::optional<double> newton(const SystemParams& p, double q0) {
  double q = q0;
  for (int it = 0; it < 60; ++it) {
    const double d = fixed_point_defect(p, q);
    const double dd = fixed_point_defect_derivative(p, q);
    if (!std::isfinite(d) || !std::isfinite(dd) || dd == 0.0) return std::nullopt;
    const double step = d / dd;
    q -= step;
    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(q))) return q;
  }
  return std::nullopt;
}

SystemParams with_coupling_scale(SystemParams p, double lambda) {
  p.g_cb *= lambda;
  p.g_mb *= lambda;
  return p;
}

// Tracks the uncoupled root q = 0 while the couplings are ramped to full size.
double continue_from_uncoupled(const SystemParams& p, int steps) {
  double q = 0.0;
  double lambda = 0.0;
  double step = 1.0 / std::max(steps, 1);
  while (lambda < 1.0) {
    const double target = std::min(1.0, lambda + step);
    auto next = newton(with_coupling_scale(p, target), q);
    const double bound = fixed_point_bound(with_coupling_scale(p, target));
    if (next && std::abs(*next - q) <= 0.25 * std::max(bound, 1e-300) + 1e-12) {
      q = *next;
      lambda = target;
      step = std::min(step * 2.0, 1.0 / std::max(steps, 1));
    } else {
      step *= 0.5;
      if (step < 1e-9) break;  // fold: leave the branch here
    }
  }
  return q;
}

}  // namespace

double fixed_point_map(const SystemParams& p, double q) {
  const double optical = p.g_cb * p.eps_L * p.eps_L / cavity_denominator(p, q);
  const double magnetic = p.g_mb * p.omega_rabi * p.omega_rabi / magnon_denominator(p, q);
  return (optical - magnetic) / p.omega_b;
}

double fixed_point_defect(const SystemParams& p, double q) { return q - fixed_point_map(p, q); }

double fixed_point_defect_derivative(const SystemParams& p, double q) {
  const double dc = cavity_denominator(p, q);
  const double dm = magnon_denominator(p, q);
  const double optical = p.g_cb * p.eps_L * p.eps_L * 2.0 * (p.delta_c0 - p.g_cb * q) * p.g_cb /
                         (dc * dc);
  const double magnetic = p.g_mb * p.omega_rabi * p.omega_rabi * 2.0 *
                          (p.delta_m0 + p.g_mb * q) * p.g_mb / (dm * dm);
  return 1.0 - (optical + magnetic) / p.omega_b;
}

double fixed_point_bound(const SystemParams& p) {
  return (std::abs(p.g_cb) * p.eps_L * p.eps_L / (p.kappa_c * p.kappa_c) +
          std::abs(p.g_mb) * p.omega_rabi * p.omega_rabi / (p.kappa_m * p.kappa_m)) /
         p.omega_b;
}

SteadyState steady_state_at(const SystemParams& p, double q) {
  SteadyState ss;
  ss.q_s = q;
  ss.p_s = 0.0;
  ss.delta_c = p.delta_c0 - p.g_cb * q;
  ss.delta_m = p.delta_m0 + p.g_mb * q;
  ss.c_s = p.eps_L / cplx(p.kappa_c, ss.delta_c);
  ss.m_s = p.omega_rabi / cplx(p.kappa_m, ss.delta_m);
  ss.residual = steady_state_residual(p, ss);
  return ss;
}

double steady_state_residual(const SystemParams& p, const SteadyState& ss) {
  const double optical = p.g_cb * std::norm(ss.c_s) / p.omega_b;
  const double magnetic = p.g_mb * std::norm(ss.m_s) / p.omega_b;
  const double q_scale = std::max({1.0, std::abs(ss.q_s), std::abs(optical), std::abs(magnetic)});
  const double r_q = std::abs(ss.q_s - (optical - magnetic)) / q_scale;
  const double r_c =
      std::abs(ss.c_s * cplx(p.kappa_c, ss.delta_c) - p.eps_L) / std::max(1.0, std::abs(p.eps_L));
  const double r_m = std::abs(ss.m_s * cplx(p.kappa_m, ss.delta_m) - p.omega_rabi) /
                     std::max(1.0, std::abs(p.omega_rabi));
  const double r_p = std::abs(ss.p_s);
  const double r_dc = std::abs(ss.delta_c - (p.delta_c0 - p.g_cb * ss.q_s)) /
                      std::max(1.0, std::abs(ss.delta_c));
  const double r_dm = std::abs(ss.delta_m - (p.delta_m0 + p.g_mb * ss.q_s)) /
                      std::max(1.0, std::abs(ss.delta_m));
  return std::max({r_q, r_c, r_m, r_p, r_dc, r_dm});
}

std::vector<SteadyState> solve_steady_state(const SystemParams& p, const SteadyStateOptions& opts) {
  validate(p);
  const double bound = fixed_point_bound(p);
  if (!std::isfinite(bound)) throw BracketExhausted("steady state: bracket bound is not finite");

  std::vector<double> roots;
  if (bound == 0.0) {
    roots.push_back(0.0);
  } else {
    const double lo = -bound * (1.0 + 1e-12) - 1e-300;
    const double hi = bound * (1.0 + 1e-12) + 1e-300;
    std::vector<double> xs;
    const int n = std::max(opts.scan_points, 16);
    xs.reserve(n + 2 * opts.cluster_points + 2);
    for (int i = 0; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / n);
    if (p.g_cb != 0.0) {
      add_cluster(xs, p.delta_c0 / p.g_cb, p.kappa_c / std::abs(p.g_cb), opts.cluster_points, lo,
                  hi);
    }
    if (p.g_mb != 0.0) {
      add_cluster(xs, -p.delta_m0 / p.g_mb, p.kappa_m / std::abs(p.g_mb), opts.cluster_points, lo,
                  hi);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<double> ds(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ds[i] = fixed_point_defect(p, xs[i]);

    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(ds[i])) continue;
      if (ds[i] == 0.0) {
        roots.push_back(xs[i]);
        continue;
      }
      if (i + 1 >= xs.size() || !std::isfinite(ds[i + 1]) || ds[i + 1] == 0.0) continue;
      if ((ds[i] < 0) != (ds[i + 1] < 0)) {
        double q = bisect(p, xs[i], xs[i + 1], ds[i], opts.bisection_rtol);
        roots.push_back(newton_polish(p, q, xs[i], xs[i + 1]));
        continue;
      }
      // No sign change, but a pair of roots near a fold can hide inside one
      // cell: bracket the extremum of the defect and test its sign.
      const double s0 = fixed_point_defect_derivative(p, xs[i]);
      const double s1 = fixed_point_defect_derivative(p, xs[i + 1]);
      if (!((s0 < 0) != (s1 < 0)) || (ds[i] > 0) != (s0 < 0)) continue;
      const double qe = bisect_slope(p, xs[i], xs[i + 1], s0, opts.bisection_rtol);
      const double de = fixed_point_defect(p, qe);
      if (de == 0.0) {
        roots.push_back(qe);
      } else if ((de < 0) != (ds[i] < 0)) {
        roots.push_back(newton_polish(p, bisect(p, xs[i], qe, ds[i], opts.bisection_rtol), xs[i], qe));
        roots.push_back(newton_polish(p, bisect(p, qe, xs[i + 1], de, opts.bisection_rtol), qe, xs[i + 1]));
      }
    }
    if (roots.empty()) {
      std::ostringstream msg;
      msg << "steady state: no sign change of the defect in [" << lo << ", " << hi << "] over "
          << xs.size() << " samples (defect at ends " << ds.front() << ", " << ds.back() << ")";
      throw BracketExhausted(msg.str());
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) {
                              return std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a));
                            }),
                roots.end());
  }

  std::vector<SteadyState> out;
  out.reserve(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto ss = steady_state_at(p, roots[i]);
    ss.branch_id = static_cast<int>(i);
    out.push_back(ss);
  }

  const double tracked = out.size() == 1 ? out.front().q_s
                                         : continue_from_uncoupled(p, opts.continuation_steps);
  auto nearest = std::min_element(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return std::abs(a.q_s - tracked) < std::abs(b.q_s - tracked);
  });
  nearest->is_default = true;
  return out;
}

const SteadyState& default_branch(const std::vector<SteadyState>& roots) {
  auto it = std::find_if(roots.begin(), roots.end(), [](const auto& s) { return s.is_default; });
  if (it == roots.end()) throw InvalidInput("steady state list has no default branch");
  return *it;
}

EffectiveCouplings effective_couplings(const SystemParams& p, const SteadyState& ss, Gauge gauge) {
  EffectiveCouplings eff;
  if (gauge == Gauge::real_amplitudes) {
    eff.G_cb = kSqrt2 * p.g_cb * std::abs(ss.c_s);
    eff.G_mb = kSqrt2 * p.g_mb * std::abs(ss.m_s);
  } else {
    eff.G_cb = kSqrt2 * p.g_cb * ss.c_s;
    eff.G_mb = kSqrt2 * p.g_mb * ss.m_s;
  }
  return eff;
}

WorkingPoint fixed_effective(const SystemParams& p, double delta_c, double delta_m, cplx G_cb,
                             cplx G_mb) {
  WorkingPoint wp;
  wp.params = p;
  wp.params.delta_c0 = delta_c;
  wp.params.delta_m0 = delta_m;
  validate(wp.params);
  if (!std::isfinite(std::abs(G_cb)) || !std::isfinite(std::abs(G_mb))) {
    throw InvalidInput("invalid parameters: effective couplings must be finite");
  }
  wp.ss.delta_c = delta_c;
  wp.ss.delta_m = delta_m;
  wp.ss.is_default = true;
  wp.eff = {G_cb, G_mb};
  return wp;
}

WorkingPoint fixed_bare(const SystemParams& p, Gauge gauge, const SteadyStateOptions& opts) {
  const auto roots = solve_steady_state(p, opts);
  const auto& ss = default_branch(roots);
  return {p, ss, effective_couplings(p, ss, gauge)};
}

SystemParams bare_for_effective(const SystemParams& rates, double delta_c, double delta_m,
                                double G_cb, double G_mb, double g_cb, double g_mb) {
  auto amplitude = [](double G, double g, const char* name) {
    if (G < 0) throw InvalidInput(std::string("bare_for_effective: ") + name + " must be >= 0");
    if (G == 0.0) return 0.0;
    if (g == 0.0) {
      throw InvalidInput(std::string("bare_for_effective: nonzero ") + name +
                         " needs a nonzero bare coupling");
    }
    return G / (kSqrt2 * std::abs(g));
  };
  const double c_abs = amplitude(G_cb, g_cb, "G_cb");
  const double m_abs = amplitude(G_mb, g_mb, "G_mb");

  SystemParams p = rates;
  p.g_cb = g_cb;
  p.g_mb = g_mb;
  const double q = (g_cb * c_abs * c_abs - g_mb * m_abs * m_abs) / p.omega_b;
  p.delta_c0 = delta_c + g_cb * q;
  p.delta_m0 = delta_m - g_mb * q;
  p.eps_L = c_abs * std::hypot(p.kappa_c, delta_c);
  p.omega_rabi = m_abs * std::hypot(p.kappa_m, delta_m);
  validate(p);
  return p;
}

}  // namespace omm
