#include "omm/response.hpp"

#include <cmath>

#include "omm/errors.hpp"
#include "omm/parallel.hpp"

namespace omm {

namespace {

constexpr cplx I{0.0, 1.0};

void check_pole(cplx value, const char* block, double delta) {
  if (!(std::abs(value) >= kPoleThreshold)) throw PoleError(block, delta, "");
}

}  // namespace

AuxiliaryBlocks auxiliaries(const SystemParams& p, const SteadyState& ss,
                            const EffectiveCouplings& eff, double delta) {
  AuxiliaryBlocks a;
  a.omega1m = p.kappa_m - I * (ss.delta_m + delta);
  a.omega2m = p.kappa_m + I * (ss.delta_m - delta);
  a.omega1c = p.kappa_c - I * (ss.delta_c + delta);
  a.omega2c = p.kappa_c + I * (ss.delta_c - delta);
  check_pole(a.omega1m, "Omega1m", delta);
  check_pole(a.omega2m, "Omega2m", delta);
  check_pole(a.omega1c, "Omega1c", delta);
  check_pole(a.omega2c, "Omega2c", delta);

  const double gm2 = std::norm(eff.G_mb);
  const double gc2 = std::norm(eff.G_cb);

  a.chi1 = (a.omega2m - a.omega1m) / (a.omega1m * a.omega2m);
  a.chi2 = 1.0 / a.omega1c;
  a.chi12 = gm2 * a.chi1 + gc2 * a.chi2;

  const cplx o1m = std::conj(a.omega1m), o2m = std::conj(a.omega2m);
  a.alpha1 = (o1m - o2m) / (o1m * o2m);
  a.alpha2 = 1.0 / std::conj(a.omega2c);
  a.alpha12 = gm2 * a.alpha1 + gc2 * a.alpha2;

  a.theta_n = delta * p.gamma_b - p.omega_b * a.chi12;
  a.theta_p = delta * p.gamma_b + p.omega_b * a.alpha12;
  return a;
}

cplx probe_amplitude(const AuxiliaryBlocks& aux, const EffectiveCouplings& eff,
                     const SystemParams& p, double delta) {
  const cplx mech = p.omega_b * p.omega_b - delta * delta - I * aux.theta_n;
  const cplx den = mech * aux.omega2c - I * p.omega_b * std::norm(eff.G_cb);
  check_pole(den, "c_minus denominator", delta);
  return mech * p.eps_p / den;
}

cplx stokes_amplitude(const AuxiliaryBlocks& aux, const EffectiveCouplings& eff,
                      const SystemParams& p, double delta) {
  const cplx mech = p.omega_b * p.omega_b - delta * delta + I * aux.theta_p;
  const cplx den = mech * std::conj(aux.omega1c) - I * p.omega_b * std::norm(eff.G_cb);
  check_pole(den, "c_plus denominator", delta);
  return I * eff.G_cb * eff.G_cb * p.omega_b * p.eps_p * aux.alpha2 / den;
}

ResponsePoint response_point(const SystemParams& p, const SteadyState& ss,
                             const EffectiveCouplings& eff, double delta) {
  const auto aux = auxiliaries(p, ss, eff, delta);
  ResponsePoint r;
  r.delta = delta;
  r.c_minus = probe_amplitude(aux, eff, p, delta);
  r.c_plus = stokes_amplitude(aux, eff, p, delta);
  r.eps_T = 2.0 * p.kappa_c * r.c_minus / p.eps_p;
  r.lambda = r.eps_T.real();
  r.lambda_tilde = r.eps_T.imag();
  r.fwm = std::norm(2.0 * p.kappa_c * r.c_plus / p.eps_p);
  return r;
}

std::vector<ResponsePoint> spectrum(const SystemParams& p, const SteadyState& ss,
                                   const EffectiveCouplings& eff, std::span<const double> deltas,
                                   int workers) {
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] > deltas[i - 1])) throw InvalidInput("spectrum: deltas must be strictly increasing");
  }
  std::vector<ResponsePoint> out(deltas.size());
  parallel_for(deltas.size(), workers,
               [&](std::size_t i) { out[i] = response_point(p, ss, eff, deltas[i]); });
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 1 || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidInput("uniform_grid: need n >= 1 and finite lo <= hi");
  }
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

}  // namespace omm
