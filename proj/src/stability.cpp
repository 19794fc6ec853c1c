#include "omm/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "omm/errors.hpp"

namespace omm {

DriftMatrix drift_matrix(const SystemParams& p, double delta_c, double delta_m,
                         const EffectiveCouplings& eff) {
  enum { Q, P, XC, YC, XM, YM };
  const double gc_re = eff.G_cb.real(), gc_im = eff.G_cb.imag();
  const double gm_re = eff.G_mb.real(), gm_im = eff.G_mb.imag();

  DriftMatrix a = DriftMatrix::Zero();
  a(Q, P) = p.omega_b;

  // dp/dt = -w dq - g dp - (G_m dm^+ + G_m^* dm) + (G_c dc^+ + G_c^* dc)
  a(P, Q) = -p.omega_b;
  a(P, P) = -p.gamma_b;
  a(P, XC) = 2.0 * gc_re;
  a(P, YC) = 2.0 * gc_im;
  a(P, XM) = -2.0 * gm_re;
  a(P, YM) = -2.0 * gm_im;

  // dc/dt = -(i D_c + k_c) dc + i G_c dq
  a(XC, XC) = -p.kappa_c;
  a(XC, YC) = delta_c;
  a(XC, Q) = -gc_im;
  a(YC, XC) = -delta_c;
  a(YC, YC) = -p.kappa_c;
  a(YC, Q) = gc_re;

  // dm/dt = -(i D_m + k_m) dm - i G_m dq
  a(XM, XM) = -p.kappa_m;
  a(XM, YM) = delta_m;
  a(XM, Q) = gm_im;
  a(YM, XM) = -delta_m;
  a(YM, YM) = -p.kappa_m;
  a(YM, Q) = -gm_re;
  return a;
}

StabilityReport assess_stability(const DriftMatrix& m) {
  Eigen::EigenSolver<DriftMatrix> solver(m, false);
  if (solver.info() != Eigen::Success || !m.allFinite()) {
    std::ostringstream msg;
    msg << "eigensolver failed on drift matrix:\n" << m;
    throw NumericalError(msg.str());
  }
  StabilityReport report;
  const auto& ev = solver.eigenvalues();
  report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  report.margin = -std::numeric_limits<double>::infinity();
  for (auto e : report.eigenvalues) report.margin = std::max(report.margin, e.real());
  report.stable = report.margin < 0;
  return report;
}

double conjugate_pairing_error(const std::vector<cplx>& eigenvalues) {
  double worst = 0.0;
  for (auto e : eigenvalues) {
    double best = std::numeric_limits<double>::infinity();
    for (auto f : eigenvalues) best = std::min(best, std::abs(std::conj(e) - f));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace omm
