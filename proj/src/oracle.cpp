#include "omm/oracle.hpp"

#include <cmath>
#include <sstream>

#include "omm/errors.hpp"

namespace omm {

SidebandSystem assemble(const SystemParams& p, const SteadyState& ss,
                        const EffectiveCouplings& eff, double delta) {
  const cplx I{0.0, 1.0};
  const cplx Gc = eff.G_cb, Gm = eff.G_mb;
  // d/dt acting on e^{-i d t} gives -i d; the conjugated "+" rows see the same factor.
  const cplx dt = -I * delta;

  SidebandSystem s;
  s.delta = delta;
  s.matrix.setZero();
  s.rhs.setZero();
  auto& a = s.matrix;

  // dq/dt = w dp
  a(kQm, kQm) = dt;
  a(kQm, kPm) = -p.omega_b;
  a(kQp, kQp) = dt;
  a(kQp, kPp) = -p.omega_b;

  // dp/dt = -w dq - g dp - G_m dm^+ - G_m^* dm + G_c dc^+ + G_c^* dc.
  // At e^{-i d t}: dm^+ contributes (m_+)^*, dc^+ contributes (c_+)^*.
  a(kPm, kPm) = dt + p.gamma_b;
  a(kPm, kQm) = p.omega_b;
  a(kPm, kMp) = Gm;
  a(kPm, kMm) = std::conj(Gm);
  a(kPm, kCp) = -Gc;
  a(kPm, kCm) = -std::conj(Gc);
  // Conjugated e^{+i d t} balance: same couplings, acting on (q_+)^*, (p_+)^*.
  a(kPp, kPp) = dt + p.gamma_b;
  a(kPp, kQp) = p.omega_b;
  a(kPp, kMp) = Gm;
  a(kPp, kMm) = std::conj(Gm);
  a(kPp, kCp) = -Gc;
  a(kPp, kCm) = -std::conj(Gc);

  // dc/dt = -(i D_c + k_c) dc + i G_c dq + eps_p e^{-i d t}
  a(kCm, kCm) = dt + I * ss.delta_c + p.kappa_c;
  a(kCm, kQm) = -I * Gc;
  s.rhs(kCm) = p.eps_p;
  a(kCp, kCp) = dt - I * ss.delta_c + p.kappa_c;
  a(kCp, kQp) = I * std::conj(Gc);

  // dm/dt = -(i D_m + k_m) dm - i G_m dq
  a(kMm, kMm) = dt + I * ss.delta_m + p.kappa_m;
  a(kMm, kQm) = I * Gm;
  a(kMp, kMp) = dt - I * ss.delta_m + p.kappa_m;
  a(kMp, kQp) = -I * std::conj(Gm);
  return s;
}

FluctuationAmplitudes solve(const SidebandSystem& system) {
  Eigen::PartialPivLU<Eigen::Matrix<cplx, 8, 8>> lu(system.matrix);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-15)) {
    std::ostringstream msg;
    msg << "sideband matrix is singular (rcond " << rcond << ")\n" << system.matrix;
    throw PoleError("sideband system", system.delta, msg.str());
  }
  // At mechanical resonance the matrix condition reaches ~1e8, which would cost
  // the double solution up to eight digits. Solve and refine in extended
  // precision instead; the assembled entries are exact in either type.
  using cext = std::complex<long double>;
  const Eigen::Matrix<cext, 8, 8> m = system.matrix.cast<cext>();
  const Eigen::Matrix<cext, 8, 1> b = system.rhs.cast<cext>();
  const Eigen::PartialPivLU<Eigen::Matrix<cext, 8, 8>> lux(m);
  Eigen::Matrix<cext, 8, 1> xe = lux.solve(b);
  xe += lux.solve(Eigen::Matrix<cext, 8, 1>(b - m * xe));
  const Eigen::Matrix<cplx, 8, 1> x = xe.cast<cplx>();

  FluctuationAmplitudes out;
  out.q_minus = x(kQm);
  out.q_plus = std::conj(x(kQp));
  out.p_minus = x(kPm);
  out.p_plus = std::conj(x(kPp));
  out.c_minus = x(kCm);
  out.c_plus = std::conj(x(kCp));
  out.m_minus = x(kMm);
  out.m_plus = std::conj(x(kMp));
  const double bnorm = system.rhs.norm();
  out.residual = (system.matrix * x - system.rhs).norm() / (bnorm > 0 ? bnorm : 1.0);
  return out;
}

double condition_number(const SidebandSystem& system) {
  Eigen::JacobiSVD<Eigen::Matrix<cplx, 8, 8>> svd(system.matrix);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

}  // namespace omm
