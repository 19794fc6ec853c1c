#pragma once

#include <Eigen/Dense>

#include "omm/steady_state.hpp"

namespace omm {

/// Frequency-domain form of the linearized fluctuation equations.
///
/// Each fluctuation is expanded as dz = z_- e^{-i d t} + z_+ e^{+i d t}. The
/// unknown vector is ordered (q_-, q_+, p_-, p_+, c_-, c_+, m_-, m_+) but every
/// "+" entry is carried complex-conjugated, which makes the system linear over
/// the complex numbers: rows 0/2/4/6 are the e^{-i d t} balances of the q, p, c,
/// m equations, rows 1/3/5/7 the conjugated e^{+i d t} balances.
struct SidebandSystem {
  Eigen::Matrix<cplx, 8, 8> matrix;
  Eigen::Matrix<cplx, 8, 1> rhs;
  double delta = 0.0;
};

enum SidebandIndex { kQm, kQp, kPm, kPp, kCm, kCp, kMm, kMp };

struct FluctuationAmplitudes {
  cplx q_minus, q_plus, p_minus, p_plus;
  cplx c_minus, c_plus, m_minus, m_plus;
  double residual = 0.0;  ///< |A x - b| / |b|
};

/// Builds the 8x8 system directly from the linearized equations of motion
/// (restoring force -omega_b dq, probe drive only on the e^{-i d t} cavity row).
SidebandSystem assemble(const SystemParams& p, const SteadyState& ss,
                        const EffectiveCouplings& eff, double delta);

/// Dense LU with partial pivoting. Throws PoleError when the matrix is
/// numerically singular.
FluctuationAmplitudes solve(const SidebandSystem& system);

/// 2-norm condition number of the sideband matrix.
double condition_number(const SidebandSystem& system);

}  // namespace omm
