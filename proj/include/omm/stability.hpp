#pragma once

#include <Eigen/Dense>
#include <vector>

#include "omm/steady_state.hpp"

namespace omm {

/// Real drift matrix of the fluctuations in the quadrature basis
/// (dq, dp, Re dc, Im dc, Re dm, Im dm).
using DriftMatrix = Eigen::Matrix<double, 6, 6>;

struct StabilityReport {
  std::vector<cplx> eigenvalues;  ///< sorted by real part, then imaginary part
  bool stable = false;            ///< every real part < 0
  double margin = 0.0;            ///< largest real part
};

/// Linear drift of the fluctuations around a working point. The mechanical
/// row uses the restoring force -omega_b dq.
DriftMatrix drift_matrix(const SystemParams& p, double delta_c, double delta_m,
                         const EffectiveCouplings& eff);

inline DriftMatrix drift_matrix(const WorkingPoint& wp) {
  return drift_matrix(wp.params, wp.ss.delta_c, wp.ss.delta_m, wp.eff);
}

/// Eigen-decomposes the drift matrix. Throws NumericalError (with the matrix
/// printed) if the eigensolver does not converge.
StabilityReport assess_stability(const DriftMatrix& m);

/// Largest distance between an eigenvalue and the conjugate of its nearest partner.
double conjugate_pairing_error(const std::vector<cplx>& eigenvalues);

}  // namespace omm
