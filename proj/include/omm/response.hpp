#pragma once

#include <span>
#include <vector>

#include "omm/steady_state.hpp"

namespace omm {

/// Intermediate quantities of the closed-form probe response at one detuning.
struct AuxiliaryBlocks {
  cplx omega1m, omega2m;  ///< k_m - i(D_m + d),  k_m + i(D_m - d)
  cplx omega1c, omega2c;  ///< k_c - i(D_c + d),  k_c + i(D_c - d)
  cplx chi1, chi2, chi12;
  cplx alpha1, alpha2, alpha12;
  cplx theta_n, theta_p;
};

/// Response at one probe-pump detuning delta = omega_p - omega_L.
struct ResponsePoint {
  double delta = 0.0;
  cplx c_minus{};  ///< anti-Stokes (probe-frequency) amplitude
  cplx c_plus{};   ///< Stokes (four-wave-mixing) amplitude
  cplx eps_T{};    ///< 2 k_c c_- / eps_p
  double lambda = 0.0;        ///< Re eps_T
  double lambda_tilde = 0.0;  ///< Im eps_T
  double fwm = 0.0;           ///< |2 k_c c_+ / eps_p|^2
};

/// Magnitude below which a denominator counts as a pole.
inline constexpr double kPoleThreshold = 1e-30;

/// Throws PoleError naming the block when any denominator vanishes.
AuxiliaryBlocks auxiliaries(const SystemParams& p, const SteadyState& ss,
                            const EffectiveCouplings& eff, double delta);

/// c_- = [w^2 - d^2 - i Th_n] eps_p / ([w^2 - d^2 - i Th_n] Om2c - i w |G_cb|^2).
cplx probe_amplitude(const AuxiliaryBlocks& aux, const EffectiveCouplings& eff,
                     const SystemParams& p, double delta);

/// c_+ = i G_cb^2 w eps_p alpha2 / ([w^2 - d^2 + i Th_p] Om1c^* - i w |G_cb|^2).
cplx stokes_amplitude(const AuxiliaryBlocks& aux, const EffectiveCouplings& eff,
                      const SystemParams& p, double delta);

ResponsePoint response_point(const SystemParams& p, const SteadyState& ss,
                             const EffectiveCouplings& eff, double delta);

inline ResponsePoint response_point(const WorkingPoint& wp, double delta) {
  return response_point(wp.params, wp.ss, wp.eff, delta);
}

/// Pointwise response_point over a strictly increasing grid. `workers` > 1
/// splits the grid across threads; the output is identical for any count.
std::vector<ResponsePoint> spectrum(const SystemParams& p, const SteadyState& ss,
                                   const EffectiveCouplings& eff, std::span<const double> deltas,
                                   int workers = 1);

inline std::vector<ResponsePoint> spectrum(const WorkingPoint& wp, std::span<const double> deltas,
                                           int workers = 1) {
  return spectrum(wp.params, wp.ss, wp.eff, deltas, workers);
}

/// n uniformly spaced detunings from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int n);

}  // namespace omm
