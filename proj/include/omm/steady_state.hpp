#pragma once

#include <complex>
#include <vector>

#include "omm/params.hpp"

namespace omm {

using cplx = std::complex<double>;

/// Self-consistent mean-field working point.
struct SteadyState {
  double q_s = 0.0;
  double p_s = 0.0;  ///< always zero at a fixed point
  cplx c_s{};
  cplx m_s{};
  double delta_c = 0.0;  ///< delta_c0 - g_cb q_s
  double delta_m = 0.0;  ///< delta_m0 + g_mb q_s
  double residual = 0.0;
  int branch_id = 0;
  bool is_default = false;
};

struct SteadyStateOptions {
  int scan_points = 4096;       ///< uniform samples across the bracket
  int cluster_points = 512;     ///< extra samples around each Lorentzian centre
  double bisection_rtol = 1e-14;
  double tolerance = 1e-12;     ///< acceptance bound on SteadyState::residual
  int continuation_steps = 256;
};

/// Scalar fixed-point map q -> (g_cb |c_s(q)|^2 - g_mb |m_s(q)|^2) / omega_b.
double fixed_point_map(const SystemParams& p, double q);

/// Defect q - fixed_point_map(q) and its derivative.
double fixed_point_defect(const SystemParams& p, double q);
double fixed_point_defect_derivative(const SystemParams& p, double q);

/// Every root of the defect is inside [-bound, bound].
double fixed_point_bound(const SystemParams& p);

/// Builds the full SteadyState (amplitudes, detunings, residual) at q.
SteadyState steady_state_at(const SystemParams& p, double q);

/// Relative re-substitution defect of the three mean-field equations at `ss`.
double steady_state_residual(const SystemParams& p, const SteadyState& ss);

/// All fixed points of the mean-field equations, sorted by q_s.
///
/// The defect is scanned densely over the bracket [-bound, bound] (with extra
/// samples around the two Lorentzian centres), each sign change is bisected and
/// then polished with one Newton step. Exactly one returned state has
/// is_default set: the root reached by continuation from the uncoupled
/// solution q_s = 0 as the bare couplings are ramped up from zero.
///
/// Throws InvalidInput for invalid params, BracketExhausted when the scan finds
/// no root.
std::vector<SteadyState> solve_steady_state(const SystemParams& p,
                                            const SteadyStateOptions& opts = {});

/// The flagged default branch of a solve_steady_state result.
const SteadyState& default_branch(const std::vector<SteadyState>& roots);

/// Linearized couplings entering the fluctuation equations.
struct EffectiveCouplings {
  cplx G_cb{};
  cplx G_mb{};
};

enum class Gauge {
  as_solved,        ///< G = sqrt2 g c_s, G = sqrt2 g m_s with the solved phases
  real_amplitudes,  ///< pump phases chosen so c_s and m_s are real and >= 0
};

EffectiveCouplings effective_couplings(const SystemParams& p, const SteadyState& ss,
                                       Gauge gauge = Gauge::real_amplitudes);

/// Everything the linear response needs: rates, effective detunings, couplings.
struct WorkingPoint {
  SystemParams params;
  SteadyState ss;
  EffectiveCouplings eff;
};

/// Working point with effective detunings and couplings imposed directly; the
/// mean-field solve is bypassed and q_s, c_s, m_s are left at zero.
WorkingPoint fixed_effective(const SystemParams& p, double delta_c, double delta_m, cplx G_cb,
                             cplx G_mb);

/// Working point from the default branch of the self-consistent solve.
WorkingPoint fixed_bare(const SystemParams& p, Gauge gauge = Gauge::real_amplitudes,
                        const SteadyStateOptions& opts = {});

/// Bare parameters realizing a target effective working point (real, non-negative
/// couplings) for the given bare couplings: Omega, eps_L and the bare detunings
/// are chosen so that q_s = (g_cb|c_s|^2 - g_mb|m_s|^2)/omega_b is a fixed point
/// with the requested delta_c, delta_m, G_cb, G_mb.
SystemParams bare_for_effective(const SystemParams& rates, double delta_c, double delta_m,
                                double G_cb, double G_mb, double g_cb, double g_mb);

}  // namespace omm
