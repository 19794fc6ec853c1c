#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace omm {

/// Model parameters of the driven opto-magnomechanical system.
///
/// All rates, detunings and drive amplitudes share one frequency unit. In
/// normalized mode that unit is the mechanical frequency, so omega_b == 1.
struct SystemParams {
  double omega_b = 1.0;   ///< mechanical frequency
  double kappa_c = 0.1;   ///< cavity decay rate
  double kappa_m = 0.01;  ///< magnon decay rate
  double gamma_b = 1e-5;  ///< mechanical damping rate
  double g_cb = 0.0;      ///< bare optomechanical coupling
  double g_mb = 0.0;      ///< bare magnomechanical coupling
  double delta_c0 = 1.0;  ///< bare cavity detuning, omega_c - omega_L
  double delta_m0 = 0.0;  ///< bare magnon detuning, omega_m - omega_L
  double omega_rabi = 0.0;  ///< magnon drive amplitude
  double eps_L = 0.0;       ///< cavity pump amplitude
  double eps_p = 1.0;       ///< probe amplitude

  bool operator==(const SystemParams&) const = default;
};

/// Throws InvalidInput naming the first violated constraint.
void validate(const SystemParams& p);

/// Names of the SystemParams fields, in declaration order.
inline constexpr std::array<std::string_view, 11> kParamNames = {
    "omega_b", "kappa_c", "kappa_m", "gamma_b",    "g_cb",  "g_mb",
    "delta_c0", "delta_m0", "omega_rabi", "eps_L", "eps_p"};

/// Field lookup by name; nullptr when the name is unknown.
double* field(SystemParams& p, std::string_view name);
std::optional<double> get_field(const SystemParams& p, std::string_view name);

/// Divides every frequency-valued field (rates, detunings, drive amplitudes)
/// by `unit`. Bare couplings g_cb, g_mb are frequencies too and are scaled.
/// eps_p is a frequency but spectra do not depend on it; it is scaled anyway.
SystemParams rescale(const SystemParams& p, double unit);

/// Expresses `p` in units of its own mechanical frequency (omega_b -> 1).
inline SystemParams to_normalized(const SystemParams& p) { return rescale(p, p.omega_b); }

/// Physical drive quantities in SI units.
struct PhysicalDrive {
  double gamma0 = 28e9;    ///< gyromagnetic ratio, Hz/T
  double B0 = 3.9e-9;      ///< drive field amplitude, T
  double rho = 4.22e27;    ///< spin density, m^-3
  double volume = 0.0;     ///< YIG volume, m^3
  double power_L = 0.0;    ///< laser power, W
  double omega_L = 0.0;    ///< laser angular frequency, rad/s
  double hbar = 1.054571817e-34;
};

/// Number of spins N_s = rho * V.
inline double spin_count(const PhysicalDrive& d) { return d.rho * d.volume; }

/// Fills omega_rabi = (sqrt5/4) gamma0 sqrt(rho V) B0 and
/// eps_L = sqrt(kappa_c P_L / (hbar omega_L)); every other field is kept.
///
/// Zero drive field or zero power are accepted and give zero amplitudes.
/// Throws InvalidInput for negative or non-finite inputs or results.
SystemParams normalize_drive(const PhysicalDrive& phys, const SystemParams& params);

}  // namespace omm
