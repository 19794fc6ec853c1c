#include "omm/params.hpp"

#include <cmath>
#include <string>

#include "omm/errors.hpp"

namespace omm {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidInput(std::string("invalid parameters: ") + what);
}

}  // namespace

void validate(const SystemParams& p) {
  for (auto name : kParamNames) {
    require(std::isfinite(*get_field(p, name)), "all entries must be finite");
  }
  require(p.omega_b > 0, "omega_b must be > 0");
  require(p.kappa_c > 0, "kappa_c must be > 0");
  require(p.kappa_m > 0, "kappa_m must be > 0");
  require(p.gamma_b >= 0, "gamma_b must be >= 0");
  require(p.eps_p > 0, "eps_p must be > 0");
}

double* field(SystemParams& p, std::string_view name) {
  if (name == "omega_b") return &p.omega_b;
  if (name == "kappa_c") return &p.kappa_c;
  if (name == "kappa_m") return &p.kappa_m;
  if (name == "gamma_b") return &p.gamma_b;
  if (name == "g_cb") return &p.g_cb;
  if (name == "g_mb") return &p.g_mb;
  if (name == "delta_c0") return &p.delta_c0;
  if (name == "delta_m0") return &p.delta_m0;
  if (name == "omega_rabi") return &p.omega_rabi;
  if (name == "eps_L") return &p.eps_L;
  if (name == "eps_p") return &p.eps_p;
  return nullptr;
}

std::optional<double> get_field(const SystemParams& p, std::string_view name) {
  auto copy = p;
  if (auto* f = field(copy, name)) return *f;
  return std::nullopt;
}

SystemParams rescale(const SystemParams& p, double unit) {
  if (!(unit > 0) || !std::isfinite(unit)) throw InvalidInput("rescale: unit must be finite and > 0");
  SystemParams out = p;
  for (auto name : kParamNames) *field(out, name) /= unit;
  return out;
}

SystemParams normalize_drive(const PhysicalDrive& phys, const SystemParams& params) {
  auto non_negative = [](double v) { return std::isfinite(v) && v >= 0; };
  if (!non_negative(phys.gamma0) || !non_negative(phys.B0) || !non_negative(phys.rho) ||
      !non_negative(phys.volume) || !non_negative(phys.power_L)) {
    throw InvalidInput("invalid physical input: drive quantities must be finite and >= 0");
  }
  if (!(phys.omega_L > 0) || !(phys.hbar > 0) || !std::isfinite(phys.omega_L) ||
      !std::isfinite(phys.hbar)) {
    throw InvalidInput("invalid physical input: omega_L and hbar must be finite and > 0");
  }
  if (!(params.kappa_c > 0)) throw InvalidInput("invalid physical input: kappa_c must be > 0");

  SystemParams out = params;
  out.omega_rabi = std::sqrt(5.0) / 4.0 * phys.gamma0 * std::sqrt(spin_count(phys)) * phys.B0;
  out.eps_L = std::sqrt(params.kappa_c * phys.power_L / (phys.hbar * phys.omega_L));
  if (!std::isfinite(out.omega_rabi) || !std::isfinite(out.eps_L)) {
    throw InvalidInput("invalid physical input: drive amplitudes are not finite");
  }
  return out;
}

}  // namespace omm
