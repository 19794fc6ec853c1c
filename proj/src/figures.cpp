#include "omm/figures.hpp"

#include "omm/csv.hpp"
#include "omm/errors.hpp"

namespace omm {

SystemParams table1_params() {
  SystemParams p;
  p.omega_b = 1.0;
  p.kappa_c = 0.1;
  p.kappa_m = 0.01;
  p.gamma_b = 1e-5;
  p.delta_c0 = 1.0;
  p.delta_m0 = 0.0;
  return p;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw InvalidInput("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

namespace {

FigureConfig make(std::string id, std::string description, SweepAxis a1,
                  std::optional<SweepAxis> a2, int grid,
                  void (*tweak)(SweepSpec&) = nullptr) {
  SweepSpec s;
  s.base = table1_params();
  s.G_cb = kTable1Gcb;
  s.G_mb = kTable1Gmb;
  s.axis1 = std::move(a1);
  s.axis2 = std::move(a2);
  s.delta_grid = uniform_grid(-2.0, 2.0, grid);
  s.mode = SweepMode::fixed_effective;
  if (tweak) tweak(s);
  return {std::move(id), std::move(description), std::move(s)};
}

}  // namespace

std::vector<FigureConfig> figure_configs(int grid) {
  const std::vector<double> dc5{0.8, 0.9, 1.0, 1.1, 1.2};
  std::vector<FigureConfig> out;

  out.push_back(make("fig2a", "Lambda vs delta for several magnon detunings, Delta_c = 1",
                     {"delta_m", {0.0, 0.3, 0.7, 0.9, 1.0}}, std::nullopt, grid));
  out.push_back(make("fig2a_no_magnon", "Lambda vs delta with G_mb = 0, Delta_c = 1",
                     {"G_mb", {0.0}}, std::nullopt, grid));
  for (double dc : {1.0, 1.05, 0.95}) {
    auto f = make("fig2_density_dc" + format_double(dc), "Lambda over (delta, Delta_m)",
                  {"delta_m", linspace(0.0, 1.0, 21)}, std::nullopt, grid);
    f.spec.base.delta_c0 = dc;
    out.push_back(std::move(f));
  }
  for (double gmb : {0.2, 0.5}) {
    auto f = make("fig3_gmb" + format_double(gmb), "Lambda for several Delta_c and Delta_m",
                  {"delta_c", {0.9, 1.0, 1.1}}, SweepAxis{"delta_m", {0.0, 0.3, 0.7, 0.9}}, grid);
    f.spec.G_mb = gmb;
    out.push_back(std::move(f));
  }
  out.push_back(make("fig4", "Lambda for several Delta_m and Delta_c", {"delta_m", {0.1, 0.3, 0.5}},
                     SweepAxis{"delta_c", dc5}, grid));
  out.push_back(make("fig5a", "FWM vs delta for Delta_m from 0 to 1, Delta_c = 1",
                     {"delta_m", linspace(0.0, 1.0, 11)}, std::nullopt, grid));
  out.push_back(make("fig5c", "FWM vs delta for several Delta_c, Delta_m = 0.4", {"delta_c", dc5},
                     std::nullopt, grid, [](SweepSpec& s) { s.base.delta_m0 = 0.4; }));
  out.push_back(make("fig6a", "FWM over (delta, Delta_c), Delta_m = 0.5",
                     {"delta_c", linspace(0.8, 1.2, 21)}, std::nullopt, grid,
                     [](SweepSpec& s) { s.base.delta_m0 = 0.5; }));
  out.push_back(make("fig6b", "FWM over (delta, G_mb), Delta_m = 1", {"G_mb", linspace(0.1, 0.8, 15)},
                     std::nullopt, grid, [](SweepSpec& s) { s.base.delta_m0 = 1.0; }));
  out.push_back(make("fig7a", "FWM for decreasing kappa_c, Delta_c = 1, Delta_m = 0",
                     {"kappa_c", {0.1, 0.08, 0.05, 0.02}}, std::nullopt, grid));
  out.push_back(make("fig7b", "FWM for increasing kappa_m, Delta_c = 1, Delta_m = 0",
                     {"kappa_m", {0.005, 0.01, 0.02, 0.05}}, std::nullopt, grid));
  return out;
}

FigureConfig figure_config(const std::string& id, int grid) {
  for (auto& f : figure_configs(grid)) {
    if (f.id == id) return f;
  }
  throw InvalidInput("unknown figure id '" + id + "'");
}

}  // namespace omm
