#include "omm/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "omm/csv.hpp"
#include "omm/errors.hpp"

namespace omm {

namespace {

// Derivative along one axis of a nodal line f[0..n) with spacing h.
double line_derivative(const std::vector<double>& v, std::size_t base, std::size_t stride,
                       std::size_t n, std::size_t pos, double h) {
  auto f = [&](std::size_t i) { return v[base + i * stride]; };
  if (n == 2) return (f(1) - f(0)) / h;
  if (pos == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
  if (pos == n - 1) return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
  return (f(pos + 1) - f(pos - 1)) / (2.0 * h);
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double trapezoid_weight(std::size_t i, std::size_t n, double h) {
  return (i == 0 || i == n - 1) ? 0.5 * h : h;
}

}  // namespace

void validate(const ModeShapeGrid& g) {
  if (g.nx < 2 || g.ny < 2 || g.nz < 2) {
    throw InvalidInput("invalid grid: every axis needs at least 2 nodes");
  }
  for (double h : g.spacing) {
    if (!(h > 0) || !std::isfinite(h)) throw InvalidInput("invalid grid: spacing must be finite and > 0");
  }
  if (g.chi_x.size() != g.size() || g.chi_y.size() != g.size() || g.chi_z.size() != g.size()) {
    throw InvalidInput("invalid grid: sample count does not match nx*ny*nz");
  }
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(g.chi_x) || !finite(g.chi_y) || !finite(g.chi_z)) {
    throw InvalidInput("invalid grid: non-finite mode sample");
  }
}

std::vector<double> strain_integrand(const ModeShapeGrid& g) {
  validate(g);
  std::vector<double> out(g.size());
  const auto [hx, hy, hz] = g.spacing;
  const std::size_t sx = g.ny * g.nz, sy = g.nz;
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t k = 0; k < g.nz; ++k) {
        const auto n = g.index(i, j, k);
        const double dx = line_derivative(g.chi_x, g.index(0, j, k), sx, g.nx, i, hx);
        const double dy = line_derivative(g.chi_y, g.index(i, 0, k), sy, g.ny, j, hy);
        const double dz = line_derivative(g.chi_z, g.index(i, j, 0), 1, g.nz, k, hz);
        out[n] = dx + dy - 2.0 * dz;
      }
  return out;
}

double trapezoid_volume(const ModeShapeGrid& g, const std::vector<double>& field) {
  if (field.size() != g.size()) throw InvalidInput("invalid grid: field size mismatch");
  const auto [hx, hy, hz] = g.spacing;
  std::vector<double> slabs(g.nx);
  std::vector<double> row(g.ny * g.nz);
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t k = 0; k < g.nz; ++k) {
        row[j * g.nz + k] = trapezoid_weight(j, g.ny, hy) * trapezoid_weight(k, g.nz, hz) *
                            field[g.index(i, j, k)];
      }
    slabs[i] = trapezoid_weight(i, g.nx, hx) * pairwise_sum(row.data(), row.size());
  }
  return pairwise_sum(slabs.data(), slabs.size());
}

CouplingResult magnon_phonon_coupling(const ModeShapeGrid& grid, const MaterialParams& mat) {
  validate(grid);
  if (!(mat.M_s > 0) || !(mat.volume > 0) || !(mat.d_zpm > 0)) {
    throw InvalidInput("invalid material: M_s, volume and d_zpm must be > 0");
  }
  if (!std::isfinite(mat.B1) || !std::isfinite(mat.gamma)) {
    throw InvalidInput("invalid material: B1 and gamma must be finite");
  }
  const double gv = grid.volume();
  if (std::abs(gv - mat.volume) > 1e-9 * mat.volume) {
    std::ostringstream msg;
    msg << "invalid grid: grid spans volume " << gv << " but the crystal volume is "
        << mat.volume;
    throw InvalidInput(msg.str());
  }
  const auto integrand = strain_integrand(grid);
  CouplingResult r;
  r.integral_value = trapezoid_volume(grid, integrand);
  r.grid_volume = gv;
  for (double v : integrand) r.max_abs_integrand = std::max(r.max_abs_integrand, std::abs(v));
  r.g_mb = mat.B1 / mat.M_s * mat.gamma / mat.volume * mat.d_zpm * r.integral_value;
  return r;
}

ModeShapeGrid read_mode(const std::string& csv_path, const std::string& sidecar_path) {
  std::ifstream side(sidecar_path);
  if (!side) throw InvalidInput("mode sidecar not readable: " + sidecar_path);
  ModeShapeGrid g;
  try {
    const auto j = nlohmann::json::parse(side);
    g.nx = j.at("nx").get<std::size_t>();
    g.ny = j.at("ny").get<std::size_t>();
    g.nz = j.at("nz").get<std::size_t>();
    g.spacing = {j.at("hx").get<double>(), j.at("hy").get<double>(), j.at("hz").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("mode sidecar " + sidecar_path + ": " + e.what());
  }
  if (g.nx < 2 || g.ny < 2 || g.nz < 2) throw InvalidInput("invalid grid: every axis needs at least 2 nodes");
  g.chi_x.assign(g.size(), 0.0);
  g.chi_y.assign(g.size(), 0.0);
  g.chi_z.assign(g.size(), 0.0);

  std::ifstream in(csv_path);
  if (!in) throw InvalidInput("mode file not readable: " + csv_path);
  std::string line;
  if (!std::getline(in, line) || trim_eol(line) != "x_index,y_index,z_index,chi_x,chi_y,chi_z") {
    throw InvalidInput(csv_path + ":1: expected header x_index,y_index,z_index,chi_x,chi_y,chi_z");
  }
  std::size_t expected = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim_eol(line).empty()) continue;
    const auto cells = split_csv_line(trim_eol(line));
    auto fail = [&](const std::string& why) {
      throw InvalidInput(csv_path + ":" + std::to_string(lineno) + ": " + why);
    };
    if (cells.size() != 6) fail("expected 6 columns");
    if (expected >= g.size()) fail("more rows than nx*ny*nz");
    const std::size_t i = expected / (g.ny * g.nz), j = (expected / g.nz) % g.ny,
                      k = expected % g.nz;
    try {
      if (std::stoul(cells[0]) != i || std::stoul(cells[1]) != j || std::stoul(cells[2]) != k) {
        fail("indices out of z-fastest row-major order");
      }
      g.chi_x[expected] = parse_double(cells[3]);
      g.chi_y[expected] = parse_double(cells[4]);
      g.chi_z[expected] = parse_double(cells[5]);
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
    ++expected;
  }
  if (expected != g.size()) {
    throw InvalidInput(csv_path + ": expected " + std::to_string(g.size()) + " rows, got " +
                       std::to_string(expected));
  }
  validate(g);
  return g;
}

void write_mode(const ModeShapeGrid& g, const std::string& csv_path,
                const std::string& sidecar_path) {
  validate(g);
  std::ofstream out(csv_path);
  out << "x_index,y_index,z_index,chi_x,chi_y,chi_z\n";
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t k = 0; k < g.nz; ++k) {
        const auto n = g.index(i, j, k);
        out << i << ',' << j << ',' << k << ',' << format_double(g.chi_x[n]) << ','
            << format_double(g.chi_y[n]) << ',' << format_double(g.chi_z[n]) << '\n';
      }
  nlohmann::ordered_json j;
  j["nx"] = g.nx;
  j["ny"] = g.ny;
  j["nz"] = g.nz;
  j["hx"] = g.spacing[0];
  j["hy"] = g.spacing[1];
  j["hz"] = g.spacing[2];
  std::ofstream(sidecar_path) << j.dump(2) << '\n';
}

AnalyticMode analytic_mode_from_string(const std::string& name) {
  if (name == "uniform-gradient") return AnalyticMode::uniform_gradient;
  if (name == "trace-free") return AnalyticMode::trace_free;
  if (name == "sine") return AnalyticMode::sine;
  throw InvalidInput("unknown analytic mode '" + name + "'");
}

ModeShapeGrid analytic_mode(AnalyticMode kind, std::array<std::size_t, 3> n,
                            std::array<double, 3> L) {
  if (n[0] < 2 || n[1] < 2 || n[2] < 2) {
    throw InvalidInput("analytic_mode: need at least two nodes per axis");
  }
  const std::array<double, 3> h{L[0] / (n[0] - 1), L[1] / (n[1] - 1), L[2] / (n[2] - 1)};
  switch (kind) {
    case AnalyticMode::uniform_gradient:
      return sample_mode(n[0], n[1], n[2], h, {0, 0, 0}, [&](double x, double, double) {
        return std::array<double, 3>{x / L[0], 0.0, 0.0};
      });
    case AnalyticMode::trace_free: {
      const double cz = 0.5 * (1.0 / L[0] + 1.0 / L[1]);
      return sample_mode(n[0], n[1], n[2], h, {0, 0, 0}, [&](double x, double y, double z) {
        return std::array<double, 3>{x / L[0], y / L[1], cz * z};
      });
    }
    case AnalyticMode::sine:
      return sample_mode(n[0], n[1], n[2], h, {-L[0] / 2, -L[1] / 2, -L[2] / 2},
                         [&](double x, double, double) {
                           return std::array<double, 3>{std::sin(std::numbers::pi * x / L[0]), 0.0, 0.0};
                         });
  }
  throw InvalidInput("analytic_mode: unknown kind");
}

double analytic_integral(AnalyticMode kind, std::array<double, 3> L) {
  switch (kind) {
    case AnalyticMode::uniform_gradient: return L[1] * L[2];
    case AnalyticMode::trace_free: return 0.0;
    case AnalyticMode::sine: return 2.0 * L[1] * L[2];
  }
  return 0.0;
}

}  // namespace omm
