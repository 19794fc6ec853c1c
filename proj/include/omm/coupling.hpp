#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace omm {

/// Magnetoelastic material constants (SI).
struct MaterialParams {
  double B1 = 3.48e5;   ///< magnetoelastic coefficient, J/m^3
  double B2 = 6.96e5;   ///< carried for completeness; the dispersive term does not use it
  double M_s = 1.4e5;   ///< saturation magnetization, A/m
  double gamma = 28e9;  ///< gyromagnetic ratio entering hbar*gamma/V, Hz/T
  double volume = 0.0;  ///< crystal volume, m^3
  double d_zpm = 0.0;   ///< zero-point displacement amplitude, m
};

/// Displacement eigenmode sampled on the nodes of a regular grid.
///
/// Node (i, j, k) sits at (i hx, j hy, k hz) relative to a crystal corner, so
/// the crystal spans (nx-1) hx by (ny-1) hy by (nz-1) hz. Samples are stored
/// row-major with z fastest: index = (i ny + j) nz + k.
struct ModeShapeGrid {
  std::size_t nx = 0, ny = 0, nz = 0;
  std::array<double, 3> spacing{};  ///< hx, hy, hz in metres
  std::vector<double> chi_x, chi_y, chi_z;

  std::size_t size() const { return nx * ny * nz; }
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * ny + j) * nz + k;
  }
  std::array<double, 3> extent() const {
    return {(nx - 1) * spacing[0], (ny - 1) * spacing[1], (nz - 1) * spacing[2]};
  }
  double volume() const {
    const auto e = extent();
    return e[0] * e[1] * e[2];
  }
};

/// Throws InvalidInput for fewer than two nodes on an axis, non-positive
/// spacing, size mismatches or non-finite samples.
void validate(const ModeShapeGrid& grid);

/// Samples a mode given as a callable chi(x, y, z) -> {chi_x, chi_y, chi_z}
/// at node positions origin + (i hx, j hy, k hz).
template <class Mode>
ModeShapeGrid sample_mode(std::size_t nx, std::size_t ny, std::size_t nz,
                          std::array<double, 3> spacing, std::array<double, 3> origin,
                          Mode&& mode) {
  ModeShapeGrid g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.spacing = spacing;
  g.chi_x.resize(g.size());
  g.chi_y.resize(g.size());
  g.chi_z.resize(g.size());
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t k = 0; k < nz; ++k) {
        const std::array<double, 3> v = mode(origin[0] + i * spacing[0],
                                             origin[1] + j * spacing[1],
                                             origin[2] + k * spacing[2]);
        const auto n = g.index(i, j, k);
        g.chi_x[n] = v[0];
        g.chi_y[n] = v[1];
        g.chi_z[n] = v[2];
      }
  return g;
}

/// Pointwise d(chi_x)/dx + d(chi_y)/dy - 2 d(chi_z)/dz. Central differences
/// inside, second-order one-sided differences on the faces (plain two-point
/// differences on an axis with only two nodes).
std::vector<double> strain_integrand(const ModeShapeGrid& grid);

/// Trapezoid-rule volume integral of a nodal field.
double trapezoid_volume(const ModeShapeGrid& grid, const std::vector<double>& field);

struct CouplingResult {
  double g_mb = 0.0;
  double integral_value = 0.0;  ///< volume integral of the strain combination, m^3
  double grid_volume = 0.0;
  double max_abs_integrand = 0.0;
};

/// g = (B1 / M_s) (gamma / V) d_zpm * integral of the strain combination.
/// The grid must span the crystal volume to 1e-9 relative.
CouplingResult magnon_phonon_coupling(const ModeShapeGrid& grid, const MaterialParams& mat);

/// Richardson extrapolation of a second-order quantity from spacings h and h/2.
inline double richardson(double coarse, double fine, int order = 2) {
  const double r = static_cast<double>(1 << order);
  return (r * fine - coarse) / (r - 1.0);
}

enum class AnalyticMode {
  uniform_gradient,  ///< chi = (x/Lx, 0, 0): constant integrand 1/Lx
  trace_free,        ///< chi = (x/Lx, y/Ly, z (1/Lx + 1/Ly)/2): integrand vanishes
  sine,              ///< chi = (sin(pi x/Lx), 0, 0) on a box centred at the origin
};

/// Throws InvalidInput for unknown names (uniform-gradient, trace-free, sine).
AnalyticMode analytic_mode_from_string(const std::string& name);

/// Samples the mode on nodes[a] nodes along axis a, spanning lengths exactly.
ModeShapeGrid analytic_mode(AnalyticMode kind, std::array<std::size_t, 3> nodes,
                            std::array<double, 3> lengths);
inline ModeShapeGrid analytic_mode(AnalyticMode kind, std::size_t n, std::array<double, 3> lengths) {
  return analytic_mode(kind, {n, n, n}, lengths);
}

/// Exact volume integral of the strain combination for the analytic mode.
double analytic_integral(AnalyticMode kind, std::array<double, 3> lengths);

/// Mode files: CSV `x_index,y_index,z_index,chi_x,chi_y,chi_z`, z fastest,
/// with a JSON sidecar {nx, ny, nz, hx, hy, hz}.
ModeShapeGrid read_mode(const std::string& csv_path, const std::string& sidecar_path);
void write_mode(const ModeShapeGrid& grid, const std::string& csv_path,
                const std::string& sidecar_path);

}  // namespace omm
