#pragma once

#include <string>
#include <vector>

#include "omm/sweep.hpp"

namespace omm {

/// Table-1 rates: kappa_c 0.1, kappa_m 0.01, gamma_b 1e-5, all in units of omega_b.
SystemParams table1_params();
inline constexpr double kTable1Gcb = 0.05;
inline constexpr double kTable1Gmb = 0.5;

/// A named fixed-effective sweep reproducing one published figure panel.
struct FigureConfig {
  std::string id;
  std::string description;
  SweepSpec spec;
};

/// Every figure panel, each over delta in [-2, 2] with `grid` points.
std::vector<FigureConfig> figure_configs(int grid = 2001);

/// Throws InvalidInput for an unknown id.
FigureConfig figure_config(const std::string& id, int grid = 2001);

/// n evenly spaced values from lo to hi inclusive (n == 1 gives lo).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace omm
