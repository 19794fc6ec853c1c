#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "omm/stability.hpp"

using namespace omm;

namespace {

bool has_eigenvalue(const std::vector<cplx>& ev, cplx z, double tol = 1e-12) {
  return std::any_of(ev.begin(), ev.end(), [&](cplx e) { return std::abs(e - z) < tol; });
}

}  // namespace

TEST_CASE("uncoupled modes decay at their own rates") {
  SystemParams p;
  p.gamma_b = 1e-3;
  const auto rep = assess_stability(drift_matrix(p, 1.0, 0.3, {}));
  REQUIRE(rep.eigenvalues.size() == 6);
  CHECK(has_eigenvalue(rep.eigenvalues, {-0.1, 1.0}));
  CHECK(has_eigenvalue(rep.eigenvalues, {-0.1, -1.0}));
  CHECK(has_eigenvalue(rep.eigenvalues, {-0.01, 0.3}));
  CHECK(has_eigenvalue(rep.eigenvalues, {-0.01, -0.3}));
  const double w = std::sqrt(1.0 - 0.25e-6);
  CHECK(has_eigenvalue(rep.eigenvalues, {-0.5e-3, w}));
  CHECK(rep.stable);
  CHECK(rep.margin == doctest::Approx(-0.5e-3));
}

TEST_CASE("drift entries") {
  SystemParams p;
  const EffectiveCouplings eff{{0.05, 0.02}, {0.5, -0.1}};
  const auto a = drift_matrix(p, 1.0, 0.4, eff);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 0) == -1.0);
  CHECK(a(1, 1) == -p.gamma_b);
  CHECK(a(1, 2) == doctest::Approx(0.1));
  CHECK(a(1, 3) == doctest::Approx(0.04));
  CHECK(a(1, 4) == doctest::Approx(-1.0));
  CHECK(a(1, 5) == doctest::Approx(0.2));
  CHECK(a(2, 2) == -p.kappa_c);
  CHECK(a(2, 3) == 1.0);
  CHECK(a(3, 2) == -1.0);
  CHECK(a(4, 5) == 0.4);
}

TEST_CASE("eigenvalues close under conjugation and multiply to the determinant") {
  SystemParams p;
  const EffectiveCouplings eff{{0.05, 0.01}, {0.5, 0.2}};
  const auto a = drift_matrix(p, 1.0, 0.7, eff);
  const auto rep = assess_stability(a);
  CHECK(conjugate_pairing_error(rep.eigenvalues) <= 1e-10);
  cplx prod = 1.0;
  for (auto z : rep.eigenvalues) prod *= z;
  CHECK(std::abs(prod - a.determinant()) <= 1e-10 * std::abs(a.determinant()));
  for (std::size_t i = 1; i < rep.eigenvalues.size(); ++i) {
    CHECK(rep.eigenvalues[i - 1].real() <= rep.eigenvalues[i].real());
  }
}

TEST_CASE("strong magnomechanical coupling near magnon resonance is statically unstable") {
  // A real eigenvalue crosses zero once 2 D |G|^2 / (k^2 + D^2) exceeds omega_b.
  SystemParams p;
  const auto unstable = assess_stability(drift_matrix(p, 1.0, 0.2, {0.05, 0.5}));
  CHECK_FALSE(unstable.stable);
  CHECK(unstable.margin > 0);
  const auto stable = assess_stability(drift_matrix(p, 1.0, 1.0, {0.05, 0.5}));
  CHECK(stable.stable);
}
