#include "doctest.h"

#include <cmath>

#include "omm/errors.hpp"
#include "omm/response.hpp"
#include "reference.hpp"

using namespace omm;

namespace {

WorkingPoint table1(double dc, double dm, cplx gcb = 0.05, cplx gmb = 0.5) {
  SystemParams p;
  p.kappa_c = 0.1;
  p.kappa_m = 0.01;
  p.gamma_b = 1e-5;
  return fixed_effective(p, dc, dm, gcb, gmb);
}

double rel(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

TEST_CASE("symmetric magnon denominators cancel at zero detuning") {
  const auto wp = table1(1.0, 0.0);
  const auto aux = auxiliaries(wp.params, wp.ss, wp.eff, 0.0);
  CHECK(aux.omega1m == cplx(0.01));
  CHECK(aux.omega2m == cplx(0.01));
  CHECK(aux.chi1 == cplx(0.0));
}

TEST_CASE("no coupling leaves only mechanical damping in the thetas") {
  const auto wp = table1(1.0, 0.3, 0.0, 0.0);
  const double d = 0.7;
  const auto aux = auxiliaries(wp.params, wp.ss, wp.eff, d);
  CHECK(aux.chi12 == cplx(0.0));
  CHECK(aux.alpha12 == cplx(0.0));
  CHECK(aux.theta_n == cplx(d * 1e-5));
  CHECK(aux.theta_p == cplx(d * 1e-5));
  CHECK(aux.omega2c == cplx(0.1, 1.0 - d));
  CHECK(aux.omega1c == cplx(0.1, -(1.0 + d)));
}

TEST_CASE("bare cavity") {
  const auto wp = table1(1.0, 0.3, 0.0, 0.5);
  for (double d : {-1.5, 0.2, 1.0, 1.7}) {
    const auto r = response_point(wp, d);
    CHECK(rel(r.c_minus, 1.0 / cplx(0.1, 1.0 - d)) <= 1e-14);
    CHECK(r.c_plus == cplx(0.0));
    CHECK(r.fwm == 0.0);
  }
  const auto on = response_point(wp, 1.0);
  CHECK(std::abs(on.c_minus - 10.0) <= 1e-12);
  CHECK(on.lambda == doctest::Approx(2.0));
}

TEST_CASE("closed forms agree with the driven drift system") {
  for (double dm : {0.0, 0.5, 1.0}) {
    for (double dc : {0.9, 1.0, 1.1}) {
      const auto wp = table1(dc, dm, cplx(0.04, 0.03), cplx(0.3, -0.4));
      for (double d : {-1.9, -1.0, -0.3, 0.0, 0.9, 1.0, 1.05, 1.6}) {
        const auto r = response_point(wp, d);
        const auto [cm, cp] = test::drift_sidebands(wp.params, dc, dm, wp.eff, d);
        CHECK(rel(r.c_minus, cm) <= 1e-10);
        CHECK(rel(r.c_plus, cp) <= 1e-10);
      }
    }
  }
}

TEST_CASE("output quadratures are homogeneous of degree zero in the probe") {
  auto wp = table1(1.0, 0.6);
  const auto ref = response_point(wp, 0.95);
  for (double e : {1e-3, 1e3}) {
    wp.params.eps_p = e;
    const auto r = response_point(wp, 0.95);
    CHECK(rel(r.eps_T, ref.eps_T) <= 1e-12);
    CHECK(std::abs(r.fwm - ref.fwm) <= 1e-12 * ref.fwm);
    CHECK(rel(r.c_minus, ref.c_minus * e) <= 1e-12);
  }
}

TEST_CASE("rescaling every frequency leaves the dimensionless response unchanged") {
  const auto wp = table1(1.0, 0.7);
  const double s = 2 * M_PI * 1e7;
  const auto big = fixed_effective(rescale(wp.params, 1.0 / s), 1.0 * s, 0.7 * s, 0.05 * s, 0.5 * s);
  for (double d : {-1.0, 0.5, 1.02}) {
    const auto a = response_point(wp, d);
    const auto b = response_point(big, d * s);
    CHECK(rel(a.eps_T, b.eps_T) <= 1e-12);
    CHECK(std::abs(a.fwm - b.fwm) <= 1e-11 * a.fwm);
  }
}

TEST_CASE("coupling phases do not change observables") {
  const auto a = table1(1.0, 0.4, 0.05, 0.5);
  const auto b = table1(1.0, 0.4, std::polar(0.05, 1.1), std::polar(0.5, -2.3));
  for (double d : {-1.0, 0.0, 1.0}) {
    const auto ra = response_point(a, d);
    const auto rb = response_point(b, d);
    CHECK(rel(ra.eps_T, rb.eps_T) <= 1e-12);
    CHECK(std::abs(ra.fwm - rb.fwm) <= 1e-12 * ra.fwm);
  }
}

TEST_CASE("spectrum equals pointwise evaluation for any worker count") {
  const auto wp = table1(1.0, 0.5);
  const auto grid = uniform_grid(-2.0, 2.0, 4001);
  const auto one = spectrum(wp, grid, 1);
  const auto four = spectrum(wp, grid, 4);
  REQUIRE(one.size() == 4001);
  bool same = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto r = response_point(wp, grid[i]);
    same = same && r.eps_T == one[i].eps_T && r.fwm == one[i].fwm && four[i].fwm == one[i].fwm &&
           four[i].eps_T == one[i].eps_T;
  }
  CHECK(same);
  CHECK(grid.front() == -2.0);
  CHECK(grid.back() == 2.0);
  CHECK(grid[2000] == 0.0);
}

TEST_CASE("grid and pole errors") {
  const auto wp = table1(1.0, 0.5);
  const std::vector<double> bad{0.0, 0.0, 1.0};
  CHECK_THROWS_AS(spectrum(wp, bad), InvalidInput);
  auto p = wp.params;
  p.kappa_c = 1e-31;
  const auto sharp = fixed_effective(p, 1.0, 0.5, 0.0, 0.0);
  CHECK_THROWS_AS(response_point(sharp, 1.0), PoleError);
  try {
    response_point(sharp, 1.0);
  } catch (const PoleError& e) {
    CHECK(e.delta() == 1.0);
    CHECK_FALSE(e.block().empty());
  }
}
