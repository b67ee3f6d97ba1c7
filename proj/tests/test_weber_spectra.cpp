#include <catch2/catch.hpp>

#include <cmath>

#include "cylspec/weber_spectra.hpp"

using namespace cylspec;

TEST_CASE("half-line b = 0 is the exactly solvable case") {
  const auto lv = solve_half_line(BarrierGeometry::half_line(0.0), 4, {});
  for (const auto& l : lv) {
    CHECK(l.epsilon == Approx(-(2.0 * l.n + 1.5)).margin(1e-9));
    CHECK(l.energy == Approx(2.0 * l.n + 1.5).margin(1e-9));
    CHECK(l.parity == Parity::None);
  }
}

TEST_CASE("half-line b = 1 ground root sits exactly at -5/2") {
  // U(-5/2, z) = (z^2 - 1) exp(-z^2/4) vanishes at z = 1
  const auto lv = solve_half_line(BarrierGeometry::half_line(1.0), 2, {});
  CHECK(lv[0].epsilon == Approx(-2.5).margin(1e-9));
  CHECK(lv[1].epsilon < lv[0].epsilon);
}

TEST_CASE("box levels merge with alternating parity") {
  const auto lv = solve_box(BarrierGeometry::symmetric_box(1.0), 4, {});
  CHECK(lv[0].parity == Parity::Even);
  CHECK(lv[1].parity == Parity::Odd);
  CHECK(lv[2].parity == Parity::Even);
  CHECK(lv[3].parity == Parity::Odd);
  CHECK(lv[0].epsilon == Approx(-2.5).margin(1e-9));  // y1(-5/2, 1) = 0
  for (int n = 0; n + 1 < 4; ++n) CHECK(lv[n + 1].epsilon < lv[n].epsilon);
}

TEST_CASE("box near the particle-in-a-box limit") {
  const auto lv = solve_box(BarrierGeometry::symmetric_box(0.2), 1, {});
  CHECK(lv[0].epsilon == Approx(-M_PI * M_PI / (4.0 * 0.04)).epsilon(0.01));
}

TEST_CASE("half-line expansion coefficients") {
  // order-by-order differences expose the coefficients
  const double b = 0.3;
  const double e0 = series_half_line(2, b, 0);
  const double e1 = series_half_line(2, b, 1);
  const double e2 = series_half_line(2, b, 2);
  CHECK(e0 == Approx(-0.5 - 5.0));
  const double c1_0 = (series_half_line(0, b, 1) - series_half_line(0, b, 0)) / b;
  CHECK(c1_0 == Approx(-std::sqrt(2.0 / M_PI)).epsilon(1e-13));
  const double c1_1 = (series_half_line(1, b, 1) - series_half_line(1, b, 0)) / b;
  CHECK(c1_1 == Approx(1.5 * c1_0).epsilon(1e-13));
  const double c2_0 = (series_half_line(0, b, 2) - series_half_line(0, b, 1)) / (b * b);
  CHECK(c2_0 == Approx(-2.0 / M_PI * (1.0 - std::log(2.0))).epsilon(1e-13));
  const double c2_1 = (series_half_line(1, b, 2) - series_half_line(1, b, 1)) / (b * b);
  CHECK(c2_1 == Approx(2.25 * c2_0 + 12.0 / (16.0 * M_PI)).epsilon(1e-12));
  CHECK(c2_1 == Approx(-0.200801872502283).epsilon(1e-12));
  CHECK((e2 - e1) / (b * b) < 0.0);
}

TEST_CASE("series_half_line at b = 0.05") {
  CHECK(series_half_line(0, 0.05, 2) == Approx(-1.540382599470299).epsilon(1e-13));
}

TEST_CASE("box expansion coefficients") {
  const double em2 = -M_PI * M_PI / 4.0;
  CHECK(series_box(0, 0.1) * 0.01 ==
        Approx(em2 + (-1.0 / 12.0 + 1.0 / (2.0 * M_PI * M_PI)) * 1e-4).margin(1e-10));
  // eps_6(0) from the closed form
  const double e6 = 1.0 / (720.0 * em2) + 5.0 / (192.0 * em2 * em2) +
                    7.0 / (128.0 * em2 * em2 * em2);
  CHECK(e6 == Approx(7.39e-5).epsilon(0.01));
  // the three printed terms nearly telescope to -5/2 at b = 1
  CHECK(series_box(0, 1.0) == Approx(-2.5).margin(5e-3));
}

TEST_CASE("energy_from_epsilon") {
  CHECK(energy_from_epsilon(-1.5, {}) == Approx(1.5));
  CHECK(energy_from_epsilon(0.0, {1.0, 3.0}) == 0.0);
  CHECK(energy_from_epsilon(-2.5, {1.0, 2.0}) == Approx(5.0));
}

TEST_CASE("eigenfunction_at") {
  const auto geom = BarrierGeometry::half_line(1.0);
  const auto lv = solve_half_line(geom, 1, {});
  CHECK(eigenfunction_at(lv[0], geom, 0.5) == 0.0);  // behind the wall
  CHECK(std::abs(eigenfunction_at(lv[0], geom, 1.0)) <= 1e-9);
  CHECK(eigenfunction_at(lv[0], geom, 2.0) != 0.0);

  const auto bgeom = BarrierGeometry::symmetric_box(1.0);
  const auto blv = solve_box(bgeom, 2, {});
  CHECK(eigenfunction_at(blv[0], bgeom, 0.0) == Approx(1.0));  // y1(eps, 0) = 1
  CHECK(eigenfunction_at(blv[1], bgeom, 0.0) == 0.0);          // odd level
  CHECK(eigenfunction_at(blv[0], bgeom, 1.5) == 0.0);          // outside
}

TEST_CASE("monotonicity in the wall position") {
  const OscillatorParams ho{};
  double prev = 0.0;
  for (double b : {0.5, 1.0, 1.5}) {
    const double e = solve_half_line(BarrierGeometry::half_line(b), 1, ho)[0].energy;
    CHECK(e > prev);
    prev = e;
  }
  prev = 1e9;
  for (double b : {0.5, 1.0, 1.5}) {
    const double e = solve_box(BarrierGeometry::symmetric_box(b), 1, ho)[0].energy;
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("solver error paths") {
  CHECK_THROWS_AS(solve_box(BarrierGeometry::symmetric_box(0.01), 1, {}),
                  DomainTooNarrow);
  EigenSolveConfig narrow;
  narrow.eps_hi = -0.4;
  narrow.eps_lo = -1.0;  // no root of U(eps, 0) in here
  CHECK_THROWS_AS(solve_half_line(BarrierGeometry::half_line(0.0), 1, {}, narrow),
                  WindowTooSmall);
  CHECK_THROWS_AS(solve_half_line(BarrierGeometry::symmetric_box(1.0), 1, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_half_line(BarrierGeometry::half_line(0.0), 0, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_box(BarrierGeometry::symmetric_box(-1.0), 1, {}),
                  std::invalid_argument);
  OscillatorParams bad;
  bad.omega = -1.0;
  CHECK_THROWS_AS(solve_half_line(BarrierGeometry::half_line(0.0), 1, bad),
                  std::invalid_argument);
}

TEST_CASE("scan-step retry resolves close roots, gives up below its floor") {
  EigenSolveConfig cfg;  // scan_step 0.05
  // roots spaced 0.04: closer than two scan steps, resolvable after halving
  const auto close_pair = [](double eps) { return std::sin(2.0 * M_PI * eps / 0.08); };
  const auto roots =
      detail::roots_with_retry(close_pair, -0.01, -0.30, cfg, 4);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0] - roots[1] == Approx(0.04).margin(1e-6));
  // roots spaced 0.004: the scan aliases them at one per step however far
  // the step is halved, so the retry budget runs out
  const auto too_close = [](double eps) { return std::sin(2.0 * M_PI * eps / 0.008); };
  CHECK_THROWS_AS(detail::roots_with_retry(too_close, -0.001, -0.5, cfg, 8),
                  BracketAmbiguity);
}

TEST_CASE("units scale out of the dimensionless problem") {
  const OscillatorParams scaled{2.0, 3.0};
  const auto lv = solve_half_line(BarrierGeometry::half_line(0.0), 2, scaled);
  CHECK(lv[0].energy == Approx(2.0 * 3.0 * 1.5).margin(1e-8));
  CHECK(lv[1].energy == Approx(2.0 * 3.0 * 3.5).margin(1e-8));
}
