#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "torodyn/errors.hpp"
#include "torodyn/matrix.hpp"
#include "torodyn/spectral.hpp"

using namespace torodyn;
using spectral::spectral_data;
using spectral::entropy_report;

namespace {
const ToralMap kCat = ToralMap::from_matrix(IMat::from_rows({{2, 1}, {1, 1}}));
}

TEST_CASE("cat map spectrum: certified eigenvalues off the unit circle") {
  auto sd = spectral_data(kCat);
  REQUIRE(sd.eigenvalues.size() == 2);
  // (3 +- sqrt 5)/2, both real
  const double phi2 = (3.0 + std::sqrt(5.0)) / 2.0;
  CHECK(sd.eigenvalues[0].im() == 0.0);
  CHECK(std::abs(sd.eigenvalues[0].re() - phi2) < 1e-12);
  CHECK(std::abs(sd.eigenvalues[1].re() - 1.0 / phi2) < 1e-12);
  CHECK(sd.eigenvalues[0].side == spectral::CircleSide::outside);
  CHECK(sd.eigenvalues[1].side == spectral::CircleSide::inside);
  CHECK(sd.eigenvalues[0].abs_lower() > 1.0);
  CHECK(sd.eigenvalues[1].abs_upper() < 1.0);
}

TEST_CASE("cat map entropy, threshold, and flags") {
  auto sd = spectral_data(kCat);
  auto rep = entropy_report(kCat, sd);
  const double expect = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  CHECK(std::abs(rep.h_top.value - expect) < 1e-12);
  CHECK(rep.h_top.radius < 1e-12);
  // a single expanding eigenvalue: dropping it leaves nothing
  CHECK(rep.kappa.value == 0.0);
  CHECK(rep.kappa_degenerate);
  CHECK(rep.expanding_dim == 1);
  CHECK(rep.contracting_dim == 1);
  CHECK(rep.neutral_dim == 0);
  CHECK(rep.hyperbolic);
  CHECK(rep.ergodic);
}

TEST_CASE("times-2 circle map entropy is log 2") {
  auto m = ToralMap::times(2);
  auto sd = spectral_data(m);
  auto rep = entropy_report(m, sd);
  CHECK(std::abs(rep.h_top.value - std::log(2.0)) < 1e-14);
  CHECK(rep.expanding_dim == 1);
  CHECK(rep.contracting_dim == 0);
  CHECK(rep.hyperbolic);
  CHECK(rep.ergodic);
}

TEST_CASE("diag(2,3) has two expanding directions and a positive threshold") {
  auto m = ToralMap::from_matrix(IMat::from_rows({{2, 0}, {0, 3}}));
  auto sd = spectral_data(m);
  auto rep = entropy_report(m, sd);
  CHECK(std::abs(rep.h_top.value - std::log(6.0)) < 1e-13);
  // drop one factor, keep the larger of the remaining log sums
  CHECK(std::abs(rep.kappa.value - std::log(3.0) / std::log(6.0)) < 1e-13);
  CHECK_FALSE(rep.kappa_degenerate);
}

TEST_CASE("parabolic shear is neither hyperbolic nor ergodic") {
  auto m = ToralMap::from_matrix(IMat::from_rows({{1, 1}, {0, 1}}));
  auto sd = spectral_data(m);
  auto rep = entropy_report(m, sd);
  CHECK(rep.h_top.value == 0.0);
  CHECK(rep.neutral_dim == 2);
  CHECK_FALSE(rep.hyperbolic);
  CHECK_FALSE(rep.ergodic);
}

TEST_CASE("rotation by a root of unity is flagged non-ergodic") {
  // order-4 rotation matrix, char poly x^2 + 1
  auto m = ToralMap::from_matrix(IMat::from_rows({{0, -1}, {1, 0}}));
  auto sd = spectral_data(m);
  auto rep = entropy_report(m, sd);
  CHECK(rep.h_top.value == 0.0);
  CHECK_FALSE(rep.ergodic);
  CHECK_FALSE(rep.hyperbolic);
  REQUIRE(sd.eigenvalues.size() >= 1);
  CHECK(sd.eigenvalues[0].on_circle());
}

TEST_CASE("characteristic polynomial is exact") {
  auto sd = spectral_data(kCat);
  REQUIRE(sd.characteristic.size() == 3);
  CHECK(sd.characteristic[0] == 1);   // constant term: det = 1
  CHECK(sd.characteristic[1] == -3);  // -trace
  CHECK(sd.characteristic[2] == 1);   // monic
}

TEST_CASE("radius budget is honored and tightening it shrinks the disks") {
  auto loose = spectral_data(kCat, 1e-6);
  auto tight = spectral_data(kCat, 1e-14);
  for (const auto& d : loose.eigenvalues) CHECK(to_double(d.radius) <= 1e-6);
  for (const auto& d : tight.eigenvalues) CHECK(to_double(d.radius) <= 1e-14);
}

TEST_CASE("eigenvalue multiplicities sum to the dimension") {
  for (const auto& m : {ToralMap::from_matrix(IMat::from_rows({{2, 1}, {1, 1}})),
                        ToralMap::from_matrix(IMat::from_rows({{2, 0}, {0, 2}})),
                        ToralMap::from_matrix(IMat::from_rows({{0, 0, 2}, {1, 0, 0}, {0, 1, 0}}))}) {
    auto sd = spectral_data(m);
    int total = 0;
    for (const auto& d : sd.eigenvalues) total += d.multiplicity;
    CHECK(total == m.dim);
  }
}
