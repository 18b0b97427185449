#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "fracdyn/special_fn.hpp"
#include "gen.hpp"

namespace fd = fracdyn;
using fracdyn::mittag_leffler;

TEST_CASE("gamma reference values") {
  CHECK(fd::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fd::gamma(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fd::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(fd::gamma(1.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-13));
  CHECK(fd::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-13));
}

TEST_CASE("gamma agrees with std::tgamma") {
  gen::Source src(11);
  for (int i = 0; i < 200; ++i) {
    const double x = src.uniform(0.01, 3.0);
    CHECK(std::abs(fd::gamma(x) / std::tgamma(x) - 1.0) <= 1e-13);
  }
}

TEST_CASE("gamma recurrence on random arguments") {
  gen::Source src(7);
  for (int i = 0; i < 100; ++i) {
    const double x = src.uniform(0.1, 2.0);
    CHECK(std::abs(fd::gamma(x + 1.0) / (x * fd::gamma(x)) - 1.0) <= 1e-11);
  }
}

TEST_CASE("gamma rejects non-positive and non-finite arguments") {
  CHECK_THROWS_AS(fd::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(fd::gamma(-1.5), std::domain_error);
  CHECK_THROWS_AS(fd::gamma(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(fd::gamma(INFINITY), std::domain_error);
}

TEST_CASE("mittag-leffler reference values") {
  CHECK(mittag_leffler(1.0, -1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(mittag_leffler(0.3, 0.0) == 1.0);
  CHECK(mittag_leffler(0.5, 0.0) == 1.0);
  // E_{1/2}(-z) = exp(z^2) erfc(z)
  CHECK(std::abs(mittag_leffler(0.5, -1.0) - 0.42758357615580700) <= 1e-12);
  for (double z : {0.1, 0.7, 2.0, 4.5, 5.5, 9.0, 20.0}) {
    const double exact = std::exp(z * z) * std::erfc(z);
    CHECK(std::abs(mittag_leffler(0.5, -z) - exact) <= 1e-11 * std::max(1.0, exact));
  }
}

TEST_CASE("mittag-leffler with alpha 1 is the exponential") {
  for (int i = 0; i <= 100; ++i) {
    const double z = -0.1 * i;
    CHECK(std::abs(mittag_leffler(1.0, z) - std::exp(z)) <= 1e-10);
  }
}

TEST_CASE("mittag-leffler is continuous across the series switch") {
  for (double a : {0.2, 0.5, 0.8, 0.95}) {
    const double below = mittag_leffler(a, -5.0 + 1e-9);
    const double above = mittag_leffler(a, -5.0 - 1e-9);
    CHECK(std::abs(below - above) <= 1e-9);
  }
}

TEST_CASE("mittag-leffler is non-increasing along the negative axis") {
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9, 0.999999, 1.0}) {
    double prev = mittag_leffler(a, 0.0);
    for (int i = 1; i <= 500; ++i) {
      const double v = mittag_leffler(a, -0.1 * i);
      CHECK(v <= prev + 1e-14);
      CHECK(v > 0.0);
      prev = v;
    }
  }
}

TEST_CASE("mittag-leffler domain errors") {
  CHECK_THROWS_AS(mittag_leffler(0.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(mittag_leffler(1.2, -1.0), std::domain_error);
  CHECK_THROWS_AS(mittag_leffler(0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(mittag_leffler(0.5, fracdyn::kMittagLefflerMinArg - 1.0), std::domain_error);
  CHECK_NOTHROW(mittag_leffler(0.5, fracdyn::kMittagLefflerMinArg));
}
