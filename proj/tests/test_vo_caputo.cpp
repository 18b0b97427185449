#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fracdyn/vo_caputo.hpp"
#include "gen.hpp"

using namespace fracdyn;

namespace {

std::vector<double> sample(double dt, std::size_t n, auto f) {
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = f(static_cast<double>(i) * dt);
  return v;
}

double polynomial(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
  return v;
}

double polynomial_derivative(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) v = v * t + static_cast<double>(k) * c[k];
  return v;
}

// Caputo derivative of t^k: Gamma(k+1)/Gamma(k+1-alpha) t^{k-alpha}.
double power_derivative(int k, double alpha, double t) {
  return std::tgamma(k + 1.0) / std::tgamma(k + 1.0 - alpha) * std::pow(t, k - alpha);
}

}  // namespace

TEST_CASE("l1 weights") {
  CHECK(l1_weight(0.5, 0) == 1.0);
  CHECK(l1_weight(0.5, 1) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(l1_weight(0.3, 4) == doctest::Approx(std::pow(5.0, 0.7) - std::pow(4.0, 0.7)).epsilon(1e-13));
  const L1Weights w(0.4, 50);
  CHECK(w.size() == 50);
  for (std::size_t j = 1; j < w.size(); ++j) {
    CHECK(w[j] > 0.0);
    CHECK(w[j] < w[j - 1]);
  }
  CHECK_THROWS_AS(L1Weights(0.0, 3), std::domain_error);
  CHECK_THROWS_AS(L1Weights(1.0, 3), std::domain_error);
  CHECK_THROWS_AS(L1Weights(0.5, 0), std::domain_error);
}

TEST_CASE("l1 weights telescope to n^{1-alpha}") {
  gen::Source src(3);
  for (int i = 0; i < 50; ++i) {
    const double a = src.uniform(0.01, 0.99);
    const auto n = static_cast<std::size_t>(src.integer(1, 3000));
    const L1Weights w(a, n);
    double sum = 0.0;
    for (double b : w.values()) sum += b;
    CHECK(std::abs(sum - std::pow(static_cast<double>(n), 1.0 - a)) <= 1e-11 * sum);
  }
}

TEST_CASE("l1 weights near the classical limit keep relative accuracy") {
  const double a = 0.999999;
  const double exact = (1.0 - a) * std::log(2.0);  // first-order expansion of 2^{1-a} - 1
  CHECK(std::abs(l1_weight(a, 1) / exact - 1.0) <= 1e-6);
}

TEST_CASE("caputo_l1 examples") {
  // f(t) = t: the L1 scheme is exact for piecewise linear data.
  const auto lin = sample(0.01, 100, [](double t) { return t; });
  CHECK(std::abs(caputo_l1(lin, 0.01, 0.5) - 2.0 / std::sqrt(M_PI)) <= 1e-12);
  const auto quad = sample(1e-3, 1000, [](double t) { return t * t; });
  for (double a : {0.3, 0.5, 0.7})
    CHECK(std::abs(caputo_l1(quad, 1e-3, a) - power_derivative(2, a, 1.0)) <= 5e-3);
  const std::vector<double> constant(20, 3.0);
  CHECK(caputo_l1(constant, 0.1, 0.4) == 0.0);
}

TEST_CASE("caputo_l1 errors") {
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(caputo_l1(one, 0.1, 0.5), std::length_error);
  const std::vector<double> two{0.0, 1.0};
  CHECK_THROWS_AS(caputo_l1(two, 0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(caputo_l1(two, 0.0, 0.5), std::domain_error);
}

TEST_CASE("caputo_quadrature examples") {
  auto one = [](double) { return 1.0; };
  CHECK(std::abs(caputo_quadrature(one, 0.5, 1.0) - 2.0 / std::sqrt(M_PI)) <= 1e-12);
  CHECK(std::abs(caputo_quadrature(one, 0.3, 2.0) - std::pow(2.0, 0.7) / std::tgamma(1.7)) <= 1e-12);
  CHECK(std::abs(caputo_quadrature(one, 0.3, 2.0) - 1.78784453488047) <= 1e-12);
  auto two_t = [](double t) { return 2.0 * t; };
  CHECK(std::abs(caputo_quadrature(two_t, 0.7, 1.0) - 2.0 / std::tgamma(2.3)) <= 1e-12);
  CHECK(std::abs(caputo_quadrature(two_t, 0.7, 1.0) - 1.71421924391892610) <= 1e-12);
}

TEST_CASE("caputo_quadrature matches power-law derivatives") {
  for (int k = 1; k <= 4; ++k)
    for (double a : {0.1, 0.45, 0.9}) {
      auto fp = [k](double t) { return k * std::pow(t, k - 1); };
      CHECK(std::abs(caputo_quadrature(fp, a, 1.5) - power_derivative(k, a, 1.5)) <= 1e-10);
    }
}

TEST_CASE("caputo_l1 agrees with caputo_quadrature on random polynomials") {
  gen::Source src(20240601);
  for (int i = 0; i < 20; ++i) {
    const auto degree = static_cast<std::size_t>(src.integer(1, 4));
    const auto coeffs = src.uniforms(degree + 1, -2.0, 2.0);
    const double a = src.uniform(0.05, 0.95);
    const auto h = sample(1e-3, 1000, [&](double t) { return polynomial(coeffs, t); });
    const double ref = caputo_quadrature([&](double t) { return polynomial_derivative(coeffs, t); }, a, 1.0);
    CHECK(std::abs(caputo_l1(h, 1e-3, a) - ref) <= 5e-3);
  }
}

TEST_CASE("caputo_l1 is linear") {
  gen::Source src(5);
  const auto x = src.uniforms(300, -1.0, 1.0);
  const auto y = src.uniforms(300, -1.0, 1.0);
  const double a = 1.7, b = -0.6;
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = a * x[i] + b * y[i];
  const double lhs = caputo_l1(z, 0.01, 0.35);
  const double rhs = a * caputo_l1(x, 0.01, 0.35) + b * caputo_l1(y, 0.01, 0.35);
  CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)));
}

TEST_CASE("caputo_l1 tends to the backward difference as alpha approaches 1") {
  const double dt = 1e-3;
  const auto h = sample(dt, 1000, [](double t) { return std::sin(3.0 * t) + t * t; });
  const double backward = (h[1000] - h[999]) / dt;
  CHECK(std::abs(caputo_l1(h, dt, 0.999999) / backward - 1.0) <= 1e-4);
}

TEST_CASE("memory sum over the weight cache") {
  L1WeightCache cache;
  const std::vector<double> hist{0.0, 1.0, 3.0, 4.0};
  const auto w = cache.weights(0.5, 4);
  // sum_{j=1}^{n-1} b_j (x_{n-j} - x_{n-j-1}) with n = 4
  CHECK(l1_memory_sum(w, hist) == doctest::Approx(w[1] * 1.0 + w[2] * 2.0 + w[3] * 1.0).epsilon(1e-15));
  CHECK(l1_memory_sum(w, std::span<const double>(hist).first(3)) == doctest::Approx(w[1] * 2.0 + w[2] * 1.0).epsilon(1e-15));
  CHECK(l1_memory_sum(w, std::span<const double>(hist).first(1)) == 0.0);
  const auto fresh = l1_weights(0.5, 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(w[j] == fresh[j]);
}

TEST_CASE("starting correction is exact for singular power laws") {
  // With the correction the scheme reproduces the Caputo derivative of t^alpha
  // and t^{2 alpha} at every step. At n = 1 with two terms the correction
  // reaches ahead to x_2.
  const double dt = 0.01;
  for (double a : {0.3, 0.5, 0.6, 0.7, 0.9}) {
    L1WeightCache cache;
    const std::size_t terms = starting_correction_terms(a);
    CHECK(terms == (a < 2.0 / 3.0 ? 2u : 1u));
    for (std::size_t m = 1; m <= terms; ++m) {
      const double sigma = m * a;
      auto f = [sigma](double t) { return std::pow(t, sigma); };
      const auto h = sample(dt, 60, f);
      for (std::size_t n : {1u, 2u, 5u, 60u}) {
        std::vector<double> hist(h.begin(), h.begin() + n + 1);
        const StartingCorrection sc = cache.starting(a, n);
        double value = caputo_l1(hist, dt, a);
        for (std::size_t k = 1; k <= sc.count; ++k) value += std::pow(dt, -a) * sc.weights[k - 1] * (h[k] - h[0]);
        const double exact = std::tgamma(1.0 + sigma) / std::tgamma(1.0 + sigma - a) * std::pow(n * dt, sigma - a);
        CHECK(std::abs(value - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("power increments") {
  CHECK(power_increment(0.5, 1) == 1.0);
  CHECK(power_increment(0.5, 4) == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-14));
  CHECK(power_increment(1.4, 1000000) == doctest::Approx(1.4 * std::pow(1e6, 0.4)).epsilon(1e-6));
}
