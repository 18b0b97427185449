#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fracdyn/error.hpp"
#include "fracdyn/fode.hpp"
#include "fracdyn/fpde.hpp"
#include "fracdyn/order_drivers.hpp"
#include "gen.hpp"

using namespace fracdyn;

namespace {

DiffusionProblem sin_pi_problem(double t_end) {
  DiffusionProblem p;
  p.diffusivity = 0.1;
  p.length = 1.0;
  p.t_end = t_end;
  p.initial = [](double x) { return std::sin(M_PI * x); };
  return p;
}

// Gaussian elimination with partial pivoting on the dense matrix.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    std::swap(a[k], a[p]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST_CASE("thomas solver matches dense elimination") {
  gen::Source src(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(src.integer(2, 40));
    auto lower = src.uniforms(n - 1, -1.0, 1.0);
    auto upper = src.uniforms(n - 1, -1.0, 1.0);
    auto diag = src.uniforms(n, 2.5, 4.0);
    auto rhs = src.uniforms(n, -5.0, 5.0);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      dense[i][i] = diag[i];
      if (i + 1 < n) {
        dense[i][i + 1] = upper[i];
        dense[i + 1][i] = lower[i];
      }
    }
    const auto x = thomas_solve(lower, diag, upper, rhs);
    const auto y = dense_solve(dense, rhs);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - y[i]) <= 1e-12);
  }
}

TEST_CASE("thomas solver errors") {
  const std::vector<double> one{1.0}, two{1.0, 1.0}, three{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(thomas_solve(one, three, one, three), std::invalid_argument);
  CHECK_THROWS_AS(thomas_solve(one, two, one, three), std::invalid_argument);
  const std::vector<double> zero_diag{0.0, 1.0};
  CHECK_THROWS_AS(thomas_solve(one, zero_diag, one, two), PivotError);
}

TEST_CASE("classical-limit diffusion matches separation of variables") {
  const auto f = solve_vo_diffusion(sin_pi_problem(0.5), 100, 1e-3);
  const double exact = std::exp(-0.1 * M_PI * M_PI * 0.5);
  CHECK(exact == doctest::Approx(0.61050).epsilon(1e-5));
  CHECK(std::abs(probe(f, 0.5, 0.5) - exact) / exact <= 0.01);
}

TEST_CASE("spatial error falls by at least 3x per grid doubling") {
  // Self-convergence at a fixed dt removes the time-discretisation error.
  const auto prob = sin_pi_problem(0.5);
  const double fine = probe(solve_vo_diffusion(prob, 400, 1e-3), 0.5, 0.5);
  const double e50 = std::abs(probe(solve_vo_diffusion(prob, 50, 1e-3), 0.5, 0.5) - fine);
  const double e100 = std::abs(probe(solve_vo_diffusion(prob, 100, 1e-3), 0.5, 0.5) - fine);
  CHECK(e50 / e100 >= 3.0);
}

TEST_CASE("zero data stays zero") {
  DiffusionProblem p;
  p.t_end = 0.5;
  p.initial = [](double) { return 0.0; };
  p.order = OrderSource::constant(0.6);
  const auto f = solve_vo_diffusion(p, 20, 0.05);
  for (std::size_t n = 0; n < f.rows(); ++n)
    for (double v : f.row(n)) CHECK(v == 0.0);
}

TEST_CASE("boundary data is carried on every level") {
  DiffusionProblem p;
  p.t_end = 0.2;
  p.initial = [](double) { return 0.0; };
  p.left = [](double t) { return 1.0 + t; };
  p.right = [](double) { return -2.0; };
  const auto f = solve_vo_diffusion(p, 10, 0.05);
  for (std::size_t n = 0; n < f.rows(); ++n) {
    CHECK(f(n, 0) == doctest::Approx(1.0 + f.t(n)));
    CHECK(f(n, 10) == -2.0);
  }
}

TEST_CASE("discrete maximum principle in the classical limit") {
  DiffusionProblem p = sin_pi_problem(1.0);
  p.initial = [](double x) { return x * (1.0 - x) * std::cos(7.0 * x); };
  const auto f = solve_vo_diffusion(p, 60, 0.01);
  double prev = INFINITY;
  for (std::size_t n = 0; n < f.rows(); ++n) {
    double m = 0.0;
    for (double v : f.row(n)) m = std::max(m, std::abs(v));
    CHECK(m <= prev + 1e-15);
    prev = m;
  }
}

TEST_CASE("probe interpolates bilinearly") {
  Field f(1.0, 2, 0.5);
  f.push_row(std::vector<double>{0.0, 1.0, 2.0});
  f.push_row(std::vector<double>{4.0, 5.0, 6.0});
  CHECK(probe(f, 0.5, 0.0) == 1.0);
  CHECK(probe(f, 0.25, 0.25) == doctest::Approx(2.5));
  CHECK(probe(f, 1.0, 0.5) == 6.0);
  CHECK_THROWS_AS(probe(f, 1.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(probe(f, 0.5, 0.6), std::domain_error);
  CHECK_THROWS_AS(f.push_row(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("case 2 field decays while the order accelerates") {
  const auto T = solve_temperature(0.9, 0.01, 5.0);
  DiffusionProblem p;
  p.diffusivity = 0.1;
  p.length = 1.0;
  p.t_end = 5.0;
  p.initial = [](double x) { return std::sin(x); };
  p.order = OrderSource::driver_system(T.state, kTemperatureOrderMap);
  const auto f = solve_vo_diffusion(p, 100, 0.01);
  CHECK(f.orders().front() == doctest::Approx(0.85).epsilon(1e-15));
  double prev_u = INFINITY;
  for (std::size_t n = 0; n < f.rows(); ++n) {
    const double u = probe(f, 0.5, f.t(n));
    if (n == 0) CHECK(u == doctest::Approx(std::sin(0.5)).epsilon(1e-15));
    CHECK(u < prev_u);
    prev_u = u;
    if (n > 0) CHECK(f.orders()[n] > f.orders()[n - 1]);
  }
}

TEST_CASE("order path changes the solution") {
  DiffusionProblem base = sin_pi_problem(1.0);
  base.order = OrderSource::time_function([](double t) { return 0.6 + 0.2 * t; });
  DiffusionProblem raised = base;
  raised.order = OrderSource::time_function([](double t) { return 0.65 + 0.2 * t; });
  const double a = probe(solve_vo_diffusion(base, 50, 0.01), 0.5, 1.0);
  const double b = probe(solve_vo_diffusion(raised, 50, 0.01), 0.5, 1.0);
  CHECK(std::abs(a - b) > 1e-6);
}

TEST_CASE("diffusion input errors") {
  auto p = sin_pi_problem(0.5);
  CHECK_THROWS_AS(solve_vo_diffusion(p, 2, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(solve_vo_diffusion(p, 10, -0.01), std::invalid_argument);
  p.diffusivity = 0.0;
  CHECK_THROWS_AS(solve_vo_diffusion(p, 10, 0.01), std::invalid_argument);
  p = sin_pi_problem(0.5);
  p.order = OrderSource::affine_of_signal(kTemperatureOrderMap);
  CHECK_THROWS_AS(solve_vo_diffusion(p, 10, 0.01), std::invalid_argument);
}
