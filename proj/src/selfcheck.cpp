#include "fracdyn/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fracdyn/fode.hpp"
#include "fracdyn/fractor.hpp"
#include "fracdyn/order_drivers.hpp"
#include "fracdyn/special_fn.hpp"
#include "fracdyn/vo_caputo.hpp"

namespace fracdyn {

namespace {

std::string describe(double value, double tol) {
  std::ostringstream os;
  os.precision(3);
  os << "max error " << value << " (tolerance " << tol << ")";
  return os.str();
}

CheckResult relaxation_check(const std::string& name, double alpha, double tol,
                             double (*reference)(double, double)) {
  ScalarFodeProblem p;
  p.order = OrderSource::constant(alpha);
  p.lin_coeff = -1.0;
  p.x0 = 1.0;
  p.t_end = 5.0;
  const auto sol = solve_scalar_fode(p, 1e-3);
  double err = 0.0;
  for (std::size_t i = 0; i < sol.state.size(); ++i)
    err = std::max(err, std::abs(sol.state[i] - reference(alpha, sol.state.time(i))));
  return {name, err <= tol, describe(err, tol)};
}

}  // namespace

std::vector<CheckResult> run_self_checks() {
  std::vector<CheckResult> out;

  out.push_back(relaxation_check("classical-limit relaxation vs exp(-t)", kAlphaMax, 5e-4,
                                 [](double, double t) { return std::exp(-t); }));
  out.push_back(relaxation_check("alpha=0.5 relaxation vs Mittag-Leffler", 0.5, 2e-3, [](double a, double t) {
    return mittag_leffler(a, -std::pow(t, a));
  }));

  {
    const auto traj = fuzzy_solve(relaxation_fuzzy_driver(), 0.01, 10.0);
    double err = 0.0;
    bool increasing = true;
    double prev_alpha = -1.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      err = std::max(err, std::abs(traj[i] - fuzzy_exact(traj.time(i))));
      const double a = affine_order(kFuzzyRelaxationOrderMap, traj[i]);
      if (!(a > prev_alpha && a >= 0.8 && a < 1.0)) increasing = false;
      prev_alpha = a;
    }
    out.push_back({"fuzzy driver vs closed form", err <= 1e-8 && increasing,
                   describe(err, 1e-8) + (increasing ? ", order path increasing" : ", order path NOT increasing")});
  }

  {
    double worst = 0.0;
    const double dt = 1e-3;
    const std::size_t n = 1000;
    for (double alpha : {0.3, 0.5, 0.7}) {
      for (int power : {1, 2}) {
        std::vector<double> x(n + 1);
        for (std::size_t j = 0; j <= n; ++j) x[j] = std::pow(static_cast<double>(j) * dt, power);
        const double exact = power == 1 ? 1.0 / gamma(2.0 - alpha) : 2.0 / gamma(3.0 - alpha);
        const double l1 = caputo_l1(x, dt, alpha);
        const double quad = caputo_quadrature(
            [power](double t) { return power == 1 ? 1.0 : 2.0 * t; }, alpha, 1.0);
        worst = std::max({worst, std::abs(l1 - exact), std::abs(l1 - quad)});
      }
    }
    out.push_back({"Caputo L1 vs analytic and quadrature", worst <= 5e-3, describe(worst, 5e-3)});
  }

  {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> lam(0.05, 0.95);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const FractorModel model{1.0, 1.0, 0.0, lam(rng)};
      const auto est = estimate_order(synthesize_sweep(model, 0.0, 1e-2, 1e4, 50), 1.0);
      worst = std::max(worst, std::abs(est.lambda - model.p2));
    }
    const double t1 = 25.0, t2 = 60.0;
    const auto fit = fit_lambda_temperature(
        {{t1, kFractorP1 * t1 + kFractorP2}, {t2, kFractorP1 * t2 + kFractorP2}});
    const double fit_err = std::max(std::abs(fit.slope - kFractorP1), std::abs(fit.intercept - kFractorP2));
    const FractorModel line{1.0, 1.0, kFractorP1, kFractorP2};
    const bool at20 = std::abs(line.lambda(20.0) - 0.90604) <= 1e-12;
    out.push_back({"Fractor order estimation round trip", worst <= 1e-9 && fit_err <= 1e-12 && at20,
                   describe(worst, 1e-9) + ", line fit error " + describe(fit_err, 1e-12)});
  }
  return out;
}

}  // namespace fracdyn
