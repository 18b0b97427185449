#include "fracdyn/fode.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracdyn/error.hpp"
#include "fracdyn/vo_caputo.hpp"

namespace fracdyn {

namespace {

constexpr int kNewtonMaxIterations = 50;

// Owns the history of one scalar fractional system and advances it by
// implicit L1 steps, optionally with the starting correction.
class L1Stepper {
 public:
  L1Stepper(double x0, double dt, std::size_t steps, bool corrected) : dt_(dt), corrected_(corrected) {
    history_.reserve(steps + 1);
    history_.push_back(x0);
  }

  double last() const { return history_.back(); }
  std::vector<double> take() { return std::move(history_); }

  double step(double alpha, const ScalarRhs& rhs, double t) {
    const std::size_t n = history_.size();
    const double r = l1_scale(alpha, dt_);
    guard(r - rhs.lin_coeff, r, rhs.lin_coeff, alpha, t);

    const StartingCorrection start = corrected_ ? cache_.starting(alpha, std::max<std::size_t>(n, 2)) : StartingCorrection{};
    double x = 0.0;
    if (n == 1 && start.count == 2) {
      x = first_step_pair(alpha, r, rhs, t);
    } else {
      const StartingCorrection sc = corrected_ ? cache_.starting(alpha, n) : StartingCorrection{};
      const auto weights = cache_.weights(alpha, n);
      // Discrete derivative written as coef * x_n - known.
      double coef = r;
      double known = r * (history_.back() - l1_memory_sum(weights, history_));
      const double scale = std::pow(dt_, -alpha);
      const double x0 = history_.front();
      for (std::size_t k = 1; k <= sc.count; ++k) {
        const double w = scale * sc.weights[k - 1];
        if (k < n) {
          known -= w * (history_[k] - x0);
        } else {
          coef += w;
          known += w * x0;
        }
      }
      x = solve_implicit(coef, known, rhs, t, alpha);
    }
    if (!std::isfinite(x)) {
      std::ostringstream os;
      os << "non-finite state at t = " << t;
      throw NumericalError(os.str());
    }
    history_.push_back(x);
    return x;
  }

 private:
  static void guard(double margin, double r, double lin_coeff, double alpha, double t) {
    if (!(margin > 1e-12 * r)) {
      std::ostringstream os;
      os << "stability guard: L1 factor r = " << r << " does not exceed the linear coefficient " << lin_coeff
         << " at t = " << t << " (order " << alpha << "); reduce dt";
      throw SingularityError(os.str());
    }
  }

  // coef * x - known = rhs(x, t).
  static double solve_implicit(double coef, double known, const ScalarRhs& rhs, double t, double alpha) {
    const double denom = coef - rhs.lin_coeff;
    guard(denom, coef, rhs.lin_coeff, alpha, t);
    const double forcing = rhs.forcing ? rhs.forcing(t) : 0.0;
    double x = (known + forcing) / denom;
    if (!rhs.nonlinear) return x;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      const double h = 1e-7 * (1.0 + std::abs(x));
      const double g = rhs.nonlinear(x, t);
      const double dg = (rhs.nonlinear(x + h, t) - rhs.nonlinear(x - h, t)) / (2.0 * h);
      const double slope = denom - dg;
      if (slope == 0.0) throw SingularityError("implicit step: zero Newton slope");
      const double delta = (denom * x - known - forcing - g) / slope;
      x -= delta;
      if (std::abs(delta) <= 1e-14 * (1.0 + std::abs(x))) return x;
    }
    std::ostringstream os;
    os << "implicit step: Newton iteration did not converge at t = " << t;
    throw ConvergenceError(os.str());
  }

  // With two correction terms the first step involves x_1 and x_2. Both are
  // solved at the frozen order alpha_1; only x_1 is kept, so the order at
  // step 2 is still evaluated from the step-1 state.
  double first_step_pair(double alpha, double r, const ScalarRhs& rhs, double t1) {
    const StartingCorrection c1 = cache_.starting(alpha, 1);
    const StartingCorrection c2 = cache_.starting(alpha, 2);
    const double b1 = cache_.weights(alpha, 2)[1];
    const double scale = std::pow(dt_, -alpha);
    const double x0 = history_.front();
    const double t2 = t1 + dt_;
    const double lam = rhs.lin_coeff;

    // (M - lam I) d = lam x0 + f + nonlinear, with d_k = x_k - x0.
    const double m11 = r + scale * c1.weights[0] - lam;
    const double m12 = scale * c1.weights[1];
    const double m21 = -r + r * b1 + scale * c2.weights[0];
    const double m22 = r + scale * c2.weights[1] - lam;
    const double f1 = lam * x0 + (rhs.forcing ? rhs.forcing(t1) : 0.0);
    const double f2 = lam * x0 + (rhs.forcing ? rhs.forcing(t2) : 0.0);

    auto solve2 = [&](double a11, double a12, double a21, double a22, double y1, double y2, double& d1, double& d2) {
      const double det = a11 * a22 - a12 * a21;
      if (!(std::abs(det) > 1e-12 * std::abs(a11 * a22)) || !std::isfinite(det)) {
        std::ostringstream os;
        os << "starting step: singular 2x2 system at t = " << t1 << " (order " << alpha << "); reduce dt";
        throw SingularityError(os.str());
      }
      d1 = (y1 * a22 - a12 * y2) / det;
      d2 = (a11 * y2 - a21 * y1) / det;
    };

    double d1 = 0.0, d2 = 0.0;
    solve2(m11, m12, m21, m22, f1, f2, d1, d2);
    if (!rhs.nonlinear) return x0 + d1;

    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      const double xa = x0 + d1, xb = x0 + d2;
      const double ha = 1e-7 * (1.0 + std::abs(xa)), hb = 1e-7 * (1.0 + std::abs(xb));
      const double ga = rhs.nonlinear(xa, t1), gb = rhs.nonlinear(xb, t2);
      const double dga = (rhs.nonlinear(xa + ha, t1) - rhs.nonlinear(xa - ha, t1)) / (2.0 * ha);
      const double dgb = (rhs.nonlinear(xb + hb, t2) - rhs.nonlinear(xb - hb, t2)) / (2.0 * hb);
      const double res1 = m11 * d1 + m12 * d2 - f1 - ga;
      const double res2 = m21 * d1 + m22 * d2 - f2 - gb;
      double s1 = 0.0, s2 = 0.0;
      solve2(m11 - dga, m12, m21, m22 - dgb, res1, res2, s1, s2);
      d1 -= s1;
      d2 -= s2;
      if (std::abs(s1) <= 1e-14 * (1.0 + std::abs(x0 + d1)) && std::abs(s2) <= 1e-14 * (1.0 + std::abs(x0 + d2)))
        return x0 + d1;
    }
    std::ostringstream os;
    os << "starting step: Newton iteration did not converge at t = " << t1;
    throw ConvergenceError(os.str());
  }

  double dt_;
  bool corrected_;
  std::vector<double> history_;
  L1WeightCache cache_;
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be finite";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

double ScalarRhs::operator()(double x, double t) const {
  double g = lin_coeff * x;
  if (forcing) g += forcing(t);
  if (nonlinear) g += nonlinear(x, t);
  return g;
}

FodeSolution solve_scalar_fode(const ScalarFodeProblem& problem, double dt, const FodeOptions& options) {
  const std::size_t steps = uniform_step_count(dt, problem.t_end);
  require_finite(problem.x0, "initial state x0");
  require_finite(problem.lin_coeff, "linear coefficient");

  const ScalarRhs rhs{problem.lin_coeff, problem.forcing, {}};
  const bool uses_state = problem.order.needs_signal();
  auto order_at = [&](double t, double lagged) {
    return uses_state ? problem.order.at(t, lagged) : problem.order.at(t);
  };

  L1Stepper stepper(problem.x0, dt, steps, options.starting_correction);
  std::vector<double> orders;
  orders.reserve(steps + 1);
  orders.push_back(order_at(0.0, problem.x0));
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    const double alpha = order_at(t, stepper.last());
    orders.push_back(alpha);
    stepper.step(alpha, rhs, t);
  }
  return {Trajectory(dt, stepper.take()), std::move(orders)};
}

ScalarFodeProblem temperature_problem(double beta, double t_end) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    std::ostringstream os;
    os << "temperature order beta must lie in (0, 1], got " << beta;
    throw std::invalid_argument(os.str());
  }
  ScalarFodeProblem p;
  p.order = OrderSource::constant(beta);
  p.lin_coeff = 0.1;
  p.forcing = [](double t) { return 10.0 / (1.3 * t + 1.0); };
  p.x0 = 10.0;
  p.t_end = t_end;
  return p;
}

FodeSolution solve_temperature(double beta, double dt, double t_end, const FodeOptions& options) {
  return solve_scalar_fode(temperature_problem(beta, t_end), dt, options);
}

StateOrder constant_order(double alpha) {
  const double a = OrderSource::constant(alpha).at(0.0);
  return [a](std::span<const double>, double) { return a; };
}

StateOrder affine_of_state(std::size_t index, AffineOrderMap map) {
  map.validate();
  return [index, map](std::span<const double> states, double) {
    if (index >= states.size()) throw std::invalid_argument("affine_of_state: state index out of range");
    return map(states[index]);
  };
}

CoupledSolution solve_coupled(const CoupledSystem& system, double dt, double t_end, const FodeOptions& options) {
  const std::size_t steps = uniform_step_count(dt, t_end);
  const std::size_t count = system.subsystems.size();
  if (count == 0) throw std::invalid_argument("coupled system has no subsystems");
  for (const auto& sub : system.subsystems) {
    require_finite(sub.x0, "subsystem initial state");
    require_finite(sub.rhs.lin_coeff, "subsystem linear coefficient");
    if (!sub.order) throw std::invalid_argument("subsystem has no order function");
  }

  std::vector<L1Stepper> steppers;
  steppers.reserve(count);
  std::vector<double> snapshot(count);
  for (std::size_t i = 0; i < count; ++i) {
    steppers.emplace_back(system.subsystems[i].x0, dt, steps, options.starting_correction);
    snapshot[i] = system.subsystems[i].x0;
  }

  std::vector<std::vector<double>> orders(count);
  for (std::size_t i = 0; i < count; ++i) {
    orders[i].reserve(steps + 1);
    orders[i].push_back(clamp_order(system.subsystems[i].order(snapshot, 0.0)));
  }

  std::vector<double> alphas(count);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    for (std::size_t i = 0; i < count; ++i) alphas[i] = clamp_order(system.subsystems[i].order(snapshot, t));
    for (std::size_t i = 0; i < count; ++i) {
      orders[i].push_back(alphas[i]);
      steppers[i].step(alphas[i], system.subsystems[i].rhs, t);
    }
    for (std::size_t i = 0; i < count; ++i) snapshot[i] = steppers[i].last();
  }

  CoupledSolution out;
  out.states.reserve(count);
  for (auto& s : steppers) out.states.emplace_back(dt, s.take());
  out.orders = std::move(orders);
  return out;
}

}  // namespace fracdyn
