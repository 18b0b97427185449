#include "fracdyn/order_drivers.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracdyn/error.hpp"

namespace fracdyn {

TSFuzzySystem::TSFuzzySystem(std::vector<double> consequents, std::vector<Membership> memberships,
                             double y0, double valid_lo, double valid_hi)
    : consequents_(std::move(consequents)),
      memberships_(std::move(memberships)),
      y0_(y0),
      valid_lo_(valid_lo),
      valid_hi_(valid_hi) {
  if (consequents_.empty()) throw std::invalid_argument("fuzzy system needs at least one rule");
  if (consequents_.size() != memberships_.size())
    throw std::invalid_argument("fuzzy system: consequent and membership counts differ");
  for (const auto& h : memberships_)
    if (!h) throw std::invalid_argument("fuzzy system: empty membership function");
  if (!(valid_lo_ < valid_hi_)) throw std::invalid_argument("fuzzy system: empty validity interval");
  if (!(y0_ >= valid_lo_ && y0_ <= valid_hi_))
    throw std::invalid_argument("fuzzy system: initial state outside the validity interval");
}

TSFuzzySystem TSFuzzySystem::two_rule(double a1, double a2, double y0) {
  return TSFuzzySystem({a1, a2},
                       {[](double y) { return 0.5 - 0.5 * y; }, [](double y) { return 0.5 + 0.5 * y; }},
                       y0, -1.0, 1.0);
}

TSFuzzySystem relaxation_fuzzy_driver() { return TSFuzzySystem::two_rule(0.0, -1.0, 1.0); }

double fuzzy_rhs(const TSFuzzySystem& sys, double y) {
  if (!(y >= sys.valid_lo() && y <= sys.valid_hi())) {
    std::ostringstream os;
    os << "fuzzy state y = " << y << " left the validity interval [" << sys.valid_lo() << ", "
       << sys.valid_hi() << "]";
    throw ValidityError(os.str());
  }
  double rate = 0.0;
  for (std::size_t i = 0; i < sys.rule_count(); ++i) {
    const double h = sys.membership(i, y);
    if (h < 0.0) {
      std::ostringstream os;
      os << "membership h_" << i + 1 << "(" << y << ") = " << h << " is negative";
      throw ValidityError(os.str());
    }
    rate += h * sys.consequents()[i] * y;
  }
  return rate;
}

Trajectory fuzzy_solve(const TSFuzzySystem& sys, double dt, double t_end) {
  const std::size_t steps = uniform_step_count(dt, t_end);
  std::vector<double> y(steps + 1);
  y[0] = sys.y0();
  for (std::size_t n = 0; n < steps; ++n) {
    const double yn = y[n];
    const double k1 = fuzzy_rhs(sys, yn);
    const double k2 = fuzzy_rhs(sys, yn + 0.5 * dt * k1);
    const double k3 = fuzzy_rhs(sys, yn + 0.5 * dt * k2);
    const double k4 = fuzzy_rhs(sys, yn + dt * k3);
    y[n + 1] = yn + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(y[n + 1] >= sys.valid_lo() && y[n + 1] <= sys.valid_hi())) {
      std::ostringstream os;
      os << "fuzzy state y = " << y[n + 1] << " at t = " << static_cast<double>(n + 1) * dt
         << " left the validity interval";
      throw ValidityError(os.str());
    }
  }
  return Trajectory(dt, std::move(y));
}

double fuzzy_exact(double t) { return 1.0 / (2.0 * std::exp(0.5 * t) - 1.0); }

}  // namespace fracdyn
