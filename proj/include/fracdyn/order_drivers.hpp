#pragma once

#include <functional>
#include <vector>

#include "fracdyn/order_source.hpp"
#include "fracdyn/trajectory.hpp"

namespace fracdyn {

/// Takagi-Sugeno fuzzy system with scalar state y and linear consequents:
///   dy/dt = sum_i h_i(y) A_i y.
/// Memberships are functions of the state and must form a non-negative
/// partition of unity on [valid_lo, valid_hi].
class TSFuzzySystem {
 public:
  using Membership = std::function<double(double)>;

  /// Throws std::invalid_argument on size mismatch, empty rule set, an
  /// empty validity interval, or y0 outside it.
  TSFuzzySystem(std::vector<double> consequents, std::vector<Membership> memberships, double y0,
                double valid_lo, double valid_hi);

  /// Two rules with h_1 = (1 - y)/2, h_2 = (1 + y)/2 on [-1, 1].
  static TSFuzzySystem two_rule(double a1, double a2, double y0 = 1.0);

  std::size_t rule_count() const { return consequents_.size(); }
  const std::vector<double>& consequents() const { return consequents_; }
  double membership(std::size_t i, double y) const { return memberships_[i](y); }
  double y0() const { return y0_; }
  double valid_lo() const { return valid_lo_; }
  double valid_hi() const { return valid_hi_; }

 private:
  std::vector<double> consequents_;
  std::vector<Membership> memberships_;
  double y0_;
  double valid_lo_;
  double valid_hi_;
};

/// Rule set driving the relaxation order in the fuzzy example: A = (0, -1), y(0) = 1.
TSFuzzySystem relaxation_fuzzy_driver();

/// sum_i h_i(y) A_i y. Throws ValidityError if y is outside the validity
/// interval or any membership is negative there.
double fuzzy_rhs(const TSFuzzySystem& sys, double y);

/// Classical fourth-order Runge-Kutta integration of dy/dt = fuzzy_rhs(y)
/// on [0, t_end] with fixed step dt; the trajectory starts at y0.
Trajectory fuzzy_solve(const TSFuzzySystem& sys, double dt, double t_end);

/// Closed-form solution 1 / (2 e^{t/2} - 1) of the two-rule system with
/// A = (0, -1), y(0) = 1.
double fuzzy_exact(double t);

/// Order map alpha = 1 - 0.2 y of the fuzzy relaxation example.
inline constexpr AffineOrderMap kFuzzyRelaxationOrderMap{.intercept = 1.0, .slope = -0.2};

/// Order map alpha = 0.8 + 0.005 T of the temperature-driven diffusion example.
inline constexpr AffineOrderMap kTemperatureOrderMap{.intercept = 0.8, .slope = 0.005};

}  // namespace fracdyn
