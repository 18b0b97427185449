#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "fracdyn/trajectory.hpp"

namespace fracdyn {

inline constexpr double kAlphaMin = 0.001;
inline constexpr double kAlphaMax = 0.999999;

/// Clamp an order into [lo, hi]. NaN is rejected with std::domain_error.
double clamp_order(double alpha, double lo = kAlphaMin, double hi = kAlphaMax);

/// alpha = clamp(intercept + slope * signal).
struct AffineOrderMap {
  double intercept = 0.0;
  double slope = 0.0;
  double lo = kAlphaMin;
  double hi = kAlphaMax;

  /// Throws std::invalid_argument unless kAlphaMin <= lo <= hi <= kAlphaMax
  /// and both coefficients are finite.
  void validate() const;
  double operator()(double signal) const;
};

double affine_order(const AffineOrderMap& map, double signal);

/// How the fractional order of a system is produced at time t.
class OrderSource {
 public:
  struct Constant {
    double alpha;
  };
  struct TimeFunction {
    std::function<double(double)> alpha_of_t;
  };
  /// Affine map of a signal supplied at evaluation time (a state of the
  /// same or another system).
  struct AffineOfSignal {
    AffineOrderMap map;
  };
  /// Affine map of a precomputed driver trajectory, interpolated linearly.
  struct DriverSystem {
    Trajectory driver;
    AffineOrderMap map;
  };
  using Variant = std::variant<Constant, TimeFunction, AffineOfSignal, DriverSystem>;

  /// Throws std::invalid_argument for alpha outside (0, 1].
  static OrderSource constant(double alpha);
  static OrderSource time_function(std::function<double(double)> alpha_of_t);
  static OrderSource affine_of_signal(AffineOrderMap map);
  static OrderSource driver_system(Trajectory driver, AffineOrderMap map);

  const Variant& variant() const { return source_; }
  bool is_constant() const { return std::holds_alternative<Constant>(source_); }
  bool needs_signal() const { return std::holds_alternative<AffineOfSignal>(source_); }

  /// Clamped order at time t. `signal` is required for AffineOfSignal and
  /// ignored otherwise; a missing signal throws std::invalid_argument.
  double at(double t, std::optional<double> signal = std::nullopt) const;

 private:
  explicit OrderSource(Variant v) : source_(std::move(v)) {}
  Variant source_;
};

}  // namespace fracdyn
