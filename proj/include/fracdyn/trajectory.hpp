#pragma once

#include <cstddef>
#include <vector>

namespace fracdyn {

/// Samples of a scalar signal on the uniform grid t_i = i * dt, i = 0..N.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(double dt, std::vector<double> values);

  double dt() const { return dt_; }
  std::size_t size() const { return values_.size(); }
  double time(std::size_t i) const { return static_cast<double>(i) * dt_; }
  double t_end() const { return time(values_.empty() ? 0 : values_.size() - 1); }

  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Linear interpolation in time. Throws std::domain_error outside
  /// [0, t_end] (with a relative slack of 1e-9 at the right end).
  double at(double t) const;

 private:
  double dt_ = 0.0;
  std::vector<double> values_;
};

/// Number of uniform steps covering [0, t_end]. Throws std::invalid_argument
/// when dt or t_end is not positive and finite, or when t_end is not an
/// integer multiple of dt (relative mismatch above 1e-9).
std::size_t uniform_step_count(double dt, double t_end);

}  // namespace fracdyn
