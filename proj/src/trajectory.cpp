#include "fracdyn/trajectory.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracdyn {

Trajectory::Trajectory(double dt, std::vector<double> values) : dt_(dt), values_(std::move(values)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("Trajectory: dt must be positive");
  if (values_.empty()) throw std::invalid_argument("Trajectory: no samples");
}

double Trajectory::at(double t) const {
  const double end = t_end();
  if (!(t >= 0.0) || t > end * (1.0 + 1e-9) + 1e-12) {
    std::ostringstream os;
    os << "Trajectory::at: t = " << t << " outside [0, " << end << "]";
    throw std::domain_error(os.str());
  }
  if (values_.size() == 1) return values_.front();
  const double pos = t / dt_;
  auto i = static_cast<std::size_t>(std::floor(pos));
  if (i >= values_.size() - 1) return values_.back();
  const double w = pos - static_cast<double>(i);
  if (w == 0.0) return values_[i];
  return (1.0 - w) * values_[i] + w * values_[i + 1];
}

std::size_t uniform_step_count(double dt, double t_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step dt must be positive and finite");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("end time t_end must be positive and finite");
  const double ratio = t_end / dt;
  const double steps = std::round(ratio);
  if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream os;
    os << "t_end = " << t_end << " is not an integer multiple of dt = " << dt;
    throw std::invalid_argument(os.str());
  }
  return static_cast<std::size_t>(steps);
}

}  // namespace fracdyn
