#include "fracdyn/order_source.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracdyn {

double clamp_order(double alpha, double lo, double hi) {
  if (std::isnan(alpha)) throw std::domain_error("order evaluated to NaN");
  return std::clamp(alpha, lo, hi);
}

void AffineOrderMap::validate() const {
  if (!std::isfinite(intercept) || !std::isfinite(slope))
    throw std::invalid_argument("affine order map: coefficients must be finite");
  if (!(kAlphaMin <= lo && lo <= hi && hi <= kAlphaMax)) {
    std::ostringstream os;
    os << "affine order map: clamp [" << lo << ", " << hi << "] must lie within [" << kAlphaMin
       << ", " << kAlphaMax << "]";
    throw std::invalid_argument(os.str());
  }
}

double AffineOrderMap::operator()(double signal) const { return clamp_order(intercept + slope * signal, lo, hi); }

double affine_order(const AffineOrderMap& map, double signal) { return map(signal); }

OrderSource OrderSource::constant(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::ostringstream os;
    os << "constant order must lie in (0, 1], got " << alpha;
    throw std::invalid_argument(os.str());
  }
  return OrderSource(Constant{clamp_order(alpha)});
}

OrderSource OrderSource::time_function(std::function<double(double)> alpha_of_t) {
  if (!alpha_of_t) throw std::invalid_argument("time-function order source is empty");
  return OrderSource(TimeFunction{std::move(alpha_of_t)});
}

OrderSource OrderSource::affine_of_signal(AffineOrderMap map) {
  map.validate();
  return OrderSource(AffineOfSignal{map});
}

OrderSource OrderSource::driver_system(Trajectory driver, AffineOrderMap map) {
  map.validate();
  if (driver.size() == 0) throw std::invalid_argument("driver trajectory is empty");
  return OrderSource(DriverSystem{std::move(driver), map});
}

double OrderSource::at(double t, std::optional<double> signal) const {
  struct Visitor {
    double t;
    std::optional<double> signal;
    double operator()(const Constant& c) const { return c.alpha; }
    double operator()(const TimeFunction& f) const { return clamp_order(f.alpha_of_t(t)); }
    double operator()(const AffineOfSignal& a) const {
      if (!signal) throw std::invalid_argument("affine-of-signal order source needs a signal value");
      return a.map(*signal);
    }
    double operator()(const DriverSystem& d) const { return d.map(d.driver.at(t)); }
  };
  return std::visit(Visitor{t, signal}, source_);
}

}  // namespace fracdyn
