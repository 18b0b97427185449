#pragma once

#include <complex>
#include <cstdint>
#include <istream>
#include <vector>

#include "fracdyn/order_source.hpp"

namespace fracdyn {

/// Constant-phase element Z(omega) = K / (j omega tau)^{lambda(T)} whose
/// exponent follows the line lambda(T) = p1 T + p2.
struct FractorModel {
  double magnitude = 1.0;  // |Z| at omega = 1/tau, ohm
  double tau = 1.0;        // s
  double p1 = 0.0;         // slope, 1/degC
  double p2 = 0.5;         // intercept

  double lambda(double temperature) const;
};

/// Reference temperature-order fit: p1 = 0.001127 +- 0.000116, p2 = 0.8835 +- 0.0048.
inline constexpr double kFractorP1 = 0.001127;
inline constexpr double kFractorP1Stderr = 0.000116;
inline constexpr double kFractorP2 = 0.8835;
inline constexpr double kFractorP2Stderr = 0.0048;

/// K (omega tau)^{-lambda} exp(-j lambda pi / 2).
/// Throws std::domain_error for omega <= 0.
std::complex<double> impedance(const FractorModel& model, double omega, double temperature);

struct SweepPoint {
  double omega;
  std::complex<double> z;
};

/// Impedance measurements with strictly increasing positive frequencies.
class FrequencySweep {
 public:
  /// Throws std::invalid_argument if the frequencies are not positive and
  /// strictly increasing or an impedance is zero or non-finite.
  explicit FrequencySweep(std::vector<SweepPoint> points);

  const std::vector<SweepPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<SweepPoint> points_;
};

/// Reads `omega,re_z,im_z` CSV (header required). Throws std::invalid_argument
/// on a missing header or malformed row.
FrequencySweep read_sweep_csv(std::istream& in);

/// n log-spaced points of the model on [omega_min, omega_max].
FrequencySweep synthesize_sweep(const FractorModel& model, double temperature, double omega_min,
                                double omega_max, std::size_t n);

/// As synthesize_sweep, with |Z| multiplied by (1 + rel_noise * N(0, 1)).
FrequencySweep synthesize_noisy_sweep(const FractorModel& model, double temperature,
                                      double omega_min, double omega_max, std::size_t n,
                                      double rel_noise, std::uint64_t seed);

struct OrderEstimate {
  double lambda = 0.0;        // -slope of log|Z| against log omega
  double magnitude = 0.0;     // K from the intercept, given tau
  double lambda_phase = 0.0;  // mean of -2 arg(Z) / pi
};

/// Least-squares line through (log omega_i, log |Z_i|).
/// Throws std::invalid_argument for fewer than two points, DegenerateError
/// if all frequencies coincide.
OrderEstimate estimate_order(const FrequencySweep& sweep, double tau);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;      // zero for fewer than three points
  double intercept_stderr = 0.0;
};

struct TemperatureOrder {
  double temperature;
  double lambda;
};

/// Ordinary least squares lambda = p1 T + p2.
/// Throws std::invalid_argument for fewer than two pairs, DegenerateError
/// when all temperatures are equal.
LineFit fit_lambda_temperature(const std::vector<TemperatureOrder>& pairs);

/// Synthetic stand-in for measured (T, lambda) data: n temperatures evenly
/// spaced on [t_lo, t_hi], lambda = p1 T + p2 + N(0, sigma). sigma is chosen
/// so that the OLS slope standard error equals `slope_stderr`:
///   sigma = slope_stderr * sqrt(sum (T_i - mean T)^2).
std::vector<TemperatureOrder> synthesize_lambda_temperature(double p1, double p2,
                                                            double slope_stderr, double t_lo,
                                                            double t_hi, std::size_t n,
                                                            std::uint64_t seed);

}  // namespace fracdyn
