#include "fracdyn/fractor.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fracdyn/error.hpp"

namespace fracdyn {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_field(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || !std::isfinite(v)) {
    std::ostringstream os;
    os << "sweep CSV line " << line << ": cannot parse number '" << t << "'";
    throw std::invalid_argument(os.str());
  }
  return v;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("sweep needs 0 < omega_min < omega_max and n >= 2");
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + step * static_cast<double>(i));
  return out;
}

}  // namespace

double FractorModel::lambda(double temperature) const { return p1 * temperature + p2; }

std::complex<double> impedance(const FractorModel& model, double omega, double temperature) {
  if (!(omega > 0.0)) throw std::domain_error("impedance: omega must be positive");
  const double lam = model.lambda(temperature);
  return std::polar(model.magnitude * std::pow(omega * model.tau, -lam), -lam * std::numbers::pi / 2.0);
}

FrequencySweep::FrequencySweep(std::vector<SweepPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!(p.omega > 0.0) || !std::isfinite(p.omega))
      throw std::invalid_argument("frequency sweep: omega must be positive and finite");
    if (i > 0 && !(p.omega > points_[i - 1].omega))
      throw std::invalid_argument("frequency sweep: omegas must be strictly increasing");
    if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag()) || std::abs(p.z) == 0.0)
      throw std::invalid_argument("frequency sweep: impedance must be finite and non-zero");
  }
}

FrequencySweep read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "omega,re_z,im_z")
    throw std::invalid_argument("sweep CSV: expected header 'omega,re_z,im_z'");
  std::vector<SweepPoint> points;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3) {
      std::ostringstream os;
      os << "sweep CSV line " << number << ": expected 3 columns, got " << cells.size();
      throw std::invalid_argument(os.str());
    }
    points.push_back({parse_field(cells[0], number), {parse_field(cells[1], number), parse_field(cells[2], number)}});
  }
  return FrequencySweep(std::move(points));
}

FrequencySweep synthesize_sweep(const FractorModel& model, double temperature, double omega_min,
                                double omega_max, std::size_t n) {
  std::vector<SweepPoint> points;
  for (double w : log_spaced(omega_min, omega_max, n)) points.push_back({w, impedance(model, w, temperature)});
  return FrequencySweep(std::move(points));
}

FrequencySweep synthesize_noisy_sweep(const FractorModel& model, double temperature,
                                      double omega_min, double omega_max, std::size_t n,
                                      double rel_noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<SweepPoint> points;
  for (double w : log_spaced(omega_min, omega_max, n)) {
    const auto z = impedance(model, w, temperature);
    points.push_back({w, z * (1.0 + rel_noise * normal(rng))});
  }
  return FrequencySweep(std::move(points));
}

OrderEstimate estimate_order(const FrequencySweep& sweep, double tau) {
  const auto& pts = sweep.points();
  if (pts.size() < 2) throw std::invalid_argument("estimate_order: need at least two sweep points");
  if (!(tau > 0.0)) throw std::invalid_argument("estimate_order: tau must be positive");
  const double count = static_cast<double>(pts.size());
  double mean_u = 0.0, mean_v = 0.0, phase = 0.0;
  for (const auto& p : pts) {
    mean_u += std::log(p.omega);
    mean_v += std::log(std::abs(p.z));
    phase += -2.0 * std::arg(p.z) / std::numbers::pi;
  }
  mean_u /= count;
  mean_v /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    const double du = std::log(p.omega) - mean_u;
    sxx += du * du;
    sxy += du * (std::log(std::abs(p.z)) - mean_v);
  }
  if (sxx == 0.0) throw DegenerateError("estimate_order: all frequencies are equal");
  const double slope = sxy / sxx;
  const double intercept = mean_v - slope * mean_u;
  OrderEstimate est;
  est.lambda = -slope;
  est.magnitude = std::exp(intercept + est.lambda * std::log(tau));
  est.lambda_phase = phase / count;
  return est;
}

LineFit fit_lambda_temperature(const std::vector<TemperatureOrder>& pairs) {
  if (pairs.size() < 2) throw std::invalid_argument("fit_lambda_temperature: need at least two pairs");
  const double count = static_cast<double>(pairs.size());
  double mean_t = 0.0, mean_l = 0.0;
  for (const auto& p : pairs) {
    mean_t += p.temperature;
    mean_l += p.lambda;
  }
  mean_t /= count;
  mean_l /= count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pairs) {
    const double dt = p.temperature - mean_t;
    sxx += dt * dt;
    sxy += dt * (p.lambda - mean_l);
  }
  if (sxx == 0.0) throw DegenerateError("fit_lambda_temperature: all temperatures are equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_l - fit.slope * mean_t;
  if (pairs.size() > 2) {
    double ssr = 0.0;
    for (const auto& p : pairs) {
      const double res = p.lambda - (fit.slope * p.temperature + fit.intercept);
      ssr += res * res;
    }
    const double s = std::sqrt(ssr / (count - 2.0));
    fit.slope_stderr = s / std::sqrt(sxx);
    fit.intercept_stderr = s * std::sqrt(1.0 / count + mean_t * mean_t / sxx);
  }
  return fit;
}

std::vector<TemperatureOrder> synthesize_lambda_temperature(double p1, double p2,
                                                            double slope_stderr, double t_lo,
                                                            double t_hi, std::size_t n,
                                                            std::uint64_t seed) {
  if (n < 2 || !(t_hi > t_lo)) throw std::invalid_argument("synthetic data needs n >= 2 and t_lo < t_hi");
  if (!(slope_stderr >= 0.0)) throw std::invalid_argument("slope standard error must be non-negative");
  std::vector<double> temps(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    temps[i] = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    mean += temps[i];
  }
  mean /= static_cast<double>(n);
  double sxx = 0.0;
  for (double t : temps) sxx += (t - mean) * (t - mean);
  const double sigma = slope_stderr * std::sqrt(sxx);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<TemperatureOrder> out;
  out.reserve(n);
  for (double t : temps) out.push_back({t, p1 * t + p2 + sigma * normal(rng)});
  return out;
}

}  // namespace fracdyn
