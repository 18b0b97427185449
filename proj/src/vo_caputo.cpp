#include "fracdyn/vo_caputo.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracdyn/special_fn.hpp"

namespace fracdyn {

namespace {

void require_open_order(double alpha, const char* where) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << where << ": order must lie in (0, 1), got " << alpha;
    throw std::domain_error(os.str());
  }
}

}  // namespace

double l1_weight(double alpha, std::size_t j) {
  if (j == 0) return 1.0;
  const double gamma_exp = 1.0 - alpha;
  const double jd = static_cast<double>(j);
  return std::pow(jd, gamma_exp) * std::expm1(gamma_exp * std::log1p(1.0 / jd));
}

double l1_scale(double alpha, double dt) { return std::pow(dt, -alpha) / gamma(2.0 - alpha); }

L1Weights::L1Weights(double alpha, std::size_t n) : alpha_(alpha) {
  require_open_order(alpha, "l1_weights");
  if (n == 0) throw std::domain_error("l1_weights: need n >= 1");
  b_.resize(n);
  for (std::size_t j = 0; j < n; ++j) b_[j] = l1_weight(alpha, j);
}

L1Weights l1_weights(double alpha, std::size_t n) { return L1Weights(alpha, n); }

double power_increment(double sigma, std::size_t k) {
  if (k <= 1) return k == 1 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return -std::pow(kd, sigma) * std::expm1(sigma * std::log1p(-1.0 / kd));
}

std::size_t starting_correction_terms(double alpha) { return alpha < 2.0 / 3.0 ? 2 : 1; }

void L1WeightCache::prepare(double alpha, std::size_t n) {
  if (alpha != alpha_) {
    require_open_order(alpha, "L1WeightCache");
    alpha_ = alpha;
    b_.clear();
    for (auto& inc : increments_) inc.clear();
  }
  if (b_.size() < n) {
    b_.reserve(n);
    for (std::size_t j = b_.size(); j < n; ++j) b_.push_back(l1_weight(alpha, j));
  }
}

std::span<const double> L1WeightCache::weights(double alpha, std::size_t n) {
  prepare(alpha, n);
  return std::span<const double>(b_).first(n);
}

StartingCorrection L1WeightCache::starting(double alpha, std::size_t n) {
  prepare(alpha, n);
  StartingCorrection out;
  out.count = starting_correction_terms(alpha);
  const double nd = static_cast<double>(n);

  // Residual of plain L1 on t^sigma at t_n, in units of dt^{sigma - alpha}.
  std::array<double, 2> residual{};
  std::array<double, 2> sigma{};
  const double l1_factor = 1.0 / gamma(2.0 - alpha);
  for (std::size_t m = 0; m < out.count; ++m) {
    sigma[m] = static_cast<double>(m + 1) * alpha;
    auto& inc = increments_[m];
    for (std::size_t k = inc.size(); k < n; ++k) inc.push_back(power_increment(sigma[m], k + 1));
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += b_[j] * inc[n - j - 1];
    const double exact = gamma(1.0 + sigma[m]) / gamma(1.0 + sigma[m] - alpha) * std::pow(nd, sigma[m] - alpha);
    residual[m] = exact - l1_factor * sum;
  }

  // sum_k w_k k^{sigma_m} = residual_m (the dt powers cancel).
  if (out.count == 1) {
    out.weights[0] = residual[0];
  } else {
    const double p = std::pow(2.0, sigma[0]);
    const double q = std::pow(2.0, sigma[1]);
    const double det = q - p;
    out.weights[0] = (residual[0] * q - residual[1] * p) / det;
    out.weights[1] = (residual[1] - residual[0]) / det;
  }
  return out;
}

double l1_memory_sum(std::span<const double> weights, std::span<const double> history) {
  const std::size_t n = history.size();
  double sum = 0.0;
  for (std::size_t j = 1; j < n; ++j) sum += weights[j] * (history[n - j] - history[n - j - 1]);
  return sum;
}

double caputo_l1(std::span<const double> history, double dt, double alpha) {
  if (history.size() < 2) throw std::length_error("caputo_l1: need at least two samples");
  if (!(dt > 0.0)) throw std::domain_error("caputo_l1: dt must be positive");
  require_open_order(alpha, "caputo_l1");
  const std::size_t n = history.size() - 1;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += l1_weight(alpha, j) * (history[n - j] - history[n - j - 1]);
  return l1_scale(alpha, dt) * sum;
}

double caputo_quadrature(const std::function<double(double)>& f_prime, double alpha, double t,
                         const QuadratureOptions& options) {
  require_open_order(alpha, "caputo_quadrature");
  if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("caputo_quadrature: t must be positive");
  const double power = 1.0 / (1.0 - alpha);
  const double upper = std::pow(t, 1.0 - alpha);
  auto integrand = [&](double s) { return f_prime(t - std::pow(s, power)); };
  return integrate(integrand, 0.0, upper, options).value / gamma(2.0 - alpha);
}

}  // namespace fracdyn
