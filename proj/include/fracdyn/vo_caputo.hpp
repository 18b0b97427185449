#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracdyn/quadrature.hpp"

namespace fracdyn {

/// L1 weight b_j = (j+1)^{1-alpha} - j^{1-alpha}, evaluated through
/// expm1/log1p so that weights for alpha near 1 keep full relative accuracy.
double l1_weight(double alpha, std::size_t j);

/// Leading factor dt^{-alpha} / Gamma(2 - alpha) of the L1 scheme.
double l1_scale(double alpha, double dt);

/// Immutable vector b_0..b_{n-1} of L1 weights for one frozen order.
class L1Weights {
 public:
  /// Throws std::domain_error unless 0 < alpha < 1 and n >= 1.
  L1Weights(double alpha, std::size_t n);

  double alpha() const { return alpha_; }
  std::size_t size() const { return b_.size(); }
  double operator[](std::size_t j) const { return b_[j]; }
  std::span<const double> values() const { return b_; }

 private:
  double alpha_;
  std::vector<double> b_;
};

L1Weights l1_weights(double alpha, std::size_t n);

/// k^sigma - (k-1)^sigma for k >= 1, without cancellation for large k.
double power_increment(double sigma, std::size_t k);

/// Starting correction for solutions that behave like x_0 + c_1 t^alpha +
/// c_2 t^{2 alpha} + ... near t = 0, where plain L1 loses accuracy on a
/// uniform grid. At step n the corrected operator is
///   L1_n[x] + dt^{-alpha} sum_k w_{n,k} (x_k - x_0),
/// with w_{n,k} chosen so that it is exact for t^{k alpha}, k = 1..count.
/// Only exponents k alpha < 2 - alpha are corrected (one term for
/// alpha >= 2/3, two below); higher ones are already within L1 accuracy.
struct StartingCorrection {
  std::size_t count = 0;
  std::array<double, 2> weights{};
};

/// Number of correction terms used for alpha.
std::size_t starting_correction_terms(double alpha);

/// Weight buffers reused across time steps. b_j depends only on (alpha, j),
/// so while the order is unchanged the buffers are extended instead of rebuilt.
class L1WeightCache {
 public:
  /// b_0..b_{n-1} for `alpha`; the span is invalidated by the next call
  /// that needs more than n entries or a different order.
  std::span<const double> weights(double alpha, std::size_t n);

  /// Starting-correction weights for step n >= 1 at order alpha.
  StartingCorrection starting(double alpha, std::size_t n);

 private:
  void prepare(double alpha, std::size_t n);

  double alpha_ = -1.0;
  std::vector<double> b_;
  std::array<std::vector<double>, 2> increments_;  // power_increment(k alpha, j + 1)
};

/// Memory term sum_{j=1}^{n-1} b_j (x_{n-j} - x_{n-j-1}) for the history
/// x_0..x_{n-1} (n = history.size()); weights must hold at least n entries.
double l1_memory_sum(std::span<const double> weights, std::span<const double> history);

/// L1 approximation of the Caputo derivative at t_n from samples x_0..x_n on
/// a uniform grid with step dt and order frozen at alpha:
///   dt^{-alpha}/Gamma(2-alpha) * sum_{j=0}^{n-1} b_j (x_{n-j} - x_{n-j-1}).
/// Throws std::length_error for fewer than two samples and
/// std::domain_error for alpha outside (0, 1) or dt <= 0.
double caputo_l1(std::span<const double> history, double dt, double alpha);

/// Reference value of the Caputo derivative of order alpha at t,
///   1/Gamma(1-alpha) * int_0^t f'(tau) (t - tau)^{-alpha} dtau,
/// by adaptive quadrature after the substitution s = (t - tau)^{1-alpha},
/// which turns the integral into
///   1/Gamma(2-alpha) * int_0^{t^{1-alpha}} f'(t - s^{1/(1-alpha)}) ds
/// with no endpoint singularity. Only the derivative f' enters.
/// Throws ConvergenceError when the quadrature budget is exhausted.
double caputo_quadrature(const std::function<double(double)>& f_prime, double alpha, double t,
                         const QuadratureOptions& options = {.abs_tol = 1e-11, .rel_tol = 1e-12});

}  // namespace fracdyn
