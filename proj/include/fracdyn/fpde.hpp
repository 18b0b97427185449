#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracdyn/order_source.hpp"

namespace fracdyn {

/// D_t^alpha u = K u_xx + q(x, t) on [0, L] x [0, t_end] with Dirichlet data.
struct DiffusionProblem {
  double diffusivity = 1.0;
  double length = 1.0;
  double t_end = 1.0;
  std::function<double(double, double)> source;  // q(x, t); empty means zero
  std::function<double(double)> initial;          // u(x, 0)
  std::function<double(double)> left;             // u(0, t); empty means zero
  std::function<double(double)> right;            // u(L, t); empty means zero
  /// Constant, time-function, or driver source; AffineOfSignal is rejected.
  OrderSource order = OrderSource::constant(kAlphaMax);
};

/// Space-time samples u(x_i, t_n). Rows are time levels.
class Field {
 public:
  Field(double length, std::size_t nx, double dt);

  std::size_t nx() const { return nx_; }
  std::size_t rows() const { return rows_; }
  double dx() const { return dx_; }
  double dt() const { return dt_; }
  double x(std::size_t i) const { return static_cast<double>(i) * dx_; }
  double t(std::size_t n) const { return static_cast<double>(n) * dt_; }
  double length() const { return length_; }
  double t_end() const { return t(rows_ == 0 ? 0 : rows_ - 1); }

  std::span<const double> row(std::size_t n) const;
  double operator()(std::size_t n, std::size_t i) const { return data_[n * (nx_ + 1) + i]; }

  /// Append a time level of nx + 1 node values.
  void push_row(std::span<const double> values);

  /// Orders used at each time level (orders()[0] is the source at t = 0).
  const std::vector<double>& orders() const { return orders_; }
  void push_order(double alpha) { orders_.push_back(alpha); }

 private:
  double length_;
  std::size_t nx_;
  double dx_;
  double dt_;
  std::size_t rows_ = 0;
  std::vector<double> data_;
  std::vector<double> orders_;
};

/// Implicit L1-in-time, central-difference-in-space solver. At step n:
///   (r_n I + K A) u_n = r_n (u_{n-1} - sum_{j>=1} b_j (u_{n-j} - u_{n-j-1})) + q(., t_n)
/// with A the negated second difference and Dirichlet rows pinned. Boundary
/// nodes carry the Dirichlet data at every time level, including t = 0.
///
/// Throws std::invalid_argument for nx < 3, non-positive parameters, or an
/// AffineOfSignal order source.
Field solve_vo_diffusion(const DiffusionProblem& problem, std::size_t nx, double dt);

/// Solves a tridiagonal system. lower[i] couples row i+1 to column i and
/// upper[i] couples row i to column i+1 (both of size n-1).
/// Throws std::invalid_argument on size mismatch, PivotError on a zero pivot.
std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs);

/// Bilinear interpolation of the field at (x, t).
/// Throws std::domain_error outside [0, L] x [0, t_end].
double probe(const Field& field, double x, double t);

}  // namespace fracdyn
