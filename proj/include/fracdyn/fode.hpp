#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracdyn/order_source.hpp"
#include "fracdyn/trajectory.hpp"

namespace fracdyn {

/// D^alpha x = lin_coeff * x + forcing(t), x(0) = x0, on [0, t_end].
struct ScalarFodeProblem {
  OrderSource order = OrderSource::constant(kAlphaMax);
  double lin_coeff = 0.0;
  std::function<double(double)> forcing;  // empty means zero forcing
  double x0 = 0.0;
  double t_end = 1.0;
};

struct FodeOptions {
  /// Add the starting correction (see StartingCorrection) to every step.
  /// Without it the update is plain L1, whose error near t = 0 is O(dt^alpha)
  /// for solutions that start like x_0 + c t^alpha.
  bool starting_correction = true;
};

struct FodeSolution {
  Trajectory state;
  /// orders[n] is the frozen order used for step n (n >= 1); orders[0] is
  /// the source evaluated at t = 0 with the initial state.
  std::vector<double> orders;
};

/// Implicit L1 stepping. At step n the order alpha_n is frozen and
///   r_n [x_n - x_{n-1} + sum_{j>=1} b_j (x_{n-j} - x_{n-j-1})] + C_n = lin_coeff x_n + f(t_n)
/// is solved for x_n in closed form, r_n = dt^{-alpha_n} / Gamma(2 - alpha_n).
/// C_n is the starting correction dt^{-alpha_n} sum_k w_{n,k} (x_k - x_0),
/// or zero when options.starting_correction is off. When two correction
/// terms are active the first step solves for (x_1, x_2) jointly at the
/// order alpha_1 and keeps x_1.
///
/// Time-function and driver sources are sampled at t_n. An AffineOfSignal
/// source is fed the lagged own state x_{n-1}.
///
/// Throws std::invalid_argument for a bad grid or non-finite data and
/// SingularityError when r_n <= lin_coeff (step too large for a growing
/// system).
FodeSolution solve_scalar_fode(const ScalarFodeProblem& problem, double dt, const FodeOptions& options = {});

/// D^beta T = 0.1 T + 10 / (1.3 t + 1), T(0) = 10.
ScalarFodeProblem temperature_problem(double beta, double t_end);

/// Solves temperature_problem(beta, t_end). beta = 1 is clamped to the
/// classical-limit order kAlphaMax. Throws std::invalid_argument for beta
/// outside (0, 1].
FodeSolution solve_temperature(double beta, double dt, double t_end, const FodeOptions& options = {});

/// Right-hand side g(x, t) = lin_coeff x + forcing(t) + nonlinear(x, t).
/// With no nonlinear part each implicit step is solved in closed form;
/// otherwise Newton iteration starts from the linear solution.
struct ScalarRhs {
  double lin_coeff = 0.0;
  std::function<double(double)> forcing;
  std::function<double(double, double)> nonlinear;

  double operator()(double x, double t) const;
};

/// alpha_i(X_1, ..., X_n, t); the result is clamped to [kAlphaMin, kAlphaMax].
using StateOrder = std::function<double(std::span<const double> states, double t)>;

StateOrder constant_order(double alpha);
/// alpha = map(X_index).
StateOrder affine_of_state(std::size_t index, AffineOrderMap map);

struct CoupledSubsystem {
  ScalarRhs rhs;
  double x0 = 0.0;
  StateOrder order = constant_order(kAlphaMax);
};

/// Dynamic-order system where subsystem i obeys D^{alpha_i(X, t)} X_i = g_i(X_i, t).
/// Interaction happens only through the orders.
struct CoupledSystem {
  std::vector<CoupledSubsystem> subsystems;
};

struct CoupledSolution {
  std::vector<Trajectory> states;
  std::vector<std::vector<double>> orders;
};

/// Lagged (Jacobi) coupling: at step n every alpha_i is evaluated from the
/// state snapshot at step n-1 and time t_n, then each subsystem advances one
/// implicit L1 step with its frozen order. Results do not depend on the
/// subsystem ordering.
CoupledSolution solve_coupled(const CoupledSystem& system, double dt, double t_end,
                              const FodeOptions& options = {});

}  // namespace fracdyn
