#include "fracdyn/fpde.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fracdyn/error.hpp"
#include "fracdyn/trajectory.hpp"
#include "fracdyn/vo_caputo.hpp"

namespace fracdyn {

Field::Field(double length, std::size_t nx, double dt)
    : length_(length), nx_(nx), dx_(length / static_cast<double>(nx)), dt_(dt) {}

std::span<const double> Field::row(std::size_t n) const {
  if (n >= rows_) throw std::out_of_range("Field::row: time level out of range");
  return std::span<const double>(data_).subspan(n * (nx_ + 1), nx_ + 1);
}

void Field::push_row(std::span<const double> values) {
  if (values.size() != nx_ + 1) throw std::invalid_argument("Field::push_row: wrong row length");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0 || rhs.size() != n || lower.size() + 1 != n || upper.size() + 1 != n)
    throw std::invalid_argument("thomas_solve: inconsistent system dimensions");

  std::vector<double> c(n);  // modified upper diagonal
  std::vector<double> x(n);
  auto check = [](double pivot, std::size_t row) {
    if (!(std::abs(pivot) >= std::numeric_limits<double>::min()) || !std::isfinite(pivot)) {
      std::ostringstream os;
      os << "thomas_solve: zero pivot in row " << row;
      throw PivotError(os.str());
    }
  };
  double pivot = diag[0];
  check(pivot, 0);
  c[0] = n > 1 ? upper[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i - 1] * c[i - 1];
    check(pivot, i);
    c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
    x[i] = (rhs[i] - lower[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

Field solve_vo_diffusion(const DiffusionProblem& problem, std::size_t nx, double dt) {
  if (nx < 3) throw std::invalid_argument("diffusion solver needs nx >= 3");
  if (!(problem.diffusivity > 0.0) || !std::isfinite(problem.diffusivity))
    throw std::invalid_argument("diffusion coefficient must be positive and finite");
  if (!(problem.length > 0.0) || !std::isfinite(problem.length))
    throw std::invalid_argument("domain length must be positive and finite");
  if (!problem.initial) throw std::invalid_argument("diffusion problem has no initial condition");
  if (problem.order.needs_signal())
    throw std::invalid_argument("diffusion order must be constant, a time function, or a driver");
  const std::size_t steps = uniform_step_count(dt, problem.t_end);

  auto boundary = [](const std::function<double(double)>& g, double t) { return g ? g(t) : 0.0; };

  Field field(problem.length, nx, dt);
  const double dx = field.dx();
  std::vector<double> u(nx + 1);
  for (std::size_t i = 1; i < nx; ++i) u[i] = problem.initial(field.x(i));
  u[0] = boundary(problem.left, 0.0);
  u[nx] = boundary(problem.right, 0.0);
  for (double v : u)
    if (!std::isfinite(v)) throw std::invalid_argument("initial or boundary data is not finite");
  field.push_row(u);
  field.push_order(problem.order.at(0.0));

  const double coupling = problem.diffusivity / (dx * dx);
  std::vector<double> lower(nx, 0.0);
  std::vector<double> diag(nx + 1, 1.0);
  std::vector<double> upper(nx, 0.0);
  std::vector<double> rhs(nx + 1);
  std::vector<double> memory(nx + 1);
  L1WeightCache cache;

  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = field.t(n);
    const double alpha = problem.order.at(t);
    field.push_order(alpha);
    const auto b = cache.weights(alpha, n);
    const double r = l1_scale(alpha, dt);

    std::fill(memory.begin(), memory.end(), 0.0);
    for (std::size_t j = 1; j < n; ++j) {
      const auto newer = field.row(n - j);
      const auto older = field.row(n - j - 1);
      for (std::size_t i = 1; i < nx; ++i) memory[i] += b[j] * (newer[i] - older[i]);
    }

    const auto prev = field.row(n - 1);
    for (std::size_t i = 1; i < nx; ++i) {
      lower[i - 1] = -coupling;
      diag[i] = r + 2.0 * coupling;
      upper[i] = -coupling;
      rhs[i] = r * (prev[i] - memory[i]);
      if (problem.source) rhs[i] += problem.source(field.x(i), t);
    }
    // Dirichlet rows: identity with the boundary value on the right.
    diag[0] = 1.0;
    upper[0] = 0.0;
    rhs[0] = boundary(problem.left, t);
    diag[nx] = 1.0;
    lower[nx - 1] = 0.0;
    rhs[nx] = boundary(problem.right, t);

    field.push_row(thomas_solve(lower, diag, upper, rhs));
  }
  return field;
}

double probe(const Field& field, double x, double t) {
  const double slack = 1e-9;
  if (!(x >= -slack * field.length() && x <= field.length() * (1.0 + slack)) ||
      !(t >= 0.0 && t <= field.t_end() * (1.0 + slack) + 1e-12)) {
    std::ostringstream os;
    os << "probe: (" << x << ", " << t << ") outside [0, " << field.length() << "] x [0, "
       << field.t_end() << "]";
    throw std::domain_error(os.str());
  }
  auto locate = [](double pos, std::size_t last, std::size_t& lo, double& w) {
    pos = std::max(pos, 0.0);
    lo = static_cast<std::size_t>(std::floor(pos));
    if (lo >= last) {
      lo = last == 0 ? 0 : last - 1;
      w = last == 0 ? 0.0 : 1.0;
      return;
    }
    w = pos - static_cast<double>(lo);
  };
  std::size_t i = 0, n = 0;
  double wx = 0.0, wt = 0.0;
  locate(x / field.dx(), field.nx(), i, wx);
  locate(t / field.dt(), field.rows() - 1, n, wt);
  const std::size_t n1 = field.rows() > 1 ? n + 1 : n;
  auto at = [&](std::size_t row, std::size_t col) { return field(row, col); };
  const double lower_row = (1.0 - wx) * at(n, i) + wx * at(n, i + 1);
  if (wt == 0.0) return lower_row;
  const double upper_row = (1.0 - wx) * at(n1, i) + wx * at(n1, i + 1);
  return (1.0 - wt) * lower_row + wt * upper_row;
}

}  // namespace fracdyn
