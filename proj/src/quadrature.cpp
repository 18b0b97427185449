#include "fracdyn/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "fracdyn/error.hpp"

namespace fracdyn {

namespace {

// 15-point Kronrod abscissae (non-negative half) and weights; the odd
// indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWk[7];
  double gauss = fc * kWg[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kXk[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWk[i] * pair;
    if (i % 2 == 1) gauss += kWg[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (a == b) return {};
  std::priority_queue<Segment> queue;
  Segment first = gauss_kronrod(f, a, b);
  double total = first.value;
  double error = first.error;
  queue.push(first);

  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(b - a);
  // Segments too narrow to split are parked here.
  double settled_value = 0.0;
  double settled_error = 0.0;
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
    if (queue.empty()) break;
    if (queue.size() >= options.max_intervals) {
      std::ostringstream os;
      os << "integrate: no convergence on [" << a << ", " << b << "] after "
         << options.max_intervals << " intervals (error estimate " << error << ")";
      throw ConvergenceError(os.str());
    }
    const Segment worst = queue.top();
    queue.pop();
    if (worst.b - worst.a < min_width) {
      // Roundoff floor; further splitting cannot reduce the estimate.
      settled_value += worst.value;
      settled_error += worst.error;
      error -= worst.error;
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Resum to avoid drift from the incremental updates.
  double value = settled_value;
  double err = settled_error;
  const std::size_t count = queue.size();
  while (!queue.empty()) {
    value += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  return {value, err, count};
}

}  // namespace fracdyn
