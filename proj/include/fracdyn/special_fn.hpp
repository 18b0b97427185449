#pragma once

namespace fracdyn {

/// Gamma function for x > 0. Lanczos approximation shifted into [1, 2) by
/// the recurrence; relative error below 1e-13 on (0, 3].
/// Throws std::domain_error for x <= 0 or non-finite x.
double gamma(double x);

/// One-parameter Mittag-Leffler function E_alpha(z) for alpha in (0, 1] and
/// real z in [-50, 0].
///
/// Small |z| uses the power series sum z^k / Gamma(alpha k + 1). The series
/// is accepted only when it converges within 200 terms and its largest term
/// stays small enough that cancellation costs fewer than ~4 digits. Otherwise
/// the function switches to the integral representation
///
///   E_alpha(-x) = 1/(alpha pi) * int_0^{alpha pi}
///                 exp(-(x sin(phi) / sin(alpha pi - phi))^{1/alpha}) dphi,
///
/// obtained from the spectral form of E_alpha on the negative axis by
/// mapping the Lorentzian factor onto an angle. The integrand is bounded,
/// decreasing in phi, and smooth, so adaptive Gauss-Kronrod reaches 1e-12.
/// alpha == 1 returns exp(z).
///
/// Throws std::domain_error outside alpha in (0, 1], z in [-50, 0].
double mittag_leffler(double alpha, double z);

inline constexpr double kMittagLefflerMinArg = -50.0;

}  // namespace fracdyn
