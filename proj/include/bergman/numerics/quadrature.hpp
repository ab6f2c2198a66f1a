#pragma once

#include <complex>
#include <cstddef>
#include <functional>

#include "bergman/numerics/log_complex.hpp"

namespace bergman {

/// Location and width of the bulk of an integrand on (0, inf), expressed in
/// u = log r.
struct PeakHint {
  double log_center = 0.0;
  double log_width = 1.0;
};

/// Result of a log-domain quadrature. The integral equals
/// scaled_value * exp(log_scale); scaled_err is the a-posteriori error
/// estimate in the same units.
struct QuadratureResult {
  double log_scale = 0.0;
  std::complex<double> scaled_value{0.0, 0.0};
  double scaled_err = 0.0;
  /// Integral of |f| in the same units; scaled_abs / |scaled_value| is the
  /// cancellation factor applied to relative errors in f.
  double scaled_abs = 0.0;
  std::size_t nodes_used = 0;
  bool converged = false;

  std::complex<double> value() const;
  LogComplex log_value() const;
  double err_est() const;
  /// err_est / |value|; infinite when the value is zero.
  double rel_err() const;
};

/// Integrand r -> f(r) returned in log-magnitude/phase form.
using LogIntegrand = std::function<LogComplex(double)>;

/// Node cap after which a semi-infinite quadrature is reported as not
/// converged.
inline constexpr std::size_t kMaxQuadratureNodes = std::size_t{1} << 20;

/// Find the maximiser of a log-envelope u -> l(u) (u = log r) by an uphill
/// walk from u_guess followed by golden-section refinement, and estimate
/// its width from the curvature there.
PeakHint locate_peak(const std::function<double(double)>& log_envelope, double u_guess);

/// Integral of f over (0, inf) with a double-exponential substitution
/// r = exp(c + w sinh s) around the integrand's peak, trapezoidal in s with
/// step halving until two levels agree to tol (relative). The peak is found
/// from |f| itself, starting at r = 1/decay_rate_hint.
QuadratureResult quad_semiinfinite(const LogIntegrand& f, double decay_rate_hint, double tol);

/// Same, with the peak supplied by the caller (typically from a smooth
/// envelope that ignores oscillating factors).
QuadratureResult quad_semiinfinite(const LogIntegrand& f, const PeakHint& hint, double tol);

}  // namespace bergman
