#pragma once

#include <functional>

#include "bergman/numerics/quadrature.hpp"
#include "bergman/weights.hpp"

namespace bergman {

/// Default relative tolerance for weighted Laplace transforms. Kernel
/// quadratures divide by these values, so they are resolved tighter than
/// anything downstream.
inline constexpr double kRhoTildeTol = 1e-13;

/// log of rho~_alpha(t) = int_0^inf rho(y)^alpha e^{-2ty} dy.
struct RhoTildeEval {
  double log_value = 0.0;
  /// Estimated relative error of rho~ (not of its log).
  double err_est = 0.0;
  double alpha = 0.0;
  double t = 0.0;
  bool converged = true;
};

/// Peak of y -> y rho(y)^alpha e^{-2ty} in u = log y, from a bisection on
/// 1 + alpha y rho'/rho = 2ty (the left side is monotone for suitable rho).
PeakHint rho_tilde_peak(const Weight& w, double alpha, double t);

/// Peak-normalised log-domain evaluation of rho~_alpha(t). Results are
/// memoised per (weight, alpha, t, tol); the cache never changes values.
RhoTildeEval log_rho_tilde(const Weight& w, double alpha, double t, double tol = kRhoTildeTol);

/// Exact log rho~_alpha(t) for rho(y) = y: log Gamma(alpha+1) - (alpha+1) log(2t).
double rho_tilde_gamma_closed(double alpha, double t);

/// int_0^inf g(y) rho(y)^alpha e^{-2ty} dy for a log-domain factor g,
/// sharing the peak normalisation of rho~.
QuadratureResult weighted_laplace(const Weight& w, double alpha, double t,
                                  const std::function<LogComplex(double)>& g, double tol = kRhoTildeTol);

/// Drop all memoised rho~ values (tests use this to show results are
/// independent of cache state).
void clear_rho_tilde_cache();

}  // namespace bergman
