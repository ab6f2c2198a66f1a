#pragma once

#include <complex>
#include <string_view>

#include "bergman/numerics/log_complex.hpp"
#include "bergman/weights.hpp"

namespace bergman {

/// Evaluation point of the half-space kernel R_alpha(x, y; a, b). The kernel
/// depends on x and a only through the horizontal separation d = |x - a|.
struct KernelPoint {
  int n = 2;
  double d = 0.0;
  double y = 1.0;
  double b = 1.0;
};

enum class Route { radial, holomorphic_reduction, closed_form };

std::string_view route_name(Route r);

/// Kernel value kept in log-magnitude/phase form; large alpha values do not
/// fit in a double.
struct KernelValue {
  LogComplex log_value;
  /// Relative error estimate, propagated from the quadratures involved.
  double rel_err = 0.0;
  Route route = Route::radial;
  bool converged = true;

  std::complex<double> value() const { return log_value.to_complex(); }
  double real() const { return value().real(); }
  double err_est() const;
};

/// Default relative tolerance for kernel quadratures.
inline constexpr double kKernelTol = 1e-12;

/// Holomorphic Siegel kernel slice K0_alpha(x + iy; ib) from its Laplace
/// representation (2^{n-3}/pi^{n-1}) int r^{n-2} e^{ixr - (b+y)r} / rho~_alpha(r) dr.
KernelValue k0_alpha(const Weight& w, int n, double alpha, double x, double y, double b, double tol = kKernelTol);

/// Closed form of K0_alpha for rho(y) = y:
/// 2^{n+alpha-2} Gamma(n+alpha) / (pi^{n-1} Gamma(alpha+1)) (b - ix + y)^{-n-alpha}.
LogComplex k0_gamma_closed(int n, double alpha, double x, double y, double b);

/// R_alpha through the single radial integral with the 0F1 sphere average
/// (cos(rd) for n = 2).
KernelValue r_alpha_radial(const Weight& w, double alpha, const KernelPoint& p, double tol = kKernelTol);

/// R_alpha through the holomorphic slice: 2 Re K0 for n = 2, otherwise
/// 2^{4-2n} omega_{n-2} int (1-t^2)^{(n-4)/2} K0(dt + iy; ib) dt by
/// Gauss-Jacobi with node doubling.
KernelValue r_alpha_via_holomorphic(const Weight& w, double alpha, const KernelPoint& p, double tol = kKernelTol);

/// R_alpha(a, b; a, b) from the diagonal radial integral.
KernelValue r_alpha_diagonal(const Weight& w, int n, double alpha, double b, double tol = kKernelTol);

/// Exact R_alpha for rho(y) = y and n > 2, reduced to a single Jacobi integral of
/// (y + b - i d t)^{-alpha-n}.
KernelValue r_alpha_gamma_closed(double alpha, const KernelPoint& p);

/// Exact R_alpha for rho(y) = y and n = 2: 2 Re of the closed Siegel slice.
KernelValue r_alpha_gamma_closed_n2(double alpha, const KernelPoint& p);

}  // namespace bergman
