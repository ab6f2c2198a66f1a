#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bergman/weights.hpp"

namespace bergman {

/// Bounded smooth symbol depending only on the vertical coordinate.
struct VerticalSymbol {
  std::string name;
  /// k-th derivative at y > 0, k in 0..4.
  std::function<double(double y, int k)> eval;
  /// sup |g| on (0, inf).
  double bound = 1.0;

  double operator()(double y, int k = 0) const { return eval(y, k); }
};

/// Built-in symbols: "one", "exp" (e^{-y}), "exp(c)" (e^{-cy}, c > 0),
/// "inv1p" (1/(1+y)) and "ratio" (y/(1+y)).
VerticalSymbol make_symbol(std::string_view name);
std::vector<std::string> builtin_symbol_names();

/// c1 g1 + c2 g2.
VerticalSymbol linear_combination(double c1, const VerticalSymbol& g1, double c2, const VerticalSymbol& g2);

struct BerezinValue {
  double value = 0.0;
  double err_est = 0.0;
  bool converged = true;
};

inline constexpr double kBerezinTol = 1e-12;

/// Harmonic Berezin transform of a vertical symbol at height b, from the
/// double integral over (r, y) divided by the diagonal kernel.
BerezinValue berezin_vertical(const Weight& w, int n, double alpha, const VerticalSymbol& g, double b,
                              double tol = kBerezinTol);

/// First-order operator on vertical symbols: g''/phi'' + (n-2) g'/phi'.
double q1_vertical(const Weight& w, int n, const VerticalSymbol& g, double b);

/// psi'' g'' / (2 phi''^2) + (n-2) psi' g' / (2 phi'^2).
double q2_curvature_term(const Weight& w, int n, const VerticalSymbol& g, double b);

/// Second-order operator: 1/2 (Delta~^2 h)(0, ib) - q2_curvature_term, with
/// h(z, w) = g(Im w - |z|^2). Delta~^2 composes the variable-coefficient
/// Laplacian with itself through a finite-difference stencil of step fd_step
/// (<= 0 selects 1e-3 max(1, b)).
double q2_vertical(const Weight& w, int n, const VerticalSymbol& g, double b, double fd_step = 0.0);

/// Same operator, with Delta~^2 h(0, ib) = L(Lg)(b) for L = d^2/phi'' + (n-2) d/phi'
/// evaluated from exact derivatives.
double q2_vertical_analytic(const Weight& w, int n, const VerticalSymbol& g, double b);

/// 1/2 Delta~^2 + q2_curvature_term, the sign combination without the correction.
double q2_vertical_as_printed(const Weight& w, int n, const VerticalSymbol& g, double b);

/// F(u, s) on u > 0, s >= 0, standing for h(z, w) = F(Im w - |z|^2, |z|^2).
struct USFunction {
  /// d^{i+j} F / du^i ds^j, i + j <= 4.
  std::function<double(double u, double s, int du, int ds)> partial;

  double operator()(double u, double s) const { return partial(u, s, 0, 0); }
  static USFunction from_vertical(const VerticalSymbol& g);
};

/// Siegel metric g_{jk} = d^2 phi(Im w - |z|^2) / dz_j dconj(z_k) at
/// z = (sqrt(s), 0, ...), Im w = u + s. The last index is w. Size (n-1)^2.
Eigen::MatrixXcd siegel_metric(const Weight& w, int n, double u, double s);

struct MetricInverseAtOrigin {
  double horizontal = 0.0;  // -1/phi'(b), repeated n-2 times
  double corner = 0.0;      // 4/phi''(b)
};
MetricInverseAtOrigin siegel_metric_inverse_at_origin(const Weight& w, int n, double b);

/// (Delta~ F)(u, s) from the dense Hermitian solve of the metric against
/// the complex Hessian of h.
double tilde_laplace_us(const Weight& w, int n, const USFunction& f, double u, double s);

/// Closed form of the same contraction:
/// [(n-2)(F_s - F_u) + s F_ss] / (-phi'(u)) + F_uu / phi''(u).
double tilde_laplace_us_closed(const Weight& w, int n, const USFunction& f, double u, double s);

/// Delta~ applied twice at (u, s). The inner Delta~F is differentiated on a
/// stencil of step fd_step (<= 0 selects 1e-3 max(1, u)); one-sided in s
/// near s = 0.
double tilde_laplace_squared(const Weight& w, int n, const USFunction& f, double u, double s, double fd_step = 0.0);

/// Reference value of Delta~ computed in real coordinates: the complex
/// Hessians of phi and h are both taken by central differences and
/// contracted through a generic LU solve. Steps `step` and `step`/2 are
/// combined by one Richardson step.
double tilde_laplace_full_fd(const Weight& w, int n, const USFunction& f, double u, double s, double step = 1e-3);

}  // namespace bergman
