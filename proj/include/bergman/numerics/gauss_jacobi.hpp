#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace bergman {

/// Gauss rule for the symmetric Jacobi weight (1 - t^2)^lambda on [-1, 1].
struct GaussRule {
  double lambda = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point rule, exact for polynomials of degree <= 2m - 1. Rules are built
/// once per (lambda, m) and cached; the returned reference stays valid for
/// the lifetime of the process.
const GaussRule& gauss_jacobi_rule(double lambda, int m);

/// Integral of (1 - t^2)^lambda over [-1, 1], i.e. sqrt(pi) Gamma(lambda+1)/Gamma(lambda+3/2).
double jacobi_weight_mass(double lambda);

/// Integral of (1 - t^2)^lambda F(t) over [-1, 1] with m nodes. F may
/// return a real or complex value. Requires lambda >= -1/2.
template <class F>
auto quad_jacobi(F&& integrand, double lambda, int m) {
  const GaussRule& rule = gauss_jacobi_rule(lambda, m);
  using R = decltype(integrand(0.0));
  R sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * integrand(rule.nodes[i]);
  return sum;
}

/// Nodes and complex weights for integrating (1 - t^2)^lambda F(t) from -1
/// to 1 along the upper arc of the circle through +-1 centred at -i kappa
/// (kappa > 0). The arc is parametrised by Re t so that the endpoint
/// behaviour stays that of the Jacobi weight. The result equals the
/// straight-line integral whenever F is analytic between the two paths.
/// Functions such as (c - i d t)^{-N} with kappa = c/d have constant
/// modulus on this arc, which removes the exponential cancellation of the
/// real-line integral.
struct ArcRule {
  std::vector<std::complex<double>> nodes;
  std::vector<std::complex<double>> weights;
};
ArcRule jacobi_arc_rule(double lambda, int m, double kappa);

template <class F>
std::complex<double> quad_jacobi_arc(F&& integrand, double lambda, int m, double kappa) {
  const ArcRule rule = jacobi_arc_rule(lambda, m, kappa);
  std::complex<double> sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * integrand(rule.nodes[i]);
  return sum;
}

}  // namespace bergman
