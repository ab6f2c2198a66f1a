#include "bergman/numerics/gauss_jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "bergman/error.hpp"
#include "bergman/numerics/special.hpp"

namespace bergman {

namespace {

// Monic three-term recurrence t p_k = p_{k+1} + beta_k p_{k-1} for the
// weight (1-t^2)^lambda (Gegenbauer with mu = lambda + 1/2).
double recurrence_beta(double lambda, int k) {
  if (k == 1) return 1.0 / (2.0 * lambda + 3.0);
  const double s = 2.0 * k + 2.0 * lambda;
  return k * (k + 2.0 * lambda) / (s * s - 1.0);
}

// Orthonormal polynomials q_0..q_m at t; returns q_m, sets q_{m-1} and the
// Christoffel sum sum_{k<m} q_k(t)^2.
double orthonormal_eval(double lambda, int m, double t, double mass, double& q_prev, double& christoffel) {
  double qkm1 = 0.0;
  double qk = 1.0 / std::sqrt(mass);
  christoffel = qk * qk;
  for (int k = 0; k < m; ++k) {
    const double bk1 = std::sqrt(recurrence_beta(lambda, k + 1));
    const double bk = k == 0 ? 0.0 : std::sqrt(recurrence_beta(lambda, k));
    const double qk1 = (t * qk - bk * qkm1) / bk1;
    qkm1 = qk;
    qk = qk1;
    if (k + 1 < m) christoffel += qk * qk;
  }
  q_prev = qkm1;
  return qk;
}

GaussRule build_rule(double lambda, int m) {
  GaussRule rule;
  rule.lambda = lambda;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  if (lambda == -0.5) {
    // Chebyshev of the first kind: closed form, endpoints never sampled.
    for (int i = 0; i < m; ++i) {
      rule.nodes[i] = -std::cos((2.0 * i + 1.0) * std::numbers::pi / (2.0 * m));
      rule.weights[i] = std::numbers::pi / m;
    }
    return rule;
  }
  const double mass = jacobi_weight_mass(lambda);

  // Golub-Welsch for starting values.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(std::max(m - 1, 0));
  for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(recurrence_beta(lambda, k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();

  for (int i = 0; i < m; ++i) {
    double t = ev[i];
    // Newton polish on q_m, differentiating the recurrence alongside.
    for (int it = 0; it < 6; ++it) {
      double qkm1 = 0.0;
      double qk = 1.0 / std::sqrt(mass);
      double dkm1 = 0.0;
      double dk = 0.0;
      for (int k = 0; k < m; ++k) {
        const double bk1 = std::sqrt(recurrence_beta(lambda, k + 1));
        const double bk = k == 0 ? 0.0 : std::sqrt(recurrence_beta(lambda, k));
        const double qk1 = (t * qk - bk * qkm1) / bk1;
        const double dk1 = (qk + t * dk - bk * dkm1) / bk1;
        qkm1 = qk;
        qk = qk1;
        dkm1 = dk;
        dk = dk1;
      }
      const double dt = qk / dk;
      t -= dt;
      if (std::fabs(dt) < 1e-16) break;
    }
    double q_prev = 0.0;
    double christoffel = 0.0;
    orthonormal_eval(lambda, m, t, mass, q_prev, christoffel);
    rule.nodes[i] = t;
    rule.weights[i] = 1.0 / christoffel;
  }
  // Enforce exact symmetry of the rule.
  for (int i = 0; i < m / 2; ++i) {
    const int j = m - 1 - i;
    const double t = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -t;
    rule.nodes[j] = t;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

}  // namespace

double jacobi_weight_mass(double lambda) {
  return std::exp(0.5 * std::log(std::numbers::pi) + log_gamma(lambda + 1.0) - log_gamma(lambda + 1.5));
}

const GaussRule& gauss_jacobi_rule(double lambda, int m) {
  if (lambda < -0.5) throw DomainError("quad_jacobi: exponent must be >= -1/2, got " + std::to_string(lambda));
  if (m < 1) throw DomainError("quad_jacobi: node count must be >= 1");
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{lambda, m}];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(lambda, m));
  return *slot;
}

ArcRule jacobi_arc_rule(double lambda, int m, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("jacobi_arc_rule: kappa must be positive");
  const GaussRule& rule = gauss_jacobi_rule(lambda, m);
  const double r2 = 1.0 + kappa * kappa;
  ArcRule arc;
  arc.nodes.reserve(m);
  arc.weights.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double tau = rule.nodes[i];
    const double root = std::sqrt(r2 - tau * tau);
    // Im t = sqrt(R^2 - tau^2) - kappa = (1 - tau^2) e, so 1 - t^2 = (1 - tau^2) q.
    const double e = 1.0 / (root + kappa);
    const double one_m = 1.0 - tau * tau;
    const std::complex<double> q(1.0 + one_m * e * e, -2.0 * tau * e);
    const std::complex<double> dt(1.0, -tau / root);
    arc.nodes.emplace_back(tau, one_m * e);
    arc.weights.push_back(rule.weights[i] * std::pow(q, lambda) * dt);
  }
  return arc;
}

}  // namespace bergman
