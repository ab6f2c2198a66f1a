#include "bergman/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "bergman/error.hpp"
#include "bergman/numerics/gauss_jacobi.hpp"
#include "bergman/numerics/special.hpp"

namespace bergman {

namespace {

const double kLogPi = std::log(std::numbers::pi);

void check_leading_args(int n, double alpha, double b, const char* what) {
  if (n < 2 || !(alpha > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << what << ": need n >= 2, alpha > 0, b > 0 (got n=" << n << " alpha=" << alpha << " b=" << b << ")";
    throw DomainError(os.str());
  }
}

void check_samples(const std::vector<Sample>& samples, std::size_t min_count, const char* what) {
  if (samples.size() < min_count) {
    std::ostringstream os;
    os << what << ": need at least " << min_count << " samples, got " << samples.size();
    throw DomainError(os.str());
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0.0) || (i > 0 && !(samples[i].first > samples[i - 1].first))) {
      throw DomainError(std::string(what) + ": alpha values must be positive and strictly increasing");
    }
  }
}

// Coefficients of the fit in x = alpha_min / alpha, which keeps the design
// columns of comparable size.
Eigen::VectorXd solve_scaled(const std::vector<Sample>& samples, int k, double alpha_min, double* cond,
                             double* resid) {
  const int rows = static_cast<int>(samples.size());
  Eigen::MatrixXd a(rows, k + 1);
  Eigen::VectorXd rhs(rows);
  for (int i = 0; i < rows; ++i) {
    const double x = alpha_min / samples[i].first;
    double p = 1.0;
    for (int j = 0; j <= k; ++j, p *= x) a(i, j) = p;
    rhs(i) = samples[i].second;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sol = svd.solve(rhs);
  if (cond) {
    const auto& sv = svd.singularValues();
    *cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  }
  if (resid) *resid = (a * sol - rhs).norm();
  return sol;
}

}  // namespace

double diag_leading_constant(int n) {
  if (n < 2) throw DomainError("diag_leading_constant: need n >= 2");
  return std::exp((3 - 2 * n) * std::numbers::ln2 - 0.5 * (n - 1) * kLogPi - log_gamma(0.5 * (n - 1)));
}

double log_diag_leading(const Weight& w, int n, double alpha, double b) {
  check_leading_args(n, alpha, b, "diag_leading");
  return (n - 1) * std::log(alpha) - alpha * w.log_rho(b) + std::log(diag_leading_constant(n)) +
         log_q_factor(w, n, b);
}

double diag_leading(const Weight& w, int n, double alpha, double b) {
  return std::exp(log_diag_leading(w, n, alpha, b));
}

LogComplex offdiag_leading(const Weight& w, double alpha, const KernelPoint& p, int m_nodes) {
  const int n = p.n;
  check_leading_args(n, alpha, p.b, "offdiag_leading");
  if (!(p.y > 0.0) || p.d < 0.0) throw DomainError("offdiag_leading: need y > 0 and d >= 0");
  const double pre = (n - 1) * std::log(alpha) - std::log(4.0) - (n - 1) * kLogPi;
  const double mid = 0.5 * (p.y + p.b);

  if (n == 2) {
    const LogComplex v = weight_complex(w, 2, {mid, -0.5 * p.d}, alpha);
    const double c = std::cos(v.phase());
    if (c == 0.0) return LogComplex::zero();
    return {v.log_mag() + std::log(2.0 * std::fabs(c)) + pre, c < 0.0 ? std::numbers::pi : 0.0};
  }

  const double lambda = 0.5 * (n - 4);
  const double log_it = (4 - 2 * n) * std::numbers::ln2 + std::log(sphere_area(n - 2));
  if (p.d == 0.0) {
    const LogComplex v = weight_complex(w, n, {mid, 0.0}, alpha);
    return v * LogComplex(pre + log_it + std::log(jacobi_weight_mass(lambda)), 0.0);
  }
  // The t-path is moved onto the arc on which |T| is constant; rho(T)^{-alpha}
  // is analytic there because Re T only grows.
  const double kappa = 2.0 * mid / p.d;
  auto jacobi = [&](int m) {
    const ArcRule rule = jacobi_arc_rule(lambda, m, kappa);
    LogAccumulator acc;
    for (int i = 0; i < m; ++i) {
      const std::complex<double> t = rule.nodes[i];
      const std::complex<double> tt(mid + 0.5 * p.d * t.imag(), -0.5 * p.d * t.real());
      acc.add(weight_complex(w, n, tt, alpha) * LogComplex::from_complex(rule.weights[i]));
    }
    return acc;
  };
  LogAccumulator acc;
  if (m_nodes > 0) {
    acc = jacobi(m_nodes);
  } else {
    LogAccumulator prev = jacobi(16);
    for (int m = 32; m <= 8192; m *= 2) {
      acc = jacobi(m);
      const double diff = std::abs(acc.scaled_sum() - prev.value().scaled(acc.log_scale()));
      if (diff <= 1e-15 * acc.scaled_abs_sum()) break;
      prev = acc;
    }
  }
  const double re = acc.scaled_sum().real();
  if (re == 0.0) return LogComplex::zero();
  return {std::log(std::fabs(re)) + acc.log_scale() + pre + log_it, re < 0.0 ? std::numbers::pi : 0.0};
}

ExpansionFit richardson_fit(const std::vector<Sample>& samples, int k) {
  if (k < 0) throw DomainError("richardson_fit: order must be >= 0");
  check_samples(samples, static_cast<std::size_t>(k) + 2, "richardson_fit");
  const double alpha_min = samples.front().first;
  ExpansionFit fit;
  const Eigen::VectorXd sol = solve_scaled(samples, k, alpha_min, &fit.condition, &fit.residual_norm);
  fit.well_conditioned = fit.condition <= kFitConditionLimit;
  fit.coefficients.resize(k + 1);
  fit.uncertainty.assign(k + 1, 0.0);
  for (int j = 0; j <= k; ++j) fit.coefficients[j] = sol(j) * std::pow(alpha_min, j);
  for (std::size_t drop = 0; drop < samples.size(); ++drop) {
    std::vector<Sample> sub;
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (i != drop) sub.push_back(samples[i]);
    const Eigen::VectorXd s2 = solve_scaled(sub, k, alpha_min, nullptr, nullptr);
    for (int j = 0; j <= k; ++j) {
      fit.uncertainty[j] = std::max(fit.uncertainty[j], std::fabs(s2(j) - sol(j)) * std::pow(alpha_min, j));
    }
  }
  return fit;
}

double richardson_extrapolate(const std::vector<Sample>& samples) {
  check_samples(samples, 1, "richardson_extrapolate");
  // Neville's scheme at x = 0 in x = 1/alpha.
  std::vector<double> p;
  std::vector<double> x;
  for (const auto& [a, v] : samples) {
    x.push_back(1.0 / a);
    p.push_back(v);
  }
  const std::size_t m = p.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double xi = x[i], xj = x[i + level];
      p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
    }
  }
  return p[0];
}

double convergence_order(const std::vector<Sample>& samples) {
  check_samples(samples, 3, "convergence_order");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [a, e] : samples) {
    if (!(e > 0.0)) throw DomainError("convergence_order: errors must be positive");
    const double lx = std::log(a), ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(samples.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace bergman
