#include "bergman/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "bergman/error.hpp"
#include "bergman/numerics/gauss_jacobi.hpp"
#include "bergman/numerics/quadrature.hpp"
#include "bergman/numerics/special.hpp"
#include "bergman/weight_transform.hpp"

namespace bergman {

namespace {

const double kLogPi = std::log(std::numbers::pi);
const double kLog2 = std::numbers::ln2;

void check_kernel_args(int n, double alpha, double y, double b, const char* what) {
  if (n < 2 || !(alpha >= 0.0) || !(y > 0.0) || !(b > 0.0)) {
    std::ostringstream os;
    os << what << ": need n >= 2, alpha >= 0, y > 0, b > 0 (got n=" << n << " alpha=" << alpha << " y=" << y
       << " b=" << b << ")";
    throw DomainError(os.str());
  }
}

// r^{n-2} e^{-beta r} / rho~_alpha(r) in log form, shared by every radial
// integral. Tracks the worst relative error of the rho~ values it used.
class RadialBase {
 public:
  RadialBase(const Weight& w, int n, double alpha, double beta) : w_(w), n_(n), alpha_(alpha), beta_(beta) {}

  double log_value(double r) {
    const RhoTildeEval rt = log_rho_tilde(w_, alpha_, r);
    worst_rel_ = std::max(worst_rel_, rt.err_est);
    if (!rt.converged) converged_ = false;
    return (n_ - 2) * std::log(r) - beta_ * r - rt.log_value;
  }

  PeakHint peak() {
    const double guess = std::log((n_ - 1.0 + alpha_) / beta_);
    return locate_peak([this](double u) { return log_value(std::exp(u)) + u; }, guess);
  }

  double worst_rel() const { return worst_rel_; }
  bool converged() const { return converged_; }

 private:
  const Weight& w_;
  int n_;
  double alpha_;
  double beta_;
  double worst_rel_ = 0.0;
  bool converged_ = true;
};

KernelValue finish(const QuadratureResult& q, double log_const, const RadialBase& base, Route route) {
  KernelValue kv;
  const LogComplex v = q.log_value();
  kv.log_value = v.is_zero() ? v : LogComplex(v.log_mag() + log_const, v.phase());
  // An exactly cancelling integral has no meaningful relative error; report
  // it against the integrand scale instead.
  const double cancel = v.is_zero() ? 1.0 : q.scaled_abs / std::abs(q.scaled_value);
  const double rel = v.is_zero() ? q.scaled_err : q.rel_err();
  kv.rel_err = rel + cancel * base.worst_rel();
  kv.converged = q.converged && base.converged();
  kv.route = route;
  return kv;
}

// Re z without leaving log form, so huge values survive.
LogComplex real_part(const LogComplex& z) {
  if (z.is_zero()) return z;
  const double c = std::cos(z.phase());
  if (c == 0.0) return LogComplex::zero();
  return {z.log_mag() + std::log(std::fabs(c)), c < 0.0 ? std::numbers::pi : 0.0};
}

}  // namespace

std::string_view route_name(Route r) {
  switch (r) {
    case Route::radial: return "radial";
    case Route::holomorphic_reduction: return "holomorphic-reduction";
    case Route::closed_form: return "closed-form";
  }
  return "unknown";
}

double KernelValue::err_est() const { return rel_err * std::exp(log_value.log_mag()); }

KernelValue k0_alpha(const Weight& w, int n, double alpha, double x, double y, double b, double tol) {
  check_kernel_args(n, alpha, y, b, "k0_alpha");
  RadialBase base(w, n, alpha, b + y);
  const PeakHint hint = base.peak();
  auto f = [&](double r) { return LogComplex(base.log_value(r), x * r); };
  const QuadratureResult q = quad_semiinfinite(f, hint, tol);
  const double log_const = (n - 3) * kLog2 - (n - 1) * kLogPi;
  KernelValue kv = finish(q, log_const, base, Route::radial);
  if (x == 0.0) kv.log_value = real_part(kv.log_value);
  return kv;
}

LogComplex k0_gamma_closed(int n, double alpha, double x, double y, double b) {
  check_kernel_args(n, alpha, y, b, "k0_gamma_closed");
  const double log_const =
      (n + alpha - 2.0) * kLog2 + log_gamma(n + alpha) - (n - 1) * kLogPi - log_gamma(alpha + 1.0);
  const std::complex<double> z(b + y, -x);
  return LogComplex::from_log(log_const - (n + alpha) * std::log(z));
}

KernelValue r_alpha_radial(const Weight& w, double alpha, const KernelPoint& p, double tol) {
  check_kernel_args(p.n, alpha, p.y, p.b, "r_alpha_radial");
  if (p.d < 0.0) throw DomainError("r_alpha_radial: separation d must be >= 0");
  const int n = p.n;
  RadialBase base(w, n, alpha, p.b + p.y);
  const PeakHint hint = base.peak();
  const double order = 0.5 * (n - 1);
  auto f = [&](double r) {
    double sphere;
    if (p.d == 0.0) sphere = 1.0;
    else if (n == 2) sphere = std::cos(r * p.d);
    else sphere = hyp0f1(order, -0.25 * r * r * p.d * p.d);
    return LogComplex(base.log_value(r), 0.0) * LogComplex::from_real(sphere);
  };
  const QuadratureResult q = quad_semiinfinite(f, hint, tol);
  const double log_const = (2 - n) * kLog2 + 0.5 * (1 - n) * kLogPi - log_gamma(order);
  KernelValue kv = finish(q, log_const, base, Route::radial);
  kv.log_value = real_part(kv.log_value);
  return kv;
}

KernelValue r_alpha_via_holomorphic(const Weight& w, double alpha, const KernelPoint& p, double tol) {
  check_kernel_args(p.n, alpha, p.y, p.b, "r_alpha_via_holomorphic");
  if (p.d < 0.0) throw DomainError("r_alpha_via_holomorphic: separation d must be >= 0");
  const int n = p.n;
  if (n == 2) {
    KernelValue k = k0_alpha(w, 2, alpha, p.d, p.y, p.b, tol);
    KernelValue kv;
    kv.log_value = real_part(k.log_value) * LogComplex(kLog2, 0.0);
    const double c = std::fabs(std::cos(k.log_value.phase()));
    kv.rel_err = c > 0.0 ? k.rel_err / c : k.rel_err;
    kv.converged = k.converged;
    kv.route = Route::holomorphic_reduction;
    return kv;
  }

  const double lambda = 0.5 * (n - 4);
  const double log_const = (4 - 2 * n) * kLog2 + std::log(sphere_area(n - 2));

  if (p.d == 0.0) {
    KernelValue k = k0_alpha(w, n, alpha, 0.0, p.y, p.b, tol);
    KernelValue kv = k;
    kv.log_value = k.log_value * LogComplex(log_const + std::log(jacobi_weight_mass(lambda)), 0.0);
    kv.route = Route::holomorphic_reduction;
    return kv;
  }

  // Nodes are symmetric and K0(-x + iy; ib) = conj K0(x + iy; ib), so only
  // t >= 0 is evaluated and paired nodes contribute twice the real part.
  auto jacobi_sum = [&](int m, double& abs_err, bool& ok) {
    const GaussRule& rule = gauss_jacobi_rule(lambda, m);
    LogAccumulator acc;
    abs_err = 0.0;
    ok = true;
    std::vector<std::pair<LogComplex, double>> errs;
    for (int i = m / 2; i < m; ++i) {
      const double t = rule.nodes[i];
      const KernelValue k = k0_alpha(w, n, alpha, p.d * t, p.y, p.b, tol);
      ok = ok && k.converged;
      const double mult = t == 0.0 ? 1.0 : 2.0;
      acc.add(real_part(k.log_value), mult * rule.weights[i]);
      errs.emplace_back(k.log_value, mult * rule.weights[i] * k.rel_err);
    }
    // Propagated node errors, in units of exp(acc.log_scale()).
    for (const auto& [v, e] : errs) abs_err += e * std::exp(v.log_mag() - acc.log_scale());
    return acc;
  };

  double prev_err = 0.0;
  bool prev_ok = true;
  LogAccumulator prev = jacobi_sum(16, prev_err, prev_ok);
  KernelValue kv;
  kv.route = Route::holomorphic_reduction;
  for (int m = 32; m <= 1024; m *= 2) {
    double node_err = 0.0;
    bool ok = true;
    LogAccumulator cur = jacobi_sum(m, node_err, ok);
    const double scale = cur.log_scale();
    const double cur_v = cur.scaled_sum().real();
    const double prev_v = prev.value().scaled(scale).real();
    const double diff = std::fabs(cur_v - prev_v);
    kv.log_value = LogComplex::from_real(cur_v) * LogComplex(scale + log_const, 0.0);
    const double denom = cur_v != 0.0 ? std::fabs(cur_v) : cur.scaled_abs_sum();
    kv.rel_err = (diff + node_err) / denom;
    kv.converged = ok;
    if (diff <= std::max(tol * std::fabs(cur_v), 2.0 * node_err)) return kv;
    prev = cur;
  }
  kv.converged = false;
  return kv;
}

KernelValue r_alpha_diagonal(const Weight& w, int n, double alpha, double b, double tol) {
  check_kernel_args(n, alpha, b, b, "r_alpha_diagonal");
  RadialBase base(w, n, alpha, 2.0 * b);
  const PeakHint hint = base.peak();
  auto f = [&](double r) { return LogComplex(base.log_value(r), 0.0); };
  const QuadratureResult q = quad_semiinfinite(f, hint, tol);
  const double log_const = (2 - n) * kLog2 + 0.5 * (1 - n) * kLogPi - log_gamma(0.5 * (n - 1));
  KernelValue kv = finish(q, log_const, base, Route::radial);
  kv.log_value = real_part(kv.log_value);
  return kv;
}

KernelValue r_alpha_gamma_closed(double alpha, const KernelPoint& p) {
  check_kernel_args(p.n, alpha, p.y, p.b, "r_alpha_gamma_closed");
  const int n = p.n;
  if (n <= 2) throw DomainError("r_alpha_gamma_closed: requires n > 2 (use r_alpha_gamma_closed_n2)");
  const double lambda = 0.5 * (n - 4);
  const double big_n = alpha + n;
  const double s = p.y + p.b;
  const double ratio = p.d / s;
  // (s - i d t)^{-N} = s^{-N} (1 + ratio^2)^{-N/2} * unimodular on the arc.
  const double log_const = (alpha - n + 3.0) * kLog2 + log_gamma(alpha + n) - 0.5 * n * kLogPi -
                           log_gamma(alpha + 1.0) - log_gamma(0.5 * (n - 2)) - big_n * std::log(s) -
                           0.5 * big_n * std::log1p(ratio * ratio);
  KernelValue kv;
  kv.route = Route::closed_form;
  if (p.d == 0.0) {
    kv.log_value = LogComplex(log_const + std::log(jacobi_weight_mass(lambda)), 0.0);
    kv.rel_err = 1e-15;
    return kv;
  }
  const double half_log = 0.5 * big_n * std::log1p(ratio * ratio);
  auto term = [&](std::complex<double> t) {
    return std::exp(-big_n * std::log(1.0 - std::complex<double>(0.0, ratio) * t) + half_log);
  };
  const double kappa = 1.0 / ratio;
  const double scale = jacobi_weight_mass(lambda);
  double prev = quad_jacobi_arc(term, lambda, 16, kappa).real();
  for (int m = 32; m <= 8192; m *= 2) {
    const double cur = quad_jacobi_arc(term, lambda, m, kappa).real();
    const double diff = std::fabs(cur - prev);
    kv.log_value = LogComplex::from_real(cur) * LogComplex(log_const, 0.0);
    kv.rel_err = std::max(diff, 1e-15 * scale) / std::fabs(cur);
    if (diff <= 1e-15 * scale) {
      kv.converged = true;
      return kv;
    }
    prev = cur;
  }
  kv.converged = false;
  return kv;
}

KernelValue r_alpha_gamma_closed_n2(double alpha, const KernelPoint& p) {
  check_kernel_args(2, alpha, p.y, p.b, "r_alpha_gamma_closed_n2");
  KernelValue kv;
  kv.route = Route::closed_form;
  kv.log_value = real_part(k0_gamma_closed(2, alpha, p.d, p.y, p.b)) * LogComplex(kLog2, 0.0);
  kv.rel_err = 1e-15;
  return kv;
}

}  // namespace bergman
