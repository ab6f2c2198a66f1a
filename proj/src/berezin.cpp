#include "bergman/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/error.hpp"
#include "bergman/kernels.hpp"
#include "bergman/numerics/quadrature.hpp"
#include "bergman/numerics/special.hpp"
#include "bergman/weight_transform.hpp"

namespace bergman {

namespace {

void require_order(int k, const char* what) {
  if (k < 0 || k > 4) throw DomainError(std::string(what) + ": derivative order must be in 0..4");
}

double factorial(int k) { return std::tgamma(k + 1.0); }

VerticalSymbol exp_symbol(double c, std::string name) {
  return {std::move(name),
          [c](double y, int k) {
            require_order(k, "exp symbol");
            return std::pow(-c, k) * std::exp(-c * y);
          },
          1.0};
}

void require_positive(double b, const char* what) {
  if (!(b > 0.0)) {
    std::ostringstream os;
    os << what << ": need b > 0, got " << b;
    throw DomainError(os.str());
  }
}

}  // namespace

VerticalSymbol make_symbol(std::string_view name) {
  if (name == "one") {
    return {"one", [](double, int k) {
              require_order(k, "one");
              return k == 0 ? 1.0 : 0.0;
            },
            1.0};
  }
  if (name == "exp") return exp_symbol(1.0, "exp");
  if (name.starts_with("exp(") && name.ends_with(")")) {
    const std::string arg(name.substr(4, name.size() - 5));
    std::size_t used = 0;
    double c = 0.0;
    try {
      c = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || !(c > 0.0) || !std::isfinite(c)) {
      throw DomainError("symbol '" + std::string(name) + "': rate must be a positive number");
    }
    return exp_symbol(c, std::string(name));
  }
  if (name == "inv1p") {
    return {"inv1p",
            [](double y, int k) {
              require_order(k, "inv1p");
              return std::pow(-1.0, k) * factorial(k) / std::pow(1.0 + y, k + 1);
            },
            1.0};
  }
  if (name == "ratio") {
    return {"ratio",
            [](double y, int k) {
              require_order(k, "ratio");
              if (k == 0) return y / (1.0 + y);
              return -std::pow(-1.0, k) * factorial(k) / std::pow(1.0 + y, k + 1);
            },
            1.0};
  }
  std::string msg = "unknown symbol '" + std::string(name) + "'; valid:";
  for (const auto& s : builtin_symbol_names()) msg += " " + s;
  throw DomainError(msg);
}

std::vector<std::string> builtin_symbol_names() { return {"one", "exp", "exp(c)", "inv1p", "ratio"}; }

VerticalSymbol linear_combination(double c1, const VerticalSymbol& g1, double c2, const VerticalSymbol& g2) {
  std::ostringstream name;
  name << c1 << "*" << g1.name << "+" << c2 << "*" << g2.name;
  return {name.str(), [=](double y, int k) { return c1 * g1(y, k) + c2 * g2(y, k); },
          std::fabs(c1) * g1.bound + std::fabs(c2) * g2.bound};
}

BerezinValue berezin_vertical(const Weight& w, int n, double alpha, const VerticalSymbol& g, double b, double tol) {
  if (n < 2 || !(alpha >= 0.0)) throw DomainError("berezin_vertical: need n >= 2 and alpha >= 0");
  require_positive(b, "berezin_vertical");
  const KernelValue diag = r_alpha_diagonal(w, n, alpha, b, tol);

  double worst_inner = 0.0;
  bool inner_ok = true;
  auto base = [&](double r) {
    const RhoTildeEval rt = log_rho_tilde(w, alpha, r);
    worst_inner = std::max(worst_inner, rt.err_est);
    inner_ok = inner_ok && rt.converged;
    return std::make_pair((n - 2) * std::log(r) - 2.0 * b * r - rt.log_value, rt.log_value);
  };
  auto g_log = [&](double y) { return LogComplex::from_real(g(y)); };
  // r^{n-2} e^{-2br} / rho~(r)^2 * G(r), with G / rho~ formed first so the
  // two peak-normalised y-integrals share their scale.
  auto integrand = [&](double r) {
    const auto [lb, lrt] = base(r);
    const QuadratureResult inner = weighted_laplace(w, alpha, r, g_log, tol);
    inner_ok = inner_ok && inner.converged;
    const double cancel = inner.scaled_value == 0.0 ? 1.0 : inner.scaled_abs / std::abs(inner.scaled_value);
    worst_inner = std::max(worst_inner, std::min(1.0, inner.scaled_err / std::max(inner.scaled_abs, 1e-300)) * cancel);
    const LogComplex gr = inner.log_value();
    if (gr.is_zero()) return gr;
    return LogComplex(gr.log_mag() - lrt + lb, gr.phase());
  };
  const double guess = std::log((n - 1.0 + alpha) / (2.0 * b));
  const PeakHint hint = locate_peak([&](double u) { return base(std::exp(u)).first + u; }, guess);
  const QuadratureResult q = quad_semiinfinite(integrand, hint, tol);

  const double log_const =
      (1 - n) * std::numbers::ln2 + (1 - n) * std::log(std::numbers::pi) + std::log(sphere_area(n - 1));
  BerezinValue out;
  const LogComplex v = q.log_value();
  out.value = v.is_zero() ? 0.0 : std::exp(v.log_mag() + log_const - diag.log_value.log_mag()) * std::cos(v.phase());
  const double cancel = q.scaled_value == 0.0 ? 1.0 : q.scaled_abs / std::abs(q.scaled_value);
  const double rel = (q.scaled_value == 0.0 ? 0.0 : q.rel_err()) + diag.rel_err + cancel * worst_inner;
  out.err_est = rel * std::max(std::fabs(out.value), q.scaled_value == 0.0 ? g.bound : 0.0);
  out.converged = q.converged && diag.converged && inner_ok;
  return out;
}

double q1_vertical(const Weight& w, int n, const VerticalSymbol& g, double b) {
  require_positive(b, "q1_vertical");
  const double p2 = phi(w, b, 2);
  if (!(p2 > 0.0)) throw DomainError("q1_vertical: phi''(b) must be positive for weight '" + w.name() + "'");
  double v = g(b, 2) / p2;
  if (n > 2) v += (n - 2) * g(b, 1) / phi(w, b, 1);
  return v;
}

double q2_curvature_term(const Weight& w, int n, const VerticalSymbol& g, double b) {
  require_positive(b, "q2_curvature_term");
  const double p1 = phi(w, b, 1);
  const double p2 = phi(w, b, 2);
  double v = psi(w, n, b, 2) * g(b, 2) / (2.0 * p2 * p2);
  if (n > 2) v += (n - 2) * psi(w, n, b, 1) * g(b, 1) / (2.0 * p1 * p1);
  return v;
}

double q2_vertical(const Weight& w, int n, const VerticalSymbol& g, double b, double fd_step) {
  require_positive(b, "q2_vertical");
  const double lap2 = tilde_laplace_squared(w, n, USFunction::from_vertical(g), b, 0.0, fd_step);
  return 0.5 * lap2 - q2_curvature_term(w, n, g, b);
}

namespace {

// L(Lg)(b) for L = a d^2 + c d, a = 1/phi'', c = (n-2)/phi'.
double l_squared(const Weight& w, int n, const VerticalSymbol& g, double b) {
  const double p1 = phi(w, b, 1), p2 = phi(w, b, 2), p3 = phi(w, b, 3), p4 = phi(w, b, 4);
  const double a = 1.0 / p2;
  const double a1 = -p3 / (p2 * p2);
  const double a2 = -p4 / (p2 * p2) + 2.0 * p3 * p3 / (p2 * p2 * p2);
  const double m = n - 2;
  const double c = m / p1;
  const double c1 = -m * p2 / (p1 * p1);
  const double c2 = -m * (p3 / (p1 * p1) - 2.0 * p2 * p2 / (p1 * p1 * p1));
  const double g1 = g(b, 1), g2 = g(b, 2), g3 = g(b, 3), g4 = g(b, 4);
  const double lg1 = g3 * a + g2 * a1 + g2 * c + g1 * c1;
  const double lg2 = g4 * a + 2.0 * g3 * a1 + g2 * a2 + g3 * c + 2.0 * g2 * c1 + g1 * c2;
  return a * lg2 + c * lg1;
}

}  // namespace

double q2_vertical_analytic(const Weight& w, int n, const VerticalSymbol& g, double b) {
  require_positive(b, "q2_vertical_analytic");
  return 0.5 * l_squared(w, n, g, b) - q2_curvature_term(w, n, g, b);
}

double q2_vertical_as_printed(const Weight& w, int n, const VerticalSymbol& g, double b) {
  require_positive(b, "q2_vertical_as_printed");
  return 0.5 * l_squared(w, n, g, b) + q2_curvature_term(w, n, g, b);
}

USFunction USFunction::from_vertical(const VerticalSymbol& g) {
  return {[g](double u, double, int du, int ds) { return ds == 0 ? g(u, du) : 0.0; }};
}

Eigen::MatrixXcd siegel_metric(const Weight& w, int n, double u, double s) {
  if (n < 2) throw DomainError("siegel_metric: need n >= 2");
  require_positive(u, "siegel_metric");
  if (s < 0.0) throw DomainError("siegel_metric: need s >= 0");
  if (n == 2 && s != 0.0) throw DomainError("siegel_metric: n = 2 has no horizontal variables, s must be 0");
  const int m = n - 1;
  const double p1 = phi(w, u, 1), p2 = phi(w, u, 2);
  const std::complex<double> I(0.0, 1.0);
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(m - 1);
  if (m > 1) z(0) = std::sqrt(s);
  Eigen::MatrixXcd g(m, m);
  for (int j = 0; j < m - 1; ++j) {
    for (int k = 0; k < m - 1; ++k) g(j, k) = (j == k ? -p1 : 0.0) + p2 * std::conj(z(j)) * z(k);
    g(j, m - 1) = -0.5 * I * std::conj(z(j)) * p2;
    g(m - 1, j) = 0.5 * I * z(j) * p2;
  }
  g(m - 1, m - 1) = p2 / 4.0;
  return g;
}

MetricInverseAtOrigin siegel_metric_inverse_at_origin(const Weight& w, int n, double b) {
  if (n < 2) throw DomainError("siegel_metric_inverse_at_origin: need n >= 2");
  require_positive(b, "siegel_metric_inverse_at_origin");
  const double p1 = phi(w, b, 1), p2 = phi(w, b, 2);
  if (!(p1 < 0.0) || !(p2 > 0.0)) {
    throw DomainError("siegel_metric_inverse_at_origin: weight '" + w.name() + "' violates suitability at b");
  }
  return {-1.0 / p1, 4.0 / p2};
}

double tilde_laplace_us(const Weight& w, int n, const USFunction& f, double u, double s) {
  const Eigen::MatrixXcd g = siegel_metric(w, n, u, s);
  const int m = n - 1;
  const std::complex<double> I(0.0, 1.0);
  const double fuu = f.partial(u, s, 2, 0);
  // s-derivatives only enter through the horizontal block.
  const bool horiz = m > 1;
  const double fu = horiz ? f.partial(u, s, 1, 0) : 0.0, fs = horiz ? f.partial(u, s, 0, 1) : 0.0;
  const double fus = horiz ? f.partial(u, s, 1, 1) : 0.0, fss = horiz ? f.partial(u, s, 0, 2) : 0.0;
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(m - 1);
  if (m > 1) z(0) = std::sqrt(s);
  Eigen::MatrixXcd a(m, m);
  for (int j = 0; j < m - 1; ++j) {
    for (int k = 0; k < m - 1; ++k)
      a(j, k) = (j == k ? fs - fu : 0.0) + std::conj(z(j)) * z(k) * (fss - 2.0 * fus + fuu);
    a(j, m - 1) = 0.5 * I * std::conj(z(j)) * (fus - fuu);
    a(m - 1, j) = -0.5 * I * z(j) * (fus - fuu);
  }
  a(m - 1, m - 1) = fuu / 4.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success) {
    throw DomainError("tilde_laplace_us: metric is not positive definite for weight '" + w.name() + "'");
  }
  return llt.solve(a).trace().real();
}

double tilde_laplace_us_closed(const Weight& w, int n, const USFunction& f, double u, double s) {
  require_positive(u, "tilde_laplace_us_closed");
  const double p1 = phi(w, u, 1), p2 = phi(w, u, 2);
  if (!(p1 < 0.0) || !(p2 > 0.0)) throw DomainError("tilde_laplace_us_closed: degenerate metric");
  if (n == 2 && s != 0.0) throw DomainError("tilde_laplace_us_closed: n = 2 requires s = 0");
  double v = f.partial(u, s, 2, 0) / p2;
  if (n > 2) {
    v += ((n - 2) * (f.partial(u, s, 0, 1) - f.partial(u, s, 1, 0)) + s * f.partial(u, s, 0, 2)) / (-p1);
  }
  return v;
}

double tilde_laplace_squared(const Weight& w, int n, const USFunction& f, double u, double s, double fd_step) {
  require_positive(u, "tilde_laplace_squared");
  const double h = fd_step > 0.0 ? fd_step : 1e-3 * std::max(1.0, u);
  if (u - h <= 0.0) throw DomainError("tilde_laplace_squared: stencil leaves u > 0; reduce fd_step");
  if (n == 2 && s != 0.0) throw DomainError("tilde_laplace_squared: n = 2 requires s = 0");
  auto d = [&](double uu, double ss) { return tilde_laplace_us(w, n, f, uu, ss); };
  // First and second s-derivatives of x -> d(uu, x) at s.
  auto ds = [&](double uu, int order) {
    if (s >= h) {
      const double lo = d(uu, s - h), mid = d(uu, s), hi = d(uu, s + h);
      return order == 1 ? (hi - lo) / (2.0 * h) : (hi - 2.0 * mid + lo) / (h * h);
    }
    const double d0 = d(uu, s), d1 = d(uu, s + h), d2 = d(uu, s + 2 * h), d3 = d(uu, s + 3 * h);
    return order == 1 ? (-3.0 * d0 + 4.0 * d1 - d2) / (2.0 * h) : (2.0 * d0 - 5.0 * d1 + 4.0 * d2 - d3) / (h * h);
  };
  USFunction lap{[&](double uu, double ss, int du, int dss) -> double {
    (void)ss;
    if (du == 0 && dss == 0) return d(uu, s);
    if (du == 1 && dss == 0) return (d(uu + h, s) - d(uu - h, s)) / (2.0 * h);
    if (du == 2 && dss == 0) return (d(uu + h, s) - 2.0 * d(uu, s) + d(uu - h, s)) / (h * h);
    if (du == 0) return ds(uu, dss);
    if (du == 1 && dss == 1) return (ds(uu + h, 1) - ds(uu - h, 1)) / (2.0 * h);
    throw DomainError("tilde_laplace_squared: stencil supports total order <= 2");
  }};
  return tilde_laplace_us(w, n, lap, u, s);
}

namespace {

double full_fd_once(const Weight& w, int n, const USFunction& f, double u, double s, double step) {
  require_positive(u, "tilde_laplace_full_fd");
  if (n == 2 && s != 0.0) throw DomainError("tilde_laplace_full_fd: n = 2 requires s = 0");
  const int m = n - 1;
  const int dim = 2 * m;  // (x_j, y_j) for z_j, then (X, Y) for w
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(dim);
  if (m > 1) p0(0) = std::sqrt(s);
  p0(dim - 1) = u + s;
  auto coords = [&](const Eigen::VectorXd& p) {
    double ss = 0.0;
    for (int j = 0; j < m - 1; ++j) ss += p(2 * j) * p(2 * j) + p(2 * j + 1) * p(2 * j + 1);
    return std::make_pair(p(dim - 1) - ss, ss);
  };
  auto potential = [&](const Eigen::VectorXd& p) { return -w.log_rho(coords(p).first); };
  auto symbol = [&](const Eigen::VectorXd& p) {
    const auto [uu, ss] = coords(p);
    return f(uu, ss);
  };
  auto hessian = [&](const auto& fn) {
    Eigen::MatrixXd hr(dim, dim);
    const double f0 = fn(p0);
    for (int a = 0; a < dim; ++a) {
      Eigen::VectorXd pa = p0, ma = p0;
      pa(a) += step;
      ma(a) -= step;
      hr(a, a) = (fn(pa) - 2.0 * f0 + fn(ma)) / (step * step);
      for (int c = a + 1; c < dim; ++c) {
        Eigen::VectorXd pp = pa, pm = pa, mp = ma, mm = ma;
        pp(c) += step;
        pm(c) -= step;
        mp(c) += step;
        mm(c) -= step;
        hr(a, c) = hr(c, a) = (fn(pp) - fn(pm) - fn(mp) + fn(mm)) / (4.0 * step * step);
      }
    }
    // d^2 / dz_p dconj(z_q) = 1/4 (H_xx + H_yy + i (H_{x_p y_q} - H_{y_p x_q})).
    Eigen::MatrixXcd hc(m, m);
    for (int pi = 0; pi < m; ++pi)
      for (int qi = 0; qi < m; ++qi) {
        const int xp = 2 * pi, yp = 2 * pi + 1, xq = 2 * qi, yq = 2 * qi + 1;
        hc(pi, qi) = 0.25 * std::complex<double>(hr(xp, xq) + hr(yp, yq), hr(xp, yq) - hr(yp, xq));
      }
    return hc;
  };
  const Eigen::MatrixXcd g = hessian(potential);
  const Eigen::MatrixXcd a = hessian(symbol);
  return g.fullPivLu().solve(a).trace().real();
}

}  // namespace

double tilde_laplace_full_fd(const Weight& w, int n, const USFunction& f, double u, double s, double step) {
  require_positive(u, "tilde_laplace_full_fd");
  if (n == 2 && s != 0.0) throw DomainError("tilde_laplace_full_fd: n = 2 requires s = 0");
  // Central differences are O(h^2); one Richardson step removes that term.
  const double coarse = full_fd_once(w, n, f, u, s, step);
  const double fine = full_fd_once(w, n, f, u, s, 0.5 * step);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace bergman
