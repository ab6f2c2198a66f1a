#include "bergman/verify.hpp"

#include <algorithm>
#include <complex>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bergman/asymptotics.hpp"
#include "bergman/berezin.hpp"
#include "bergman/kernels.hpp"
#include "bergman/numerics/gauss_jacobi.hpp"
#include "bergman/numerics/quadrature.hpp"
#include "bergman/numerics/special.hpp"
#include "bergman/weight_transform.hpp"
#include "bergman/weights.hpp"

namespace bergman {

namespace {

constexpr double kPi = std::numbers::pi;

// Tracks the largest value seen and where it happened.
struct Worst {
  double value = 0.0;
  std::string where;
  bool any_failure = false;

  void see(double v, const std::string& at) {
    if (!(v <= value)) {  // NaN counts as worst
      value = v;
      where = at;
    }
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double rel_diff(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

CheckResult make(const std::string& id, const std::string& desc, const Worst& w, double tol) {
  CheckResult r{id, desc, w.value, tol, !w.any_failure && w.value <= tol, w.where};
  return r;
}

std::vector<Weight> all_weights() {
  std::vector<Weight> out;
  for (const auto& name : builtin_weight_names()) out.push_back(make_builtin_weight(name));
  return out;
}

std::string at(const std::string& w, int n, double alpha, const KernelPoint* p = nullptr) {
  std::ostringstream os;
  os << w << " n=" << n;
  if (alpha >= 0.0) os << " alpha=" << alpha;
  if (p) os << " d=" << p->d << " y=" << p->y << " b=" << p->b;
  return os.str();
}

// Gamma-weight exact value, from whichever closed form applies.
double gamma_exact(double alpha, const KernelPoint& p) {
  return (p.n == 2 ? r_alpha_gamma_closed_n2(alpha, p) : r_alpha_gamma_closed(alpha, p)).real();
}

CheckResult gamma_exactness(const VerifyOptions&) {
  const Weight g = make_builtin_weight("gamma");
  Worst worst;
  const KernelPoint pts[] = {{0, 0.0, 1.0, 1.0}, {0, 0.5, 0.7, 1.2}, {0, 1.0, 1.0, 1.0}};
  for (int n : {3, 4, 5})
    for (double a : {0.0, 1.0, 5.0, 20.0})
      for (KernelPoint p : pts) {
        p.n = n;
        const KernelValue r = r_alpha_radial(g, a, p);
        worst.see(rel_diff(r.real(), gamma_exact(a, p)), at("gamma", n, a, &p));
        if (!r.converged) worst.any_failure = true;
      }
  worst.see(rel_diff(r_alpha_radial(g, 0, {4, 0, 1, 1}).real(), 3.0 / (8 * kPi * kPi)), "n=4 alpha=0 vs 3/(8 pi^2)");
  worst.see(rel_diff(r_alpha_radial(g, 0, {3, 0, 1, 1}).real(), 1.0 / (4 * kPi)), "n=3 alpha=0 vs 1/(4 pi)");
  return make("kernel.gamma_exact", "radial route equals the gamma closed form (n=3..5)", worst, 1e-8);
}

CheckResult n2_diagonal_chain(const VerifyOptions&) {
  const Weight g = make_builtin_weight("gamma");
  Worst worst;
  for (double a : {0.0, 1.0, 5.0, 20.0, 100.0}) {
    const KernelValue r = r_alpha_diagonal(g, 2, a, 1.0);
    worst.see(rel_diff(r.real(), (a + 1.0) / (2 * kPi)), at("gamma", 2, a));
  }
  return make("kernel.n2_diagonal_chain", "gamma n=2 diagonal at b=1 equals (alpha+1)/(2 pi)", worst, 1e-8);
}

CheckResult holomorphic_slice(const VerifyOptions&) {
  const Weight g = make_builtin_weight("gamma");
  Worst worst;
  for (int n : {2, 3, 4})
    for (double a : {0.0, 1.0, 5.0, 20.0})
      for (double x : {0.0, 0.5, 1.0}) {
        const std::complex<double> num = k0_alpha(g, n, a, x, 1.0, 1.0).value();
        const std::complex<double> ex = k0_gamma_closed(n, a, x, 1.0, 1.0).to_complex();
        worst.see(std::abs(num - ex) / std::abs(ex), at("gamma", n, a) + " x=" + fmt(x));
      }
  return make("kernel.holomorphic_slice", "numeric Siegel slice equals the gamma closed form", worst, 1e-8);
}

CheckResult diagonal_identity(const VerifyOptions& opts) {
  Worst worst;
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4})
      for (double a : {0.0, 5.0, 50.0}) {
        const double b = 1.0;
        const double diag = r_alpha_diagonal(w, n, a, b).real();
        const double c = std::pow(2.0, 4 - 2 * n) * sphere_area(n - 1) * opts.omega_fault;
        const double via = c * k0_alpha(w, n, a, 0.0, b, b).real();
        worst.see(rel_diff(diag, via), at(w.name(), n, a));
      }
  return make("kernel.diagonal_identity", "diagonal kernel equals 2^{4-2n} omega_{n-1} K0(ib; ib)", worst, 1e-9);
}

CheckResult cross_route(const VerifyOptions&) {
  Worst worst;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> yb(0.5, 2.0), unit(0.0, 1.0);
  for (const Weight& w : all_weights()) {
    if (w.name() == "gamma") continue;
    for (int n : {2, 3, 4})
      for (double a : {0.0, 5.0, 20.0})
        for (int k = 0; k < 5; ++k) {
          KernelPoint p{n, 0.0, yb(rng), yb(rng)};
          p.d = unit(rng) * std::min(p.y, p.b);
          const KernelValue r = r_alpha_radial(w, a, p);
          const KernelValue h = r_alpha_via_holomorphic(w, a, p);
          const double diff = std::fabs(r.real() - h.real());
          const double rel = diff / std::fabs(r.real());
          if (diff > 3.0 * (r.err_est() + h.err_est()) || !r.converged || !h.converged) {
            worst.any_failure = true;
            worst.where = at(w.name(), n, a, &p) + " exceeds 3x combined err_est";
          }
          worst.see(rel, at(w.name(), n, a, &p));
        }
  }
  return make("kernel.cross_route", "radial and holomorphic-reduction routes agree (non-gamma weights)", worst, 1e-7);
}

CheckResult route_equivalence(const VerifyOptions&) {
  // Ratio |radial - holomorphic| / (3 * combined err_est); passes at <= 1.
  Worst worst;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> yb(0.5, 2.0), dd(0.0, 2.0);
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4, 5})
      for (double a : {0.0, 1.0, 5.0, 20.0})
        for (int k = 0; k < 5; ++k) {
          const KernelPoint p{n, dd(rng), yb(rng), yb(rng)};
          const KernelValue r = r_alpha_radial(w, a, p);
          const KernelValue h = r_alpha_via_holomorphic(w, a, p);
          const double budget = 3.0 * (r.err_est() + h.err_est());
          worst.see(std::fabs(r.real() - h.real()) / budget, at(w.name(), n, a, &p));
        }
  return make("kernel.route_equivalence", "route difference within 3x combined err_est, d <= 2, all weights", worst,
              1.0);
}

CheckResult kernel_symmetry(const VerifyOptions&) {
  Worst worst;
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4})
      for (double a : {0.0, 5.0}) {
        const KernelPoint p{n, 0.4, 0.6, 1.3}, q{n, 0.4, 1.3, 0.6};
        worst.see(rel_diff(r_alpha_radial(w, a, p).real(), r_alpha_radial(w, a, q).real()), at(w.name(), n, a, &p));
      }
  return make("kernel.symmetry", "R(y; b) = R(b; y)", worst, 1e-10);
}

CheckResult kernel_positivity(const VerifyOptions&) {
  Worst worst;
  double smallest = std::numeric_limits<double>::infinity();
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4})
      for (double a : {0.0, 5.0, 50.0})
        for (double b : {0.5, 1.0, 2.0}) {
          const double v = r_alpha_diagonal(w, n, a, b).real();
          if (v < smallest) {
            smallest = v;
            worst.where = at(w.name(), n, a) + " b=" + fmt(b);
          }
        }
  CheckResult r{"kernel.positivity", "diagonal kernel is positive", smallest, 0.0, smallest > 0.0, worst.where};
  return r;
}

CheckResult fourier_consistency(const VerifyOptions&) {
  // int_R K0(x + iy; ib) e^{-i xi x} dx = e^{-(b+y) xi} / rho~(xi) for n = 2,
  // using K0(-x) = conj K0(x) to fold onto x > 0.
  const Weight g = make_builtin_weight("gamma");
  const double alpha = 5.0, y = 0.6, b = 0.9;
  Worst worst;
  // The slice decays like |x|^{-alpha-2}, so [0, 180] leaves a tail far
  // below the tolerance; 16-point Gauss-Legendre panels of width 3 resolve
  // the oscillation.
  const GaussRule& rule = gauss_jacobi_rule(0.0, 16);
  constexpr double kWidth = 3.0;
  constexpr int kPanels = 60;
  std::vector<double> xs;
  std::vector<std::complex<double>> ks;
  for (int p = 0; p < kPanels; ++p)
    for (double t : rule.nodes) {
      const double x = kWidth * (p + 0.5 * (t + 1.0));
      xs.push_back(x);
      ks.push_back(k0_alpha(g, 2, alpha, x, y, b).log_value.to_complex());
    }
  for (double xi : {0.5, 2.0}) {
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      sum += rule.weights[i % rule.nodes.size()] * ks[i] * std::polar(1.0, -xi * xs[i]);
    const double num = kWidth * sum.real();  // 2 Re times the half-width
    const double ex = std::exp(-(b + y) * xi - log_rho_tilde(g, alpha, xi).log_value);
    worst.see(rel_diff(num, ex), "xi=" + fmt(xi));
  }
  return make("kernel.fourier_consistency", "x-Fourier transform of the n=2 slice matches its Laplace density",
              worst, 1e-8);
}

CheckResult hyp0f1_identity(const VerifyOptions&) {
  Worst worst;
  for (int i = 0; i < 100; ++i) {
    const double z = 100.0 * i / 99.0;
    worst.see(std::fabs(hyp0f1(0.5, -z) - std::cos(2.0 * std::sqrt(z))), "z=" + fmt(z));
  }
  return make("numerics.hyp0f1_cos", "0F1(1/2; -z) = cos(2 sqrt z) on [0, 100]", worst, 1e-11);
}

CheckResult diag_constant(const VerifyOptions&) {
  // Deviation |c0 / (C_n Q(b)) - 1|; the remainder order must also be -1 +- 0.2.
  Worst worst;
  const std::vector<double> alphas = {25, 50, 100, 200, 400};
  for (const Weight& w : all_weights())
    for (int n : {2, 3})
      for (double b : {0.5, 1.0, 2.0}) {
        std::vector<Sample> scaled, err;
        for (double a : alphas) {
          const KernelValue r = r_alpha_diagonal(w, n, a, b);
          scaled.push_back({a, std::exp(r.log_value.log_mag() - (n - 1) * std::log(a) + a * w.log_rho(b))});
          err.push_back({a, std::fabs(std::expm1(r.log_value.log_mag() - log_diag_leading(w, n, a, b)))});
        }
        const ExpansionFit fit = richardson_fit(scaled, 2);
        const double target = diag_leading_constant(n) * q_factor(w, n, b);
        const double order = convergence_order(err);
        const std::string where = at(w.name(), n, -1) + " b=" + fmt(b);
        if (std::fabs(order + 1.0) > 0.2) {
          worst.any_failure = true;
          worst.where = where + " order=" + fmt(order);
        }
        worst.see(std::fabs(fit.coefficients[0] / target - 1.0), where);
      }
  return make("asym.diag_constant", "fitted diagonal constant equals C_n Q(b); remainder order -1", worst, 0.01);
}

CheckResult diag_ratio_order(const VerifyOptions&) {
  Worst worst;
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4})
      for (double b : {0.5, 1.0, 2.0}) {
        std::vector<Sample> err;
        for (double a : {25.0, 50.0, 100.0, 200.0, 400.0}) {
          const KernelValue r = r_alpha_diagonal(w, n, a, b);
          err.push_back({a, std::fabs(std::expm1(r.log_value.log_mag() - log_diag_leading(w, n, a, b)))});
        }
        worst.see(std::fabs(convergence_order(err) + 1.0), at(w.name(), n, -1) + " b=" + fmt(b));
      }
  return make("asym.diag_ratio_order", "|fitted order of diagonal/leading - 1| minus (-1)", worst, 0.2);
}

Worst offdiag_orders(std::initializer_list<double> ds) {
  Worst worst;
  for (int n : {2, 4})
    for (double d : ds) {
      const KernelPoint p{n, d, 1.0, 1.0};
      std::vector<Sample> err;
      double last = 0.0;
      for (double a : {25.0, 50.0, 100.0, 200.0, 400.0}) {
        const KernelValue ex = n == 2 ? r_alpha_gamma_closed_n2(a, p) : r_alpha_gamma_closed(a, p);
        const LogComplex lead = offdiag_leading(make_builtin_weight("gamma"), a, p);
        last = std::fabs(ex.real() / lead.real() - 1.0);
        err.push_back({a, last});
      }
      const std::string where = at("gamma", n, 400, &p) + " |ratio-1|=" + fmt(last);
      worst.see(std::fabs(convergence_order(err) + 1.0), where);
    }
  return worst;
}

CheckResult offdiag_gamma(const VerifyOptions&) {
  return make("asym.offdiag_gamma", "gamma exact/leading -> 1 with order -1 (d = 0.25, 0.5)",
              offdiag_orders({0.25, 0.5}), 0.2);
}

CheckResult offdiag_order(const VerifyOptions&) {
  return make("asym.offdiag_order", "gamma exact/leading order -1 including d = 1", offdiag_orders({0.25, 0.5, 1.0}),
              0.2);
}

CheckResult constant_consistency(const VerifyOptions&) {
  Worst worst;
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4})
      for (double b : {0.5, 1.0, 2.0}) {
        const KernelPoint p{n, 0.0, b, b};
        const double lhs = offdiag_leading(w, 50.0, p).log_mag();
        worst.see(std::fabs(std::expm1(lhs - log_diag_leading(w, n, 50.0, b))), at(w.name(), n, 50, &p));
      }
  return make("asym.constant_consistency", "off-diagonal leading term at d=0 equals the diagonal one", worst, 1e-10);
}

CheckResult berezin_normalization(const VerifyOptions&) {
  Worst worst;
  const VerticalSymbol one = make_symbol("one");
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4})
      for (double a : {0.0, 5.0, 50.0, 200.0})
        for (double b : {0.5, 1.0, 2.0}) {
          const BerezinValue v = berezin_vertical(w, n, a, one, b);
          worst.see(std::fabs(v.value - 1.0), at(w.name(), n, a) + " b=" + fmt(b));
          if (!v.converged) worst.any_failure = true;
        }
  return make("berezin.normalization", "B(1) = 1", worst, 1e-8);
}

CheckResult berezin_linearity(const VerifyOptions&) {
  Worst worst;
  const VerticalSymbol g1 = make_symbol("exp"), g2 = make_symbol("inv1p");
  const VerticalSymbol mix = linear_combination(0.7, g1, -1.3, g2);
  for (const Weight& w : all_weights())
    for (int n : {2, 3}) {
      const double a = 20.0, b = 1.3;
      const double lhs = berezin_vertical(w, n, a, mix, b).value;
      const double rhs = 0.7 * berezin_vertical(w, n, a, g1, b).value - 1.3 * berezin_vertical(w, n, a, g2, b).value;
      worst.see(std::fabs(lhs - rhs), at(w.name(), n, a));
    }
  return make("berezin.linearity", "B is linear in the symbol", worst, 1e-9);
}

CheckResult berezin_positivity(const VerifyOptions&) {
  double smallest = std::numeric_limits<double>::infinity();
  std::string where;
  for (const Weight& w : all_weights())
    for (const char* s : {"exp", "inv1p", "ratio"})
      for (int n : {2, 3})
        for (double a : {0.0, 5.0, 50.0}) {
          const double v = berezin_vertical(w, n, a, make_symbol(s), 1.0).value;
          if (v < smallest) {
            smallest = v;
            where = at(w.name(), n, a) + " g=" + s;
          }
        }
  return {"berezin.positivity", "nonnegative symbols have nonnegative transforms", smallest, 0.0, smallest >= 0.0,
          where};
}

std::vector<VerticalSymbol> expansion_symbols() { return {make_symbol("exp"), make_symbol("inv1p")}; }

CheckResult berezin_first_order(const VerifyOptions&) {
  Worst worst;
  for (const Weight& w : all_weights())
    for (int n : {2, 3})
      for (double b : {1.0, 2.0})
        for (const VerticalSymbol& g : expansion_symbols()) {
          std::vector<Sample> s;
          for (double a : {80.0, 160.0, 320.0}) s.push_back({a, a * (berezin_vertical(w, n, a, g, b).value - g(b))});
          const double q1 = q1_vertical(w, n, g, b);
          worst.see(rel_diff(richardson_extrapolate(s), q1), at(w.name(), n, -1) + " b=" + fmt(b) + " g=" + g.name);
        }
  // Gamma weight: Q1 g = b^2 g'' + (2-n) b g'.
  const Weight gw = make_builtin_weight("gamma");
  double formula = 0.0;
  for (int n : {2, 3, 4})
    for (double b : {0.5, 1.0, 2.0})
      for (const VerticalSymbol& g : expansion_symbols()) {
        const double r1 = b * b * g(b, 2) + (2 - n) * b * g(b, 1);
        formula = std::max(formula, rel_diff(q1_vertical(gw, n, g, b), r1));
      }
  if (formula > 1e-12) {
    worst.any_failure = true;
    worst.where = "gamma Q1 differs from b^2 g'' + (2-n) b g' by " + fmt(formula);
  }
  return make("berezin.first_order", "Richardson limit of alpha (B g - g) equals Q1 g", worst, 0.02);
}

CheckResult berezin_second_order(const VerifyOptions&) {
  // Worst relative deviation of the fitted alpha^-2 coefficient from Q2;
  // the residual after three terms must decay with order <= -2.5.
  Worst worst;
  const std::vector<double> alphas = {40, 80, 160, 320};
  for (const Weight& w : all_weights())
    for (int n : {2, 3})
      for (double b : {1.0, 2.0})
        for (const VerticalSymbol& g : expansion_symbols()) {
          const double g0 = g(b), q1 = q1_vertical(w, n, g, b), q2 = q2_vertical(w, n, g, b);
          std::vector<Sample> scaled, resid;
          for (double a : alphas) {
            const double bv = berezin_vertical(w, n, a, g, b).value;
            scaled.push_back({a, a * a * (bv - g0 - q1 / a)});
            resid.push_back({a, std::fabs(bv - g0 - q1 / a - q2 / (a * a))});
          }
          const ExpansionFit fit = richardson_fit(scaled, 2);
          const double order = convergence_order(resid);
          const std::string where = at(w.name(), n, -1) + " b=" + fmt(b) + " g=" + g.name;
          if (order > -2.5) {
            worst.any_failure = true;
            worst.where = where + " residual order=" + fmt(order);
          }
          worst.see(rel_diff(fit.coefficients[0], q2), where);
        }
  return make("berezin.second_order", "fitted alpha^-2 coefficient of B g equals Q2 g", worst, 0.05);
}

// Random member of the (u, s) class: a sum of two exponentials and a
// polynomial term, all derivatives exact.
USFunction random_us_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0), rate(-1.2, 0.8);
  const double c1 = 1.0 + 0.5 * coef(rng), c2 = coef(rng), c3 = coef(rng);
  const double p1 = rate(rng), q1 = rate(rng), p2 = rate(rng), q2 = rate(rng);
  return {[=](double u, double s, int i, int j) {
    double v = c1 * std::pow(p1, i) * std::pow(q1, j) * std::exp(p1 * u + q1 * s) +
               c2 * std::pow(p2, i) * std::pow(q2, j) * std::exp(p2 * u + q2 * s);
    // c3 u^2 s
    const double pu[] = {u * u, 2 * u, 2, 0, 0};
    const double ps[] = {s, 1, 0, 0, 0};
    v += c3 * pu[i] * ps[j];
    return v;
  }};
}

CheckResult tilde_laplace_oracle(const VerifyOptions&) {
  Worst worst;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uu(0.5, 2.0), ss(0.0, 1.0);
  for (const Weight& w : all_weights())
    for (int n : {3, 4})
      for (int k = 0; k < 20; ++k) {
        const USFunction f = random_us_function(rng);
        const double u = uu(rng), s = ss(rng);
        const double dense = tilde_laplace_us(w, n, f, u, s);
        const double fd = tilde_laplace_full_fd(w, n, f, u, s);
        worst.see(rel_diff(dense, fd), w.name() + " n=" + std::to_string(n) + " u=" + fmt(u) + " s=" + fmt(s));
      }
  // At s = 0 a vertical symbol must reproduce Q1.
  double anchor = 0.0;
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4})
      for (double b : {0.5, 1.0, 2.0})
        for (const VerticalSymbol& g : expansion_symbols()) {
          anchor = std::max(anchor, rel_diff(tilde_laplace_us(w, n, USFunction::from_vertical(g), b, 0.0),
                                             q1_vertical(w, n, g, b)));
        }
  if (anchor > 1e-9) {
    worst.any_failure = true;
    worst.where = "s=0 anchor differs from Q1 by " + fmt(anchor);
  }
  return make("berezin.tilde_laplace_oracle", "metric Laplacian agrees with full-coordinate finite differences",
              worst, 1e-5);
}

CheckResult det_identity(const VerifyOptions&) {
  Worst worst;
  for (const Weight& w : all_weights())
    for (int n : {2, 3, 4, 5})
      for (double b : {0.5, 1.0, 2.0}) {
        const double e_psi = std::exp(psi(w, n, b, 0));
        const double direct = phi(w, b, 2) / 4.0 * std::pow(-phi(w, b, 1), n - 2);
        const double det = siegel_metric(w, n, b, 0.0).determinant().real();
        const MetricInverseAtOrigin inv = siegel_metric_inverse_at_origin(w, n, b);
        const double inv_prod = std::pow(inv.horizontal, n - 2) * inv.corner;
        const std::string where = w.name() + " n=" + std::to_string(n) + " b=" + fmt(b);
        worst.see(rel_diff(e_psi, direct), where);
        worst.see(rel_diff(det, e_psi), where + " (metric determinant)");
        worst.see(std::fabs(inv_prod * e_psi - 1.0), where + " (inverse product)");
      }
  return make("berezin.det_identity", "exp(psi) = (phi''/4)(-phi')^{n-2} = det g", worst, 1e-12);
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["desc"] = c.desc;
    e["value"] = std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nlohmann::ordered_json(nullptr);
    e["tol"] = c.tol;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  j["verdict"] = all_pass() ? "pass" : "fail";
  return j.dump(2);
}

const std::vector<CheckSpec>& verify_checks() {
  using L = VerifyLevel;
  static const std::vector<CheckSpec> checks = {
      {"kernel.gamma_exact", L::quick, 1, gamma_exactness},
      {"kernel.n2_diagonal_chain", L::quick, 2, n2_diagonal_chain},
      {"kernel.holomorphic_slice", L::quick, 3, holomorphic_slice},
      {"kernel.diagonal_identity", L::quick, 4, diagonal_identity},
      {"kernel.cross_route", L::full, 5, cross_route},
      {"asym.diag_constant", L::full, 6, diag_constant},
      {"asym.offdiag_gamma", L::quick, 7, offdiag_gamma},
      {"berezin.normalization", L::full, 8, berezin_normalization},
      {"berezin.first_order", L::full, 9, berezin_first_order},
      {"berezin.second_order", L::full, 10, berezin_second_order},
      {"berezin.tilde_laplace_oracle", L::full, 11, tilde_laplace_oracle},
      {"numerics.hyp0f1_cos", L::quick, 12, hyp0f1_identity},
      {"kernel.route_equivalence", L::full, 0, route_equivalence},
      {"kernel.symmetry", L::full, 0, kernel_symmetry},
      {"kernel.positivity", L::full, 0, kernel_positivity},
      {"kernel.fourier_consistency", L::full, 0, fourier_consistency},
      {"berezin.linearity", L::full, 0, berezin_linearity},
      {"berezin.positivity", L::full, 0, berezin_positivity},
      {"berezin.det_identity", L::quick, 0, det_identity},
      {"asym.diag_ratio_order", L::full, 0, diag_ratio_order},
      {"asym.offdiag_order", L::quick, 0, offdiag_order},
      {"asym.constant_consistency", L::quick, 0, constant_consistency},
  };
  return checks;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  VerifyReport report;
  for (const CheckSpec& spec : verify_checks()) {
    if (opts.level == VerifyLevel::quick && spec.level != VerifyLevel::quick) continue;
    CheckResult r;
    try {
      r = spec.run(opts);
    } catch (const std::exception& e) {
      r = {spec.id, "check raised an error", std::numeric_limits<double>::quiet_NaN(), 0.0, false, e.what()};
    }
    report.checks.push_back(std::move(r));
  }
  return report;
}

}  // namespace bergman
