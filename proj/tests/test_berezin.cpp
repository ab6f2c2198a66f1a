#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/berezin.hpp"
#include "bergman/error.hpp"
#include "bergman/weights.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

const double kE = std::exp(1.0);

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

USFunction random_us_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0), rate(-1.2, 0.8);
  const double c1 = 1.0 + 0.5 * coef(rng), c2 = coef(rng), c3 = coef(rng);
  const double p1 = rate(rng), q1 = rate(rng), p2 = rate(rng), q2 = rate(rng);
  return {[=](double u, double s, int i, int j) {
    const double e = c1 * std::pow(p1, i) * std::pow(q1, j) * std::exp(p1 * u + q1 * s) +
                     c2 * std::pow(p2, i) * std::pow(q2, j) * std::exp(p2 * u + q2 * s);
    const double pu[] = {u * u, 2 * u, 2, 0, 0};
    const double ps[] = {s, 1, 0, 0, 0};
    return e + c3 * pu[i] * ps[j];
  }};
}

}  // namespace

TEST_CASE("symbols and their derivatives") {
  for (const char* name : {"one", "exp", "exp(2.5)", "inv1p", "ratio"}) {
    const VerticalSymbol g = make_symbol(name);
    for (double y : {0.2, 1.0, 3.5}) {
      const double h = 1e-5;
      for (int k = 1; k <= 4; ++k)
        CHECK(std::fabs((g(y + h, k - 1) - g(y - h, k - 1)) / (2 * h) - g(y, k)) < 1e-6 * std::max(1.0, std::fabs(g(y, k))));
      CHECK(std::fabs(g(y)) <= g.bound);
    }
  }
  CHECK(make_symbol("exp(2)")(1.0) == Approx(std::exp(-2.0)));
  CHECK_THROWS_AS(make_symbol("sin"), DomainError);
  CHECK_THROWS_AS(make_symbol("exp(-1)"), DomainError);

  const VerticalSymbol mix = linear_combination(2.0, make_symbol("exp"), -3.0, make_symbol("inv1p"));
  CHECK(mix(0.7, 2) == Approx(2.0 * std::exp(-0.7) - 3.0 * 2.0 / std::pow(1.7, 3)));
}

TEST_CASE("Berezin transform of a constant is the constant") {
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (int n : {2, 3, 4})
      for (double alpha : {0.0, 10.0, 200.0})
        for (double b : {0.5, 2.0}) {
          const BerezinValue v = berezin_vertical(w, n, alpha, make_symbol("one"), b);
          CHECK(v.converged);
          CHECK(std::fabs(v.value - 1.0) < 1e-8);
        }
  }
}

TEST_CASE("Berezin transform against frozen high-precision values") {
  // expcap: the inner integral is B(2r + c, alpha + 1), so the transform is a
  // ratio of one-dimensional integrals; 40-digit mpmath evaluation.
  const Weight e = make_builtin_weight("expcap");
  CHECK(rel(berezin_vertical(e, 2, 10, make_symbol("exp"), 1.0).value, 0.40319569499075595) < 1e-12);
  CHECK(rel(berezin_vertical(e, 3, 10, make_symbol("exp(2)"), 0.5).value, 0.43506830675738939) < 1e-12);
}

TEST_CASE("Berezin transform is linear and order preserving") {
  const Weight l = make_builtin_weight("logplus");
  const VerticalSymbol a = make_symbol("exp"), b = make_symbol("ratio");
  const double va = berezin_vertical(l, 3, 20, a, 1.2).value;
  const double vb = berezin_vertical(l, 3, 20, b, 1.2).value;
  const double vab = berezin_vertical(l, 3, 20, linear_combination(0.3, a, -1.7, b), 1.2).value;
  CHECK(std::fabs(vab - (0.3 * va - 1.7 * vb)) < 1e-10);
  CHECK(va > 0.0);
  CHECK(vb > 0.0);
  CHECK(vb < 1.0);
}

TEST_CASE("Berezin transform approaches the symbol") {
  const Weight g = make_builtin_weight("gamma");
  const VerticalSymbol s = make_symbol("exp");
  double prev = 1.0;
  for (double alpha : {20.0, 80.0, 320.0}) {
    const double dev = std::fabs(berezin_vertical(g, 2, alpha, s, 1.0).value - 1 / kE);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 3e-3);
}

TEST_CASE("first-order operator") {
  const Weight g = make_builtin_weight("gamma");
  CHECK(q1_vertical(g, 3, make_symbol("exp"), 2.0) == Approx(6 * std::exp(-2.0)).epsilon(1e-13));
  for (const auto& name : builtin_weight_names())
    CHECK(q1_vertical(make_builtin_weight(name), 3, make_symbol("one"), 1.3) == 0.0);
  // For rho = y the operator is (2 - n) y f' + y^2 f''.
  for (int n : {2, 3, 4})
    for (const char* sym : {"exp", "inv1p", "ratio"}) {
      const VerticalSymbol f = make_symbol(sym);
      for (double y : {0.5, 1.0, 2.0})
        CHECK(std::fabs(q1_vertical(g, n, f, y) - ((2 - n) * y * f(y, 1) + y * y * f(y, 2))) < 1e-12);
    }
}

TEST_CASE("second-order operator") {
  const Weight g = make_builtin_weight("gamma");
  const VerticalSymbol s = make_symbol("exp");
  CHECK(q2_curvature_term(g, 2, s, 1.0) == Approx(1 / kE).epsilon(1e-13));
  // Alpha^{-2} coefficients of the exact gamma-weight transform, from a
  // 40-digit evaluation up to alpha = 1280.
  CHECK(q2_vertical_analytic(g, 2, s, 1.0) == Approx(-1.5 / kE).epsilon(1e-12));
  CHECK(q2_vertical_analytic(g, 3, s, 1.0) == Approx(-4.5 / kE).epsilon(1e-12));
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    CHECK(q2_vertical(w, 3, make_symbol("one"), 1.0) == 0.0);
    for (int n : {2, 3})
      for (const char* sym : {"exp", "inv1p"}) {
        const VerticalSymbol f = make_symbol(sym);
        const double fd = q2_vertical(w, n, f, 1.4);
        const double exact = q2_vertical_analytic(w, n, f, 1.4);
        CHECK(std::fabs(fd - exact) < 1e-5 * std::max(1.0, std::fabs(exact)));
        CHECK(q2_vertical_as_printed(w, n, f, 1.4) ==
              Approx(exact + 2 * q2_curvature_term(w, n, f, 1.4)).epsilon(1e-12));
      }
  }
}

TEST_CASE("metric at the origin") {
  const Weight g = make_builtin_weight("gamma");
  const MetricInverseAtOrigin m1 = siegel_metric_inverse_at_origin(g, 4, 1.0);
  CHECK(m1.horizontal == Approx(1.0));
  CHECK(m1.corner == Approx(4.0));
  const MetricInverseAtOrigin m2 = siegel_metric_inverse_at_origin(g, 4, 2.0);
  CHECK(m2.horizontal == Approx(2.0));
  CHECK(m2.corner == Approx(16.0));

  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    const Eigen::MatrixXcd m = siegel_metric(w, 4, 1.3, 0.0);
    CHECK(std::abs(m(0, 0) - std::complex<double>(-phi(w, 1.3, 1))) < 1e-14);
    CHECK(std::abs(m(1, 1) - std::complex<double>(-phi(w, 1.3, 1))) < 1e-14);
    CHECK(std::abs(m(2, 2) - std::complex<double>(phi(w, 1.3, 2) / 4)) < 1e-14);
    CHECK(std::abs(m(0, 2)) < 1e-15);
  }
}

TEST_CASE("metric is Hermitian and positive definite") {
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (int n : {3, 5})
      for (double s : {0.0, 0.4, 2.0}) {
        const Eigen::MatrixXcd m = siegel_metric(w, n, 0.8, s);
        CHECK((m - m.adjoint()).norm() < 1e-14 * m.norm());
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
      }
  }
}

TEST_CASE("invariant Laplacian") {
  const Weight l = make_builtin_weight("logplus");
  const USFunction constant{[](double, double, int i, int j) { return i + j == 0 ? 2.5 : 0.0; }};
  CHECK(tilde_laplace_us(l, 4, constant, 1.0, 0.3) == 0.0);

  // At s = 0 a vertical symbol reproduces the first-order operator.
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (int n : {2, 3, 4})
      for (const char* sym : {"exp", "inv1p"}) {
        const VerticalSymbol g = make_symbol(sym);
        const double lap = tilde_laplace_us(w, n, USFunction::from_vertical(g), 1.1, 0.0);
        CHECK(std::fabs(lap - q1_vertical(w, n, g, 1.1)) < 1e-9 * std::max(1.0, std::fabs(lap)));
      }
  }

  // Dense solve, closed form and real-coordinate finite differences agree.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uu(0.5, 2.0), ss(0.05, 1.0);
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (int n : {3, 4})
      for (int k = 0; k < 5; ++k) {
        const USFunction f = random_us_function(rng);
        const double u = uu(rng), s = ss(rng);
        const double dense = tilde_laplace_us(w, n, f, u, s);
        CHECK(dense == Approx(tilde_laplace_us_closed(w, n, f, u, s)).epsilon(1e-12));
        CHECK(rel(dense, tilde_laplace_full_fd(w, n, f, u, s)) < 1e-5);
      }
  }
  CHECK_THROWS_AS(tilde_laplace_us(l, 2, constant, 1.0, 0.5), DomainError);
}

TEST_CASE("argument checks") {
  const Weight g = make_builtin_weight("gamma");
  CHECK_THROWS_AS(berezin_vertical(g, 2, 1.0, make_symbol("exp"), 0.0), DomainError);
  CHECK_THROWS_AS(berezin_vertical(g, 1, 1.0, make_symbol("exp"), 1.0), DomainError);
  CHECK_THROWS_AS(q1_vertical(g, 2, make_symbol("exp"), -1.0), DomainError);
}
