#include <doctest.h>

#include <cmath>

#include "bergman/error.hpp"
#include "bergman/numerics/special.hpp"
#include "bergman/weight_transform.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

// rho~ for expcap is a Beta function: int (1 - e^{-y})^a e^{-2ty} dy = B(2t, a + 1).
double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

}  // namespace

TEST_CASE("rho~ examples") {
  const Weight g = make_builtin_weight("gamma");
  CHECK(log_rho_tilde(g, 0.0, 0.5).log_value == Approx(0.0).epsilon(1e-13));
  CHECK(log_rho_tilde(g, 3.0, 1.0).log_value == Approx(std::log(0.375)).epsilon(1e-13));
  const Weight e = make_builtin_weight("expcap");
  CHECK(log_rho_tilde(e, 1.0, 1.0).log_value == Approx(std::log(1.0 / 6.0)).epsilon(1e-13));
}

TEST_CASE("gamma closed form") {
  CHECK(rho_tilde_gamma_closed(0.0, 0.5) == Approx(0.0).epsilon(1e-15));
  CHECK(rho_tilde_gamma_closed(1.0, 1.0) == Approx(std::log(0.25)).epsilon(1e-15));
  CHECK(rho_tilde_gamma_closed(20.0, 2.0) == Approx(13.223440).epsilon(1e-6));
  CHECK(rho_tilde_gamma_closed(20.0, 2.0) == Approx(log_gamma(21.0) - 21.0 * std::log(4.0)).epsilon(1e-15));
  CHECK_THROWS_AS(rho_tilde_gamma_closed(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(rho_tilde_gamma_closed(-1.0, 1.0), DomainError);

  const Weight g = make_builtin_weight("gamma");
  for (double alpha : {0.0, 1.0, 5.0, 50.0, 400.0})
    for (double t : {0.01, 0.5, 3.0, 200.0}) {
      const RhoTildeEval r = log_rho_tilde(g, alpha, t);
      CHECK(r.converged);
      CHECK(std::fabs(std::expm1(r.log_value - rho_tilde_gamma_closed(alpha, t))) < 1e-12);
    }
}

TEST_CASE("expcap rho~ equals a Beta function") {
  const Weight e = make_builtin_weight("expcap");
  for (double alpha : {0.0, 2.5, 30.0, 300.0})
    for (double t : {0.05, 0.7, 10.0}) {
      const RhoTildeEval r = log_rho_tilde(e, alpha, t);
      CHECK(std::fabs(std::expm1(r.log_value - log_beta(2 * t, alpha + 1))) < 1e-12);
      CHECK(r.err_est < 1e-11);
    }
}

TEST_CASE("logplus rho~ against a frozen high-precision value") {
  // int log(1+y)^3 e^{-2y} dy, 40-digit adaptive quadrature.
  const Weight l = make_builtin_weight("logplus");
  CHECK(log_rho_tilde(l, 3.0, 1.0).log_value == Approx(-2.5438509439878370).epsilon(1e-13));
}

TEST_CASE("complete monotonicity spot check") {
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (double alpha : {0.0, 5.0, 50.0}) {
      double prev2 = 0.0, prev1 = 0.0;
      for (int i = 0; i < 40; ++i) {
        const double t = 0.2 + 0.1 * i;
        const double v = std::exp(log_rho_tilde(w, alpha, t).log_value);
        if (i >= 1) CHECK(v < prev1);
        if (i >= 2) CHECK(v - 2 * prev1 + prev2 > 0.0);
        prev2 = prev1;
        prev1 = v;
      }
    }
  }
}

TEST_CASE("weighted Laplace transform of a symbol") {
  const Weight g = make_builtin_weight("gamma");
  // int y^a e^{-y} e^{-2ty} dy = Gamma(a+1) / (2t+1)^{a+1}
  const QuadratureResult q = weighted_laplace(g, 4.0, 0.75, [](double y) { return LogComplex(-y, 0.0); }, 1e-13);
  CHECK(q.log_value().log_mag() == Approx(log_gamma(5.0) - 5.0 * std::log(2.5)).epsilon(1e-13));
}

TEST_CASE("argument checks") {
  const Weight g = make_builtin_weight("gamma");
  CHECK_THROWS_AS(log_rho_tilde(g, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(log_rho_tilde(g, -0.5, 1.0), DomainError);
}

TEST_CASE("cache never changes values") {
  const Weight l = make_builtin_weight("logplus");
  const RhoTildeEval a = log_rho_tilde(l, 7.0, 0.3);
  const RhoTildeEval b = log_rho_tilde(l, 7.0, 0.3);
  clear_rho_tilde_cache();
  const RhoTildeEval c = log_rho_tilde(l, 7.0, 0.3);
  CHECK(a.log_value == b.log_value);
  CHECK(a.log_value == c.log_value);
}
