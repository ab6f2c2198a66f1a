#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bergman/error.hpp"
#include "bergman/weights.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
const double kE = std::exp(1.0);

Weight constant_weight() {
  WeightProfile p;
  p.name = "const";
  p.derivative = [](double, int k) { return k == 0 ? 1.0 : 0.0; };
  p.log_rho = [](double) { return 0.0; };
  return Weight(p);
}

}  // namespace

TEST_CASE("built-in weights evaluate their defining formulas") {
  const Weight g = make_builtin_weight("gamma");
  CHECK(g.rho(2.5) == 2.5);
  CHECK(g.rho(2.5, 1) == 1.0);
  CHECK(g.rho(2.5, 2) == 0.0);

  const Weight e = make_builtin_weight("expcap");
  CHECK(e.rho(1.0) == Approx(1 - 1 / kE).epsilon(1e-15));
  CHECK(e.rho(1.0) == Approx(0.632121).epsilon(1e-6));

  const Weight l = make_builtin_weight("logplus");
  CHECK(l.rho(3.0, 1) == Approx(0.25).epsilon(1e-15));
  CHECK(l.rho(1e-12, 1) == Approx(1.0).epsilon(1e-11));
}

TEST_CASE("unknown weight names are rejected with the valid list") {
  try {
    (void)make_builtin_weight("cauchy");
    FAIL("expected DomainError");
  } catch (const DomainError& err) {
    const std::string what = err.what();
    for (const auto& name : builtin_weight_names()) CHECK(what.find(name) != std::string::npos);
  }
}

TEST_CASE("derivatives match central differences of the next lower order") {
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (int i = 0; i < 20; ++i) {
      const double y = 0.05 * std::pow(1.35, i);
      const double h = 1e-5 * std::max(1.0, y);
      for (int k = 1; k <= 4; ++k) {
        const double fd = (w.rho(y + h, k - 1) - w.rho(y - h, k - 1)) / (2 * h);
        const double exact = w.rho(y, k);
        CHECK(std::fabs(fd - exact) <= 1e-6 * std::max(1e-3, std::fabs(exact)));
      }
      CHECK(w.log_rho(y) == Approx(std::log(w.rho(y))).epsilon(1e-14));
    }
  }
}

TEST_CASE("suitability report") {
  const SuitabilityReport g = check_suitability(make_builtin_weight("gamma"), 10.0, 64);
  CHECK(g.all_pass());

  const SuitabilityReport e = check_suitability(make_builtin_weight("expcap"), 10.0, 64);
  CHECK(e.all_pass());
  // (rho'/rho)' = -e^y / (e^y - 1)^2 < 0 everywhere.
  const SuitabilityCheck* lc = e.find("log_concave");
  REQUIRE(lc != nullptr);
  CHECK(lc->worst_margin < 0.0);
  CHECK(lc->worst_margin == Approx(-std::exp(10.0) / std::pow(std::expm1(10.0), 2)).epsilon(1e-3));

  CHECK(check_suitability(make_builtin_weight("logplus"), 10.0, 64).all_pass());

  const SuitabilityReport c = check_suitability(constant_weight(), 10.0, 64);
  CHECK_FALSE(c.all_pass());
  REQUIRE(c.find("rho_zero_limit") != nullptr);
  CHECK_FALSE(c.find("rho_zero_limit")->pass);

  // Every condition appears exactly once.
  for (const char* cond : {"rho_zero_limit", "rho_prime_zero_positive", "monotone", "log_concave", "non_decay", "smooth"}) {
    int count = 0;
    for (const auto& chk : g.checks) count += chk.condition == cond;
    CHECK(count == 1);
  }
}

TEST_CASE("phi derivatives") {
  const Weight g = make_builtin_weight("gamma");
  CHECK(phi(g, 1.0, 0) == 0.0);
  CHECK(phi(g, 2.0, 1) == Approx(-0.5));
  CHECK(phi(g, 2.0, 2) == Approx(0.25));
  CHECK_THROWS_AS(phi(g, 0.0, 1), DomainError);
  CHECK_THROWS_AS(phi(g, -1.0, 1), DomainError);
}

TEST_CASE("psi for the gamma weight is -log 4 - n log y") {
  const Weight g = make_builtin_weight("gamma");
  CHECK(psi(g, 2, 1.0, 0) == Approx(-std::log(4.0)));
  CHECK(psi(g, 3, 2.0, 1) == Approx(-1.5));
  CHECK(psi(g, 2, 1.0, 2) == Approx(2.0));
  for (int n : {2, 3, 5})
    for (double y : {0.3, 1.7}) {
      CHECK(psi(g, n, y, 0) == Approx(-std::log(4.0) - n * std::log(y)).epsilon(1e-13));
      CHECK(psi(g, n, y, 1) == Approx(-n / y).epsilon(1e-13));
      CHECK(psi(g, n, y, 2) == Approx(n / (y * y)).epsilon(1e-13));
    }
}

TEST_CASE("psi derivatives match finite differences") {
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (int n : {2, 4})
      for (double y : {0.4, 1.0, 3.0}) {
        const double h = 1e-5;
        CHECK(psi(w, n, y, 1) == Approx((psi(w, n, y + h, 0) - psi(w, n, y - h, 0)) / (2 * h)).epsilon(1e-7));
        CHECK(psi(w, n, y, 2) == Approx((psi(w, n, y + h, 1) - psi(w, n, y - h, 1)) / (2 * h)).epsilon(1e-7));
      }
  }
}

TEST_CASE("Q factor") {
  const Weight g = make_builtin_weight("gamma");
  CHECK(q_factor(g, 2, 1.0) == Approx(1.0));
  CHECK(q_factor(g, 4, 2.0) == Approx(0.0625));
  const Weight e = make_builtin_weight("expcap");
  CHECK(q_factor(e, 3, 1.0) == Approx(kE / std::pow(kE - 1, 3)).epsilon(1e-13));
  CHECK(q_factor(e, 3, 1.0) == Approx(0.5358109).epsilon(1e-6));
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (int n : {2, 3, 4, 6})
      for (double b : {0.2, 1.0, 4.0}) {
        CHECK(q_factor(w, n, b) == Approx(std::pow(-phi(w, b, 1), n - 2) * phi(w, b, 2)).epsilon(1e-12));
        CHECK(log_q_factor(w, n, b) == Approx(std::log(q_factor(w, n, b))).epsilon(1e-13));
      }
  }
  CHECK_THROWS_AS(q_factor(g, 2, 0.0), DomainError);
}

TEST_CASE("complex weight symbol") {
  const Weight g = make_builtin_weight("gamma");
  const LogComplex one = weight_complex(g, 2, {1.0, 0.0}, 3.0);
  CHECK(one.log_mag() == Approx(0.0).epsilon(1e-15));
  CHECK(one.phase() == Approx(0.0).epsilon(1e-15));
  CHECK(weight_complex(g, 2, {2.0, 0.0}, 0.0).to_complex().real() == Approx(0.25));
  const LogComplex v = weight_complex(g, 2, {1.0, 1.0}, 1.0);
  CHECK(v.log_mag() == Approx(-1.5 * std::log(2.0)));
  CHECK(v.phase() == Approx(-0.75 * kPi));
  CHECK_THROWS_AS(weight_complex(g, 2, {-1.0, 0.5}, 1.0), DomainError);

  // Real T reproduces the real-valued formulas.
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    const LogComplex r = weight_complex(w, 3, {1.3, 0.0}, 7.0);
    CHECK(r.log_mag() == Approx(-7.0 * w.log_rho(1.3) + log_q_factor(w, 3, 1.3)).epsilon(1e-13));
  }
}

TEST_CASE("complex extension is analytic") {
  // Cauchy-Riemann on log rho: d/dT along real and imaginary directions agree.
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    const std::complex<double> t(0.9, -0.4);
    const double h = 1e-6;
    const auto dx = (w.complex_log_rho(t + h) - w.complex_log_rho(t - h)) / (2 * h);
    const auto dy = (w.complex_log_rho(t + std::complex<double>(0, h)) - w.complex_log_rho(t - std::complex<double>(0, h))) /
                    std::complex<double>(0, 2 * h);
    CHECK(std::abs(dx - dy) < 1e-8);
    CHECK(std::abs(dx - w.complex_log_d1(t)) < 1e-8);
  }
}
