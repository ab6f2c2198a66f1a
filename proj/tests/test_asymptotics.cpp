#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bergman/asymptotics.hpp"
#include "bergman/error.hpp"
#include "bergman/kernels.hpp"

using namespace bergman;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Sample> sample(std::initializer_list<double> alphas, double (*f)(double)) {
  std::vector<Sample> out;
  for (double a : alphas) out.push_back({a, f(a)});
  return out;
}

}  // namespace

TEST_CASE("diagonal leading constant") {
  CHECK(diag_leading_constant(2) == Approx(1 / (2 * kPi)).epsilon(1e-14));
  CHECK(diag_leading_constant(3) == Approx(1 / (8 * kPi)).epsilon(1e-14));
  const Weight g = make_builtin_weight("gamma");
  CHECK(diag_leading(g, 2, 40, 1.0) == Approx(40 / (2 * kPi)).epsilon(1e-14));
  CHECK(diag_leading(g, 3, 40, 1.0) == Approx(1600 / (8 * kPi)).epsilon(1e-14));
  CHECK(log_diag_leading(g, 3, 900, 0.1) == Approx(std::log(diag_leading_constant(3)) + 2 * std::log(900.0) +
                                                   900 * std::log(10.0) + 3 * std::log(10.0))
                                                .epsilon(1e-14));
}

TEST_CASE("off-diagonal leading term") {
  const Weight g = make_builtin_weight("gamma");
  // alpha/(4 pi) 2 Re[T^{-alpha-2}] at T = 1 - i/2, divided by alpha.
  const LogComplex v = offdiag_leading(g, 1.0, {2, 1.0, 1.0, 1.0});
  const std::complex<double> t(1.0, -0.5);
  CHECK(v.to_complex().real() == Approx(2 * std::real(std::pow(t, -3.0)) / (4 * kPi)).epsilon(1e-13));
  const LogComplex v0 = offdiag_leading(g, 1e-300, {2, 1.0, 1.0, 1.0});
  CHECK(v0.to_complex().real() / 1e-300 == Approx(0.0763943727).epsilon(1e-9));

  // d = 0 and y = b reduces to the diagonal leading term.
  for (const auto& name : builtin_weight_names()) {
    const Weight w = make_builtin_weight(name);
    for (int n : {2, 3, 4, 5})
      for (double b : {0.5, 2.0}) {
        const LogComplex o = offdiag_leading(w, 50.0, {n, 0.0, b, b});
        CHECK(o.log_mag() == Approx(log_diag_leading(w, n, 50.0, b)).epsilon(1e-12));
      }
  }
}

TEST_CASE("exact over leading tends to one like 1/alpha for the gamma weight") {
  for (int n : {2, 4})
    for (double d : {0.25, 0.5}) {
      const KernelPoint p{n, d, 0.7, 1.2};
      std::vector<Sample> err;
      for (double a : {25.0, 50.0, 100.0, 200.0, 400.0}) {
        const KernelValue ex = n == 2 ? r_alpha_gamma_closed_n2(a, p) : r_alpha_gamma_closed(a, p);
        const LogComplex lead = offdiag_leading(make_builtin_weight("gamma"), a, p);
        err.push_back({a, std::fabs(std::expm1(ex.log_value.log_mag() - lead.log_mag()))});
      }
      CHECK(convergence_order(err) == Approx(-1.0).epsilon(0.2));
    }
}

TEST_CASE("richardson_fit recovers exact models") {
  const ExpansionFit f = richardson_fit(sample({10, 20, 40, 80}, [](double a) { return 1 + 2 / a; }), 1);
  CHECK(f.coefficients[0] == Approx(1.0).epsilon(1e-10));
  CHECK(f.coefficients[1] == Approx(2.0).epsilon(1e-10));
  CHECK(f.well_conditioned);
  CHECK(f.residual_norm < 1e-12);

  const ExpansionFit g = richardson_fit(sample({10, 20, 40, 80}, [](double a) { return (a + 1) / a; }), 1);
  CHECK(g.coefficients[0] == Approx(1.0).epsilon(1e-10));
  CHECK(g.coefficients[1] == Approx(1.0).epsilon(1e-10));

  const ExpansionFit h =
      richardson_fit(sample({10, 20, 40, 80, 160}, [](double a) { return 3 - 1 / a + 5 / (a * a); }), 2);
  CHECK(h.coefficients[2] == Approx(5.0).epsilon(1e-8));
  CHECK(h.uncertainty.size() == 3);

  // Exact gamma diagonal: alpha^{-1} (alpha + 1)/(2 pi) = 1/(2 pi) + (1/(2 pi))/alpha.
  const Weight gw = make_builtin_weight("gamma");
  std::vector<Sample> s;
  for (double a : {20.0, 40.0, 80.0, 160.0}) s.push_back({a, r_alpha_diagonal(gw, 2, a, 1.0).real() / a});
  const ExpansionFit d = richardson_fit(s, 1);
  CHECK(d.coefficients[0] == Approx(1 / (2 * kPi)).epsilon(1e-10));
  CHECK(d.coefficients[1] == Approx(1 / (2 * kPi)).epsilon(1e-9));
}

TEST_CASE("richardson_fit flags narrow designs and rejects short ones") {
  const ExpansionFit f =
      richardson_fit(sample({1000, 1000.001, 1000.002, 1000.003, 1000.004}, [](double a) { return 1 / a; }), 3);
  CHECK_FALSE(f.well_conditioned);
  CHECK(f.condition > kFitConditionLimit);
  CHECK_THROWS_AS(richardson_fit(sample({10, 20}, [](double a) { return a; }), 1), DomainError);
  CHECK_THROWS_AS(richardson_fit(sample({20, 10, 40}, [](double a) { return a; }), 1), DomainError);
}

TEST_CASE("richardson_extrapolate") {
  CHECK(richardson_extrapolate(sample({10, 20, 40}, [](double a) { return 2 + 3 / a - 1 / (a * a); })) ==
        Approx(2.0).epsilon(1e-12));
}

TEST_CASE("convergence_order") {
  CHECK(convergence_order(sample({10, 20, 40, 80}, [](double a) { return 3 / a; })) == Approx(-1.0).epsilon(1e-12));
  CHECK(convergence_order(sample({10, 20, 40, 80}, [](double a) { return 0.5 / (a * a); })) ==
        Approx(-2.0).epsilon(1e-12));
  CHECK(convergence_order(sample({10, 20, 40, 80}, [](double a) { return (1 + 1 / a) / a; })) ==
        Approx(-1.0).epsilon(0.1));
  const Weight g = make_builtin_weight("gamma");
  std::vector<Sample> err;
  for (double a : {20.0, 40.0, 80.0, 160.0})
    err.push_back({a, std::fabs(r_alpha_diagonal(g, 2, a, 1.0).real() / diag_leading(g, 2, a, 1.0) - 1)});
  CHECK(convergence_order(err) == Approx(-1.0).epsilon(1e-8));
  CHECK_THROWS_AS(convergence_order(sample({10, 20, 40}, [](double) { return 0.0; })), DomainError);
}
