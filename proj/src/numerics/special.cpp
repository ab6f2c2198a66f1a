#include "bergman/numerics/special.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bergman/error.hpp"

namespace bergman {

namespace {

// Beyond this argument the Hankel series is used (for small orders).
constexpr double kHankelThreshold = 35.0;

double hyp0f1_series(double b, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 500; ++k) {
    term *= z / ((b + k) * (k + 1));
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

// 0F1(nu+1; -x^2/4) by backward recurrence. The unnormalised sequence
// j_k ~ J_{nu+k}(x) is normalised with
//   (x/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(x),
// and dividing through by Gamma(nu+1) turns the quotient directly into 0F1.
double hyp0f1_miller(double nu, double x) {
  const int top = 2 * static_cast<int>(std::ceil((x + 30.0 + 4.0 * std::cbrt(x) + std::fabs(nu)) / 2.0));
  std::vector<double> j(top + 2, 0.0);
  j[top + 1] = 0.0;
  j[top] = 1e-30;
  for (int k = top; k >= 1; --k) {
    j[k - 1] = 2.0 * (nu + k) / x * j[k] - j[k + 1];
    if (std::fabs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= top; ++i) j[i] *= 1e-250;
    }
  }
  double a = 1.0;  // Gamma(nu+k) / (k! Gamma(nu+1))
  double norm = j[0];
  for (int k = 1; 2 * k <= top; ++k) {
    if (k > 1) a *= (nu + k - 1) / k;
    norm += (nu + 2.0 * k) * a * j[2 * k];
  }
  return j[0] / norm;
}

double bessel_j_hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::fabs(term);
    if (mag > last && k > 2) break;  // series started to diverge
    last = mag;
    // a_k / x^k enters P for even k, Q for odd k, with alternating signs.
    const int r = k % 4;
    if (r == 0) p += term;
    else if (r == 1) q += term;
    else if (r == 2) p -= term;
    else q -= term;
    if (mag < 1e-17) break;
  }
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

bool use_hankel(double nu, double x) { return x >= kHankelThreshold && x > 2.0 * nu * nu; }

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  return std::lgamma(x);
}

double sphere_area(int n) {
  if (n <= 0) throw DomainError("sphere_area: dimension must be >= 1, got " + std::to_string(n));
  const double half = 0.5 * n;
  return 2.0 * std::exp(half * std::log(std::numbers::pi) - log_gamma(half));
}

double hyp0f1(double b, double z) {
  if (!(b > 0.0)) throw DomainError("hyp0f1: parameter b must be positive, got " + std::to_string(b));
  if (z > 0.0) throw DomainError("hyp0f1: only z <= 0 is supported, got " + std::to_string(z));
  if (z == 0.0) return 1.0;
  const double x = 2.0 * std::sqrt(-z);
  if (x <= 2.0) return hyp0f1_series(b, z);
  const double nu = b - 1.0;
  if (use_hankel(nu, x)) {
    const double log_pref = log_gamma(b) - nu * std::log(0.5 * x);
    return std::exp(log_pref) * bessel_j_hankel(nu, x);
  }
  return hyp0f1_miller(nu, x);
}

double bessel_j(double nu, double x) {
  if (!(nu > -1.0)) throw DomainError("bessel_j: order must exceed -1");
  if (x < 0.0) throw DomainError("bessel_j: argument must be >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (use_hankel(nu, x)) return bessel_j_hankel(nu, x);
  const double log_pref = nu * std::log(0.5 * x) - log_gamma(nu + 1.0);
  const double f = x <= 2.0 ? hyp0f1_series(nu + 1.0, -0.25 * x * x) : hyp0f1_miller(nu, x);
  return std::exp(log_pref) * f;
}

}  // namespace bergman
