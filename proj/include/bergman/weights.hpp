#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bergman/numerics/log_complex.hpp"

namespace bergman {

/// Analytic description of a vertical weight profile rho on (0, inf).
///
/// Only `derivative` is mandatory. The log forms exist so that built-ins can
/// supply cancellation-free expressions; the complex members hold the
/// analytic continuation to Re T > 0 and are left empty for ad hoc weights.
struct WeightProfile {
  std::string name;
  std::function<double(double y, int k)> derivative;
  std::function<double(double y)> log_rho;
  std::function<std::complex<double>(std::complex<double>)> complex_log_rho;
  /// (rho'/rho)(T)
  std::function<std::complex<double>(std::complex<double>)> complex_log_d1;
  /// (rho'/rho)'(T)
  std::function<std::complex<double>(std::complex<double>)> complex_log_d2;
};

/// Immutable vertical weight. Copies share the same identity (used as the
/// memoisation key for weighted Laplace transforms).
class Weight {
 public:
  explicit Weight(WeightProfile profile);

  const std::string& name() const { return profile_.name; }
  std::uint64_t id() const { return id_; }
  int eval_order() const { return 4; }

  /// k-th derivative of rho at y > 0, k in 0..4.
  double rho(double y, int k = 0) const;
  double log_rho(double y) const;
  /// k-th derivative of log(rho) at y > 0, k in 1..4.
  double log_derivative(double y, int k) const;

  bool has_complex_extension() const { return static_cast<bool>(profile_.complex_log_rho); }
  /// Principal-branch log rho(T); requires Re T > 0.
  std::complex<double> complex_log_rho(std::complex<double> t) const;
  std::complex<double> complex_rho(std::complex<double> t) const { return std::exp(complex_log_rho(t)); }
  std::complex<double> complex_log_d1(std::complex<double> t) const;
  std::complex<double> complex_log_d2(std::complex<double> t) const;

 private:
  void require_extension(std::complex<double> t) const;

  WeightProfile profile_;
  std::uint64_t id_;
};

/// Names accepted by make_builtin_weight.
std::vector<std::string> builtin_weight_names();

/// "gamma": rho(y) = y; "expcap": rho(y) = 1 - e^{-y}; "logplus": rho(y) = log(1+y).
Weight make_builtin_weight(std::string_view name);

struct SuitabilityCheck {
  std::string condition;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  bool pass = false;
  double worst_margin = 0.0;
  std::string note;
};

struct SuitabilityReport {
  std::vector<SuitabilityCheck> checks;
  bool all_pass() const;
  const SuitabilityCheck* find(std::string_view condition) const;
};

/// Numeric check of the suitability conditions on a log-spaced grid in (0, y_max].
SuitabilityReport check_suitability(const Weight& w, double y_max, int grid_size);

/// k-th derivative of phi = -log rho at b > 0, k in 0..4.
double phi(const Weight& w, double b, int k);

/// k-th derivative (k in 0..2) of psi = log(phi''/4 (-phi')^{n-2}) at b.
double psi(const Weight& w, int n, double b, int k);

/// Q = (rho'/rho)^{n-2} (-rho'/rho)' at b.
double q_factor(const Weight& w, int n, double b);
double log_q_factor(const Weight& w, int n, double b);

/// rho(T)^{-alpha} Q(T) for complex T with Re T > 0, using the analytic
/// extension of a built-in weight.
LogComplex weight_complex(const Weight& w, int n, std::complex<double> t, double alpha);

}  // namespace bergman
