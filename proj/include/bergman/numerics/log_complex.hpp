#pragma once

#include <complex>
#include <limits>
#include <span>

namespace bergman {

/// Wrap an angle into (-pi, pi].
double wrap_phase(double phase);

/// Complex number stored as (log|z|, arg z). Zero is encoded by
/// log_mag == -inf. Products of values far outside the double range stay
/// representable as long as the log-magnitude itself is finite.
class LogComplex {
 public:
  LogComplex() = default;
  LogComplex(double log_mag, double phase);

  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }
  static LogComplex from_complex(std::complex<double> z);
  static LogComplex from_real(double x);
  /// exp(log_z) for a complex logarithm log_z.
  static LogComplex from_log(std::complex<double> log_z);

  double log_mag() const { return log_mag_; }
  double phase() const { return phase_; }
  bool is_zero() const { return log_mag_ == -std::numeric_limits<double>::infinity(); }

  std::complex<double> to_complex() const;
  /// Value multiplied by exp(-log_scale); useful for summing terms that
  /// individually overflow.
  std::complex<double> scaled(double log_scale) const;
  /// Real part of the value, assuming it fits in a double.
  double real() const { return to_complex().real(); }

  LogComplex conj() const { return {log_mag_, is_zero() ? 0.0 : -phase_}; }
  LogComplex pow(double p) const;

  LogComplex& operator*=(const LogComplex& o);
  LogComplex& operator/=(const LogComplex& o);
  friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

 private:
  double log_mag_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

/// Sum in log domain: the largest log-magnitude is factored out before
/// adding, so no intermediate overflows.
LogComplex logc_sum(std::span<const LogComplex> terms);

/// Streaming version of logc_sum. Keeps a running scale and rescales the
/// partial sum whenever a larger term arrives. Also tracks sum |term| for
/// round-off estimates.
class LogAccumulator {
 public:
  void add(const LogComplex& term, double weight = 1.0);
  void add(const LogAccumulator& other);

  LogComplex value() const;
  double log_scale() const { return scale_; }
  /// Sum relative to exp(log_scale()).
  std::complex<double> scaled_sum() const { return sum_; }
  /// Sum of |terms| relative to exp(log_scale()).
  double scaled_abs_sum() const { return abs_sum_; }
  bool empty() const { return scale_ == -std::numeric_limits<double>::infinity(); }

  void rescale_to(double new_scale);

 private:
  double scale_ = -std::numeric_limits<double>::infinity();
  std::complex<double> sum_{0.0, 0.0};
  double abs_sum_ = 0.0;
};

}  // namespace bergman
