#include "bergman/numerics/log_complex.hpp"

#include <cmath>
#include <numbers>

namespace bergman {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(phase, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

LogComplex::LogComplex(double log_mag, double phase)
    : log_mag_(log_mag), phase_(log_mag == kNegInf ? 0.0 : wrap_phase(phase)) {}

LogComplex LogComplex::from_complex(std::complex<double> z) {
  if (z == std::complex<double>(0.0, 0.0)) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

LogComplex LogComplex::from_real(double x) {
  if (x == 0.0) return zero();
  return {std::log(std::fabs(x)), x < 0.0 ? std::numbers::pi : 0.0};
}

LogComplex LogComplex::from_log(std::complex<double> log_z) {
  return {log_z.real(), log_z.imag()};
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_), phase_);
}

std::complex<double> LogComplex::scaled(double log_scale) const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_mag_ - log_scale), phase_);
}

LogComplex LogComplex::pow(double p) const {
  if (is_zero()) return p == 0.0 ? one() : zero();
  return {p * log_mag_, p * phase_};
}

LogComplex& LogComplex::operator*=(const LogComplex& o) {
  if (is_zero() || o.is_zero()) {
    *this = zero();
    return *this;
  }
  *this = LogComplex(log_mag_ + o.log_mag_, phase_ + o.phase_);
  return *this;
}

LogComplex& LogComplex::operator/=(const LogComplex& o) {
  if (is_zero()) return *this;
  *this = LogComplex(log_mag_ - o.log_mag_, phase_ - o.phase_);
  return *this;
}

LogComplex logc_sum(std::span<const LogComplex> terms) {
  LogAccumulator acc;
  for (const auto& t : terms) acc.add(t);
  return acc.value();
}

void LogAccumulator::rescale_to(double new_scale) {
  if (scale_ == kNegInf) {
    scale_ = new_scale;
    return;
  }
  const double f = std::exp(scale_ - new_scale);
  sum_ *= f;
  abs_sum_ *= f;
  scale_ = new_scale;
}

void LogAccumulator::add(const LogComplex& term, double weight) {
  if (term.is_zero() || weight == 0.0) return;
  const double lm = term.log_mag() + std::log(std::fabs(weight));
  const double ph = weight < 0.0 ? term.phase() + std::numbers::pi : term.phase();
  if (lm > scale_) rescale_to(lm);
  const double mag = std::exp(lm - scale_);
  sum_ += std::polar(mag, ph);
  abs_sum_ += mag;
}

void LogAccumulator::add(const LogAccumulator& other) {
  if (other.empty()) return;
  if (other.scale_ > scale_) rescale_to(other.scale_);
  const double f = std::exp(other.scale_ - scale_);
  sum_ += other.sum_ * f;
  abs_sum_ += other.abs_sum_ * f;
}

LogComplex LogAccumulator::value() const {
  if (empty() || sum_ == std::complex<double>(0.0, 0.0)) return LogComplex::zero();
  return {scale_ + std::log(std::abs(sum_)), std::arg(sum_)};
}

}  // namespace bergman
