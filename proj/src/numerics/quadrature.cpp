#include "bergman/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bergman {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kBaseStep = 0.5;
constexpr double kMaxS = 12.0;
constexpr double kMaxLogR = 700.0;
// Terms this far (in log) below the running maximum are dropped from the tails.
constexpr double kTailCut = 46.0;
constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 16;

double safe_eval(const std::function<double(double)>& f, double u) {
  const double v = f(u);
  return std::isnan(v) ? kNegInf : v;
}

}  // namespace

std::complex<double> QuadratureResult::value() const {
  return scaled_value * std::exp(log_scale);
}

LogComplex QuadratureResult::log_value() const {
  if (scaled_value == std::complex<double>(0.0, 0.0)) return LogComplex::zero();
  return {log_scale + std::log(std::abs(scaled_value)), std::arg(scaled_value)};
}

double QuadratureResult::err_est() const { return scaled_err * std::exp(log_scale); }

double QuadratureResult::rel_err() const {
  const double a = std::abs(scaled_value);
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  return scaled_err / a;
}

PeakHint locate_peak(const std::function<double(double)>& log_envelope, double u_guess) {
  const double lo_bound = -kMaxLogR;
  const double hi_bound = kMaxLogR;
  auto l = [&](double u) { return safe_eval(log_envelope, std::clamp(u, lo_bound, hi_bound)); };

  // Bracket a maximum: a < b < c with l(b) >= l(a), l(b) >= l(c).
  double b = std::clamp(u_guess, lo_bound + 1.0, hi_bound - 1.0);
  double lb = l(b);
  double step = 1.0;
  double a = b - step;
  double c = b + step;
  double la = l(a);
  double lc = l(c);
  int guard = 0;
  while ((la > lb || lc > lb) && guard++ < 200) {
    if (lc >= la) {
      a = b;
      la = lb;
      b = c;
      lb = lc;
      step *= 1.6;
      c = std::min(b + step, hi_bound);
      lc = l(c);
      if (c >= hi_bound) break;
    } else {
      c = b;
      lc = lb;
      b = a;
      lb = la;
      step *= 1.6;
      a = std::max(b - step, lo_bound);
      la = l(a);
      if (a <= lo_bound) break;
    }
  }

  // Golden-section refinement on [a, c].
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = c - inv_phi * (c - a);
  double x2 = a + inv_phi * (c - a);
  double f1 = l(x1);
  double f2 = l(x2);
  while (c - a > 1e-7) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (c - a);
      f2 = l(x2);
    } else {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - inv_phi * (c - a);
      f1 = l(x1);
    }
  }
  const double center = 0.5 * (a + c);
  const double delta = 1e-2;
  const double l0 = l(center);
  const double curv = -(l(center + delta) - 2.0 * l0 + l(center - delta)) / (delta * delta);
  double width = 1.0;
  if (std::isfinite(curv) && curv > 0.0) width = 1.0 / std::sqrt(curv);
  width = std::clamp(width, 1e-3, 4.0);
  return {center, width};
}

QuadratureResult quad_semiinfinite(const LogIntegrand& f, double decay_rate_hint, double tol) {
  const double guess = decay_rate_hint > 0.0 ? -std::log(decay_rate_hint) : 0.0;
  auto envelope = [&](double u) {
    const LogComplex v = f(std::exp(u));
    return v.is_zero() ? kNegInf : v.log_mag() + u;
  };
  return quad_semiinfinite(f, locate_peak(envelope, guess), tol);
}

QuadratureResult quad_semiinfinite(const LogIntegrand& f, const PeakHint& hint, double tol) {
  const double c = hint.log_center;
  const double w = hint.log_width;
  std::size_t nodes = 0;
  // Largest |log f| seen; a value exp(L) carries relative rounding ~ eps |L|.
  double max_abs_log = 0.0;

  // Integrand in s, including the Jacobian dr/ds = r w cosh(s).
  auto term = [&](double s) -> LogComplex {
    ++nodes;
    const double u = c + w * std::sinh(s);
    if (!(std::fabs(u) < kMaxLogR)) return LogComplex::zero();
    const LogComplex v = f(std::exp(u));
    if (v.is_zero() || std::isnan(v.log_mag())) return LogComplex::zero();
    max_abs_log = std::max(max_abs_log, std::fabs(v.log_mag()));
    return {v.log_mag() + u + std::log(w * std::cosh(s)), v.phase()};
  };

  LogAccumulator acc;
  acc.add(term(0.0));

  // Level 0 also fixes the truncation range in s.
  double s_end[2] = {kMaxS, kMaxS};
  for (int side = 0; side < 2; ++side) {
    const double dir = side == 0 ? 1.0 : -1.0;
    int negligible = 0;
    for (int k = 1;; ++k) {
      const double s = k * kBaseStep;
      if (s > kMaxS) break;
      const LogComplex t = term(dir * s);
      acc.add(t);
      if (t.is_zero() || t.log_mag() < acc.log_scale() - kTailCut) {
        if (++negligible >= 2) {
          s_end[side] = s;
          break;
        }
      } else {
        negligible = 0;
      }
    }
  }

  QuadratureResult res;
  LogComplex prev = LogComplex(acc.value().log_mag() + std::log(kBaseStep), acc.value().phase());
  if (acc.empty()) {
    res.nodes_used = nodes;
    res.converged = true;
    res.log_scale = 0.0;
    return res;
  }

  double h = kBaseStep;
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    for (int side = 0; side < 2; ++side) {
      const double dir = side == 0 ? 1.0 : -1.0;
      for (long j = 1; j * h <= s_end[side]; j += 2) acc.add(term(dir * (j * h)));
    }
    const LogComplex sum = acc.value();
    const LogComplex cur = sum.is_zero() ? sum : LogComplex(sum.log_mag() + std::log(h), sum.phase());
    const double scale = acc.log_scale() + std::log(h);
    const std::complex<double> cur_s = cur.scaled(scale);
    const double diff = std::abs(cur_s - prev.scaled(scale));
    const double abs_total = acc.scaled_abs_sum();  // same units as cur_s
    const double floor = std::numeric_limits<double>::epsilon() * (4.0 + max_abs_log) * abs_total;

    res.log_scale = scale;
    res.scaled_value = cur_s;
    res.scaled_err = std::max(diff, floor);
    res.scaled_abs = abs_total;
    res.nodes_used = nodes;

    const bool small_rel = diff <= tol * std::abs(cur_s);
    const bool small_abs = diff <= tol * abs_total;
    const bool at_floor = diff <= 2.0 * floor;
    if (level >= kMinLevel && (small_rel || small_abs || at_floor)) {
      res.converged = true;
      return res;
    }
    if (nodes >= kMaxQuadratureNodes) break;
    prev = cur;
  }
  res.converged = false;
  return res;
}

}  // namespace bergman
