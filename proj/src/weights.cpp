#include "bergman/weights.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "bergman/error.hpp"

namespace bergman {

namespace {

using cd = std::complex<double>;

std::uint64_t next_weight_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter++;
}

void require_positive(double y, const char* what) {
  if (!(y > 0.0)) {
    std::ostringstream os;
    os << what << ": argument must be positive, got " << y;
    throw DomainError(os.str());
  }
}

WeightProfile gamma_profile() {
  WeightProfile p;
  p.name = "gamma";
  p.derivative = [](double y, int k) {
    if (k == 0) return y;
    return k == 1 ? 1.0 : 0.0;
  };
  p.log_rho = [](double y) { return std::log(y); };
  p.complex_log_rho = [](cd t) { return std::log(t); };
  p.complex_log_d1 = [](cd t) { return 1.0 / t; };
  p.complex_log_d2 = [](cd t) { return -1.0 / (t * t); };
  return p;
}

WeightProfile expcap_profile() {
  WeightProfile p;
  p.name = "expcap";
  p.derivative = [](double y, int k) {
    if (k == 0) return -std::expm1(-y);
    const double e = std::exp(-y);
    return k % 2 == 1 ? e : -e;
  };
  p.log_rho = [](double y) { return std::log(-std::expm1(-y)); };
  p.complex_log_rho = [](cd t) { return std::log(1.0 - std::exp(-t)); };
  p.complex_log_d1 = [](cd t) { return 1.0 / (std::exp(t) - 1.0); };
  p.complex_log_d2 = [](cd t) {
    const cd e = std::exp(t);
    const cd m = e - 1.0;
    return -e / (m * m);
  };
  return p;
}

WeightProfile logplus_profile() {
  WeightProfile p;
  p.name = "logplus";
  p.derivative = [](double y, int k) {
    switch (k) {
      case 0: return std::log1p(y);
      case 1: return 1.0 / (1.0 + y);
      case 2: return -1.0 / ((1.0 + y) * (1.0 + y));
      case 3: return 2.0 / std::pow(1.0 + y, 3);
      default: return -6.0 / std::pow(1.0 + y, 4);
    }
  };
  p.log_rho = [](double y) { return std::log(std::log1p(y)); };
  p.complex_log_rho = [](cd t) { return std::log(std::log(1.0 + t)); };
  p.complex_log_d1 = [](cd t) { return 1.0 / ((1.0 + t) * std::log(1.0 + t)); };
  p.complex_log_d2 = [](cd t) {
    const cd l = std::log(1.0 + t);
    const cd s = 1.0 + t;
    return -(1.0 + l) / (s * s * l * l);
  };
  return p;
}

}  // namespace

Weight::Weight(WeightProfile profile) : profile_(std::move(profile)), id_(next_weight_id()) {
  if (!profile_.derivative) throw DomainError("Weight: a derivative function is required");
}

double Weight::rho(double y, int k) const {
  if (k < 0 || k > 4) throw DomainError("Weight::rho: derivative order must be in 0..4");
  return profile_.derivative(y, k);
}

double Weight::log_rho(double y) const {
  if (profile_.log_rho) return profile_.log_rho(y);
  return std::log(profile_.derivative(y, 0));
}

double Weight::log_derivative(double y, int k) const {
  const double r0 = rho(y, 0);
  const double r1 = rho(y, 1) / r0;
  switch (k) {
    case 1: return r1;
    case 2: {
      const double r2 = rho(y, 2) / r0;
      return r2 - r1 * r1;
    }
    case 3: {
      const double r2 = rho(y, 2) / r0;
      const double r3 = rho(y, 3) / r0;
      return r3 - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1;
    }
    case 4: {
      const double r2 = rho(y, 2) / r0;
      const double r3 = rho(y, 3) / r0;
      const double r4 = rho(y, 4) / r0;
      const double r1s = r1 * r1;
      return r4 - 4.0 * r3 * r1 - 3.0 * r2 * r2 + 12.0 * r2 * r1s - 6.0 * r1s * r1s;
    }
    default:
      throw DomainError("Weight::log_derivative: order must be in 1..4");
  }
}

void Weight::require_extension(std::complex<double> t) const {
  if (!has_complex_extension()) {
    throw DomainError("weight '" + name() + "' has no analytic extension");
  }
  if (!(t.real() > 0.0)) {
    std::ostringstream os;
    os << "weight '" << name() << "': complex argument " << t << " lies outside Re T > 0";
    throw DomainError(os.str());
  }
}

std::complex<double> Weight::complex_log_rho(std::complex<double> t) const {
  require_extension(t);
  return profile_.complex_log_rho(t);
}

std::complex<double> Weight::complex_log_d1(std::complex<double> t) const {
  require_extension(t);
  return profile_.complex_log_d1(t);
}

std::complex<double> Weight::complex_log_d2(std::complex<double> t) const {
  require_extension(t);
  return profile_.complex_log_d2(t);
}

std::vector<std::string> builtin_weight_names() { return {"gamma", "expcap", "logplus"}; }

Weight make_builtin_weight(std::string_view name) {
  if (name == "gamma") return Weight(gamma_profile());
  if (name == "expcap") return Weight(expcap_profile());
  if (name == "logplus") return Weight(logplus_profile());
  std::string msg = "unknown weight '" + std::string(name) + "'; valid names:";
  for (const auto& n : builtin_weight_names()) msg += " " + n;
  throw DomainError(msg);
}

bool SuitabilityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const SuitabilityCheck* SuitabilityReport::find(std::string_view condition) const {
  for (const auto& c : checks)
    if (c.condition == condition) return &c;
  return nullptr;
}

SuitabilityReport check_suitability(const Weight& w, double y_max, int grid_size) {
  if (!(y_max > 0.0)) throw DomainError("check_suitability: y_max must be positive");
  if (grid_size < 16) throw DomainError("check_suitability: grid_size must be >= 16");

  const double y_lo = y_max * 1e-6;
  std::vector<double> grid(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    grid[i] = y_lo * std::pow(y_max / y_lo, static_cast<double>(i) / (grid_size - 1));
  }
  auto safe = [](auto&& fn, double y, double& out) {
    try {
      out = fn(y);
      return std::isfinite(out);
    } catch (const std::exception&) {
      return false;
    }
  };

  SuitabilityReport report;

  // rho(0+) -> 0: Richardson-extrapolated value from points approaching 0.
  {
    SuitabilityCheck c{"rho_zero_limit", 0.0, 1e-4 * std::min(1.0, y_max), false, 0.0, ""};
    double worst = 0.0;
    bool ok = true;
    const double scale = std::max(1.0, std::fabs(w.rho(y_max)));
    for (int k = 4; k <= 10; ++k) {
      const double eps = std::pow(10.0, -k) * std::min(1.0, y_max);
      double a = 0.0;
      double b = 0.0;
      if (!safe([&](double y) { return w.rho(y); }, eps, a) ||
          !safe([&](double y) { return w.rho(y); }, 2 * eps, b)) {
        ok = false;
        c.note = "evaluation failed near 0";
        break;
      }
      worst = std::max(worst, std::fabs(2.0 * a - b) / scale);
    }
    c.worst_margin = worst;
    c.pass = ok && worst <= 1e-8;
    if (c.note.empty()) c.note = "extrapolated |rho(0)| relative to max(1, rho(y_max))";
    report.checks.push_back(c);
  }

  // rho'(0) > 0.
  {
    SuitabilityCheck c{"rho_prime_zero_positive", 0.0, 1e-10 * std::min(1.0, y_max), false, 0.0, ""};
    double v = 0.0;
    const bool ok = safe([&](double y) { return w.rho(y, 1); }, c.grid_hi, v);
    c.worst_margin = v;
    c.pass = ok && v > 0.0;
    c.note = ok ? "rho' at the smallest probe" : "evaluation failed near 0";
    report.checks.push_back(c);
  }

  // rho' > 0 on the grid.
  {
    SuitabilityCheck c{"monotone", y_lo, y_max, true, std::numeric_limits<double>::infinity(), ""};
    for (double y : grid) {
      double v = 0.0;
      if (!safe([&](double s) { return w.rho(s, 1); }, y, v)) {
        c.pass = false;
        c.note = "evaluation failed at y=" + std::to_string(y);
        continue;
      }
      c.worst_margin = std::min(c.worst_margin, v);
      if (!(v > 0.0)) c.pass = false;
    }
    if (c.note.empty()) c.note = "min rho' over the grid";
    report.checks.push_back(c);
  }

  // (rho'/rho)' < 0 on the grid.
  {
    SuitabilityCheck c{"log_concave", y_lo, y_max, true, -std::numeric_limits<double>::infinity(), ""};
    for (double y : grid) {
      double v = 0.0;
      if (!safe([&](double s) { return w.log_derivative(s, 2); }, y, v)) {
        c.pass = false;
        c.note = "evaluation failed at y=" + std::to_string(y);
        continue;
      }
      c.worst_margin = std::max(c.worst_margin, v);
      if (!(v < 0.0)) c.pass = false;
    }
    if (c.note.empty()) c.note = "max (rho'/rho)' over the grid";
    report.checks.push_back(c);
  }

  // Non-decay: a divergent integral is not finitely checkable; it follows
  // from rho' > 0 (rho bounded below away from 0), so it is reported as implied.
  {
    const auto* mono = report.find("monotone");
    SuitabilityCheck c{"non_decay", y_lo, y_max, mono->pass, mono->worst_margin,
                       "implied by rho' > 0; not tested by quadrature"};
    report.checks.push_back(c);
  }

  // Smoothness: derivatives up to order 4 finite on the grid.
  {
    SuitabilityCheck c{"smooth", y_lo, y_max, true, 4.0, "derivatives of order 0..4 finite on the grid"};
    for (double y : grid) {
      for (int k = 0; k <= 4; ++k) {
        double v = 0.0;
        if (!safe([&](double s) { return w.rho(s, k); }, y, v)) {
          c.pass = false;
          c.note = "non-finite derivative of order " + std::to_string(k) + " at y=" + std::to_string(y);
        }
      }
    }
    report.checks.push_back(c);
  }
  return report;
}

double phi(const Weight& w, double b, int k) {
  require_positive(b, "phi");
  if (k == 0) return -w.log_rho(b);
  return -w.log_derivative(b, k);
}

double psi(const Weight& w, int n, double b, int k) {
  require_positive(b, "psi");
  if (n < 2) throw DomainError("psi: dimension must be >= 2");
  const double p1 = phi(w, b, 1);
  const double p2 = phi(w, b, 2);
  if (!(p2 > 0.0) || !(p1 < 0.0)) {
    throw DomainError("psi: suitability violated at b (need phi'' > 0 and -phi' > 0)");
  }
  const double m = n - 2.0;
  switch (k) {
    case 0: return std::log(0.25 * p2) + m * std::log(-p1);
    case 1: {
      const double p3 = phi(w, b, 3);
      return p3 / p2 + m * p2 / p1;
    }
    case 2: {
      const double p3 = phi(w, b, 3);
      const double p4 = phi(w, b, 4);
      const double a = p3 / p2;
      const double c = p2 / p1;
      return p4 / p2 - a * a + m * (p3 / p1 - c * c);
    }
    default:
      throw DomainError("psi: order must be in 0..2");
  }
}

double q_factor(const Weight& w, int n, double b) {
  require_positive(b, "q_factor");
  if (n < 2) throw DomainError("q_factor: dimension must be >= 2");
  const double d1 = w.log_derivative(b, 1);
  const double d2 = w.log_derivative(b, 2);
  return std::pow(d1, n - 2) * (-d2);
}

double log_q_factor(const Weight& w, int n, double b) {
  require_positive(b, "log_q_factor");
  if (n < 2) throw DomainError("log_q_factor: dimension must be >= 2");
  return (n - 2) * std::log(w.log_derivative(b, 1)) + std::log(-w.log_derivative(b, 2));
}

LogComplex weight_complex(const Weight& w, int n, std::complex<double> t, double alpha) {
  if (n < 2) throw DomainError("weight_complex: dimension must be >= 2");
  const cd log_rho = w.complex_log_rho(t);
  const cd log_q = static_cast<double>(n - 2) * std::log(w.complex_log_d1(t)) + std::log(-w.complex_log_d2(t));
  return LogComplex::from_log(-alpha * log_rho + log_q);
}

}  // namespace bergman
