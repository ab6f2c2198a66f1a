#include "bergman/weight_transform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "bergman/error.hpp"
#include "bergman/numerics/special.hpp"

namespace bergman {

namespace {

struct CacheKey {
  std::uint64_t weight;
  std::uint64_t alpha;
  std::uint64_t t;
  std::uint64_t tol;
  bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& k) const {
    std::uint64_t h = k.weight * 0x9E3779B97F4A7C15ULL;
    for (std::uint64_t v : {k.alpha, k.t, k.tol}) h = (h ^ v) * 0xBF58476D1CE4E5B9ULL + (h >> 31);
    return static_cast<std::size_t>(h);
  }
};

class RhoTildeCache {
 public:
  bool lookup(const CacheKey& key, RhoTildeEval& out) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void insert(const CacheKey& key, const RhoTildeEval& value) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (map_.size() > kMaxEntries) map_.clear();
    map_.emplace(key, value);
  }
  void clear() {
    std::lock_guard<std::mutex> lock(mutex_);
    map_.clear();
  }

 private:
  static constexpr std::size_t kMaxEntries = 4'000'000;
  std::mutex mutex_;
  std::unordered_map<CacheKey, RhoTildeEval, CacheKeyHash> map_;
};

RhoTildeCache& cache() {
  static RhoTildeCache instance;
  return instance;
}

void check_args(double alpha, double t, const char* what) {
  if (!(alpha >= 0.0) || !(t > 0.0)) {
    std::ostringstream os;
    os << what << ": need alpha >= 0 and t > 0, got alpha=" << alpha << " t=" << t;
    throw DomainError(os.str());
  }
}

}  // namespace

PeakHint rho_tilde_peak(const Weight& w, double alpha, double t) {
  // d/du of u + alpha log rho(e^u) - 2t e^u.
  auto slope = [&](double u) {
    const double y = std::exp(u);
    const double yl = alpha == 0.0 ? 0.0 : alpha * y * w.log_derivative(y, 1);
    return 1.0 + yl - 2.0 * t * y;
  };
  // slope > 0 whenever 2ty < 1 because rho' > 0.
  double lo = std::log(0.25 / t);
  double hi = std::log((alpha + 1.0) / t);
  for (int i = 0; i < 400 && slope(hi) > 0.0; ++i) hi += 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-12) break;
  }
  const double u = 0.5 * (lo + hi);
  const double y = std::exp(u);
  double curv = 2.0 * t * y;
  if (alpha > 0.0) curv -= alpha * (y * w.log_derivative(y, 1) + y * y * w.log_derivative(y, 2));
  double width = curv > 0.0 ? 1.0 / std::sqrt(curv) : 1.0;
  width = std::clamp(width, 1e-3, 4.0);
  return {u, width};
}

QuadratureResult weighted_laplace(const Weight& w, double alpha, double t,
                                  const std::function<LogComplex(double)>& g, double tol) {
  check_args(alpha, t, "weighted_laplace");
  const PeakHint hint = rho_tilde_peak(w, alpha, t);
  auto integrand = [&](double y) {
    const double lr = alpha == 0.0 ? 0.0 : alpha * w.log_rho(y);
    return LogComplex(lr - 2.0 * t * y, 0.0) * g(y);
  };
  return quad_semiinfinite(integrand, hint, tol);
}

RhoTildeEval log_rho_tilde(const Weight& w, double alpha, double t, double tol) {
  check_args(alpha, t, "log_rho_tilde");
  const CacheKey key{w.id(), std::bit_cast<std::uint64_t>(alpha), std::bit_cast<std::uint64_t>(t),
                     std::bit_cast<std::uint64_t>(tol)};
  RhoTildeEval out;
  if (cache().lookup(key, out)) return out;

  const PeakHint hint = rho_tilde_peak(w, alpha, t);
  auto integrand = [&](double y) {
    const double lr = alpha == 0.0 ? 0.0 : alpha * w.log_rho(y);
    return LogComplex(lr - 2.0 * t * y, 0.0);
  };
  const QuadratureResult q = quad_semiinfinite(integrand, hint, tol);
  const LogComplex v = q.log_value();
  if (v.is_zero() || !std::isfinite(v.log_mag())) {
    throw ConvergenceError("log_rho_tilde: integral is zero or divergent for weight '" + w.name() + "'");
  }
  out.log_value = v.log_mag();
  // exp(L) computed from a log of size |L| cannot be better than eps |L|.
  out.err_est = std::max(q.rel_err(), std::numeric_limits<double>::epsilon() * std::fabs(out.log_value));
  out.alpha = alpha;
  out.t = t;
  out.converged = q.converged;
  cache().insert(key, out);
  return out;
}

double rho_tilde_gamma_closed(double alpha, double t) {
  check_args(alpha, t, "rho_tilde_gamma_closed");
  return log_gamma(alpha + 1.0) - (alpha + 1.0) * std::log(2.0 * t);
}

void clear_rho_tilde_cache() { cache().clear(); }

}  // namespace bergman
