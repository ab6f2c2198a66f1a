#pragma once

#include <utility>
#include <vector>

#include "bergman/kernels.hpp"
#include "bergman/numerics/log_complex.hpp"
#include "bergman/weights.hpp"

namespace bergman {

/// C_n = 2^{3-2n} / (pi^{(n-1)/2} Gamma((n-1)/2)).
double diag_leading_constant(int n);

/// alpha^{n-1} rho(b)^{-alpha} C_n Q(b), and its logarithm.
double diag_leading(const Weight& w, int n, double alpha, double b);
double log_diag_leading(const Weight& w, int n, double alpha, double b);

/// Leading off-diagonal term with c_0 = 1. For n > 2:
/// alpha^{n-1}/(4 pi^{n-1}) 2^{4-2n} omega_{n-2} int (1-t^2)^{(n-4)/2} rho(T)^{-alpha} Q(T) dt,
/// T = (y+b)/2 - i d t/2. For n = 2: alpha/(4 pi) 2 Re[rho(T)^{-alpha} Q(T)], T = (y+b)/2 - i d/2.
/// m_nodes <= 0 doubles the Jacobi rule until two sizes agree.
LogComplex offdiag_leading(const Weight& w, double alpha, const KernelPoint& p, int m_nodes = 0);

using Sample = std::pair<double, double>;  // (alpha, value)

struct ExpansionFit {
  /// c_0..c_k of sum_j c_j alpha^{-j}.
  std::vector<double> coefficients;
  /// Largest change of each coefficient over leave-one-out refits.
  std::vector<double> uncertainty;
  double residual_norm = 0.0;
  /// 2-norm condition number of the (column-scaled) design matrix.
  double condition = 0.0;
  bool well_conditioned = true;
};

/// Condition number above which a fit is flagged.
inline constexpr double kFitConditionLimit = 1e10;

/// Least-squares fit of value ~ sum_{j<=k} c_j alpha^{-j}. Needs at least
/// k+2 samples with strictly increasing positive alpha.
ExpansionFit richardson_fit(const std::vector<Sample>& samples, int k);

/// Value at 1/alpha = 0 of the polynomial in 1/alpha through all samples.
double richardson_extrapolate(const std::vector<Sample>& samples);

/// Least-squares slope of log(error) against log(alpha); needs >= 3
/// samples with positive errors.
double convergence_order(const std::vector<Sample>& samples);

}  // namespace bergman
