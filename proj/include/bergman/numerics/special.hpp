#pragma once

namespace bergman {

/// Natural log of Gamma(x) for x > 0.
double log_gamma(double x);

/// Surface area of the unit sphere S^{n-1} in R^n, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// The confluent limit function 0F1(b; z) for b > 0 and real z <= 0.
///
/// Small |z| uses the power series. Otherwise the value is reduced to a
/// Bessel function through 0F1(nu+1; -x^2/4) = Gamma(nu+1) (x/2)^{-nu} J_nu(x):
/// Miller's backward recurrence (normalised by the Neumann sum for
/// (x/2)^nu) for moderate x, Hankel's asymptotic series for large x.
double hyp0f1(double b, double z);

/// Bessel function of the first kind J_nu(x), nu > -1, x >= 0. Used by
/// hyp0f1; exposed for tests.
double bessel_j(double nu, double x);

}  // namespace bergman
