#pragma once

#include <cstdint>

#include "wharm/alpha.hpp"
#include "wharm/rational.hpp"

namespace wharm::hypergeom {

/// (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
double pochhammer(double a, std::uint32_t k);
Rational pochhammer(const Rational& a, std::uint32_t k);

struct HypergeomParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double tol = 1e-15;  // relative truncation tolerance
};

enum class Route { Auto, Direct, Euler };

/// Gauss series 2F1(a,b;c;x) for |x| < 1.
///
/// Summation stops once the tail is below tol relative to the partial sum on
/// three consecutive terms (cap 10^6 terms). With Route::Auto the series is
/// rewritten by Euler's transformation (1-x)^{c-a-b} F(c-a,c-b;c;x) when
/// c-a-b > 0 and x > 0.5.
double hyp2f1(const HypergeomParams& p, double x, Route route = Route::Auto);

/// F(-alpha, k; k+1; x), the radial factor of the conjugate-analytic terms.
double f_factor(double alpha, std::uint32_t k, double x);
inline double f_factor(const AlphaParam& alpha, std::uint32_t k, double x) {
  return f_factor(alpha.value(), k, x);
}

/// k * int_0^1 t^{k-1} (1 - x t)^alpha dt by adaptive Gauss-Kronrod quadrature.
/// Independent of the series path; used as its oracle.
double f_factor_quadrature(double alpha, std::uint32_t k, double x, double abs_tol = 1e-12);

/// Gamma(k+1) Gamma(alpha+1) / Gamma(k+alpha+1), the x -> 1 limit of f_factor.
double gauss_limit(double alpha, std::uint32_t k);

/// (k/x) log(1/(1-x)); upper bound for F(1,k;k+1;x) on 0 < x < 1.
double bound_log(std::uint32_t k, double x);

/// max(1, -k/(alpha+1)) (1-x)^{alpha+1}; upper bound for f_factor when alpha < -1.
double bound_below_minus1(double alpha, std::uint32_t k, double x);

}  // namespace wharm::hypergeom
