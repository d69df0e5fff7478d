#include "wharm/hypergeom.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wharm/errors.hpp"

namespace wharm::hypergeom {

namespace {

constexpr long kMaxTerms = 1'000'000;
constexpr int kConsecutiveSmall = 3;

bool is_nonpositive_integer(double c) { return c <= 0.0 && std::floor(c) == c; }

// Plain Gauss series; terminates early when a or b is a nonpositive integer.
double gauss_series(double a, double b, double c, double x, double tol) {
  if (x == 0.0) return 1.0;
  double sum = 1.0;
  double term = 1.0;
  int small_run = 0;
  for (long n = 0; n < kMaxTerms; ++n) {
    const double prev = term;
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    if (term == 0.0) return sum;  // polynomial case
    sum += term;
    const double ratio = std::abs(term / prev);
    const double tail = ratio < 1.0 ? std::abs(term) * ratio / (1.0 - ratio) : INFINITY;
    const double scale = std::abs(sum);
    if (std::abs(term) < tol * scale && tail < tol * scale) {
      if (++small_run >= kConsecutiveSmall) return sum;
    } else {
      small_run = 0;
    }
  }
  throw NonConvergent("hypergeometric series did not converge within " +
                      std::to_string(kMaxTerms) + " terms");
}

}  // namespace

double pochhammer(double a, std::uint32_t k) {
  double value = 1.0;
  for (std::uint32_t j = 0; j < k; ++j) value *= a + j;
  return value;
}

Rational pochhammer(const Rational& a, std::uint32_t k) {
  Rational value(1);
  for (std::uint32_t j = 0; j < k; ++j) value *= a + j;
  return value;
}

double hyp2f1(const HypergeomParams& p, double x, Route route) {
  if (is_nonpositive_integer(p.c))
    throw InvalidC("c = " + std::to_string(p.c) + " is a nonpositive integer");
  if (!(std::abs(x) < 1.0)) throw DomainError("hyp2f1 requires |x| < 1");
  if (!(p.tol > 0.0)) throw DomainError("tolerance must be positive");
  const double excess = p.c - p.a - p.b;
  // A terminating series is summed directly; the transformed one would not terminate.
  const bool terminating = is_nonpositive_integer(p.a) || is_nonpositive_integer(p.b);
  const bool euler = route == Route::Euler ||
                     (route == Route::Auto && !terminating && excess > 0.0 && x > 0.5);
  if (euler)
    return std::pow(1.0 - x, excess) * gauss_series(p.c - p.a, p.c - p.b, p.c, x, p.tol);
  return gauss_series(p.a, p.b, p.c, x, p.tol);
}

double f_factor(double alpha, std::uint32_t k, double x) {
  if (k == 0) throw DomainError("f_factor requires k >= 1");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("f_factor requires 0 <= x < 1");
  return hyp2f1({-alpha, static_cast<double>(k), k + 1.0, 1e-16}, x);
}

double f_factor_quadrature(double alpha, std::uint32_t k, double x, double abs_tol) {
  if (k == 0) throw DomainError("f_factor requires k >= 1");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("f_factor requires 0 <= x < 1");
  using Integrator = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double kk = k;
  // u = 1 - t; the integrand varies on the scale (1-x)/x near u = 0,
  // so [0, 1] is cut at w, 2w, 4w, ... and each piece is smooth.
  auto f = [=](double u) { return kk * std::pow(1.0 - u, kk - 1.0) * std::pow(1.0 - x + x * u, alpha); };
  std::vector<double> cuts{0.0};
  if (x > 0.0)
    for (double w = (1.0 - x) / x; w < 1.0; w *= 2.0) cuts.push_back(w);
  cuts.push_back(1.0);
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double e = 0.0;
    value += Integrator::integrate(f, cuts[i], cuts[i + 1], 5, abs_tol, &e);
    error += e;
  }
  if (error > abs_tol * std::max(1.0, std::abs(value)))
    throw NonConvergent("quadrature error estimate " + std::to_string(error) + " above tolerance");
  return value;
}

double gauss_limit(double alpha, std::uint32_t k) {
  if (!(alpha > -1.0)) throw DomainError("gauss_limit requires alpha > -1");
  if (k <= 4096) {
    // k! / (alpha+1)_k
    double value = 1.0;
    for (std::uint32_t j = 1; j <= k; ++j) value *= j / (alpha + j);
    return value;
  }
  return std::exp(std::lgamma(k + 1.0) + std::lgamma(alpha + 1.0) - std::lgamma(k + alpha + 1.0));
}

double bound_log(std::uint32_t k, double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("bound_log requires 0 < x < 1");
  return k / x * -std::log1p(-x);
}

double bound_below_minus1(double alpha, std::uint32_t k, double x) {
  if (!(alpha < -1.0)) throw DomainError("bound_below_minus1 requires alpha < -1");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("bound_below_minus1 requires 0 <= x < 1");
  return std::max(1.0, -static_cast<double>(k) / (alpha + 1.0)) * std::pow(1.0 - x, alpha + 1.0);
}

}  // namespace wharm::hypergeom
