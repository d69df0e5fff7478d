#include "wharm/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "wharm/bivar_poly.hpp"
#include "wharm/errors.hpp"

namespace wharm::zeros {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CircleFreeInside: return "CircleFree_Inside";
    case Verdict::CircleFreeOutside: return "CircleFree_Outside";
    case Verdict::Undecided: return "Undecided";
  }
  return "Undecided";
}

AnnulusCertificate ek_annulus(std::span<const double> coeffs) {
  if (coeffs.size() < 2) throw DomainError("Enestrom-Kakeya needs degree at least 1");
  for (double a : coeffs)
    if (!(a > 0.0)) throw NonPositiveCoefficient("Enestrom-Kakeya needs positive coefficients");
  AnnulusCertificate c;
  c.r = INFINITY;
  c.R = 0.0;
  for (std::size_t j = 0; j + 1 < coeffs.size(); ++j) {
    const double q = coeffs[j] / coeffs[j + 1];
    c.r = std::min(c.r, q);
    c.R = std::max(c.R, q);
  }
  if (c.R < 1.0) c.verdict = Verdict::CircleFreeInside;
  else if (c.r > 1.0) c.verdict = Verdict::CircleFreeOutside;
  return c;
}

AnnulusCertificate certify_p_circle_free(const AlphaParam& alpha, std::uint32_t k) {
  if (!(alpha.value() > -1.0)) throw DomainError("certificate requires alpha > -1");
  if (k == 0) throw DomainError("certificate requires k >= 1");
  std::vector<double> a(k + 1);
  for (std::uint32_t j = 0; j <= k; ++j) a[j] = poly::binomial_coefficient(alpha.value(), j);
  return ek_annulus(a);
}

namespace {

using Complex = std::complex<double>;

// p(z) and p'(z) by Horner.
std::pair<Complex, Complex> horner(std::span<const Complex> a, Complex z) {
  Complex p = a.back();
  Complex dp = 0.0;
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
  }
  return {p, dp};
}

double relative_residual(std::span<const Complex> a, Complex z) {
  const double m = std::abs(z);
  double scale = 0.0;
  double mk = 1.0;
  for (const auto& c : a) {
    scale += std::abs(c) * mk;
    mk *= m;
  }
  const double p = std::abs(horner(a, z).first);
  return scale == 0.0 ? p : p / scale;
}

}  // namespace

double root_residual(std::span<const Complex> coeffs, std::span<const Complex> rts) {
  double worst = 0.0;
  for (const auto& z : rts) worst = std::max(worst, relative_residual(coeffs, z));
  return worst;
}

std::vector<Complex> roots(std::span<const Complex> coeffs) {
  if (coeffs.empty() || coeffs.back() == Complex(0.0))
    throw DomainError("leading coefficient must be nonzero");
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {-coeffs[0] / coeffs[1]};

  // Initial guesses on a circle of the geometric-mean radius, rotated off the axes.
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    radius = std::max(radius, std::pow(std::abs(coeffs[i] / coeffs[n]), 1.0 / (n - i)));
  if (radius == 0.0) radius = 1.0;
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i)
    z[i] = std::polar(radius, 2.0 * std::numbers::pi * (i + 0.25) / n + 0.4);

  constexpr int kMaxIter = 1000;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double biggest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [p, dp] = horner(coeffs, z[i]);
      if (p == Complex(0.0)) continue;
      const Complex ratio = p / dp;
      Complex sum = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const Complex step = ratio / (1.0 - ratio * sum);
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) {
        z[i] -= step;
        biggest = std::max(biggest, std::abs(step) / std::max(1.0, std::abs(z[i])));
      }
    }
    if (biggest < 1e-15) break;
  }
  for (auto& r : z) {
    for (int s = 0; s < 3; ++s) {
      const auto [p, dp] = horner(coeffs, r);
      if (p == Complex(0.0) || dp == Complex(0.0)) break;
      const Complex next = r - p / dp;
      if (relative_residual(coeffs, next) < relative_residual(coeffs, r)) r = next;
      else break;
    }
  }
  if (root_residual(coeffs, z) > 1e-10) throw NoConvergence("root finder did not reach residual 1e-10");
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return z;
}

double min_modulus_on_circle(double alpha, std::uint32_t k, std::uint32_t grid) {
  if (k == 0) return 1.0;
  if (grid < 3) grid = 3;
  const double step = 2.0 * std::numbers::pi / grid;
  auto f = [&](double theta) { return std::abs(poly::p_value(alpha, k, std::polar(1.0, theta))); };
  std::vector<double> values(grid);
  for (std::uint32_t j = 0; j < grid; ++j) values[j] = f(j * step);
  std::vector<std::uint32_t> order(grid);
  std::iota(order.begin(), order.end(), 0u);
  std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                    [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
  double best = values[order[0]];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int t = 0; t < 3; ++t) {
    double lo = (order[t] - 1.0) * step;
    double hi = (order[t] + 1.0) * step;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = f(x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return best;
}

}  // namespace wharm::zeros
