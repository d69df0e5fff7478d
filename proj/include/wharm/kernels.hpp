#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "wharm/alpha.hpp"
#include "wharm/bivar_poly.hpp"

namespace wharm::kernels {

using Complex = std::complex<double>;
/// A function on the upper half-plane (or the disc), sampled pointwise.
using PointFunction = std::function<Complex(Complex)>;

/// Point of the open unit disc.
class DiscPoint {
 public:
  /// Throws DomainError unless |z| < 1.
  explicit DiscPoint(Complex z);
  Complex value() const noexcept { return z_; }

 private:
  Complex z_;
};

/// Trigonometric polynomial on the circle: finitely many Fourier coefficients.
struct TrigPoly {
  std::map<std::int64_t, Complex> coeffs;
};

/// sum_m weight_m * delta_1^{(m)}, derivatives of the unit Dirac mass at 1.
struct DiracDeriv {
  std::vector<std::pair<std::uint32_t, Complex>> orders;
};

/// A distribution on the circle presented by its Fourier-coefficient rule.
class ToroidalDistribution {
 public:
  explicit ToroidalDistribution(TrigPoly p) : rep_(std::move(p)) {}
  explicit ToroidalDistribution(DiracDeriv d) : rep_(std::move(d)) {}
  static ToroidalDistribution dirac(std::uint32_t order = 0, Complex weight = 1.0);
  static ToroidalDistribution constant(Complex c);

  Complex fourier(std::int64_t k) const;
  /// The distributional derivative: coefficient k is multiplied by i k.
  ToroidalDistribution derivative() const;

  /// |fourier(k)| <= growth_constant * (1+|k|)^growth_order for all k.
  double growth_constant() const;
  std::uint32_t growth_order() const;
  /// Largest |k| with a nonzero coefficient, when finite (trig polynomials).
  std::optional<std::int64_t> support_radius() const;

  const std::variant<TrigPoly, DiracDeriv>& representation() const noexcept { return rep_; }

 private:
  std::variant<TrigPoly, DiracDeriv> rep_;
};

/// Subset of Z: all integers, a finite set, or a half line [from, inf),
/// the infinite kinds optionally with finitely many points removed.
struct SpectrumSet {
  enum class Kind { AllIntegers, FiniteSet, HalfLine };
  Kind kind = Kind::AllIntegers;
  std::vector<std::int64_t> members;   // FiniteSet, sorted
  std::int64_t from = 0;               // HalfLine
  std::vector<std::int64_t> excluded;  // removed from AllIntegers / HalfLine, sorted

  static SpectrumSet all() { return {}; }
  static SpectrumSet finite(std::vector<std::int64_t> m);
  static SpectrumSet half_line(std::int64_t from);

  bool contains(std::int64_t k) const;
  bool is_empty() const { return kind == Kind::FiniteSet && members.empty(); }
  friend bool operator==(const SpectrumSet&, const SpectrumSet&) = default;
};

SpectrumSet intersect(const SpectrumSet& a, const SpectrumSet& b);

/// phi(z) = i (1+z)/(1-z), mapping the disc onto the upper half-plane.
Complex mobius(const DiscPoint& z);
/// phi'(z) = 2i / (1-z)^2.
Complex mobius_derivative(const DiscPoint& z);

/// (1-|z|^2)^{alpha+1} / ((1-z) (1-zbar)^{alpha+1}), principal powers.
Complex poisson_kernel(const AlphaParam& alpha, const DiscPoint& z);
/// Series form of the kernel, truncated once the tail bound is below tol.
Complex poisson_kernel_series(const AlphaParam& alpha, const DiscPoint& z, double tol = 1e-13);
/// P_alpha[f](z) from the Fourier coefficients of f.
Complex poisson_integral(const AlphaParam& alpha, const ToroidalDistribution& f, const DiscPoint& z,
                         double tol = 1e-13);

/// Spec(P_alpha): all integers, or [alpha+1, inf) for alpha a negative integer.
SpectrumSet spectrum(const AlphaParam& alpha);
/// Nonzero Fourier coefficients of f.
SpectrumSet spectrum_of(const ToroidalDistribution& f);
/// Spec(P_alpha[f]) = Spec(P_alpha) intersected with Spec(f).
SpectrumSet spectrum_of_integral(const AlphaParam& alpha, const ToroidalDistribution& f);

/// phi'(z)^{-alpha/2} with the continuous branch fixed by log phi'(0) = log 2 + i pi/2.
Complex mobius_derivative_power(const AlphaParam& alpha, const DiscPoint& z);
/// c = 2^{alpha/2} e^{i pi alpha/4}, so that c phi'(0)^{-alpha/2} = 1.
Complex pullback_constant(const AlphaParam& alpha);
/// phi'(z)^{-alpha/2} u(phi(z)).
Complex weighted_pullback(const AlphaParam& alpha, const PointFunction& u, const DiscPoint& z);

/// h_{k,alpha}(phi(z)) P_alpha(z), which equals (iA)^k P_alpha(z).
Complex ia_power_kernel(const AlphaParam& alpha, std::uint32_t k, const DiscPoint& z);
/// Same, with h_{k,alpha} already converted to floating point.
Complex ia_power_kernel(const AlphaParam& alpha, const FloatBivarPoly& h, const DiscPoint& z);

/// Finite-difference d( w^{-1} dbar u ) at z: five-point central differences of step h,
/// dbar first, then d.
Complex weighted_laplacian_fd(const std::function<double(Complex)>& weight, const PointFunction& u,
                              Complex z, double h = 1e-3);
/// The disc alpha-Laplacian with weight (1-|z|^2)^alpha.
Complex alpha_laplacian_disc_fd(const AlphaParam& alpha, const PointFunction& u, Complex z,
                                double h = 1e-3);

}  // namespace wharm::kernels
