#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "wharm/alpha.hpp"
#include "wharm/rational.hpp"

namespace wharm {

/// Exponent pair (i, j) of the monomial z^i conj(z)^j.
struct Monomial {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  std::uint32_t degree() const { return i + j; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order with z > conj(z): 1, z, zbar, z^2, z zbar, zbar^2, ...
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.i > b.i;
  }
};

class FloatBivarPoly;

/// Sparse polynomial in z and conj(z) over the Gaussian rationals.
/// Zero coefficients are never stored.
class BivarPoly {
 public:
  using Terms = std::map<Monomial, GaussianRational, GradedLex>;

  BivarPoly() = default;
  static BivarPoly constant(const GaussianRational& c);
  static BivarPoly monomial(std::uint32_t i, std::uint32_t j, const GaussianRational& c = Rational(1));
  static BivarPoly z() { return monomial(1, 0); }
  static BivarPoly zbar() { return monomial(0, 1); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; 0 for the zero polynomial.
  std::uint32_t degree() const;
  bool is_homogeneous() const;
  GaussianRational coefficient(std::uint32_t i, std::uint32_t j) const;

  void add_term(std::uint32_t i, std::uint32_t j, const GaussianRational& c);

  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  BivarPoly& operator*=(const GaussianRational& s);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(BivarPoly a, const GaussianRational& s) { return a *= s; }
  friend BivarPoly operator*(const GaussianRational& s, BivarPoly a) { return a *= s; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

  /// d/dz, treating z and conj(z) as independent.
  BivarPoly dz() const;
  /// d/dzbar.
  BivarPoly dzbar() const;

  /// Exact value at a Gaussian-rational point (conj(z) is substituted for zbar).
  GaussianRational evaluate(const GaussianRational& z) const;
  std::complex<double> evaluate(std::complex<double> z) const;
  FloatBivarPoly to_float() const;

 private:
  Terms terms_;
};

/// Double-precision shadow of a BivarPoly for repeated evaluation.
class FloatBivarPoly {
 public:
  FloatBivarPoly() = default;
  explicit FloatBivarPoly(const BivarPoly& p);
  std::complex<double> operator()(std::complex<double> z) const;
  std::uint32_t degree() const noexcept { return degree_; }

 private:
  // rows_[i][j]: coefficient of z^i zbar^j
  std::vector<std::vector<std::complex<double>>> rows_;
  std::uint32_t degree_ = 0;
};

namespace poly {

/// s_{k,alpha}(z) = sum_{j<=k} ((alpha+1)_j / j!) z^j.
BivarPoly s_poly(const AlphaParam& alpha, std::uint32_t k);
/// p_{k,alpha}(z) = sum_{j<=k} ((alpha+1)_j / j!) z^{k-j} zbar^j, homogeneous of degree k.
BivarPoly p_poly(const AlphaParam& alpha, std::uint32_t k);
/// h_{k,alpha} from h_0 = 1 and
/// h_{k+1} = 1/2 (z^2+1) dh + 1/2 (zbar^2+1) dbar h + 1/2 (z + (alpha+1) zbar + i alpha) h.
BivarPoly h_poly(const AlphaParam& alpha, std::uint32_t k);
/// h_{0..k} in one pass.
std::vector<BivarPoly> h_sequence(const AlphaParam& alpha, std::uint32_t k);

/// D_alpha p = (z - zbar) d dbar p + dbar p - (alpha+1) d p.
BivarPoly d_alpha(const AlphaParam& alpha, const BivarPoly& p);
/// i (z d - zbar dbar) p; the monomial z^i zbar^j is scaled by i (i - j).
BivarPoly angular_derivative(const BivarPoly& p);

/// Parts indexed by degree 0..deg(p); part m is homogeneous of degree m (possibly zero).
std::vector<BivarPoly> homogeneous_parts(const BivarPoly& p);

/// Basis of the kernel of D_alpha on homogeneous polynomials of degree k,
/// found by exact Gaussian elimination on the (k x (k+1)) coefficient matrix.
std::vector<BivarPoly> homogeneous_kernel_basis(const AlphaParam& alpha, std::uint32_t k);

/// Coefficients b_0..b_k with h_{k,alpha} = sum b_j p_{j,alpha}.
/// Throws DecompositionFailure if a homogeneous part is not a multiple of p_{j,alpha}.
std::vector<GaussianRational> decompose_h_over_p(const AlphaParam& alpha, std::uint32_t k);

/// Double-precision value of (alpha+1)_j / j!.
double binomial_coefficient(double alpha, std::uint32_t j);
/// p_{k,alpha}(z) evaluated directly in double precision (any real alpha).
std::complex<double> p_value(double alpha, std::uint32_t k, std::complex<double> z);

}  // namespace poly
}  // namespace wharm
