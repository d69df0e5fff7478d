#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wharm/alpha.hpp"
#include "wharm/angles.hpp"

namespace wharm::obstruction {

using Complex = std::complex<double>;
using HalfPlaneFunction = std::function<Complex(Complex)>;

/// u(z) = sum_k c_k (Im z)^{alpha+1} p_{k,alpha}(z), an element of V_{alpha,n}.
class ObstructionFunction {
 public:
  /// Throws DomainError unless alpha > -1. Trailing zero coefficients are trimmed.
  ObstructionFunction(AlphaParam alpha, std::vector<Complex> coeffs);

  const AlphaParam& alpha() const noexcept { return alpha_; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Index of the last nonzero coefficient; nullopt for the zero function.
  std::optional<std::uint32_t> degree() const;

  /// Throws DomainError if Im z <= 0.
  Complex operator()(Complex z) const;
  HalfPlaneFunction handle() const;

 private:
  AlphaParam alpha_;
  std::vector<Complex> coeffs_;
};

Complex eval(const ObstructionFunction& u, Complex z);

/// For alpha = 0: coefficients of sum c_k Im(z^k), keyed by k = 1..n+1.
std::map<std::uint32_t, Complex> v0_form(const ObstructionFunction& u);
/// Inverse of v0_form. Keys must be >= 1.
ObstructionFunction from_v0_form(const std::map<std::uint32_t, Complex>& terms);

struct GrowthBound {
  double order = 0.0;     // n + alpha + 1
  double constant = 0.0;  // C >= 0
  double radius = 1.0;    // R > 1
};

/// |u(z)| <= C (|z|^2/Im z)^{n+alpha+1} for |z| >= 1, with
/// C = sum |c_k| max_theta sin^{k+2alpha+2}(theta) |p_{k,alpha}(e^{i theta})|.
GrowthBound growth_bound(const ObstructionFunction& u);
/// max over 0 < theta < pi of sin^{k+2alpha+2}(theta) |p_{k,alpha}(e^{i theta})|.
double growth_angle_max(double alpha, std::uint32_t k);

/// lim u(t e^{i theta}) / t^{n+alpha+1} = c_n sin^{alpha+1}(theta) p_{n,alpha}(e^{i theta}).
Complex ray_limit(const ObstructionFunction& u, double theta);

struct RecoveryOptions {
  double tol = 1e-6;           // allowed gap between the fit and the ray-limit extrapolation
  double big_t = 1e3;          // T in the {T, 2T, 4T} extrapolation
  double degenerate = 1e-6;    // |p_k(e^{i theta})| below this marks the angle unusable for k
};

struct RecoveryResult {
  std::vector<Complex> coeffs;        // c_0..c_{n_max}
  std::vector<double> angle_used;     // per coefficient
  double residual = 0.0;              // max |u - reconstruction| / max(1, |u|) on check points
  double extrapolation_gap = 0.0;     // |fit - Richardson ray limit| for the top coefficient
};

/// Recovers c_0..c_{n_max} of an evaluator assumed to lie in V_{alpha,n_max}.
/// Throws AngleDegenerate if no angle in `thetas` resolves some p_k, and
/// IllConditioned if the fitted top coefficient disagrees with the ray limit.
RecoveryResult recover_coefficients(const AlphaParam& alpha, const HalfPlaneFunction& evaluator,
                                    std::uint32_t n_max, const std::vector<double>& thetas,
                                    const RecoveryOptions& opts = {});
/// Default angles: pi/2, then pi/3, pi/5 and 1 rad as fallbacks.
std::vector<double> default_recovery_angles();

/// Decision on lim_{t -> inf} g(t) = 0 from g(T), g(2T), g(4T).
struct LimitDecision {
  bool vanishes = false;
  Complex extrapolated;            // Richardson estimate of the limit
  std::array<Complex, 3> samples;  // g(T), g(2T), g(4T)
};
/// Vanishing means |Richardson limit| < tol and |g(2^{j+1}T)| <= |g(2^j T)|/2 + tol.
LimitDecision limit_at_infinity(const std::function<Complex(double)>& g, double big_t, double tol);

/// u(z_j)/(Im z_j)^{alpha+1} -> 0 across the last three samples. No alpha guard.
bool sequence_ratio_vanishes(const std::vector<std::pair<Complex, Complex>>& samples, double alpha,
                             double tol);
/// Sequence test for alpha != 0 (throws DomainError at alpha = 0 or alpha <= -1).
bool uniqueness_test_sequence(const std::vector<std::pair<Complex, Complex>>& samples,
                              const AlphaParam& alpha, double tol = 1e-6);

/// lim_{y -> inf} u(x+iy)/y = 0 along the single vertical geodesic through x.
bool vanishes_along_geodesic(const HalfPlaneFunction& u, double x, double tol = 1e-6,
                             double big_t = 1e3);
/// Two-geodesic test within V_0 (throws DomainError if x1 == x2).
bool uniqueness_test_geodesics(const HalfPlaneFunction& u, double x1, double x2, double tol = 1e-6,
                               double big_t = 1e3);

/// lim u(t e^{i theta}) / t^{eta(theta)} = 0 for every angle of an admissible family.
/// Lazy families are materialized until their prefix covers degrees up to n_max.
/// Throws NotAdmissible if the family is not admissible.
bool uniqueness_test_rays(const HalfPlaneFunction& u, const angles::FunctionOfAngles& foa,
                          double tol = 1e-6, std::uint32_t n_max = 64, double big_t = 1e3);

/// Sampled u along a ray or vertical geodesic.
struct RaySample {
  double theta = 0.0;
  std::vector<double> t_values;
  std::vector<Complex> u_values;
};
/// Throws DomainError unless 0 < theta < pi and t is strictly increasing and positive.
RaySample sample_ray(const HalfPlaneFunction& u, double theta, const std::vector<double>& t_values);

}  // namespace wharm::obstruction
