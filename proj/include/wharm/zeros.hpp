#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wharm/alpha.hpp"

namespace wharm::zeros {

enum class Verdict { CircleFreeInside, CircleFreeOutside, Undecided };
std::string to_string(Verdict v);

/// All zeros lie in r <= |z| <= R.
struct AnnulusCertificate {
  double r = 0.0;
  double R = 0.0;
  Verdict verdict = Verdict::Undecided;
};

/// Enestrom-Kakeya annulus of a_0 + a_1 z + ... + a_n z^n with every a_k > 0:
/// r = min a_k/a_{k+1}, R = max a_k/a_{k+1}.
/// Throws NonPositiveCoefficient, or DomainError when n < 1.
AnnulusCertificate ek_annulus(std::span<const double> coeffs);

/// EK certificate for s_{k,alpha} (coefficients (alpha+1)_j / j!), hence for p_{k,alpha} on the circle.
/// Throws DomainError if alpha <= -1 or k == 0.
AnnulusCertificate certify_p_circle_free(const AlphaParam& alpha, std::uint32_t k);

/// All roots of a_0 + a_1 z + ... + a_n z^n by Aberth-Ehrlich iteration with
/// Newton polishing. Throws DomainError on a zero leading coefficient and
/// NoConvergence if the residual contract cannot be met.
std::vector<std::complex<double>> roots(std::span<const std::complex<double>> coeffs);
/// Largest |p(root)| / sum |a_k| |root|^k over the returned roots.
double root_residual(std::span<const std::complex<double>> coeffs,
                     std::span<const std::complex<double>> rts);

/// min over the circle of |p_{k,alpha}(e^{i theta})|: grid scan plus golden-section
/// refinement around the three smallest grid values.
double min_modulus_on_circle(double alpha, std::uint32_t k, std::uint32_t grid = 4096);

}  // namespace wharm::zeros
