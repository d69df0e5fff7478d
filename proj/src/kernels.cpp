#include "wharm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>

#include "wharm/errors.hpp"
#include "wharm/hypergeom.hpp"

namespace wharm::kernels {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr std::int64_t kMaxSeriesTerms = 2'000'000;

Complex ipow(std::int64_t k, std::uint32_t m) {
  Complex base(0.0, static_cast<double>(k));
  Complex r = 1.0;
  for (std::uint32_t e = 0; e < m; ++e) r *= base;
  return r;
}

// Orders of a DiracDeriv merged so each appears once, zero weights dropped.
std::map<std::uint32_t, Complex> merged_orders(const DiracDeriv& d) {
  std::map<std::uint32_t, Complex> m;
  for (const auto& [order, w] : d.orders) m[order] += w;
  for (auto it = m.begin(); it != m.end();) {
    if (it->second == Complex(0.0)) it = m.erase(it);
    else ++it;
  }
  return m;
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

DiscPoint::DiscPoint(Complex z) : z_(z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("point is not in the open unit disc");
}

ToroidalDistribution ToroidalDistribution::dirac(std::uint32_t order, Complex weight) {
  return ToroidalDistribution(DiracDeriv{{{order, weight}}});
}

ToroidalDistribution ToroidalDistribution::constant(Complex c) {
  TrigPoly p;
  if (c != Complex(0.0)) p.coeffs[0] = c;
  return ToroidalDistribution(std::move(p));
}

Complex ToroidalDistribution::fourier(std::int64_t k) const {
  if (const auto* p = std::get_if<TrigPoly>(&rep_)) {
    auto it = p->coeffs.find(k);
    return it == p->coeffs.end() ? Complex(0.0) : it->second;
  }
  Complex sum = 0.0;
  for (const auto& [m, w] : std::get<DiracDeriv>(rep_).orders) sum += w * ipow(k, m);
  return sum;
}

ToroidalDistribution ToroidalDistribution::derivative() const {
  if (const auto* p = std::get_if<TrigPoly>(&rep_)) {
    TrigPoly d;
    for (const auto& [k, c] : p->coeffs)
      if (k != 0 && c != Complex(0.0)) d.coeffs[k] = c * Complex(0.0, static_cast<double>(k));
    return ToroidalDistribution(std::move(d));
  }
  DiracDeriv d = std::get<DiracDeriv>(rep_);
  for (auto& entry : d.orders) ++entry.first;
  return ToroidalDistribution(std::move(d));
}

double ToroidalDistribution::growth_constant() const {
  double m = 0.0;
  if (const auto* p = std::get_if<TrigPoly>(&rep_)) {
    for (const auto& [k, c] : p->coeffs) m = std::max(m, std::abs(c));
    return m;
  }
  for (const auto& [order, w] : std::get<DiracDeriv>(rep_).orders) m += std::abs(w);
  return m;
}

std::uint32_t ToroidalDistribution::growth_order() const {
  if (std::holds_alternative<TrigPoly>(rep_)) return 0;
  std::uint32_t n = 0;
  for (const auto& [order, w] : std::get<DiracDeriv>(rep_).orders) n = std::max(n, order);
  return n;
}

std::optional<std::int64_t> ToroidalDistribution::support_radius() const {
  const auto* p = std::get_if<TrigPoly>(&rep_);
  if (!p) return std::nullopt;
  std::int64_t r = 0;
  for (const auto& [k, c] : p->coeffs)
    if (c != Complex(0.0)) r = std::max<std::int64_t>(r, std::abs(k));
  return r;
}

SpectrumSet SpectrumSet::finite(std::vector<std::int64_t> m) {
  SpectrumSet s;
  s.kind = Kind::FiniteSet;
  s.members = sorted_unique(std::move(m));
  return s;
}

SpectrumSet SpectrumSet::half_line(std::int64_t from) {
  SpectrumSet s;
  s.kind = Kind::HalfLine;
  s.from = from;
  return s;
}

bool SpectrumSet::contains(std::int64_t k) const {
  switch (kind) {
    case Kind::FiniteSet:
      return std::binary_search(members.begin(), members.end(), k);
    case Kind::HalfLine:
      if (k < from) return false;
      [[fallthrough]];
    case Kind::AllIntegers:
      return !std::binary_search(excluded.begin(), excluded.end(), k);
  }
  return false;
}

SpectrumSet intersect(const SpectrumSet& a, const SpectrumSet& b) {
  using Kind = SpectrumSet::Kind;
  if (a.kind == Kind::FiniteSet || b.kind == Kind::FiniteSet) {
    const SpectrumSet& fin = a.kind == Kind::FiniteSet ? a : b;
    const SpectrumSet& other = a.kind == Kind::FiniteSet ? b : a;
    std::vector<std::int64_t> keep;
    for (auto k : fin.members)
      if (other.contains(k)) keep.push_back(k);
    return SpectrumSet::finite(std::move(keep));
  }
  std::vector<std::int64_t> excl = a.excluded;
  excl.insert(excl.end(), b.excluded.begin(), b.excluded.end());
  SpectrumSet out;
  if (a.kind == Kind::HalfLine || b.kind == Kind::HalfLine) {
    std::int64_t from = std::numeric_limits<std::int64_t>::min();
    if (a.kind == Kind::HalfLine) from = std::max(from, a.from);
    if (b.kind == Kind::HalfLine) from = std::max(from, b.from);
    out = SpectrumSet::half_line(from);
    std::erase_if(excl, [from](std::int64_t k) { return k < from; });
  }
  out.excluded = sorted_unique(std::move(excl));
  return out;
}

Complex mobius(const DiscPoint& z) {
  const Complex w = z.value();
  return kI * (1.0 + w) / (1.0 - w);
}

Complex mobius_derivative(const DiscPoint& z) {
  const Complex d = 1.0 - z.value();
  return 2.0 * kI / (d * d);
}

Complex poisson_kernel(const AlphaParam& alpha, const DiscPoint& z) {
  const Complex w = z.value();
  const double a1 = alpha.value() + 1.0;
  const double num = std::pow(1.0 - std::norm(w), a1);
  return num / ((1.0 - w) * std::exp(a1 * std::log(1.0 - std::conj(w))));
}

namespace {

// sup_k |(alpha+1)_k / k!| / (1+k)^{max(alpha,0)}
double binomial_envelope(double alpha) {
  if (alpha >= 0.0) return std::exp(alpha);
  double best = 1.0;
  double prod = 1.0;
  const auto last = static_cast<std::uint32_t>(std::ceil(-alpha)) + 1;
  for (std::uint32_t j = 1; j <= last; ++j) {
    prod *= std::abs(1.0 + alpha / j);
    best = std::max(best, prod);
  }
  return best;
}

Complex series_sum(const AlphaParam& alpha, const ToroidalDistribution& f, Complex w, double tol) {
  const double a = alpha.value();
  const double r = std::abs(w);
  const double x = std::norm(w);
  const Complex wb = std::conj(w);

  auto negative_term = [&](std::int64_t k, Complex wbk) -> Complex {
    const Complex c = f.fourier(-k);
    if (c == Complex(0.0)) return 0.0;
    const double binom = poly::binomial_coefficient(a, static_cast<std::uint32_t>(k));
    if (binom == 0.0) return 0.0;
    return c * binom * hypergeom::f_factor(a, static_cast<std::uint32_t>(k), x) * wbk;
  };

  Complex sum = f.fourier(0);

  if (auto radius = f.support_radius()) {
    Complex wk = 1.0, wbk = 1.0;
    for (std::int64_t k = 1; k <= *radius; ++k) {
      wk *= w;
      wbk *= wb;
      sum += f.fourier(k) * wk + negative_term(k, wbk);
    }
    return sum;
  }

  if (r == 0.0) return sum;
  const double p = f.growth_order() + std::max(a, 0.0);
  const double factor_bound = a >= 0.0 ? 1.0 : std::pow(1.0 - x, a);
  const double scale = 2.0 * f.growth_constant() * binomial_envelope(a) * factor_bound;

  Complex wk = 1.0, wbk = 1.0;
  double rk = 1.0;
  for (std::int64_t k = 1; k <= kMaxSeriesTerms; ++k) {
    wk *= w;
    wbk *= wb;
    rk *= r;
    sum += f.fourier(k) * wk + negative_term(k, wbk);
    // bound for the tail starting at K = k + 1
    const double kk = static_cast<double>(k + 1);
    const double rho = std::pow((kk + 2.0) / (kk + 1.0), p) * r;
    if (rho < 1.0) {
      const double tail = scale * std::pow(1.0 + kk, p) * rk * r / (1.0 - rho);
      if (tail < tol) return sum;
    }
  }
  throw NonConvergent("Poisson series tail bound not met within the iteration cap");
}

}  // namespace

Complex poisson_kernel_series(const AlphaParam& alpha, const DiscPoint& z, double tol) {
  return series_sum(alpha, ToroidalDistribution::dirac(), z.value(), tol);
}

Complex poisson_integral(const AlphaParam& alpha, const ToroidalDistribution& f, const DiscPoint& z,
                         double tol) {
  return series_sum(alpha, f, z.value(), tol);
}

SpectrumSet spectrum(const AlphaParam& alpha) {
  if (alpha.is_negative_integer())
    return SpectrumSet::half_line(static_cast<std::int64_t>(std::llround(alpha.value())) + 1);
  return SpectrumSet::all();
}

SpectrumSet spectrum_of(const ToroidalDistribution& f) {
  if (const auto* p = std::get_if<TrigPoly>(&f.representation())) {
    std::vector<std::int64_t> keys;
    for (const auto& [k, c] : p->coeffs)
      if (c != Complex(0.0)) keys.push_back(k);
    return SpectrumSet::finite(std::move(keys));
  }
  // fourier(k) = Q(k) with Q(t) = sum_m w_m (i t)^m; remove its integer roots.
  const auto orders = merged_orders(std::get<DiracDeriv>(f.representation()));
  if (orders.empty()) return SpectrumSet::finite({});
  SpectrumSet s = SpectrumSet::all();
  const auto top = orders.rbegin();
  if (top->first == 0) return s;
  const double lead = std::abs(top->second);
  double bound = 0.0;
  for (const auto& [m, w] : orders)
    if (m != top->first) bound = std::max(bound, std::abs(w) / lead);
  const auto kmax = static_cast<std::int64_t>(std::ceil(1.0 + bound));
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    Complex q = 0.0;
    double mag = 0.0;
    for (const auto& [m, w] : orders) {
      const Complex t = w * ipow(k, m);
      q += t;
      mag += std::abs(t);
    }
    if (std::abs(q) <= 1e-12 * mag || mag == 0.0) s.excluded.push_back(k);
  }
  return s;
}

SpectrumSet spectrum_of_integral(const AlphaParam& alpha, const ToroidalDistribution& f) {
  return intersect(spectrum(alpha), spectrum_of(f));
}

Complex mobius_derivative_power(const AlphaParam& alpha, const DiscPoint& z) {
  // log phi'(z) = log 2 + i pi/2 - 2 Log(1 - z), continuous on the disc.
  const Complex log_dphi =
      Complex(std::log(2.0), std::numbers::pi / 2.0) - 2.0 * std::log(1.0 - z.value());
  return std::exp(-alpha.value() / 2.0 * log_dphi);
}

Complex pullback_constant(const AlphaParam& alpha) {
  const double a = alpha.value();
  return std::pow(2.0, a / 2.0) * std::exp(Complex(0.0, std::numbers::pi * a / 4.0));
}

Complex weighted_pullback(const AlphaParam& alpha, const PointFunction& u, const DiscPoint& z) {
  return mobius_derivative_power(alpha, z) * u(mobius(z));
}

Complex ia_power_kernel(const AlphaParam& alpha, std::uint32_t k, const DiscPoint& z) {
  if (k == 0) return poisson_kernel(alpha, z);
  return ia_power_kernel(alpha, poly::h_poly(alpha, k).to_float(), z);
}

Complex ia_power_kernel(const AlphaParam& alpha, const FloatBivarPoly& h, const DiscPoint& z) {
  return h(mobius(z)) * poisson_kernel(alpha, z);
}

Complex weighted_laplacian_fd(const std::function<double(Complex)>& weight, const PointFunction& u,
                              Complex z, double h) {
  // Five-point central differences for each partial derivative.
  auto diff = [h](const auto& f, Complex p, Complex dir) {
    return (-f(p + 2.0 * dir) + 8.0 * f(p + dir) - 8.0 * f(p - dir) + f(p - 2.0 * dir)) / (12.0 * h);
  };
  const Complex dx(h, 0.0), dy(0.0, h);
  auto g = [&](Complex p) {
    const Complex dbar = 0.5 * (diff(u, p, dx) + kI * diff(u, p, dy));
    return dbar / weight(p);
  };
  return 0.5 * (diff(g, z, dx) - kI * diff(g, z, dy));
}

Complex alpha_laplacian_disc_fd(const AlphaParam& alpha, const PointFunction& u, Complex z, double h) {
  const double a = alpha.value();
  return weighted_laplacian_fd([a](Complex p) { return std::pow(1.0 - std::norm(p), a); }, u, z, h);
}

}  // namespace wharm::kernels
