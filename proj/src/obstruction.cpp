#include "wharm/obstruction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "wharm/bivar_poly.hpp"
#include "wharm/errors.hpp"

namespace wharm::obstruction {

namespace {

void require_alpha(const AlphaParam& alpha) {
  if (!(alpha.value() > -1.0)) throw DomainError("obstruction class requires alpha > -1");
}

}  // namespace

ObstructionFunction::ObstructionFunction(AlphaParam alpha, std::vector<Complex> coeffs)
    : alpha_(std::move(alpha)), coeffs_(std::move(coeffs)) {
  require_alpha(alpha_);
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

std::optional<std::uint32_t> ObstructionFunction::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<std::uint32_t>(coeffs_.size() - 1);
}

Complex ObstructionFunction::operator()(Complex z) const {
  if (!(z.imag() > 0.0)) throw DomainError("point is not in the upper half-plane");
  const double a = alpha_.value();
  Complex sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (coeffs_[k] != Complex(0.0))
      sum += coeffs_[k] * poly::p_value(a, static_cast<std::uint32_t>(k), z);
  return std::pow(z.imag(), a + 1.0) * sum;
}

HalfPlaneFunction ObstructionFunction::handle() const {
  return [self = *this](Complex z) { return self(z); };
}

Complex eval(const ObstructionFunction& u, Complex z) { return u(z); }

std::map<std::uint32_t, Complex> v0_form(const ObstructionFunction& u) {
  if (!u.alpha().is_zero()) throw DomainError("Im(z^k) form exists only for alpha = 0");
  std::map<std::uint32_t, Complex> out;
  for (std::size_t k = 0; k < u.coeffs().size(); ++k)
    if (u.coeffs()[k] != Complex(0.0)) out[static_cast<std::uint32_t>(k + 1)] = u.coeffs()[k];
  return out;
}

ObstructionFunction from_v0_form(const std::map<std::uint32_t, Complex>& terms) {
  std::vector<Complex> c;
  for (const auto& [k, v] : terms) {
    if (k == 0) throw DomainError("Im(z^k) terms start at k = 1");
    if (c.size() < k) c.resize(k);
    c[k - 1] = v;
  }
  return ObstructionFunction(AlphaParam(), std::move(c));
}

double growth_angle_max(double alpha, std::uint32_t k) {
  const double expo = k + 2.0 * alpha + 2.0;
  auto f = [&](double theta) {
    return std::pow(std::sin(theta), expo) * std::abs(poly::p_value(alpha, k, std::polar(1.0, theta)));
  };
  constexpr int kGrid = 4096;
  const double step = std::numbers::pi / kGrid;
  std::vector<std::pair<double, int>> vals;
  vals.reserve(kGrid - 1);
  for (int j = 1; j < kGrid; ++j) vals.emplace_back(f(j * step), j);
  std::partial_sort(vals.begin(), vals.begin() + 3, vals.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = vals.front().first;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int t = 0; t < 3; ++t) {
    double lo = (vals[t].second - 1) * step, hi = (vals[t].second + 1) * step;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
      if (f1 > f2) {
        hi = x2, x2 = x1, f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1, x1 = x2, f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = f(x2);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

GrowthBound growth_bound(const ObstructionFunction& u) {
  const double a = u.alpha().value();
  GrowthBound b;
  b.radius = std::nextafter(1.0, 2.0);
  b.order = (u.is_zero() ? 0.0 : *u.degree()) + a + 1.0;
  double c = 0.0;
  for (std::size_t k = 0; k < u.coeffs().size(); ++k)
    if (u.coeffs()[k] != Complex(0.0))
      c += std::abs(u.coeffs()[k]) * growth_angle_max(a, static_cast<std::uint32_t>(k));
  // margin for the numerical maximization
  b.constant = c * (1.0 + 1e-10);
  return b;
}

Complex ray_limit(const ObstructionFunction& u, double theta) {
  if (u.is_zero()) throw DomainError("ray limit of the zero function is not defined");
  const double a = u.alpha().value();
  const std::uint32_t n = *u.degree();
  return u.coeffs().back() * std::pow(std::sin(theta), a + 1.0) *
         poly::p_value(a, n, std::polar(1.0, theta));
}

std::vector<double> default_recovery_angles() {
  return {std::numbers::pi / 2.0, std::numbers::pi / 3.0, std::numbers::pi / 5.0, 1.0};
}

LimitDecision limit_at_infinity(const std::function<Complex(double)>& g, double big_t, double tol) {
  LimitDecision d;
  d.samples = {g(big_t), g(2.0 * big_t), g(4.0 * big_t)};
  const auto& s = d.samples;
  d.extrapolated = (8.0 * s[2] - 6.0 * s[1] + s[0]) / 3.0;
  constexpr double kSlack = 1.0 + 1e-9;
  const bool decays = std::abs(s[1]) <= 0.5 * std::abs(s[0]) * kSlack + tol &&
                      std::abs(s[2]) <= 0.5 * std::abs(s[1]) * kSlack + tol;
  d.vanishes = std::abs(d.extrapolated) < tol && decays;
  return d;
}

namespace {

struct RayFit {
  double theta;
  std::vector<Complex> a;  // u(t e^{i theta}) / t^{alpha+1} = sum a_k t^k
};

RayFit fit_ray(const HalfPlaneFunction& f, double alpha, std::uint32_t n, double theta) {
  const int m = static_cast<int>(n) + 1;
  Eigen::MatrixXcd v(m, m);
  Eigen::VectorXcd rhs(m);
  for (int r = 0; r < m; ++r) {
    // Chebyshev nodes on [1/2, 2]
    const double t = 1.25 + 0.75 * std::cos(std::numbers::pi * (2.0 * r + 1.0) / (2.0 * m));
    double tk = 1.0;
    for (int c = 0; c < m; ++c, tk *= t) v(r, c) = tk;
    rhs(r) = f(std::polar(t, theta)) / std::pow(t, alpha + 1.0);
  }
  const Eigen::VectorXcd sol = v.partialPivLu().solve(rhs);
  RayFit fit{theta, std::vector<Complex>(sol.data(), sol.data() + m)};
  return fit;
}

}  // namespace

RecoveryResult recover_coefficients(const AlphaParam& alpha, const HalfPlaneFunction& evaluator,
                                    std::uint32_t n_max, const std::vector<double>& thetas,
                                    const RecoveryOptions& opts) {
  require_alpha(alpha);
  if (thetas.empty()) throw DomainError("no recovery angles given");
  for (double th : thetas)
    if (!(th > 0.0 && th < std::numbers::pi)) throw DomainError("recovery angles must lie in (0, pi)");
  const double a = alpha.value();

  std::vector<std::optional<RayFit>> fits(thetas.size());
  auto fit_for = [&](std::size_t idx) -> const RayFit& {
    if (!fits[idx]) fits[idx] = fit_ray(evaluator, a, n_max, thetas[idx]);
    return *fits[idx];
  };

  RecoveryResult res;
  res.coeffs.resize(n_max + 1);
  res.angle_used.resize(n_max + 1);
  std::size_t top_idx = 0;
  for (std::uint32_t k = 0; k <= n_max; ++k) {
    bool done = false;
    for (std::size_t idx = 0; idx < thetas.size() && !done; ++idx) {
      const Complex pk = poly::p_value(a, k, std::polar(1.0, thetas[idx]));
      if (std::abs(pk) < opts.degenerate) continue;
      const double s = std::pow(std::sin(thetas[idx]), a + 1.0);
      res.coeffs[k] = fit_for(idx).a[k] / (s * pk);
      res.angle_used[k] = thetas[idx];
      if (k == n_max) top_idx = idx;
      done = true;
    }
    if (!done)
      throw AngleDegenerate("p_" + std::to_string(k) + " vanishes at every recovery angle");
  }

  // Cross-check the top coefficient against the extrapolated ray limit.
  const double theta = thetas[top_idx];
  const double s = std::pow(std::sin(theta), a + 1.0);
  const Complex pn = poly::p_value(a, n_max, std::polar(1.0, theta));
  auto g = [&](double t) {
    return evaluator(std::polar(t, theta)) / std::pow(t, n_max + a + 1.0) / (s * pn);
  };
  const auto lim = limit_at_infinity(g, opts.big_t, opts.tol);
  res.extrapolation_gap = std::abs(lim.extrapolated - res.coeffs[n_max]);
  if (res.extrapolation_gap > opts.tol * std::max(1.0, std::abs(res.coeffs[n_max])))
    throw IllConditioned("fitted top coefficient disagrees with the extrapolated ray limit");

  // Residual of the reconstruction at points off the fitting rays.
  const ObstructionFunction rebuilt(alpha, res.coeffs);
  for (double r : {0.6, 1.0, 1.7}) {
    for (double th : {0.4, 1.3, 2.5}) {
      const Complex z = std::polar(r, th);
      const Complex want = evaluator(z);
      res.residual = std::max(res.residual, std::abs(want - rebuilt(z)) / std::max(1.0, std::abs(want)));
    }
  }
  return res;
}

bool sequence_ratio_vanishes(const std::vector<std::pair<Complex, Complex>>& samples, double alpha,
                             double tol) {
  if (samples.empty()) throw DomainError("sequence test needs at least one sample");
  const std::size_t tail = std::min<std::size_t>(3, samples.size());
  for (std::size_t j = samples.size() - tail; j < samples.size(); ++j) {
    const auto& [z, uz] = samples[j];
    if (!(z.imag() > 0.0)) throw DomainError("sample point is not in the upper half-plane");
    if (!(std::abs(uz / std::pow(z.imag(), alpha + 1.0)) < tol)) return false;
  }
  return true;
}

bool uniqueness_test_sequence(const std::vector<std::pair<Complex, Complex>>& samples,
                              const AlphaParam& alpha, double tol) {
  require_alpha(alpha);
  if (alpha.is_zero()) throw DomainError("the sequence test is not valid for alpha = 0");
  return sequence_ratio_vanishes(samples, alpha.value(), tol);
}

bool vanishes_along_geodesic(const HalfPlaneFunction& u, double x, double tol, double big_t) {
  auto g = [&](double y) { return u(Complex(x, y)) / y; };
  return limit_at_infinity(g, big_t, tol).vanishes;
}

bool uniqueness_test_geodesics(const HalfPlaneFunction& u, double x1, double x2, double tol,
                               double big_t) {
  if (x1 == x2) throw DomainError("geodesic test needs two distinct abscissae");
  return vanishes_along_geodesic(u, x1, tol, big_t) && vanishes_along_geodesic(u, x2, tol, big_t);
}

bool uniqueness_test_rays(const HalfPlaneFunction& u, const angles::FunctionOfAngles& foa, double tol,
                          std::uint32_t n_max, double big_t) {
  const auto rep = angles::is_admissible(foa);
  if (!rep.admissible) throw NotAdmissible("family of angles is not admissible", *rep.witness_failure);
  std::vector<angles::AngleEta> pairs;
  if (foa.is_finite()) {
    pairs = foa.pairs();
  } else {
    // Degrees up to n_max + 1 are covered once the prefix lcm exceeds n_max + 1.
    std::uint64_t l = 1;
    std::size_t n = 0;
    while (l <= n_max + 1ull) {
      ++n;
      if (foa.length() && n > *foa.length()) break;
      pairs = foa.prefix(n);
      l = angles::checked_lcm(l, angles::d_of(pairs.back().angle));
    }
  }
  for (const auto& p : pairs) {
    const double theta = p.angle.value();
    const double eta = static_cast<double>(p.eta);
    auto g = [&](double t) { return u(std::polar(t, theta)) / std::pow(t, eta); };
    if (!limit_at_infinity(g, big_t, tol).vanishes) return false;
  }
  return true;
}

RaySample sample_ray(const HalfPlaneFunction& u, double theta, const std::vector<double>& t_values) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) throw DomainError("ray angle must lie in (0, pi)");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] > 0.0)) throw DomainError("ray parameters must be positive");
    if (i > 0 && !(t_values[i] > t_values[i - 1])) throw DomainError("ray parameters must increase");
  }
  RaySample s;
  s.theta = theta;
  s.t_values = t_values;
  s.u_values.reserve(t_values.size());
  for (double t : t_values) s.u_values.push_back(u(std::polar(t, theta)));
  return s;
}

}  // namespace wharm::obstruction
