#include "wharm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "wharm/angles.hpp"
#include "wharm/bivar_poly.hpp"
#include "wharm/errors.hpp"
#include "wharm/hypergeom.hpp"
#include "wharm/kernels.hpp"
#include "wharm/obstruction.hpp"
#include "wharm/rng.hpp"
#include "wharm/zeros.hpp"

namespace wharm::verify {

using Complex = std::complex<double>;

void RunReport::record(std::string name, bool pass, double residual, std::string note) {
  ++cases;
  if (!pass) ++failures;
  if (std::isfinite(residual)) max_residual = std::max(max_residual, std::abs(residual));
  details.push_back({std::move(name), pass, residual, std::move(note)});
}

void RunReport::merge(const RunReport& other) {
  for (const auto& c : other.details) record(other.suite + "/" + c.name, c.pass, c.residual, c.note);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hypergeom", "poly-kernel", "pullback",
                                              "obstruction", "zeros", "angles"};
  return names;
}

namespace {

double tol_or(const Options& o, double fallback) { return o.tol.value_or(fallback); }
std::size_t cases_or(const Options& o, std::size_t fallback) { return o.cases.value_or(fallback); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Runs a check, turning library errors into a failed record.
void guarded(RunReport& rep, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rep.record(name, false, INFINITY, e.what());
  }
}

const std::vector<Rational>& exact_alphas() {
  static const std::vector<Rational> a{Rational(-9, 10), Rational(-1, 2), Rational(0), Rational(1, 2),
                                      Rational(1),       Rational(3),     Rational(7, 2)};
  return a;
}

}  // namespace

// ---------------------------------------------------------------- hypergeom

RunReport run_hypergeom(const Options& opts) {
  RunReport rep;
  rep.suite = "hypergeom";
  rep.seed = opts.seed;
  Rng rng(opts.seed);
  const double tol = tol_or(opts, 1e-10);
  // Rounding allowance: the upper bounds are equalities for some (alpha, k).
  constexpr double kBoundUlps = 1e-13;

  const std::size_t draws = cases_or(opts, 100);
  for (std::size_t i = 0; i < draws; ++i) {
    const double a = rng.uniform(-3.0, 3.0), b = rng.uniform(-3.0, 3.0);
    const double c = rng.uniform(0.5, 4.0), x = rng.uniform(0.0, 0.9);
    guarded(rep, "euler/" + std::to_string(i), [&] {
      const double direct = hypergeom::hyp2f1({a, b, c, 1e-16}, x, hypergeom::Route::Direct);
      const double euler = hypergeom::hyp2f1({a, b, c, 1e-16}, x, hypergeom::Route::Euler);
      const double err = std::abs(direct - euler) / std::max(1.0, std::abs(direct));
      rep.record("euler/" + std::to_string(i), err < tol, err);
    });
  }

  for (double alpha : {-0.9, -0.5, 0.5, 1.0, 2.5}) {
    for (std::uint32_t k = 1; k <= 10; ++k) {
      const std::string name = "gauss-limit/a=" + fmt(alpha) + "/k=" + std::to_string(k);
      guarded(rep, name, [&] {
        const double lim = hypergeom::gauss_limit(alpha, k);
        double prev = INFINITY;
        bool ok = true;
        for (double x : {0.9, 0.99, 0.999}) {
          const double gap = std::abs(hypergeom::f_factor(alpha, k, x) - lim);
          ok = ok && gap <= prev;
          prev = gap;
        }
        rep.record(name, ok, 0.0, "final gap " + fmt(prev));
      });
    }
  }

  for (double alpha : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5}) {
    for (std::uint32_t k : {1u, 3u, 8u}) {
      const std::string name = "monotone-x/a=" + fmt(alpha) + "/k=" + std::to_string(k);
      guarded(rep, name, [&] {
        double prev = hypergeom::f_factor(alpha, k, 0.0);
        bool ok = true;
        for (int j = 1; j < 100; ++j) {
          const double v = hypergeom::f_factor(alpha, k, j / 100.0);
          if (alpha >= 0.0) ok = ok && v <= prev * (1.0 + 1e-15);
          if (alpha <= 0.0) ok = ok && v >= prev * (1.0 - 1e-15);
          prev = v;
        }
        rep.record(name, ok);
      });
    }
  }

  for (std::uint32_t k = 1; k <= 8; ++k) {
    const std::string name = "monotone-alpha/k=" + std::to_string(k);
    guarded(rep, name, [&] {
      bool ok = true;
      for (int j = 1; j < 100; ++j) {
        const double x = j / 100.0;
        double prev = INFINITY;
        for (int i = 0; i <= 39; ++i) {
          const double v = hypergeom::f_factor(-0.95 + 0.1 * i, k, x);
          ok = ok && v < prev;
          prev = v;
        }
      }
      rep.record(name, ok);
    });
  }

  for (double alpha : {-0.5, 0.5, 1.0, 2.0}) {
    for (std::uint32_t k = 1; k <= 8; ++k) {
      const std::string name = "quadrature/a=" + fmt(alpha) + "/k=" + std::to_string(k);
      guarded(rep, name, [&] {
        double worst = 0.0;
        for (double x : {0.0, 0.3, 0.7, 0.95})
          worst = std::max(worst, std::abs(hypergeom::f_factor(alpha, k, x) -
                                           hypergeom::f_factor_quadrature(alpha, k, x)));
        rep.record(name, worst < tol, worst);
      });
    }
  }

  for (std::uint32_t k = 1; k <= 10; ++k) {
    const std::string name = "bound-log/k=" + std::to_string(k);
    guarded(rep, name, [&] {
      double slack = INFINITY;
      for (int j = 1; j < 1000; ++j) {
        const double x = j / 1000.0;
        const double b = hypergeom::bound_log(k, x);
        slack = std::min(slack, (b - hypergeom::f_factor(-1.0, k, x)) / b);
      }
      rep.record(name, slack >= -kBoundUlps, std::min(slack, 0.0));
    });
  }
  for (double alpha : {-1.2, -1.5, -2.0, -3.0, -4.5}) {
    for (std::uint32_t k = 1; k <= 8; ++k) {
      const std::string name = "bound-below-minus1/a=" + fmt(alpha) + "/k=" + std::to_string(k);
      guarded(rep, name, [&] {
        double slack = INFINITY;
        for (int j = 0; j < 1000; ++j) {
          const double x = j / 1000.0;
          const double b = hypergeom::bound_below_minus1(alpha, k, x);
          slack = std::min(slack, (b - hypergeom::f_factor(alpha, k, x)) / b);
        }
        // From below, f (1-x)^{-(alpha+1)} stays above min(1, k/(-alpha-1)),
        // the smaller of its values at x = 0 and x -> 1.
        const double floor_value = std::min(1.0, k / (-alpha - 1.0));
        bool lower = true;
        for (double x : {0.9, 0.99})
          lower = lower && hypergeom::f_factor(alpha, k, x) * std::pow(1.0 - x, -(alpha + 1.0)) >=
                               floor_value * (1.0 - kBoundUlps);
        rep.record(name, slack >= -kBoundUlps && lower, std::min(slack, 0.0));
      });
    }
  }
  return rep;
}

// ---------------------------------------------------------------- poly-kernel

RunReport run_poly_kernel(const Options& opts) {
  RunReport rep;
  rep.suite = "poly-kernel";
  rep.seed = opts.seed;
  Rng rng(opts.seed);

  for (const auto& q : exact_alphas()) {
    const AlphaParam alpha(q);
    const std::string tag = "a=" + format_rational(q);
    guarded(rep, "kernel/" + tag, [&] {
      bool ok = true;
      for (std::uint32_t k = 0; k <= 20; ++k) ok = ok && poly::d_alpha(alpha, poly::p_poly(alpha, k)).is_zero();
      rep.record("kernel/" + tag, ok);
    });
    guarded(rep, "null-space/" + tag, [&] {
      bool ok = true;
      for (std::uint32_t k = 0; k <= 6; ++k) {
        const auto basis = poly::homogeneous_kernel_basis(alpha, k);
        if (basis.size() != 1) {
          ok = false;
          continue;
        }
        // The basis vector must be a multiple of p_k: compare after scaling by the z^k coefficient.
        const GaussianRational lead = basis[0].coefficient(k, 0);
        ok = ok && !lead.is_zero() && basis[0] * (GaussianRational(Rational(1)) / lead) == poly::p_poly(alpha, k);
      }
      rep.record("null-space/" + tag, ok);
    });
    guarded(rep, "h-degree/" + tag, [&] {
      const auto hs = poly::h_sequence(alpha, 20);
      bool ok = true;
      for (std::uint32_t k = 0; k <= 20; ++k) ok = ok && hs[k].degree() <= k;
      rep.record("h-degree/" + tag, ok);
    });
    guarded(rep, "h-decomposition/" + tag, [&] {
      bool ok = true;
      for (std::uint32_t k = 0; k <= 12; ++k) {
        const auto b = poly::decompose_h_over_p(alpha, k);
        BivarPoly sum;
        for (std::uint32_t j = 0; j <= k; ++j) sum += poly::p_poly(alpha, j) * b[j];
        ok = ok && (sum - poly::h_poly(alpha, k)).is_zero();
      }
      rep.record("h-decomposition/" + tag, ok);
    });
  }

  guarded(rep, "geometric-sum", [&] {
    bool ok = true;
    const AlphaParam zero;
    const BivarPoly diff = BivarPoly::z() - BivarPoly::zbar();
    for (std::uint32_t k = 0; k <= 20; ++k)
      ok = ok && diff * poly::p_poly(zero, k) == BivarPoly::monomial(k + 1, 0) - BivarPoly::monomial(0, k + 1);
    rep.record("geometric-sum", ok);
  });

  const std::size_t n = cases_or(opts, 20);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name = "scaling/" + std::to_string(i);
    guarded(rep, name, [&] {
      auto draw = [&] {
        Rational q(rng.integer(-9, 9), rng.integer(1, 9));
        q.canonicalize();
        return q;
      };
      const Rational t = draw();
      const GaussianRational z(draw(), draw());
      const auto& q = exact_alphas()[static_cast<std::size_t>(rng.integer(0, 6))];
      const auto k = static_cast<std::uint32_t>(rng.integer(0, 12));
      const BivarPoly p = poly::p_poly(AlphaParam(q), k);
      Rational tk = 1;
      for (std::uint32_t e = 0; e < k; ++e) tk *= t;
      rep.record(name, p.evaluate(z * GaussianRational(t)) == p.evaluate(z) * GaussianRational(tk));
    });
  }
  return rep;
}

// ---------------------------------------------------------------- pullback

RunReport run_pullback(const Options& opts) {
  RunReport rep;
  rep.suite = "pullback";
  rep.seed = opts.seed;
  Rng rng(opts.seed);
  auto disc_point = [&](double radius) {
    return std::polar(radius * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * std::numbers::pi));
  };

  const std::size_t points = cases_or(opts, 100);
  const double tol_identity = tol_or(opts, 1e-8);
  for (double a : {-0.5, 0.5, 1.0}) {
    const AlphaParam alpha(a);
    std::vector<Complex> zs(points);
    for (auto& z : zs) z = disc_point(0.8);
    for (std::uint32_t k = 0; k <= 5; ++k) {
      const std::string name = "ia-kernel/a=" + fmt(a) + "/k=" + std::to_string(k);
      guarded(rep, name, [&] {
        const FloatBivarPoly h = poly::h_poly(alpha, k).to_float();
        const auto f = kernels::ToroidalDistribution::dirac(k);
        double worst = 0.0;
        for (const auto& z : zs) {
          const kernels::DiscPoint p(z);
          worst = std::max(worst, std::abs(kernels::ia_power_kernel(alpha, h, p) -
                                           kernels::poisson_integral(alpha, f, p)));
        }
        rep.record(name, worst < tol_identity, worst);
      });
    }
  }

  const double tol_series = tol_or(opts, 1e-10);
  for (double a : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5}) {
    const std::string name = "closed-vs-series/a=" + fmt(a);
    guarded(rep, name, [&] {
      const AlphaParam alpha(a);
      double worst = 0.0;
      for (int i = 1; i <= 20; ++i) {
        for (int j = 0; j < 20; ++j) {
          const kernels::DiscPoint p(std::polar(0.9 * i / 20.0, 2.0 * std::numbers::pi * j / 20.0));
          worst = std::max(worst, std::abs(kernels::poisson_kernel(alpha, p) -
                                           kernels::poisson_kernel_series(alpha, p)));
        }
      }
      rep.record(name, worst < tol_series, worst);
    });
  }

  guarded(rep, "im-phi", [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const Complex z = disc_point(0.95);
      const double want = (1.0 - std::norm(z)) / std::norm(1.0 - z);
      worst = std::max(worst, std::abs(kernels::mobius(kernels::DiscPoint(z)).imag() - want) / std::max(1.0, want));
    }
    rep.record("im-phi", worst < 1e-13, worst);
  });

  guarded(rep, "ia-phi", [&] {
    // d/dtheta phi(r e^{i theta}) = (phi^2 + 1)/2
    double worst = 0.0;
    const double h = 1e-4;
    for (std::size_t i = 0; i < points; ++i) {
      const Complex z = disc_point(0.8);
      const double r = std::abs(z), th = std::arg(z);
      auto phi = [&](double t) { return kernels::mobius(kernels::DiscPoint(std::polar(r, t))); };
      const Complex d = (-phi(th + 2 * h) + 8.0 * phi(th + h) - 8.0 * phi(th - h) + phi(th - 2 * h)) / (12.0 * h);
      const Complex f = phi(th);
      worst = std::max(worst, std::abs(d - 0.5 * (f * f + 1.0)) / std::max(1.0, std::abs(f * f)));
    }
    rep.record("ia-phi", worst < 1e-6, worst);
  });

  for (double a : {-0.5, 0.0, 0.5, 1.0, 2.5}) {
    const std::string name = "alpha-harmonic/a=" + fmt(a);
    guarded(rep, name, [&] {
      const AlphaParam alpha(a);
      auto pk = [&](Complex z) { return kernels::poisson_kernel(alpha, kernels::DiscPoint(z)); };
      double worst = 0.0;
      for (int i = 0; i < 20; ++i)
        worst = std::max(worst, std::abs(kernels::alpha_laplacian_disc_fd(alpha, pk, disc_point(0.7))));
      rep.record(name, worst < 1e-4, worst);
    });
  }

  const double tol_intertwine = tol_or(opts, 1e-9);
  for (std::size_t i = 0; i < 10; ++i) {
    const std::string name = "intertwining/" + std::to_string(i);
    guarded(rep, name, [&] {
      kernels::TrigPoly tp;
      const auto deg = rng.integer(1, 5);
      for (std::int64_t k = -deg; k <= deg; ++k) tp.coeffs[k] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const kernels::ToroidalDistribution f(tp);
      const AlphaParam alpha(rng.uniform(-0.9, 2.0));
      const Complex z = disc_point(0.8);
      const double r = std::abs(z), th = std::arg(z), h = 1e-3;
      auto u = [&](double t) { return kernels::poisson_integral(alpha, f, kernels::DiscPoint(std::polar(r, t))); };
      const Complex d = (-u(th + 2 * h) + 8.0 * u(th + h) - 8.0 * u(th - h) + u(th - 2 * h)) / (12.0 * h);
      const double err = std::abs(d - kernels::poisson_integral(alpha, f.derivative(), kernels::DiscPoint(z)));
      rep.record(name, err < tol_intertwine, err);
    });
  }

  guarded(rep, "spectrum-negative-integer", [&] {
    // alpha = -2 kills every frequency below -1.
    const AlphaParam alpha(Rational(-2));
    kernels::TrigPoly tp;
    tp.coeffs[-2] = 1.0;
    tp.coeffs[-5] = Complex(0.0, 3.0);
    const kernels::ToroidalDistribution f(tp);
    const double v = std::abs(kernels::poisson_integral(alpha, f, kernels::DiscPoint({0.3, 0.4})));
    rep.record("spectrum-negative-integer", v == 0.0 && kernels::spectrum_of_integral(alpha, f).is_empty(), v);
  });
  return rep;
}

// ---------------------------------------------------------------- obstruction

namespace {

obstruction::ObstructionFunction random_member(Rng& rng, const AlphaParam& alpha, std::uint32_t n,
                                               double bound) {
  std::vector<Complex> c(n + 1);
  for (auto& v : c) v = Complex(rng.uniform(-bound, bound), rng.uniform(-bound, bound));
  return obstruction::ObstructionFunction(alpha, std::move(c));
}

// Real combination sum_{k=1}^{m} c_k Im(z^k) with a nonzero top term.
obstruction::ObstructionFunction random_v0(Rng& rng, std::uint32_t max_k) {
  std::map<std::uint32_t, Complex> terms;
  const auto m = static_cast<std::uint32_t>(rng.integer(1, max_k));
  for (std::uint32_t k = 1; k <= m; ++k) terms[k] = rng.uniform(-1.0, 1.0);
  terms[m] = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.5, 1.0);
  return obstruction::from_v0_form(terms);
}

}  // namespace

RunReport run_obstruction(const Options& opts) {
  RunReport rep;
  rep.suite = "obstruction";
  rep.seed = opts.seed;
  Rng rng(opts.seed);
  const double tol = tol_or(opts, 1e-6);
  const std::size_t n_cases = cases_or(opts, 20);

  for (double a : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    const AlphaParam alpha(a);
    for (std::size_t i = 0; i < n_cases; ++i) {
      const std::string name = "recovery/a=" + fmt(a) + "/" + std::to_string(i);
      guarded(rep, name, [&] {
        const auto n = static_cast<std::uint32_t>(rng.integer(0, 5));
        const auto u = random_member(rng, alpha, n, 10.0);
        const auto res =
            obstruction::recover_coefficients(alpha, u.handle(), 5, obstruction::default_recovery_angles());
        double err = 0.0;
        for (std::uint32_t k = 0; k <= 5; ++k) {
          const Complex want = k < u.coeffs().size() ? u.coeffs()[k] : Complex(0.0);
          err = std::max(err, std::abs(res.coeffs[k] - want));
        }
        rep.record(name, err < tol, err);
      });
    }
  }

  for (std::size_t i = 0; i < n_cases; ++i) {
    const std::string name = "growth/" + std::to_string(i);
    guarded(rep, name, [&] {
      const AlphaParam alpha(rng.uniform(-0.9, 3.0));
      const auto u = random_member(rng, alpha, static_cast<std::uint32_t>(rng.integer(0, 5)), 10.0);
      const auto gb = obstruction::growth_bound(u);
      double worst = 0.0;
      for (int j = 0; j < 10000; ++j) {
        const Complex z = std::polar(std::exp(rng.uniform(0.0, 5.0)), rng.uniform(1e-3, std::numbers::pi - 1e-3));
        const double bound = gb.constant * std::pow(std::norm(z) / z.imag(), gb.order);
        worst = std::max(worst, std::abs(u(z)) / bound);
      }
      rep.record(name, worst <= 1.0, worst);
    });
  }

  for (double a : {-0.5, 0.5, 1.0, 2.0}) {
    const AlphaParam alpha(a);
    for (std::size_t i = 0; i < 5; ++i) {
      const std::string name = "sequence/a=" + fmt(a) + "/" + std::to_string(i);
      guarded(rep, name, [&] {
        const auto u = random_member(rng, alpha, 5, 10.0);
        const obstruction::ObstructionFunction zero(alpha, {});
        bool ok = true;
        for (int s = 0; s < 5; ++s) {
          std::vector<std::pair<Complex, Complex>> nonzero, zeros;
          for (int j = 1; j <= 12; ++j) {
            const Complex z = std::polar(std::pow(10.0, j / 2.0) * rng.uniform(1.0, 2.0),
                                         rng.uniform(0.1, std::numbers::pi - 0.1));
            nonzero.emplace_back(z, u(z));
            zeros.emplace_back(z, zero(z));
          }
          ok = ok && !obstruction::uniqueness_test_sequence(nonzero, alpha, tol) &&
               obstruction::uniqueness_test_sequence(zeros, alpha, tol);
        }
        rep.record(name, ok);
      });
    }
  }

  for (std::size_t i = 0; i < n_cases; ++i) {
    const std::string name = "geodesics/" + std::to_string(i);
    guarded(rep, name, [&] {
      const auto u = random_v0(rng, 7);
      const double x1 = rng.uniform(-3.0, 3.0);
      double x2 = rng.uniform(-3.0, 3.0);
      if (x2 == x1) x2 += 1.0;
      const obstruction::ObstructionFunction zero(AlphaParam(), {});
      rep.record(name, !obstruction::uniqueness_test_geodesics(u.handle(), x1, x2, tol) &&
                           obstruction::uniqueness_test_geodesics(zero.handle(), x1, x2, tol));
    });
  }
  guarded(rep, "geodesics/one-geodesic-counterexample", [&] {
    // Im((z-1)^2) vanishes on Re z = 1 but not on Re z = 0.
    auto u = [](Complex z) { return Complex(((z - 1.0) * (z - 1.0)).imag(), 0.0); };
    const bool both = obstruction::uniqueness_test_geodesics(u, 1.0, 0.0, tol);
    const bool one = obstruction::vanishes_along_geodesic(u, 1.0, tol);
    rep.record("geodesics/one-geodesic-counterexample", !both && one);
  });

  const auto family = angles::construct_finite(
      {angles::Angle::rational(1, 2), angles::Angle::rational(1, 3), angles::Angle::rational(1, 5)},
      angles::Angle::irrational("one", 1.0));
  for (std::size_t i = 0; i < n_cases; ++i) {
    const std::string name = "rays/" + std::to_string(i);
    guarded(rep, name, [&] {
      const auto u = random_v0(rng, 9);
      const obstruction::ObstructionFunction zero(AlphaParam(), {});
      rep.record(name, !obstruction::uniqueness_test_rays(u.handle(), family, tol) &&
                           obstruction::uniqueness_test_rays(zero.handle(), family, tol));
    });
  }

  for (double a : {-0.5, 0.0, 1.0, 2.0}) {
    const std::string name = "alpha-harmonic/a=" + fmt(a);
    guarded(rep, name, [&] {
      const AlphaParam alpha(a);
      const auto u = random_member(rng, alpha, 3, 1.0);
      auto w = [a](Complex z) { return std::pow(z.imag(), a); };
      double worst = 0.0;
      for (int j = 0; j < 20; ++j) {
        const Complex z(rng.uniform(-1.5, 1.5), rng.uniform(0.5, 1.5));
        worst = std::max(worst, std::abs(kernels::weighted_laplacian_fd(w, u.handle(), z)));
      }
      rep.record(name, worst < 1e-4, worst);
    });
  }

  for (std::uint32_t n : {1u, 3u, 5u}) {
    const std::string name = "geodesic-asymptotics/n=" + std::to_string(n);
    guarded(rep, name, [&] {
      std::map<std::uint32_t, Complex> terms;
      for (std::uint32_t k = 1; k <= n + 1; ++k) terms[k] = rng.uniform(-1.0, 1.0);
      const auto u = obstruction::from_v0_form(terms);
      const double x = rng.uniform(-2.0, 2.0), y = 1e4;
      const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
      const Complex want = terms[n + 1] * double(n + 1) * sign * x + terms[n] * sign;
      const double err = std::abs(u(Complex(x, y)) / std::pow(y, n) - want);
      rep.record(name, err < 1e-3, err);
    });
  }

  for (double a : {-0.5, 0.5, 1.0}) {
    const std::string name = "relaxed-growth/a=" + fmt(a);
    guarded(rep, name, [&] {
      const AlphaParam alpha(a);
      const auto n = static_cast<std::uint32_t>(rng.integer(0, 4));
      const auto u = random_member(rng, alpha, n, 10.0);
      const auto res =
          obstruction::recover_coefficients(alpha, u.handle(), n + 1, obstruction::default_recovery_angles());
      const double top = std::abs(res.coeffs[n + 1]);
      rep.record(name, top < tol, top);
    });
  }

  guarded(rep, "alpha-zero-sequence-blind-spot", [&] {
    // Im(z^3) vanishes on the ray arg z = pi/3, so the sequence criterion cannot see it.
    const auto u = obstruction::from_v0_form({{3, 1.0}});
    std::vector<std::pair<Complex, Complex>> s;
    for (int j = 1; j <= 6; ++j) {
      const Complex z = std::polar(std::pow(10.0, j / 2.0), std::numbers::pi / 3.0);
      s.emplace_back(z, u(z));
    }
    rep.record("alpha-zero-sequence-blind-spot", obstruction::sequence_ratio_vanishes(s, 0.0, tol) && !u.is_zero());
  });
  return rep;
}

// ---------------------------------------------------------------- zeros

RunReport run_zeros(const Options& opts) {
  RunReport rep;
  rep.suite = "zeros";
  rep.seed = opts.seed;
  Rng rng(opts.seed);

  const std::size_t polys = cases_or(opts, 200);
  for (std::size_t i = 0; i < polys; ++i) {
    const std::string name = "ek-soundness/" + std::to_string(i);
    guarded(rep, name, [&] {
      const auto deg = static_cast<std::size_t>(rng.integer(1, 12));
      std::vector<double> a(deg + 1);
      for (auto& v : a) v = std::exp(rng.uniform(-2.0, 2.0));
      const auto cert = zeros::ek_annulus(a);
      const std::vector<Complex> ac(a.begin(), a.end());
      double excess = 0.0;
      for (const auto& z : zeros::roots(ac)) {
        const double m = std::abs(z);
        excess = std::max({excess, cert.r - m, m - cert.R});
      }
      rep.record(name, excess <= 1e-8, std::max(excess, 0.0));
    });
  }

  for (double a : {-0.9, -0.5, 0.5, 0.9, 1.0, 3.0}) {
    const std::string name = "zero-free/a=" + fmt(a);
    guarded(rep, name, [&] {
      bool ok = true;
      double least = INFINITY;
      for (std::uint32_t k = 1; k <= 15; ++k) {
        const auto cert = zeros::certify_p_circle_free(AlphaParam(a), k);
        const double m = zeros::min_modulus_on_circle(a, k);
        least = std::min(least, m);
        ok = ok && cert.verdict != zeros::Verdict::Undecided && m >= 1e-3;
      }
      rep.record(name, ok, 0.0, "min modulus " + fmt(least));
    });
  }

  const double tol_roots = tol_or(opts, 1e-9);
  for (std::uint32_t k = 1; k <= 15; ++k) {
    const std::string name = "roots-of-unity/k=" + std::to_string(k);
    guarded(rep, name, [&] {
      const auto cert = zeros::certify_p_circle_free(AlphaParam(), k);
      const std::vector<Complex> ones(k + 1, 1.0);
      auto found = zeros::roots(ones);
      double worst = 0.0;
      for (std::uint32_t j = 1; j <= k; ++j) {
        const Complex target = std::polar(1.0, 2.0 * std::numbers::pi * j / (k + 1));
        auto it = std::min_element(found.begin(), found.end(), [&](Complex x, Complex y) {
          return std::abs(x - target) < std::abs(y - target);
        });
        worst = std::max(worst, std::abs(*it - target));
        found.erase(it);
      }
      rep.record(name, cert.verdict == zeros::Verdict::Undecided && worst < tol_roots, worst);
    });
  }

  for (double a : {0.5, 1.0, 3.0}) {
    const std::string name = "ek-monotone/a=" + fmt(a);
    guarded(rep, name, [&] {
      bool ok = true;
      double prev = 0.0, err = 0.0;
      for (std::uint32_t k = 1; k <= 15; ++k) {
        const double big_r = zeros::certify_p_circle_free(AlphaParam(a), k).R;
        err = std::max(err, std::abs(big_r - k / (a + k)));
        ok = ok && big_r > prev && big_r < 1.0;
        prev = big_r;
      }
      rep.record(name, ok && err < 1e-14, err);
    });
  }
  return rep;
}

// ---------------------------------------------------------------- angles

namespace {

angles::Angle random_rational(Rng& rng, std::uint64_t max_den) {
  const auto n = static_cast<std::uint64_t>(rng.integer(2, static_cast<std::int64_t>(max_den)));
  const auto m = static_cast<std::uint64_t>(rng.integer(1, static_cast<std::int64_t>(n) - 1));
  return angles::Angle::rational(m, n);
}

std::vector<angles::AngleEta> random_family(Rng& rng) {
  std::vector<angles::AngleEta> pairs;
  const auto size = rng.integer(1, 5);
  for (std::int64_t i = 0; i < size; ++i) {
    const angles::Angle a = random_rational(rng, 30);
    if (std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.angle == a; })) continue;
    pairs.push_back({a, static_cast<std::uint64_t>(rng.integer(1, 50))});
  }
  if (rng.uniform() < 0.3)
    pairs.push_back({angles::Angle::irrational("x", rng.uniform(0.1, 3.0)),
                     static_cast<std::uint64_t>(rng.integer(1, 50))});
  if (rng.uniform() < 0.8) pairs[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(pairs.size()) - 1))].eta = 1;
  return pairs;
}

// Random sequence obeying the non-divisibility hypothesis.
std::vector<angles::Angle> random_chain(Rng& rng, std::size_t len) {
  std::vector<angles::Angle> out;
  std::uint64_t l = 1;
  while (out.size() < len) {
    const angles::Angle a = random_rational(rng, 30);
    if (!out.empty() && l % angles::d_of(a) == 0) continue;
    out.push_back(a);
    l = angles::checked_lcm(l, angles::d_of(a));
  }
  return out;
}

std::vector<angles::AngleEta> canonical(std::vector<angles::AngleEta> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return angles::format_angle(a.angle) < angles::format_angle(b.angle);
  });
  return v;
}

bool same_family(const std::vector<angles::AngleEta>& a, const std::vector<angles::AngleEta>& b) {
  const auto ca = canonical(a), cb = canonical(b);
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!(ca[i].angle == cb[i].angle) || ca[i].eta != cb[i].eta) return false;
  return true;
}

bool admissible_or_empty(const std::vector<angles::AngleEta>& pairs) {
  if (pairs.empty()) return false;
  return angles::is_admissible(angles::FunctionOfAngles::finite(pairs)).admissible;
}

}  // namespace

RunReport run_angles(const Options& opts) {
  RunReport rep;
  rep.suite = "angles";
  rep.seed = opts.seed;
  Rng rng(opts.seed);
  constexpr std::uint64_t kBrute = 10000;

  const std::size_t families = cases_or(opts, 500);
  for (std::size_t i = 0; i < families; ++i) {
    const std::string name = "exact-vs-brute/" + std::to_string(i);
    guarded(rep, name, [&] {
      const auto foa = angles::FunctionOfAngles::finite(random_family(rng));
      const auto exact = angles::is_admissible(foa);
      const auto brute = angles::is_admissible(foa, angles::AdmissibilityMode::brute_force(kBrute));
      bool agree;
      if (exact.admissible) agree = brute.admissible;
      else if (*exact.witness_failure > kBrute) agree = brute.admissible;
      else agree = !brute.admissible && brute.witness_failure == exact.witness_failure;
      rep.record(name, agree);
    });
  }

  for (std::size_t i = 0; i < 50; ++i) {
    const std::string name = "constructions/" + std::to_string(i);
    guarded(rep, name, [&] {
      const auto chain = random_chain(rng, static_cast<std::size_t>(rng.integer(1, 4)));
      const auto lazy = angles::construct_infinite(chain);
      const auto fin = angles::construct_finite(chain, angles::Angle::irrational("t", rng.uniform(0.1, 3.0)));
      const bool ok = angles::is_admissible(lazy).admissible &&
                      angles::is_admissible(lazy, angles::AdmissibilityMode::brute_force(kBrute)).admissible &&
                      angles::is_admissible(fin).admissible &&
                      angles::is_admissible(fin, angles::AdmissibilityMode::brute_force(kBrute)).admissible &&
                      angles::is_minimal(fin);
      rep.record(name, ok);
    });
  }

  std::size_t lower_done = 0;
  for (std::size_t attempt = 0; lower_done < 200 && attempt < 20000; ++attempt) {
    auto pairs = random_family(rng);
    if (!admissible_or_empty(pairs)) continue;
    const std::string name = "lower-bound/" + std::to_string(lower_done++);
    guarded(rep, name, [&] {
      const auto foa = angles::FunctionOfAngles::finite(pairs);
      const auto lb = angles::lower_bound(foa, pairs.size() + 1);
      rep.record(name, angles::leq(lb, foa) && angles::is_minimal(lb));
    });
  }
  if (lower_done < 200) rep.record("lower-bound/sample-size", false, 0.0, "too few admissible families drawn");

  for (std::size_t i = 0; i < 50; ++i) {
    const std::string name = "minimality/" + std::to_string(i);
    guarded(rep, name, [&] {
      const auto chain = random_chain(rng, static_cast<std::size_t>(rng.integer(0, 4)));
      const auto f = angles::construct_finite(chain, angles::Angle::irrational("t", rng.uniform(0.1, 3.0)));
      const auto& base = f.pairs();
      bool ok = true;
      for (std::size_t j = 0; j < base.size(); ++j) {
        auto dropped = base;
        dropped.erase(dropped.begin() + static_cast<std::ptrdiff_t>(j));
        auto raised = base;
        raised[j].eta += 1;
        for (const auto& weaker : {dropped, raised}) {
          const bool adm = admissible_or_empty(weaker);
          const bool below = !weaker.empty() && angles::leq(angles::FunctionOfAngles::finite(weaker), f);
          ok = ok && (!adm || !below);
        }
      }
      rep.record(name, ok);
    });
  }

  guarded(rep, "d-of-divisibility", [&] {
    bool ok = true;
    for (std::uint64_t n = 2; n <= 30; ++n)
      for (std::uint64_t m = 1; m < n; ++m) {
        const auto a = angles::Angle::rational(m, n);
        for (std::uint64_t k = 1; k <= 300; ++k) ok = ok && (a.sin_vanishes(k) == ((k * m) % n == 0)) &&
                                                   (a.sin_vanishes(k) == (k % angles::d_of(a) == 0));
      }
    rep.record("d-of-divisibility", ok);
  });

  for (std::size_t i = 0; i < 100; ++i) {
    const std::string name = "partial-order/" + std::to_string(i);
    guarded(rep, name, [&] {
      // Rational-only families keep every comparison decidable.
      std::vector<angles::Angle> pool;
      while (pool.size() < 4) {
        const auto a = random_rational(rng, 8);
        if (std::none_of(pool.begin(), pool.end(), [&](const auto& p) { return p == a; })) pool.push_back(a);
      }
      auto draw = [&] {
        std::vector<angles::AngleEta> v;
        for (const auto& a : pool)
          if (rng.coin()) v.push_back({a, static_cast<std::uint64_t>(rng.integer(1, 3))});
        return v;
      };
      const auto a = draw(), b = draw(), c = draw();
      const auto fa = angles::FunctionOfAngles::finite(a), fb = angles::FunctionOfAngles::finite(b),
                 fc = angles::FunctionOfAngles::finite(c);
      bool ok = angles::leq(fa, fa);
      if (angles::leq(fa, fb) && angles::leq(fb, fa)) ok = ok && same_family(a, b);
      if (angles::leq(fa, fb) && angles::leq(fb, fc)) ok = ok && angles::leq(fa, fc);
      rep.record(name, ok);
    });
  }
  return rep;
}

// ---------------------------------------------------------------- dispatch

RunReport run_suite(std::string_view name, const Options& opts) {
  if (name == "hypergeom") return run_hypergeom(opts);
  if (name == "poly-kernel") return run_poly_kernel(opts);
  if (name == "pullback") return run_pullback(opts);
  if (name == "obstruction") return run_obstruction(opts);
  if (name == "zeros") return run_zeros(opts);
  if (name == "angles") return run_angles(opts);
  if (name == "all") {
    RunReport all;
    all.suite = "all";
    all.seed = opts.seed;
    for (const auto& s : suite_names()) all.merge(run_suite(s, opts));
    return all;
  }
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

json_io::Json to_json(const RunReport& r) {
  json_io::Json details = json_io::Json::array();
  for (const auto& c : r.details) {
    json_io::Json d{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}};
    if (!c.note.empty()) d["note"] = c.note;
    details.push_back(std::move(d));
  }
  return json_io::Json{{"suite", r.suite},         {"cases", r.cases}, {"failures", r.failures},
                       {"max_residual", r.max_residual}, {"seed", r.seed},   {"details", std::move(details)}};
}

}  // namespace wharm::verify
