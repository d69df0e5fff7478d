#include "wharm/angles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "wharm/errors.hpp"

namespace wharm::angles {

Angle Angle::rational(std::uint64_t m, std::uint64_t n) {
  if (m == 0 || n == 0 || m >= n) throw DomainError("rational angle requires 0 < m/n < 1");
  const auto g = std::gcd(m, n);
  Angle a;
  a.m_ = m / g;
  a.n_ = n / g;
  return a;
}

Angle Angle::irrational(std::string label, double approx) {
  if (label.empty()) throw DomainError("irrational angle needs a label");
  if (!(approx > 0.0 && approx < std::numbers::pi))
    throw DomainError("irrational angle approximation must lie in (0, pi)");
  Angle a;
  a.label_ = std::move(label);
  a.approx_ = approx;
  return a;
}

double Angle::value() const noexcept {
  if (!is_rational()) return approx_;
  return std::numbers::pi * static_cast<double>(m_) / static_cast<double>(n_);
}

bool operator==(const Angle& a, const Angle& b) {
  if (a.is_rational() != b.is_rational()) return false;
  if (a.is_rational()) return a.m_ == b.m_ && a.n_ == b.n_;
  return a.label_ == b.label_;
}

std::uint64_t d_of(const Angle& theta) noexcept { return theta.denominator(); }

namespace {

std::uint64_t parse_u64(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw DomainError(std::string("cannot parse ") + what + ": '" + std::string(s) + "'");
  return v;
}

// a < b for rational angles, compared exactly.
bool rational_less(const Angle& a, const Angle& b) {
  const auto lhs = static_cast<unsigned __int128>(a.numerator()) * b.denominator();
  const auto rhs = static_cast<unsigned __int128>(b.numerator()) * a.denominator();
  if (lhs != rhs) return lhs < rhs;
  return a.denominator() < b.denominator();
}

// Tie-break order: irrational first (by approximation, then label), then rationals by value.
bool preferred(const Angle& a, const Angle& b) {
  if (a.is_rational() != b.is_rational()) return !a.is_rational();
  if (!a.is_rational()) {
    if (a.value() != b.value()) return a.value() < b.value();
    return a.label() < b.label();
  }
  return rational_less(a, b);
}

}  // namespace

Angle parse_angle(std::string_view text) {
  if (text.starts_with("irr:")) {
    const auto rest = text.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) throw DomainError("expected irr:<label>:<approx>");
    const std::string num(rest.substr(colon + 1));
    char* end = nullptr;
    const double approx = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size())
      throw DomainError("cannot parse irrational approximation '" + num + "'");
    return Angle::irrational(std::string(rest.substr(0, colon)), approx);
  }
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw DomainError("expected m/n or irr:<label>:<approx>");
  return Angle::rational(parse_u64(text.substr(0, slash), "numerator"),
                         parse_u64(text.substr(slash + 1), "denominator"));
}

std::string format_angle(const Angle& theta) {
  if (theta.is_rational())
    return std::to_string(theta.numerator()) + "/" + std::to_string(theta.denominator());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", theta.value());
  return "irr:" + theta.label() + ":" + buf;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t q = a / std::gcd(a, b);
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(q, b, &out)) throw Error("lcm overflows 64 bits");
  return out;
}

FunctionOfAngles FunctionOfAngles::finite(std::vector<AngleEta> pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].eta == 0) throw DomainError("eta must be a positive integer");
    for (std::size_t j = 0; j < i; ++j)
      if (pairs[i].angle == pairs[j].angle)
        throw DomainError("repeated angle " + format_angle(pairs[i].angle));
  }
  FunctionOfAngles f;
  f.pairs_ = std::move(pairs);
  return f;
}

FunctionOfAngles FunctionOfAngles::lazy(AngleRule rule, std::size_t validated,
                                        std::optional<std::size_t> length) {
  if (!rule) throw DomainError("lazy family needs a rule");
  FunctionOfAngles f;
  f.rule_ = std::move(rule);
  f.validated_ = validated;
  f.length_ = length;
  return f;
}

const std::vector<AngleEta>& FunctionOfAngles::pairs() const {
  if (!is_finite()) throw DomainError("pairs() on a lazily infinite family");
  return pairs_;
}

std::vector<AngleEta> FunctionOfAngles::prefix(std::size_t n) const {
  if (is_finite()) return pairs_;
  if (length_ && n > *length_) throw DomainError("prefix longer than the listed angles");
  std::vector<AngleEta> out;
  out.reserve(n);
  std::uint64_t l = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Angle theta = rule_(k);
    if (!theta.is_rational()) throw DomainError("infinite construction needs rational angles");
    const std::uint64_t d = d_of(theta);
    if (k >= 2 && l % d == 0)
      throw HypothesisViolation("d(theta_" + std::to_string(k) + ") divides the lcm of earlier denominators",
                                k);
    out.push_back({theta, k == 1 ? 1 : l});
    l = checked_lcm(l, d);
  }
  return out;
}

namespace {

AdmissibilityReport brute_force(const std::vector<AngleEta>& pairs, std::uint64_t limit) {
  AdmissibilityReport rep;
  rep.method = AdmissibilityReport::Method::BruteForce;
  rep.limit = limit;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    const bool ok = std::any_of(pairs.begin(), pairs.end(), [k](const AngleEta& p) {
      return p.eta <= k && !p.angle.sin_vanishes(k);
    });
    if (!ok) {
      rep.witness_failure = k;
      return rep;
    }
  }
  rep.admissible = true;
  return rep;
}

AdmissibilityReport exact_ranges(const std::vector<AngleEta>& pairs) {
  AdmissibilityReport rep;
  rep.method = AdmissibilityReport::Method::ExactRanges;
  std::vector<AngleEta> sorted = pairs;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const AngleEta& a, const AngleEta& b) { return a.eta < b.eta; });
  if (sorted.front().eta > 1) {
    rep.witness_failure = 1;
    return rep;
  }
  bool irrational_active = false;
  bool lcm_huge = false;  // the active lcm exceeds 64 bits
  std::uint64_t l = 1;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const std::uint64_t h = sorted[i].eta;
    for (; i < sorted.size() && sorted[i].eta == h; ++i) {
      const Angle& a = sorted[i].angle;
      if (!a.is_rational()) {
        irrational_active = true;
      } else if (!lcm_huge) {
        const std::uint64_t q = l / std::gcd(l, d_of(a));
        if (__builtin_mul_overflow(q, d_of(a), &l)) lcm_huge = true;
      }
    }
    if (irrational_active) break;  // every later k has an irrational witness angle
    const bool last = i == sorted.size();
    const std::uint64_t hi = last ? UINT64_MAX : sorted[i].eta - 1;
    if (lcm_huge) {
      if (last) throw Error("admissibility witness exceeds 64 bits");
      continue;
    }
    // smallest multiple of l that is >= h
    const std::uint64_t q = (h + l - 1) / l;
    std::uint64_t first = 0;
    if (__builtin_mul_overflow(q, l, &first)) {
      if (last) throw Error("admissibility witness exceeds 64 bits");
      continue;
    }
    if (first <= hi) {
      rep.witness_failure = first;
      return rep;
    }
  }
  rep.admissible = true;
  return rep;
}

}  // namespace

AdmissibilityReport is_admissible(const FunctionOfAngles& foa, AdmissibilityMode mode) {
  if (!foa.is_finite()) {
    const std::size_t n = foa.validated_prefix();
    const auto pre = foa.prefix(n);
    if (mode.kind == AdmissibilityMode::Kind::BruteForce) {
      // Angles beyond the prefix have eta >= lcm of the prefix, so k below it is decided.
      std::uint64_t l = 1;
      for (const auto& p : pre) l = checked_lcm(l, d_of(p.angle));
      return brute_force(pre, std::min(mode.limit, l - 1));
    }
    AdmissibilityReport rep;
    rep.admissible = true;
    rep.method = AdmissibilityReport::Method::ConstructionTheorem;
    rep.limit = n;
    return rep;
  }
  const auto& pairs = foa.pairs();
  if (pairs.empty()) throw EmptyFamily("family of angles is empty");
  if (mode.kind == AdmissibilityMode::Kind::BruteForce) return brute_force(pairs, mode.limit);
  return exact_ranges(pairs);
}

namespace {

void validate_prefix(const std::vector<Angle>& thetas) {
  std::uint64_t l = 1;
  for (std::size_t k = 1; k <= thetas.size(); ++k) {
    const Angle& t = thetas[k - 1];
    if (!t.is_rational()) throw DomainError("construction prefix needs rational angles");
    if (k >= 2 && l % d_of(t) == 0)
      throw HypothesisViolation("d(theta_" + std::to_string(k) + ") divides the lcm of earlier denominators",
                                k);
    l = checked_lcm(l, d_of(t));
  }
}

}  // namespace

FunctionOfAngles construct_infinite(const std::vector<Angle>& thetas) {
  validate_prefix(thetas);
  auto rule = [thetas](std::size_t k) -> Angle {
    if (k == 0 || k > thetas.size()) throw DomainError("angle index outside the listed angles");
    return thetas[k - 1];
  };
  return FunctionOfAngles::lazy(rule, thetas.size(), thetas.size());
}

FunctionOfAngles construct_infinite(AngleRule rule, std::size_t validate) {
  auto f = FunctionOfAngles::lazy(std::move(rule), validate);
  (void)f.prefix(validate);
  return f;
}

FunctionOfAngles construct_finite(const std::vector<Angle>& prefix, const Angle& tail) {
  if (tail.is_rational()) throw DomainError("finite construction needs an irrational tail angle");
  validate_prefix(prefix);
  std::vector<AngleEta> pairs;
  std::uint64_t l = 1;
  for (const auto& t : prefix) {
    pairs.push_back({t, l});
    l = checked_lcm(l, d_of(t));
  }
  pairs.push_back({tail, l});
  return FunctionOfAngles::finite(std::move(pairs));
}

namespace {

std::vector<AngleEta> as_finite(const FunctionOfAngles& f) {
  if (f.is_finite()) return f.pairs();
  if (f.length()) return f.prefix(*f.length());
  throw UncomparableRepresentation("left operand of leq must be finite");
}

}  // namespace

bool leq(const FunctionOfAngles& a, const FunctionOfAngles& b) {
  const auto left = as_finite(a);
  if (b.is_finite() || b.length()) {
    const auto right = as_finite(b);
    const bool right_has_irrational =
        std::any_of(right.begin(), right.end(), [](const AngleEta& p) { return !p.angle.is_rational(); });
    for (const auto& p : left) {
      auto it = std::find_if(right.begin(), right.end(),
                             [&](const AngleEta& q) { return q.angle == p.angle; });
      if (it == right.end()) {
        if (!p.angle.is_rational() && right_has_irrational)
          throw UncomparableRepresentation("membership of irrational angle '" + p.angle.label() +
                                           "' is undecidable against other labels");
        return false;
      }
      if (p.eta < it->eta) return false;
    }
    return true;
  }
  // b is an unbounded lazy family: its etas are lcms, strictly increasing, so an
  // angle with eta_b <= eta_a must appear before the running lcm exceeds eta_a.
  for (const auto& p : left) {
    if (!p.angle.is_rational()) return false;
    bool found = false;
    std::uint64_t l = 1;
    for (std::size_t k = 1;; ++k) {
      const auto pre = b.prefix(k);
      const AngleEta& q = pre.back();
      if (q.eta > p.eta) break;
      if (q.angle == p.angle) {
        found = true;
        break;
      }
      l = checked_lcm(l, d_of(q.angle));
      if (l > p.eta) break;
    }
    if (!found) return false;
  }
  return true;
}

bool is_minimal(const FunctionOfAngles& foa) {
  if (!foa.is_finite()) {
    (void)foa.prefix(foa.validated_prefix());
    return true;
  }
  const auto rep = is_admissible(foa);
  if (!rep.admissible) throw NotAdmissible("family of angles is not admissible", *rep.witness_failure);
  std::vector<AngleEta> sorted = foa.pairs();
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const AngleEta& a, const AngleEta& b) { return a.eta < b.eta; });
  std::uint64_t l = 1;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const auto& p = sorted[k];
    if (p.eta != l) return false;
    if (!p.angle.is_rational()) return k + 1 == sorted.size();
    if (k > 0 && l % d_of(p.angle) == 0) return false;
    l = checked_lcm(l, d_of(p.angle));
  }
  // all rational: inadmissible, already rejected above
  return false;
}

FunctionOfAngles lower_bound(const FunctionOfAngles& foa, std::size_t max_steps) {
  if (!foa.is_finite()) throw DomainError("lower_bound needs a finite family");
  const auto rep = is_admissible(foa);
  if (!rep.admissible) throw NotAdmissible("family of angles is not admissible", *rep.witness_failure);
  const auto& pairs = foa.pairs();
  std::vector<AngleEta> out;
  std::uint64_t m = 1;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const AngleEta* best = nullptr;
    for (const auto& p : pairs) {
      if (p.eta > m || p.angle.sin_vanishes(m)) continue;
      if (!best || preferred(p.angle, best->angle)) best = &p;
    }
    if (!best) throw NotAdmissible("no angle available", m);
    out.push_back({best->angle, m});
    if (!best->angle.is_rational()) return FunctionOfAngles::finite(std::move(out));
    m = checked_lcm(m, d_of(best->angle));
  }
  throw StepLimit("lower_bound exceeded " + std::to_string(max_steps) + " steps");
}

}  // namespace wharm::angles
