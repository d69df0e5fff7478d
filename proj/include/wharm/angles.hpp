#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wharm::angles {

/// An angle in (0, pi): either (m/n) pi in lowest terms, or an irrational
/// multiple of pi carried as a symbolic label with a float approximation.
class Angle {
 public:
  /// (m/n) pi; reduced on construction. Throws DomainError unless 0 < m/n < 1.
  static Angle rational(std::uint64_t m, std::uint64_t n);
  /// Throws DomainError unless 0 < approx < pi and the label is nonempty.
  static Angle irrational(std::string label, double approx);

  bool is_rational() const noexcept { return n_ != 0; }
  std::uint64_t numerator() const noexcept { return m_; }
  std::uint64_t denominator() const noexcept { return n_; }
  const std::string& label() const noexcept { return label_; }
  double value() const noexcept;

  /// sin(k theta) == 0, decided exactly: n | k for rationals, never for irrationals.
  bool sin_vanishes(std::uint64_t k) const noexcept { return is_rational() && k % n_ == 0; }

  /// Rationals compare by (m, n); irrationals by label identity.
  friend bool operator==(const Angle& a, const Angle& b);

 private:
  Angle() = default;
  std::uint64_t m_ = 0;
  std::uint64_t n_ = 0;  // 0 marks an irrational angle
  std::string label_;
  double approx_ = 0.0;
};

/// Generator of the ideal {m : sin(m theta) = 0}: the reduced denominator, or 0.
std::uint64_t d_of(const Angle& theta) noexcept;

/// "m/n" for (m/n) pi, or "irr:<label>:<approx>".
Angle parse_angle(std::string_view text);
std::string format_angle(const Angle& theta);

struct AngleEta {
  Angle angle;
  std::uint64_t eta = 1;
};

/// Produces theta_k for k = 1, 2, ... (1-based).
using AngleRule = std::function<Angle(std::size_t)>;

/// A pair (E, eta). Finite families list their pairs; lazily infinite ones
/// come from the infinite construction and are materialized on demand.
class FunctionOfAngles {
 public:
  /// Throws DomainError on repeated angles or eta = 0.
  static FunctionOfAngles finite(std::vector<AngleEta> pairs);
  /// Built by construct_infinite; `validated` is the prefix length already checked.
  /// A rule with a `length` is defined only on indices 1..length.
  static FunctionOfAngles lazy(AngleRule rule, std::size_t validated,
                               std::optional<std::size_t> length = std::nullopt);

  bool is_finite() const noexcept { return !rule_; }
  /// Pairs of a finite family.
  const std::vector<AngleEta>& pairs() const;
  /// First n pairs of a lazy family (eta from the lcm rule), or all pairs of a finite one.
  /// Throws HypothesisViolation if the materialized prefix breaks non-divisibility.
  std::vector<AngleEta> prefix(std::size_t n) const;
  std::size_t validated_prefix() const noexcept { return validated_; }
  std::optional<std::size_t> length() const noexcept { return length_; }

 private:
  std::vector<AngleEta> pairs_;
  AngleRule rule_;
  std::size_t validated_ = 0;
  std::optional<std::size_t> length_;
};

struct AdmissibilityMode {
  enum class Kind { ExactRanges, BruteForce };
  Kind kind = Kind::ExactRanges;
  std::uint64_t limit = 0;  // BruteForce only

  static AdmissibilityMode exact() { return {}; }
  static AdmissibilityMode brute_force(std::uint64_t limit) { return {Kind::BruteForce, limit}; }
};

struct AdmissibilityReport {
  enum class Method { ExactRanges, BruteForce, ConstructionTheorem };
  bool admissible = false;
  std::optional<std::uint64_t> witness_failure;
  Method method = Method::ExactRanges;
  std::uint64_t limit = 0;  // BruteForce: largest k checked; ConstructionTheorem: prefix length
};

/// Decides admissibility. Finite families accept both modes; lazy families are
/// certified by re-validating the construction hypothesis on their prefix
/// (ExactRanges) or brute-forced below the prefix lcm (BruteForce).
/// Throws EmptyFamily for a finite family with no angles.
AdmissibilityReport is_admissible(const FunctionOfAngles& foa,
                                  AdmissibilityMode mode = AdmissibilityMode::exact());

/// eta(theta_1) = 1, eta(theta_k) = lcm(d(theta_1..k-1)); list input gives a lazy
/// family whose rule is defined only on the listed angles.
FunctionOfAngles construct_infinite(const std::vector<Angle>& thetas);
/// Rule-driven form; the first `validate` angles are checked eagerly.
FunctionOfAngles construct_infinite(AngleRule rule, std::size_t validate);
/// Rational prefix followed by an irrational tail angle with eta = lcm of the prefix denominators.
FunctionOfAngles construct_finite(const std::vector<Angle>& prefix, const Angle& tail);

/// (E1, eta1) <= (E2, eta2): E1 subset of E2 and eta1 >= eta2 on E1.
bool leq(const FunctionOfAngles& a, const FunctionOfAngles& b);

/// True iff the (admissible) family has the shape produced by the two constructions.
/// Throws NotAdmissible for inadmissible input.
bool is_minimal(const FunctionOfAngles& foa);

/// Greedy lower bound in the minimal class for an admissible finite family.
FunctionOfAngles lower_bound(const FunctionOfAngles& foa, std::size_t max_steps);

/// lcm with overflow detection (throws wharm::Error).
std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);

}  // namespace wharm::angles
