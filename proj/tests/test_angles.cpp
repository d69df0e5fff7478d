#include <doctest.h>

#include <numbers>

#include "wharm/angles.hpp"
#include "wharm/errors.hpp"

using namespace wharm;
using namespace wharm::angles;

namespace {
Angle r(std::uint64_t m, std::uint64_t n) { return Angle::rational(m, n); }
Angle irr(const char* l = "one", double v = 1.0) { return Angle::irrational(l, v); }
std::vector<std::uint64_t> etas(const std::vector<AngleEta>& p) {
  std::vector<std::uint64_t> e;
  for (const auto& x : p) e.push_back(x.eta);
  return e;
}
}  // namespace

TEST_CASE("angles") {
  CHECK(d_of(r(2, 4)) == 2);
  CHECK(d_of(r(2, 5)) == 5);
  CHECK(d_of(irr()) == 0);
  CHECK(r(2, 4) == r(1, 2));
  CHECK(r(1, 3).value() == doctest::Approx(std::numbers::pi / 3));
  CHECK(r(1, 3).sin_vanishes(6));
  CHECK_FALSE(r(1, 3).sin_vanishes(4));
  CHECK_FALSE(irr().sin_vanishes(355));
  CHECK_THROWS_AS(r(3, 2), DomainError);
  CHECK_THROWS_AS(r(0, 2), DomainError);
  CHECK_THROWS_AS(irr("x", 4.0), DomainError);
}

TEST_CASE("parse and format") {
  CHECK(parse_angle("3/6") == r(1, 2));
  CHECK(format_angle(r(2, 6)) == "1/3");
  const Angle a = parse_angle("irr:sqrt2:1.4142135623730951");
  CHECK_FALSE(a.is_rational());
  CHECK(a.label() == "sqrt2");
  CHECK(parse_angle(format_angle(a)) == a);
  CHECK_THROWS_AS(parse_angle("1/x"), DomainError);
  CHECK_THROWS_AS(parse_angle("5/4"), DomainError);
}

TEST_CASE("admissibility") {
  const auto f = FunctionOfAngles::finite({{r(1, 2), 1}});
  const auto rep = is_admissible(f);
  CHECK_FALSE(rep.admissible);
  CHECK(rep.witness_failure == 2u);
  const auto bf = is_admissible(f, AdmissibilityMode::brute_force(100));
  CHECK(bf.witness_failure == 2u);
  const auto g = FunctionOfAngles::finite({{r(1, 2), 1}, {irr(), 2}});
  CHECK(is_admissible(g).admissible);
  CHECK(is_admissible(g, AdmissibilityMode::brute_force(1000)).admissible);
  // eta = 3 on the irrational angle leaves k = 2 uncovered
  CHECK(is_admissible(FunctionOfAngles::finite({{r(1, 2), 1}, {irr(), 3}})).witness_failure == 2u);
  // witness 1 when every eta exceeds 1
  CHECK(is_admissible(FunctionOfAngles::finite({{irr(), 2}})).witness_failure == 1u);
  CHECK_THROWS_AS(is_admissible(FunctionOfAngles::finite({})), EmptyFamily);
  CHECK_THROWS_AS(FunctionOfAngles::finite({{r(1, 2), 1}, {r(2, 4), 3}}), DomainError);
  CHECK_THROWS_AS(FunctionOfAngles::finite({{r(1, 2), 0}}), DomainError);
}

TEST_CASE("infinite construction") {
  CHECK(etas(construct_infinite({r(1, 2), r(1, 4), r(1, 8)}).prefix(3)) == std::vector<std::uint64_t>{1, 2, 4});
  CHECK(etas(construct_infinite({r(1, 2), r(1, 3), r(1, 5)}).prefix(3)) == std::vector<std::uint64_t>{1, 2, 6});
  try {
    (void)construct_infinite({r(1, 2), r(1, 3), r(1, 6)});
    FAIL("expected HypothesisViolation");
  } catch (const HypothesisViolation& e) {
    CHECK(e.index() == 3);
  }
  try {
    (void)construct_infinite({r(1, 4), r(1, 2)});
    FAIL("expected HypothesisViolation");
  } catch (const HypothesisViolation& e) {
    CHECK(e.index() == 2);
  }
  // theta_k = pi / 2^k, checked lazily
  const auto lazy = construct_infinite([](std::size_t k) { return Angle::rational(1, std::uint64_t{1} << k); }, 4);
  CHECK_FALSE(lazy.is_finite());
  CHECK(etas(lazy.prefix(6)) == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32});
  const auto rep = is_admissible(lazy);
  CHECK(rep.admissible);
  CHECK(rep.method == AdmissibilityReport::Method::ConstructionTheorem);
  CHECK(is_minimal(lazy));
}

TEST_CASE("finite construction") {
  const auto f = construct_finite({r(1, 2), r(1, 3)}, irr());
  CHECK(etas(f.pairs()) == std::vector<std::uint64_t>{1, 2, 6});
  CHECK(is_admissible(f).admissible);
  CHECK(is_admissible(f, AdmissibilityMode::brute_force(10000)).admissible);
  CHECK(is_minimal(f));
  CHECK_THROWS_AS(construct_finite({r(1, 2)}, r(1, 3)), DomainError);
  CHECK_THROWS_AS(construct_finite({r(1, 2), r(1, 4), r(3, 4)}, irr()), HypothesisViolation);
}

TEST_CASE("partial order") {
  const auto small = FunctionOfAngles::finite({{irr(), 1}});
  const auto big = FunctionOfAngles::finite({{r(1, 2), 1}, {irr(), 1}});
  CHECK(leq(small, big));
  CHECK_FALSE(leq(big, small));
  const auto raised = FunctionOfAngles::finite({{irr(), 4}});
  CHECK(leq(raised, small));
  CHECK_FALSE(leq(small, raised));
  CHECK(leq(small, small));
}

TEST_CASE("minimality") {
  CHECK(is_minimal(FunctionOfAngles::finite({{irr(), 1}})));
  // pi/3 could carry eta = 2
  const auto f = FunctionOfAngles::finite({{r(1, 2), 1}, {r(1, 3), 1}, {irr(), 6}});
  CHECK(is_admissible(f).admissible);
  CHECK_FALSE(is_minimal(f));
  CHECK_THROWS_AS(is_minimal(FunctionOfAngles::finite({{r(1, 2), 1}})), NotAdmissible);
}

TEST_CASE("lower bound") {
  const auto f = FunctionOfAngles::finite({{r(1, 2), 1}, {r(1, 3), 1}, {irr(), 6}, {r(2, 5), 2}});
  REQUIRE(is_admissible(f).admissible);
  const auto lb = lower_bound(f, 10);
  CHECK(leq(lb, f));
  CHECK(is_minimal(lb));
  CHECK(is_admissible(lb).admissible);
  CHECK_THROWS_AS(lower_bound(FunctionOfAngles::finite({{r(1, 2), 1}}), 10), NotAdmissible);
  CHECK_THROWS_AS(lower_bound(f, 0), StepLimit);
}

TEST_CASE("lcm overflow") {
  CHECK(checked_lcm(4, 6) == 12);
  CHECK_THROWS_AS(checked_lcm(std::uint64_t{1} << 40, (std::uint64_t{1} << 40) - 1), Error);
}
