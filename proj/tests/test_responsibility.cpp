#include "brex/responsibility.hpp"

#include "brex/random_formula.hpp"
#include "doctest.h"
#include "test_oracles.hpp"

using namespace brex;

namespace {

const TruthValue T = TruthValue::True;
const TruthValue F = TruthValue::False;

Rational third() { return Rational(1, 3); }
Rational half() { return Rational(1, 2); }
Rational one() { return Rational(1, 1); }
Rational zero() { return Rational(); }

// (x1 & (x2 & x3))
Formula and_chain3() { return and_(var(0), and_(var(1), var(2))); }

}  // namespace

TEST_SUITE_BEGIN("responsibility");

TEST_CASE("classify_cause on the documented gates") {
  CHECK(classify_cause(OpKind::And, F, F, F) == CauseKind::Both);
  CHECK(classify_cause(OpKind::And, T, T, T) == CauseKind::Either);
  CHECK(classify_cause(OpKind::Xor, T, F, T) == CauseKind::Either);
  CHECK(classify_cause(OpKind::And, T, F, F) == CauseKind::Right);
  CHECK(classify_cause(OpKind::And, F, T, F) == CauseKind::Left);
  CHECK(classify_cause(OpKind::Or, T, T, T) == CauseKind::Both);
  CHECK(classify_cause(OpKind::Or, F, F, F) == CauseKind::Either);
  CHECK(classify_cause(OpKind::Not, T, TruthValue::Unassigned, F) == CauseKind::Pass);
}

TEST_CASE("classify_cause is total and agrees with the flip definition") {
  for (OpKind op : {OpKind::And, OpKind::Or, OpKind::Xor}) {
    for (TruthValue l : {F, T}) {
      for (TruthValue r : {F, T}) {
        const TruthValue g = testing::classical_op(op, l, r);
        CHECK(classify_cause(op, l, r, g) == testing::classify_by_flips(op, l, r));
      }
    }
  }
  CHECK_THROWS_AS(classify_cause(OpKind::And, TruthValue::Unassigned, T, T),
                  std::invalid_argument);
}

TEST_CASE("dependency counts on the and-chain under 000") {
  const Formula f = and_chain3();
  const Assignment a = Assignment::from_string("000");
  const DepsMap deps = depends(f, a);
  // arena layout: x1, x2, x3, inner gate, root
  CHECK(deps[0] == 1);
  CHECK(deps[1] == 1);
  CHECK(deps[2] == 1);
  const std::int32_t inner = f.node(f.root()).right;
  CHECK(f.node(inner).kind == OpKind::And);
  CHECK(deps[static_cast<std::size_t>(inner)] == 2);
  CHECK(deps[static_cast<std::size_t>(f.root())] == 3);
}

TEST_CASE("dependency count of a bare variable is 1") {
  CHECK(depends(var(0), Assignment::from_string("1")).back() == 1);
}

TEST_CASE("depends rejects repeated variables and masked inputs") {
  CHECK_THROWS_AS(depends(and_(var(0), var(0)), Assignment::from_string("1")),
                  std::invalid_argument);
  CHECK_THROWS_AS(depends(and_chain3(), Assignment::from_string("0u0")),
                  std::invalid_argument);
}

TEST_CASE("read-once responsibility on the worked examples") {
  SUBCASE("(x1 & (x2 & x3)) under 000 -> (1/3, 1/3, 1/3)") {
    const ResponsibilityMap rho =
        responsibility_read_once(and_chain3(), Assignment::from_string("000"));
    CHECK(rho.at(0) == third());
    CHECK(rho.at(1) == third());
    CHECK(rho.at(2) == third());
  }
  SUBCASE("(x1 | x2) under 00 -> (1, 1)") {
    const ResponsibilityMap rho =
        responsibility_read_once(or_(var(0), var(1)), Assignment::from_string("00"));
    CHECK(rho.at(0) == one());
    CHECK(rho.at(1) == one());
  }
  SUBCASE("(x1 & (x2 | x3)) under 111 -> (1, 1/2, 1/2)") {
    const ResponsibilityMap rho = responsibility_read_once(
        and_(var(0), or_(var(1), var(2))), Assignment::from_string("111"));
    CHECK(rho.at(0) == one());
    CHECK(rho.at(1) == half());
    CHECK(rho.at(2) == half());
  }
  SUBCASE("unused width stays zero") {
    const ResponsibilityMap rho = responsibility_read_once(
        and_chain3(), Assignment::from_string("000110011001"));
    CHECK(rho.width() == 12);
    CHECK(rho.at(0) == third());
    for (int i = 3; i < 12; ++i) CHECK(rho.at(i) == zero());
  }
}

TEST_CASE("min_flips_brute") {
  CHECK(min_flips_brute(and_(var(0), var(1)), Assignment::from_string("11")) == 1);
  CHECK(min_flips_brute(and_chain3(), Assignment::from_string("000")) == 3);
  CHECK(min_flips_brute(var(0), Assignment::from_string("0")) == 1);
  SUBCASE("constant formulae have no flip set") {
    const Formula constant = xor_(var(0), var(0));
    CHECK_FALSE(
        min_flips_brute(constant, Assignment::from_string("1")).has_value());
  }
  SUBCASE("guard") {
    Rng rng(31);
    const Formula wide = random_formula(16, OperatorFamily::Monotonic, true, rng);
    const Assignment a(16, TruthValue::True);
    CHECK_THROWS_AS(min_flips_brute(wide, a), std::invalid_argument);
    BruteForceOptions raised;
    raised.max_arity = 16;
    CHECK_NOTHROW(min_flips_brute(wide, a, raised));
  }
}

TEST_CASE("brute-force responsibility on the worked examples") {
  SUBCASE("(x1 & (x2 & x3)) under 000 matches the two-pass result") {
    const ResponsibilityMap rho =
        responsibility_brute_force(and_chain3(), Assignment::from_string("000"));
    CHECK(rho.at(0) == third());
    CHECK(rho.at(1) == third());
    CHECK(rho.at(2) == third());
  }
  SUBCASE("(x1 | x2) under 11 -> (1/2, 1/2)") {
    const ResponsibilityMap rho = responsibility_brute_force(
        or_(var(0), var(1)), Assignment::from_string("11"));
    CHECK(rho.at(0) == half());
    CHECK(rho.at(1) == half());
  }
  SUBCASE("(x1 ^ x2) under 10 -> (1, 1)") {
    const ResponsibilityMap rho = responsibility_brute_force(
        xor_(var(0), var(1)), Assignment::from_string("10"));
    CHECK(rho.at(0) == one());
    CHECK(rho.at(1) == one());
  }
}

TEST_CASE("two-pass equals brute force on a read-once corpus") {
  Rng rng(41);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int arity = 1 + static_cast<int>(uniform_below(rng, 8));
    const OperatorFamily family = uniform_below(rng, 2) == 0
                                      ? OperatorFamily::Monotonic
                                      : OperatorFamily::Nonmonotonic;
    const Formula f = random_formula(arity, family, true, rng);
    const AssignmentSpace space = AssignmentSpace::full(arity);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      const Assignment a = space.at(code);
      CAPTURE(render(f));
      CAPTURE(a.to_string());
      REQUIRE(responsibility_read_once(f, a) == responsibility_brute_force(f, a));
      const DepsMap deps = depends(f, a);
      REQUIRE(deps[static_cast<std::size_t>(f.root())] == min_flips_brute(f, a));
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("responsibility properties") {
  Rng rng(43);
  for (int trial = 0; trial < 120; ++trial) {
    const int arity = 1 + static_cast<int>(uniform_below(rng, 6));
    const Formula f = random_formula(arity, OperatorFamily::Nonmonotonic, true, rng);
    const int width = arity + static_cast<int>(uniform_below(rng, 3));
    const AssignmentSpace space =
        AssignmentSpace::restricted_to(width, f.meta().used_vars);
    const Assignment a = space.at(uniform_below(rng, space.size()));
    const ResponsibilityMap rho = responsibility_read_once(f, a);

    // quantization: every value is 0 or 1/(k+1)
    for (int i = 0; i < rho.width(); ++i) {
      const Rational v = rho.at(i);
      if (!v.is_zero()) CHECK(v.num() == 1);
    }
    // at least one positive entry
    CHECK_FALSE(rho.all_zero());
    // irrelevance beyond the used variables
    for (int i = arity; i < width; ++i) CHECK(rho.at(i) == zero());
    // negation invariance
    CHECK(responsibility_read_once(not_(f), a) == rho);
    // a value of 1 marks exactly the but-for causes
    const TruthValue out = evaluate_k3(f, a);
    for (int i = 0; i < arity; ++i) {
      const int idx[] = {i};
      const bool but_for = evaluate_k3(f, flip(a, idx)) != out;
      CHECK((rho.at(i) == one()) == but_for);
    }
  }
}

// Dropping the every-subset condition admits more witnesses, so the relaxed
// values dominate pointwise, and the two readings genuinely differ: in the
// frozen example below the relaxed rule accepts a size-3 witness for x3 whose
// intermediate subsets flip the output.
TEST_CASE("relaxed witness rule dominates the strict one") {
  BruteForceOptions relaxed;
  relaxed.subset_condition = false;

  const Formula f =
      parse_formula("!((x3 | !x2) ^ (x4 | !(x6 & !(!x1 | x5))))");
  const Assignment a = Assignment::from_string("000000");
  const ResponsibilityMap strict_map = responsibility_brute_force(f, a);
  const ResponsibilityMap relaxed_map = responsibility_brute_force(f, a, relaxed);
  CHECK(strict_map.at(2) == Rational());
  CHECK(relaxed_map.at(2) == Rational(1, 4));

  Rng rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int arity = 1 + static_cast<int>(uniform_below(rng, 6));
    const Formula g = random_formula(arity, OperatorFamily::Nonmonotonic, true, rng);
    const AssignmentSpace space = AssignmentSpace::full(arity);
    const Assignment b = space.at(uniform_below(rng, space.size()));
    const ResponsibilityMap s = responsibility_brute_force(g, b);
    const ResponsibilityMap r = responsibility_brute_force(g, b, relaxed);
    for (int i = 0; i < s.width(); ++i) {
      CHECK_FALSE(r.at(i) < s.at(i));
    }
  }
}

TEST_CASE("the linear passes visit each node a bounded number of times") {
  Rng rng(53);
  const Formula f = random_formula(10, OperatorFamily::Nonmonotonic, true, rng);
  const Assignment a(10, TruthValue::True);
  TraversalStats stats;
  responsibility_read_once(f, a, &stats);
  CHECK(stats.deps_visits == f.node_count());
  CHECK(stats.responsibility_visits <= f.node_count());
  CHECK(stats.responsibility_visits >= 1);
}

TEST_SUITE_END();
