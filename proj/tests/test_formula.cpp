#include <set>

#include "brex/formula.hpp"
#include "brex/random_formula.hpp"
#include "doctest.h"
#include "test_oracles.hpp"

using namespace brex;

TEST_SUITE_BEGIN("formula");

TEST_CASE("parse builds the expected trees") {
  CHECK(parse_formula("x1 & x2") == and_(var(0), var(1)));
  CHECK(parse_formula("!(x1 ^ x2) | x3") == or_(not_(xor_(var(0), var(1))), var(2)));
  CHECK(parse_formula("x1 & x2 & x3") == and_(and_(var(0), var(1)), var(2)));
  CHECK(parse_formula("x1 | x2 ^ x3 & !x4") ==
        or_(var(0), xor_(var(1), and_(var(2), not_(var(3))))));
  CHECK(parse_formula("  ( x10 )") == var(9));
}

TEST_CASE("parse rejects malformed input with a position") {
  CHECK_THROWS_AS(parse_formula("x1 &"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("(x1 & x2"), ParseError);
  CHECK_THROWS_AS(parse_formula("x1 x2"), ParseError);
  CHECK_THROWS_AS(parse_formula("x0"), ParseError);
  CHECK_THROWS_AS(parse_formula("y1"), ParseError);
  try {
    parse_formula("x1 & (x2 |)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 10);
  }
}

TEST_CASE("parse honors a declared width") {
  CHECK_NOTHROW(parse_formula("x12", 12));
  CHECK_THROWS_AS(parse_formula("x13", 12), ParseError);
}

TEST_CASE("render produces the canonical text form") {
  CHECK(render(and_(var(0), var(1))) == "(x1 & x2)");
  CHECK(render(not_(var(2))) == "!x3");
  CHECK(render(not_(and_(var(0), var(1)))) == "!(x1 & x2)");
}

TEST_CASE("parse/render round-trips on 1000 random formulae") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const int arity = 1 + static_cast<int>(uniform_below(rng, 8));
    const OperatorFamily family = uniform_below(rng, 2) == 0
                                      ? OperatorFamily::Monotonic
                                      : OperatorFamily::Nonmonotonic;
    const bool read_once = uniform_below(rng, 2) == 0;
    const Formula f = random_formula(arity, family, read_once, rng);
    CAPTURE(render(f));
    CHECK(parse_formula(render(f)) == f);
  }
}

TEST_CASE("K3 connective tables") {
  const TruthValue T = TruthValue::True;
  const TruthValue F = TruthValue::False;
  const TruthValue U = TruthValue::Unassigned;
  CHECK(k3_and(T, U) == U);
  CHECK(k3_and(F, U) == F);
  CHECK(k3_and(U, U) == U);
  CHECK(k3_or(T, U) == T);
  CHECK(k3_or(F, U) == U);
  CHECK(k3_xor(T, U) == U);
  CHECK(k3_xor(U, F) == U);
  CHECK(k3_not(U) == U);
  CHECK(k3_not(T) == F);
  // classical restriction
  for (TruthValue a : {F, T}) {
    for (TruthValue b : {F, T}) {
      CHECK(k3_and(a, b) == truth_of(a == T && b == T));
      CHECK(k3_or(a, b) == truth_of(a == T || b == T));
      CHECK(k3_xor(a, b) == truth_of(a != b));
    }
  }
}

TEST_CASE("evaluate_k3 matches the gate tables on formulae") {
  const Formula f = and_(var(0), var(1));
  CHECK(evaluate_k3(f, Assignment::from_string("1u")) == TruthValue::Unassigned);
  CHECK(evaluate_k3(f, Assignment::from_string("0u")) == TruthValue::False);
  CHECK(evaluate_k3(xor_(var(0), var(1)), Assignment::from_string("1u")) ==
        TruthValue::Unassigned);
  CHECK_THROWS_AS(evaluate_k3(var(3), Assignment::from_string("11")),
                  std::invalid_argument);
}

// A Boolean K3 result is forced: every completion of the masked positions
// evaluates classically to the same value.
TEST_CASE("K3 soundness under masking") {
  Rng rng(11);
  for (int i = 0; i < 150; ++i) {
    const int arity = 1 + static_cast<int>(uniform_below(rng, 5));
    const Formula f = random_formula(arity, OperatorFamily::Nonmonotonic,
                                     uniform_below(rng, 2) == 0, rng);
    const AssignmentSpace space = AssignmentSpace::full(arity);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      const Assignment a = space.at(code);
      const std::uint32_t masks = std::uint32_t{1} << arity;
      for (std::uint32_t m = 0; m < masks; ++m) {
        std::vector<int> hide;
        for (int j = 0; j < arity; ++j) {
          if ((m >> j & 1u) != 0) hide.push_back(j);
        }
        const Assignment masked = mask_out(a, hide);
        const TruthValue v = evaluate_k3(f, masked);
        if (!is_boolean(v)) continue;
        for (const Assignment& completion : testing::boolean_completions(masked)) {
          CHECK(evaluate_k3(f, completion) == v);
        }
      }
    }
  }
}

// On read-once formulae K3 is also complete: agreement of all completions
// forces a Boolean K3 result.
TEST_CASE("K3 completeness on read-once formulae") {
  Rng rng(13);
  for (int i = 0; i < 150; ++i) {
    const int arity = 1 + static_cast<int>(uniform_below(rng, 5));
    const Formula f = random_formula(arity, OperatorFamily::Nonmonotonic, true, rng);
    const AssignmentSpace space = AssignmentSpace::full(arity);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      const std::uint32_t masks = std::uint32_t{1} << arity;
      for (std::uint32_t m = 1; m < masks; ++m) {
        std::vector<int> hide;
        for (int j = 0; j < arity; ++j) {
          if ((m >> j & 1u) != 0) hide.push_back(j);
        }
        const Assignment masked = mask_out(space.at(code), hide);
        if (is_boolean(evaluate_k3(f, masked))) continue;
        const std::vector<Assignment> completions =
            testing::boolean_completions(masked);
        bool all_agree = true;
        for (const Assignment& c : completions) {
          if (evaluate_k3(f, c) != evaluate_k3(f, completions.front())) {
            all_agree = false;
            break;
          }
        }
        CHECK_FALSE(all_agree);
      }
    }
  }
}

TEST_CASE("monotonic family: single False-to-True flips never lower the output") {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const int arity = 1 + static_cast<int>(uniform_below(rng, 5));
    const Formula f = random_formula(arity, OperatorFamily::Monotonic,
                                     uniform_below(rng, 2) == 0, rng);
    const AssignmentSpace space = AssignmentSpace::full(arity);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
      const Assignment a = space.at(code);
      if (evaluate_k3(f, a) != TruthValue::True) continue;
      for (int j = 0; j < arity; ++j) {
        if (a.at(j) == TruthValue::False) {
          const int idx[] = {j};
          CHECK(evaluate_k3(f, flip(a, idx)) == TruthValue::True);
        }
      }
    }
  }
}

TEST_CASE("random_formula structure") {
  Rng rng(23);
  SUBCASE("uses exactly the requested variables") {
    for (int trial = 0; trial < 100; ++trial) {
      const int arity = 1 + static_cast<int>(uniform_below(rng, 10));
      const Formula f = random_formula(arity, OperatorFamily::Nonmonotonic,
                                       uniform_below(rng, 2) == 0, rng);
      CHECK(f.meta().arity == arity);
      CHECK(f.max_var_index() == arity - 1);
    }
  }
  SUBCASE("read-once mode never repeats a variable") {
    for (int trial = 0; trial < 100; ++trial) {
      const Formula f = random_formula(6, OperatorFamily::Nonmonotonic, true, rng);
      CHECK(f.meta().read_once);
    }
  }
  SUBCASE("monotonic formulae use only AND/OR gates") {
    for (int trial = 0; trial < 100; ++trial) {
      const Formula f = random_formula(5, OperatorFamily::Monotonic, false, rng);
      for (int n = 0; n < f.node_count(); ++n) {
        CHECK(f.node(n).kind != OpKind::Not);
        CHECK(f.node(n).kind != OpKind::Xor);
      }
    }
  }
  SUBCASE("arity one is a bare or negated leaf") {
    const Formula mono = random_formula(1, OperatorFamily::Monotonic, true, rng);
    CHECK(mono == var(0));
    for (int trial = 0; trial < 50; ++trial) {
      const Formula f = random_formula(1, OperatorFamily::Nonmonotonic, true, rng);
      std::int32_t id = f.root();
      while (f.node(id).kind == OpKind::Not) id = f.node(id).left;
      CHECK(f.node(id).kind == OpKind::Var);
    }
  }
  SUBCASE("a fixed seed reproduces the same formula") {
    Rng a(99), b(99);
    const Formula fa = random_formula(7, OperatorFamily::Nonmonotonic, false, a);
    const Formula fb = random_formula(7, OperatorFamily::Nonmonotonic, false, b);
    CHECK(fa == fb);
  }
  SUBCASE("three read-once monotonic variables make two gates") {
    const Formula f = random_formula(3, OperatorFamily::Monotonic, true, rng);
    CHECK(f.node_count() == 5);  // 3 leaves + 2 binary gates
  }
}

TEST_CASE("assignment enumeration") {
  SUBCASE("width 2 in lexicographic order") {
    const AssignmentSpace space = AssignmentSpace::full(2);
    REQUIRE(space.size() == 4);
    CHECK(space.at(0).to_string() == "00");
    CHECK(space.at(1).to_string() == "01");
    CHECK(space.at(2).to_string() == "10");
    CHECK(space.at(3).to_string() == "11");
  }
  SUBCASE("width 12 yields 4096 assignments") {
    CHECK(AssignmentSpace::full(12).size() == 4096);
  }
  SUBCASE("restricted mode fixes unused positions to False") {
    const AssignmentSpace space = AssignmentSpace::restricted_to(4, {1, 3});
    REQUIRE(space.size() == 4);
    CHECK(space.at(0).to_string() == "0000");
    CHECK(space.at(1).to_string() == "0001");
    CHECK(space.at(2).to_string() == "0100");
    CHECK(space.at(3).to_string() == "0101");
  }
  SUBCASE("guard rejects over-wide enumeration") {
    CHECK_THROWS_AS(AssignmentSpace::full(21), std::invalid_argument);
    CHECK_NOTHROW(AssignmentSpace::restricted_to(64, {0, 1, 2}));
  }
  SUBCASE("sampling is seeded, sorted and without replacement") {
    Rng rng(5);
    const std::vector<std::uint64_t> s1 = sample_codes(4096, 64, rng);
    Rng rng2(5);
    const std::vector<std::uint64_t> s2 = sample_codes(4096, 64, rng2);
    CHECK(s1 == s2);
    CHECK(s1.size() == 64);
    CHECK(std::set<std::uint64_t>(s1.begin(), s1.end()).size() == 64);
    CHECK(std::is_sorted(s1.begin(), s1.end()));
    Rng rng3(5);
    CHECK(sample_codes(16, 99, rng3).size() == 16);
  }
}

TEST_CASE("flip") {
  const Assignment a = Assignment::from_string("11");
  const int first[] = {0};
  CHECK(flip(a, first).to_string() == "01");
  CHECK(flip(a, {}) == a);
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Assignment b = AssignmentSpace::full(8).at(uniform_below(rng, 256));
    std::vector<int> s;
    for (int j = 0; j < 8; ++j) {
      if (uniform_below(rng, 2) == 0) s.push_back(j);
    }
    CHECK(flip(flip(b, s), s) == b);
  }
  const Assignment masked = Assignment::from_string("1u");
  const int second[] = {1};
  CHECK_THROWS_AS(flip(masked, second), std::invalid_argument);
  const int oob[] = {5};
  CHECK_THROWS_AS(flip(a, oob), std::out_of_range);
}

TEST_CASE("mask") {
  const Assignment a = Assignment::from_string("11");
  const int both[] = {0, 1};
  CHECK(mask(a, both) == a);
  CHECK(mask(a, {}).to_string() == "uu");
  const Assignment b = Assignment::from_string("101");
  const int keep[] = {1};
  CHECK(mask(b, keep).to_string() == "u0u");
  const int hide[] = {0, 2};
  CHECK(mask_out(b, hide).to_string() == "u0u");
}

TEST_SUITE_END();
