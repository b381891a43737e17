#include <doctest.h>

#include "ccs/equiv.hpp"
#include "ccs/suites.hpp"

using namespace ccs;

TEST_CASE("strong bisimilarity") {
  Process p = parse("a.b.0 + t.0");
  CHECK(strong_bisim(p, p).holds);
  CHECK(strong_bisim(parse("a.0 + b.0"), parse("b.0 + a.0")).holds);
  CHECK_FALSE(strong_bisim(parse("t.a.0"), parse("a.0")).holds);
  // Cross-check against partition refinement.
  CHECK(strong_bisim_pr(parse("a.0 + b.0"), parse("b.0 + a.0")));
  CHECK_FALSE(strong_bisim_pr(parse("t.a.0"), parse("a.0")));
}

TEST_CASE("weak bisimilarity") {
  CHECK(weak_bisim(parse("t.a.0"), parse("a.0")).holds);
  CHECK_FALSE(weak_bisim(parse("a.0"), parse("b.0")).holds);
  CHECK(weak_bisim(parse("rec k. a.k"), parse("a.0 | rec k. a.k")).holds);
  CHECK(weak_bisim_pr(parse("t.a.0"), parse("a.0")));
  CHECK_FALSE(weak_bisim_pr(parse("a.0"), parse("b.0")));
}

TEST_CASE("rooted bisimilarity") {
  CHECK(rooted_bisim(parse("a.0"), parse("a.0")).holds);
  CHECK_FALSE(rooted_bisim(parse("t.a.0"), parse("a.0")).holds);
  CHECK(rooted_bisim(parse("a.0 + t.a.0"), parse("t.a.0")).holds);
  CHECK(rooted_bisim(parse("a.t.b.0"), parse("a.b.0")).holds);
}

TEST_CASE("expansion preorder") {
  Process p = parse("a.t.b.0");
  CHECK(expansion(p, p).holds);
  CHECK(expansion(parse("t.a.0"), parse("a.0")).holds);
  CHECK_FALSE(expansion(parse("a.0"), parse("a.0 + t.a.0")).holds);
}

TEST_CASE("contraction preorder") {
  CHECK(contraction(parse("a.0 + t.a.0"), parse("a.0")).holds);
  CHECK(contraction(parse("a.0"), parse("a.0 + t.a.0")).holds);
  CHECK_FALSE(contraction(parse("a.0"), parse("t.a.0")).holds);
}

TEST_CASE("rooted contraction preorder") {
  Process p = parse("a.(b.0 + t.c.0)");
  CHECK(rooted_contraction(p, p).holds);
  CHECK_FALSE(rooted_contraction(parse("a.0 + t.a.0"), parse("a.0")).holds);
  CHECK(rooted_contraction(parse("a.(b.0 + t.b.0)"), parse("a.b.0")).holds);
}

TEST_CASE("witnesses contain the roots and are clause-closed") {
  Verdict v = weak_bisim(parse("t.a.0"), parse("a.0"));
  REQUIRE(v.holds);
  CHECK(v.witness.contains(v.left->base().root(), v.right->base().root()));
  CHECK(suites::check_weak_bisimulation_clauses(v.left->base(), v.right->base(), v.witness.pairs));
}

TEST_CASE("distinguishers name the first violated clause deterministically") {
  Verdict v = weak_bisim(parse("a.0"), parse("b.0"));
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.reason.has_value());
  CHECK(v.reason->clause == "left move unmatched");
  CHECK(v.reason->action == Action::input("a"));

  Verdict r = rooted_bisim(parse("t.a.0"), parse("a.0"));
  REQUIRE_FALSE(r.holds);
  CHECK(r.reason->clause == "root left move unmatched");
  CHECK(r.reason->action == Action::make_tau());
}

TEST_CASE("both engines agree on a divergent τ-cycle") {
  // Weak bisimilarity ignores divergence: rec X. t.X ≈ 0.
  Process div = parse("rec X. t.X");
  CHECK(weak_bisim(div, parse("0")).holds);
  CHECK(weak_bisim_pr(div, parse("0")));
}
