#include <doctest.h>

#include "ccs/congruence.hpp"

using namespace ccs;

TEST_CASE("free actions are fresh") {
  CHECK(free_action(parse("a.0")) == Label(Polarity::input, "b"));
  CHECK(free_action(parse("0")) == Label(Polarity::input, "a"));
  CHECK(free_action(parse("a.0 + 'a.0")) == Label(Polarity::input, "b"));
  CHECK(free_action(parse("a.b.c.0 | d.0")) == Label(Polarity::input, "e"));
}

TEST_CASE("sum compatibility, bounded") {
  Process a = parse("a.0"), ta = parse("t.a.0");
  TriState refuted = sum_equiv_bounded(a, ta, {parse("b.0")});
  CHECK(refuted.refuted());
  REQUIRE(refuted.refuting_probe.has_value());
  CHECK(*refuted.refuting_probe == parse("b.0"));

  Process p = parse("a.b.0 + t.c.0");
  CHECK(sum_equiv_bounded(p, p, {parse("b.0"), parse("t.0")}).confirmed());
  CHECK(sum_equiv_bounded(parse("a.0 + t.a.0"), parse("t.a.0"),
                          {parse("b.0"), parse("'a.0"), parse("t.b.0")})
            .confirmed());
}

TEST_CASE("the fresh-summand characterization decides rooted bisimilarity") {
  CHECK_FALSE(decide_rooted_via_sum(parse("a.0"), parse("t.a.0")));
  Process p = parse("a.t.b.0");
  CHECK(decide_rooted_via_sum(p, p));
  CHECK(decide_rooted_via_sum(parse("a.t.b.0"), parse("a.b.0")));
  CHECK(decide_rooted_via_sum(parse("a.0 + t.a.0"), parse("t.a.0")));
}

TEST_CASE("the fresh-summand characterization decides rooted contraction") {
  Process p = parse("a.t.b.0");
  CHECK(decide_rooted_contraction_via_sum(p, p));
  CHECK_FALSE(decide_rooted_contraction_via_sum(parse("a.0 + t.a.0"), parse("a.0")));
  CHECK(decide_rooted_contraction_via_sum(parse("a.(b.0 + t.b.0)"), parse("a.b.0")));
}

TEST_CASE("bounded composition closure") {
  // Depth 0 is the identity context.
  CHECK(composition_closure_bounded(ClosureRelation::weak, parse("a.0"), parse("t.a.0"), 0, {"a", "b"})
            .confirmed());
  TriState refuted =
      composition_closure_bounded(ClosureRelation::weak, parse("a.0"), parse("t.a.0"), 1, {"a", "b"});
  CHECK(refuted.refuted());
  REQUIRE(refuted.refuting_context.has_value());
  CHECK(*refuted.refuting_context == parse_context("_ + b.0"));

  CHECK(composition_closure_bounded(ClosureRelation::weak, parse("a.t.b.0"), parse("a.b.0"), 2,
                                    {"a", "b"})
            .confirmed());
  // A rooted-contraction pair stays contraction-related under every context;
  // a merely contraction-related one is refuted by a sum.
  CHECK(composition_closure_bounded(ClosureRelation::contraction, parse("a.t.b.0"), parse("a.b.0"),
                                    1, {"a", "b"})
            .confirmed());
  CHECK(composition_closure_bounded(ClosureRelation::contraction, parse("a.0 + t.a.0"),
                                    parse("a.0"), 1, {"a", "b"})
            .refuted());
}

TEST_CASE("Hennessy/Deng disjuncts") {
  HennessyDengReport left_tau = hennessy_deng_check(parse("a.0"), parse("t.a.0"));
  CHECK(left_tau.weakly_bisimilar);
  CHECK_FALSE(left_tau.rooted);
  CHECK(left_tau.rooted_with_tau_left);
  CHECK(left_tau.biconditional_holds());

  HennessyDengReport refl = hennessy_deng_check(parse("a.0"), parse("a.0"));
  CHECK(refl.rooted);
  CHECK(refl.biconditional_holds());

  HennessyDengReport unrelated = hennessy_deng_check(parse("a.0"), parse("b.0"));
  CHECK_FALSE(unrelated.weakly_bisimilar);
  CHECK_FALSE(unrelated.rhs());
  CHECK(unrelated.biconditional_holds());
}

TEST_CASE("stable-witness instance checks") {
  Process a = parse("a.0"), k = parse("b.0");
  Prop3Report same = prop3_instance_check(a, a, k, prop3_default_probes(a, a, k));
  CHECK(same.stable_k);
  CHECK(same.probes.confirmed());
  CHECK(same.rooted_holds);
  CHECK(same.consistent);

  Process ta = parse("t.a.0");
  Prop3Report differ = prop3_instance_check(a, ta, k, prop3_default_probes(a, ta, k));
  CHECK(differ.probes.refuted());
  REQUIRE(differ.probes.refuting_probe.has_value());
  CHECK_FALSE(differ.rooted_holds);
  CHECK(differ.consistent);

  CHECK_THROWS_AS(
      prop3_instance_check(a, a, parse("t.0"), prop3_default_probes(a, a, parse("t.0"))),
      HypothesisError);
  // c.b.0 reaches b.0 weakly, so k = b.0 violates the derivative clause.
  Process cb = parse("c.b.0");
  CHECK_THROWS_AS(prop3_instance_check(cb, a, k, prop3_default_probes(cb, a, k)), HypothesisError);
  CHECK_THROWS_AS(prop3_instance_check(a, a, k, {parse("c.0")}), PreconditionError);
}
