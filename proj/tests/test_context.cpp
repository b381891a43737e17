#include <doctest.h>

#include "ccs/context.hpp"
#include "ccs/semantics.hpp"

using namespace ccs;

TEST_CASE("context parsing and application") {
  CHECK(parse_context("_").kind() == Context::Kind::hole);
  CHECK(apply(parse_context("_"), parse("a.0")) == parse("a.0"));
  CHECK(apply(parse_context("a._"), parse("0")) == parse("a.0"));
  CHECK(apply(parse_context("_ | _"), parse("b.0")) == parse("b.0 | b.0"));
  CHECK_THROWS_AS(apply(parse_context("a._"), parse("a.X")), OpenTermError);
  CHECK_THROWS_AS(parse_context("rec A. a._"), PreconditionError);
  CHECK_THROWS_AS(parse_context("a._ | X"), OpenTermError);
}

TEST_CASE("compose and iterate") {
  Context step_ctx = parse_context("a._");
  CHECK(iterate(step_ctx, 0) == Context::hole());
  CHECK(iterate(step_ctx, 2) == parse_context("a.a._"));
  CHECK(compose(parse_context("_ | b.0"), step_ctx) == parse_context("a._ | b.0"));
  Process p = parse("c.0");
  Context c = parse_context("b._ + 0");
  CHECK(apply(compose(c, step_ctx), p) == apply(c, apply(step_ctx, p)));
}

TEST_CASE("classification of the rule-block examples") {
  Classification hole = classify(parse_context("_"));
  CHECK(hole.context);
  CHECK(hole.gcontext);
  CHECK(hole.seq);
  CHECK_FALSE(hole.wg);
  CHECK_FALSE(hole.wgs);
  CHECK_FALSE(hole.sg);

  Classification visible = classify(parse_context("a._"));
  CHECK(visible.wg);
  CHECK(visible.sg);
  CHECK(visible.wgs);
  CHECK(visible.seq);

  Classification tau_prefixed = classify(parse_context("t._"));
  CHECK(tau_prefixed.wg);
  CHECK_FALSE(tau_prefixed.sg);

  Classification open_sum = classify(parse_context("_ + a._"));
  CHECK(open_sum.context);
  CHECK_FALSE(open_sum.wg);
  CHECK_FALSE(open_sum.gcontext);

  // Hole-free subtrees are constants and belong to every class.
  Classification constant = classify(parse_context("rec A. a.A + b.0"));
  CHECK(constant.context);
  CHECK(constant.wgs);
  CHECK(constant.sg);
  CHECK(constant.seq);

  // A guarded sum of prefixed summands, one of them constant.
  Classification guarded = classify(parse_context("a._ + b.0"));
  CHECK(guarded.wg);
  CHECK(guarded.gcontext);
  CHECK(guarded.wgs);

  // τ over SG stays SG; the paper's τ-rule needs an SG body.
  CHECK(classify(parse_context("t.a._")).sg);
  // Parallel and restriction break sequentiality.
  CHECK_FALSE(classify(parse_context("a._ | 0")).seq);
  CHECK_FALSE(classify(parse_context("nu {a} b._")).seq);
}

TEST_CASE("context stepping is hole-inert") {
  CHECK(context_step(Context::hole()).empty());

  auto prefixed = context_step(parse_context("a._"));
  REQUIRE(prefixed.size() == 1);
  CHECK(prefixed[0].first == Action::input("a"));
  CHECK(prefixed[0].second == Context::hole());

  auto par = context_step(parse_context("a._ | 'a.0"));
  REQUIRE(par.size() == 3);
  CHECK(par[0].first == Action::input("a"));
  CHECK(par[0].second == parse_context("_ | 'a.0"));
  CHECK(par[1].first == Action::output("a"));
  CHECK(par[1].second == parse_context("a._ | 0"));
  CHECK(par[2].first == Action::make_tau());
  CHECK(par[2].second == parse_context("_ | 0"));
}

TEST_CASE("weak guardedness of open expressions") {
  CHECK(weakly_guarded_expr(parse("a.X")));
  CHECK_FALSE(weakly_guarded_expr(parse("X")));
  CHECK_FALSE(weakly_guarded_expr(parse("X + a.X")));
  CHECK(weakly_guarded_expr(parse("a.(X | b.X)")));

  // Occurrences under a rec binder are invisible to the check but flagged.
  Process under_rec = parse("rec B. (b.B | X)");
  CHECK(weakly_guarded_expr(under_rec));
  CHECK(has_free_var_under_rec(under_rec));
  CHECK_FALSE(has_free_var_under_rec(parse("a.X")));
}

TEST_CASE("to_process closes the holes with a variable") {
  CHECK(to_process(parse_context("a._ + b.0"), "X") == parse("a.X + b.0"));
}
