#include <doctest.h>

#include "ccs/solutions.hpp"

using namespace ccs;

TEST_CASE("solutionhood of the worked systems") {
  SystemSpec strong_loop{parse_context("a._"), SolveRelation::strong};
  CHECK(is_solution(strong_loop, parse("rec A. a.A")));

  SystemSpec weak_par{parse_context("a.0 | _"), SolveRelation::weak};
  CHECK(is_solution(weak_par, parse("rec k. a.k")));
  CHECK(is_solution(weak_par, parse("rec k. a.k | b.0")));

  SystemSpec weak_hidden{parse_context("nu {a} (a._ | 'a.0)"), SolveRelation::weak};
  CHECK(is_solution(weak_hidden, parse("0")));
  CHECK(is_solution(weak_hidden, parse("b.0")));

  SystemSpec contraction_loop{parse_context("a._"), SolveRelation::contraction};
  CHECK(is_solution(contraction_loop, parse("rec A. a.A")));
  CHECK(is_solution(contraction_loop, parse("rec A. a.t.A")));
}

TEST_CASE("unique solution: contraction variant on a weakly guarded sum body") {
  SystemSpec spec{parse_context("a._"), SolveRelation::contraction};
  SolutionReport report = unique_solution(spec, parse("rec A. a.A"), parse("rec A. a.t.A"));
  CHECK(report.theorem == "contraction");
  CHECK(report.hypotheses_ok());
  REQUIRE(report.conclusion.has_value());
  CHECK(report.conclusion->holds);
}

TEST_CASE("unique solution: strong variant accepts any weakly guarded body") {
  SystemSpec spec{parse_context("a._"), SolveRelation::strong};
  SolutionReport report = unique_solution(spec, parse("rec A. a.A"), parse("a.(rec A. a.A)"));
  CHECK(report.hypotheses_ok());
  REQUIRE(report.conclusion.has_value());
  CHECK(report.conclusion->holds);
}

TEST_CASE("unique solution: the parallel body fails sequentiality and uniqueness") {
  SystemSpec spec{parse_context("a.0 | _"), SolveRelation::weak};
  Process k = parse("rec k. a.k");
  Process kb = parse("rec k. a.k | b.0");
  SolutionReport report = unique_solution(spec, k, kb);
  CHECK_FALSE(report.hypotheses_ok());
  bool seq_failed = false, solutions_pass = true;
  for (const auto& [name, pass] : report.hypothesis_checks) {
    if (name == "SEQ(body)") seq_failed = !pass;
    if (name == "p is a solution" || name == "q is a solution") solutions_pass &= pass;
  }
  CHECK(seq_failed);
  CHECK(solutions_pass);
  CHECK_FALSE(report.conclusion.has_value());
  CHECK_FALSE(weak_bisim(k, kb).holds);
}

TEST_CASE("unique solution: rooted contraction allows free sums") {
  SystemSpec spec{parse_context("a._ + b.0"), SolveRelation::rooted_contraction};
  SolutionReport report =
      unique_solution(spec, parse("rec A. (a.A + b.0)"), parse("rec A. (a.t.A + b.0)"));
  CHECK(report.hypotheses_ok());
  REQUIRE(report.conclusion.has_value());
  CHECK(report.conclusion->holds);
}

TEST_CASE("unfold_decompose") {
  Context hole = Context::hole();
  Context body = parse_context("a._");

  auto one = unfold_decompose(hole, body, 1, {Action::input("a")});
  REQUIRE(one.size() == 1);
  CHECK(one[0].residual == hole);

  auto none = unfold_decompose(hole, body, 2, {});
  REQUIRE(none.size() == 1);
  CHECK(none[0].residual == parse_context("a.a._"));

  auto two = unfold_decompose(hole, body, 2, {Action::input("a")});
  REQUIRE(two.size() == 1);
  CHECK(two[0].residual == parse_context("a._"));

  CHECK_THROWS_AS(unfold_decompose(hole, body, 0, {Action::input("a")}), PreconditionError);
  CHECK_THROWS_AS(unfold_decompose(hole, parse_context("_ + a._"), 1, {Action::input("a")}),
                  PreconditionError);
  CHECK_THROWS_AS(unfold_decompose(parse_context("_ + a._"), body, 1, {Action::input("a")}),
                  PreconditionError);
}

TEST_CASE("contraction trace transfer") {
  auto shortened = contraction_trace_transfer(parse("a.0 + t.a.0"), parse("a.0"),
                                              {Action::make_tau(), Action::input("a")});
  REQUIRE(shortened.has_value());
  CHECK(shortened->first == ActionList{Action::input("a")});
  CHECK(shortened->second == parse("0"));

  Process p = parse("a.t.t.0");
  ActionList acts{Action::input("a"), Action::make_tau(), Action::make_tau()};
  auto reflexive = contraction_trace_transfer(p, p, acts);
  REQUIRE(reflexive.has_value());
  CHECK(reflexive->first == acts);
  CHECK(reflexive->second == parse("0"));

  auto collapsed = contraction_trace_transfer(parse("t.t.0"), parse("0"),
                                              {Action::make_tau(), Action::make_tau()});
  REQUIRE(collapsed.has_value());
  CHECK(collapsed->first.empty());
  CHECK(collapsed->second == parse("0"));

  CHECK_THROWS_AS(
      contraction_trace_transfer(parse("a.0"), parse("t.a.0"), {Action::input("a")}),
      PreconditionError);
  // Two visible actions violate the label discipline.
  CHECK_THROWS_AS(contraction_trace_transfer(parse("a.b.0"), parse("a.b.0"),
                                             {Action::input("a"), Action::input("b")}),
                  PreconditionError);
}

TEST_CASE("solution transfer on the canonical instance") {
  Context body = parse_context("a._");
  Process p = parse("rec A. a.A");
  Process q = parse("rec A. a.t.A");

  auto entries = solution_transfer(body, p, q, Context::hole(), Action::input("a"),
                                   TransferVariant::contraction);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].residual == Context::hole());
  CHECK(entries[0].target == p);

  auto vacuous = solution_transfer(body, p, q, Context::hole(), Action::input("z"),
                                   TransferVariant::contraction);
  CHECK(vacuous.empty());

  auto constant = solution_transfer(body, p, q, Context::leaf(parse("a.0")), Action::input("a"),
                                    TransferVariant::contraction);
  REQUIRE_FALSE(constant.empty());
  CHECK_FALSE(has_hole(constant[0].residual));

  auto rooted = solution_transfer(body, p, q, Context::hole(), Action::input("a"),
                                  TransferVariant::rooted_contraction);
  CHECK_FALSE(rooted.empty());

  CHECK_THROWS_AS(solution_transfer(parse_context("_ + a._"), p, q, Context::hole(),
                                    Action::input("a"), TransferVariant::contraction),
                  PreconditionError);
}
