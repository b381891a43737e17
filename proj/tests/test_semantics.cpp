#include <doctest.h>

#include "ccs/semantics.hpp"
#include "ccs/suites.hpp"

using namespace ccs;

namespace {

std::vector<std::pair<Action, std::string>> keys(const std::vector<std::pair<Action, Process>>& ts) {
  std::vector<std::pair<Action, std::string>> out;
  for (const auto& [u, t] : ts) out.emplace_back(u, pretty(t));
  return out;
}

}  // namespace

TEST_CASE("the handshake process has exactly three transitions") {
  auto ts = step(parse("a.0 | 'a.0"));
  REQUIRE(ts.size() == 3);
  // Deterministic order: a, 'a, then τ.
  CHECK(ts[0].first == Action::input("a"));
  CHECK(ts[0].second == parse("0 | 'a.0"));
  CHECK(ts[1].first == Action::output("a"));
  CHECK(ts[1].second == parse("a.0 | 0"));
  CHECK(ts[2].first == Action::make_tau());
  CHECK(ts[2].second == parse("0 | 0"));
}

TEST_CASE("step base cases") {
  CHECK(step(parse("0")).empty());

  auto rec_steps = step(parse("rec A. a.A"));
  REQUIRE(rec_steps.size() == 1);
  CHECK(rec_steps[0].first == Action::input("a"));
  CHECK(rec_steps[0].second == parse("rec A. a.A"));

  auto hidden = step(parse("nu {a} (a.0 | 'a.0)"));
  REQUIRE(hidden.size() == 1);
  CHECK(hidden[0].first == Action::make_tau());
  CHECK(hidden[0].second == parse("nu {a} (0 | 0)"));
}

TEST_CASE("step errors") {
  CHECK_THROWS_AS(step(parse("rec A. A")), UnguardedRecursionError);
  CHECK_THROWS_AS(step(parse("rec A. A + a.0")), UnguardedRecursionError);
  CHECK_THROWS_AS(step(parse("a.X")), OpenTermError);
}

TEST_CASE("step deduplicates derivations") {
  // Both summands yield the same transition.
  auto ts = step(parse("a.0 + a.0"));
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].second == parse("0"));
}

TEST_CASE("step agrees with the naive rule evaluator on the worked examples") {
  for (const char* text : {"a.0 | 'a.0", "0", "rec A. a.A", "nu {a} (a.0 | 'a.0)",
                           "(a.0 + t.b.0) | 'a.c.0", "rec A. (a.A | b.0)", "(a.0 | 'a.0)[b/a]"}) {
    Process p = parse(text);
    CHECK(keys(step(p)) == keys(suites::oracle_step(p)));
  }
}

TEST_CASE("trace_holds") {
  Process p = parse("a.b.0 + t.c.0");
  CHECK(trace_holds(p, {}, p));
  CHECK(trace_holds(parse("a.0"), {Action::input("a")}, parse("0")));
  CHECK(trace_holds(parse("a.0 | 'a.0"), {Action::make_tau()}, parse("0 | 0")));
  CHECK_FALSE(trace_holds(parse("a.0"), {Action::input("b")}, parse("0")));
  CHECK_FALSE(trace_holds(parse("a.0"), {}, parse("0")));
  CHECK(trace_holds(p, {Action::input("a"), Action::input("b")}, parse("0")));
}

TEST_CASE("trace_holds respects its state budget") {
  Process p = parse("rec A. a.(A | A)");
  ActionList acts(6, Action::input("a"));
  CHECK_THROWS_AS(trace_holds(p, acts, parse("0"), 10), TraceBudgetError);
}

TEST_CASE("no_label and unique_label") {
  Action a = Action::input("a"), b = Action::input("b"), tau = Action::make_tau();
  CHECK(no_label({}));
  CHECK(no_label({tau, tau}));
  CHECK_FALSE(no_label({tau, a}));

  CHECK(unique_label(a, {tau, a, tau}));
  CHECK_FALSE(unique_label(a, {a, b}));
  CHECK_FALSE(unique_label(a, {a, a}));
  CHECK_FALSE(unique_label(a, {tau}));
  CHECK_THROWS_AS(unique_label(tau, {tau}), NotVisibleError);
}
