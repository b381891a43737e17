#include <doctest.h>

#include "ccs/defs.hpp"
#include "ccs/syntax.hpp"

using namespace ccs;

TEST_CASE("parse builds the expected trees") {
  Process p = parse("a.0 | 'a.0");
  REQUIRE(p.kind() == Process::Kind::par);
  CHECK(p.left().kind() == Process::Kind::prefix);
  CHECK(p.left().action() == Action::input("a"));
  CHECK(p.left().child().kind() == Process::Kind::nil);
  CHECK(p.right().action() == Action::output("a"));

  CHECK(parse("0").kind() == Process::Kind::nil);

  Process r = parse("rec A. a.A");
  REQUIRE(r.kind() == Process::Kind::rec);
  CHECK(r.name() == "A");
  CHECK(r.child().kind() == Process::Kind::prefix);
  CHECK(r.child().child().kind() == Process::Kind::var);
  CHECK(r.child().child().name() == "A");
}

TEST_CASE("pretty printing") {
  CHECK(pretty(Process::nil()) == "0");
  CHECK(pretty(Process::prefix(Action::make_tau(), Process::nil())) == "t.0");
  Process sum = Process::sum(
      Process::prefix(Action::input("a"), Process::nil()),
      Process::prefix(Action::make_tau(), Process::prefix(Action::input("a"), Process::nil())));
  CHECK(pretty(sum) == "a.0 + t.a.0");
}

TEST_CASE("precedence: prefix binds tighter than relabeling") {
  Process p = parse("a.0[b/a]");
  REQUIRE(p.kind() == Process::Kind::relabel);
  CHECK(p.child().kind() == Process::Kind::prefix);

  Process q = parse("a.(0[b/a])");
  REQUIRE(q.kind() == Process::Kind::prefix);
  CHECK(q.child().kind() == Process::Kind::relabel);
}

TEST_CASE("round trip on tricky shapes") {
  const char* cases[] = {
      "a.0[b/a]",
      "(nu {a} a.0)[b/a]",
      "(rec A. a.A)[b/a]",
      "nu {a} a.0[b/a]",
      "a.(rec A. b.A)",
      "nu {a, b} (a.0 | 'b.0)",
      "a.0 + (b.0 + t.0)",
      "a.0 | (b.0 | c.0)",
      "rec A. a.A + b.0",
      "a.(b.0 + c.0)",
  };
  for (const char* text : cases) {
    Process p = parse(text);
    CHECK(deep_equal(parse(pretty(p)), p));
  }
}

TEST_CASE("syntax errors carry position and expectation") {
  CHECK_THROWS_AS(parse("a."), SyntaxError);
  CHECK_THROWS_AS(parse("(a.0"), SyntaxError);
  CHECK_THROWS_AS(parse("a.0 +"), SyntaxError);
  CHECK_THROWS_AS(parse("nu a.0"), SyntaxError);
  CHECK_THROWS_AS(parse("a.0 666"), SyntaxError);
  CHECK_THROWS_AS(parse("_"), SyntaxError);
  try {
    parse("a.0 +\n+ b.0");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 1);
  }
  CHECK_THROWS_AS(parse("a.0[b/a, c/a]"), UnboundConstructError);
}

TEST_CASE("substitution") {
  Process body = parse("a.A");
  Process value = parse("rec A. a.A");
  CHECK(substitute(body, "A", value) == parse("a.(rec A. a.A)"));
  CHECK(substitute(Process::nil(), "A", parse("b.0")) == Process::nil());
  CHECK(substitute(parse("rec A. a.A"), "A", parse("b.0")) == parse("rec A. a.A"));
}

TEST_CASE("substituting an open value under a capturing binder is loud") {
  Process body = Process::rec("B", Process::par(Process::var("X"), Process::var("B")));
  CHECK_THROWS_AS(substitute(body, "X", Process::var("B")), CaptureError);
  // No capture when the binder is not free in the value.
  CHECK_NOTHROW(substitute(body, "X", Process::var("C")));
}

TEST_CASE("free variables") {
  CHECK(free_variables(parse("a.X + b.0")) == std::set<Name>{"X"});
  CHECK(free_variables(parse("rec A. a.A")).empty());
  CHECK(free_variables(parse("rec A. (a.A | b.X)")) == std::set<Name>{"X"});
}

TEST_CASE("relabeling of actions") {
  Relabeling rf(std::map<Name, Name>{{"a", "b"}});
  CHECK(relabel_action(rf, Action::input("a")) == Action::input("b"));
  CHECK(relabel_action(rf, Action::output("a")) == Action::output("b"));
  CHECK(relabel_action(rf, Action::make_tau()) == Action::make_tau());
  CHECK(relabel_action(rf, Action::input("c")) == Action::input("c"));
}

TEST_CASE("canonical form identifies alpha-equivalent rec binders") {
  CHECK(parse("rec A. a.A") == parse("rec B. a.B"));
  CHECK(structural_key(parse("rec A. a.A")) == structural_key(parse("rec Other. a.Other")));
  CHECK_FALSE(parse("rec A. a.A") == parse("rec A. b.A"));

  // A binder never steals the name of a free variable.
  Process open = Process::rec("A", Process::prefix(Action::input("a"),
                                                   Process::par(Process::var("A"), Process::var("V0"))));
  Process canon = canonical(open);
  CHECK(free_variables(canon) == std::set<Name>{"V0"});
  CHECK(canon == open);
}

TEST_CASE("action ordering lists visible actions before tau") {
  CHECK(Action::input("a") < Action::output("a"));
  CHECK(Action::output("a") < Action::input("b"));
  CHECK(Action::input("b") < Action::make_tau());
}

TEST_CASE("definition files") {
  Definitions defs = load_definitions(
      "# comment\n"
      "agent A = a.0 | 'a.0;\n"
      "agent K = a.K;\n"
      "agent KB = K | b.0;\n");
  CHECK(defs.order.size() == 3);
  CHECK(defs.resolve("A") == parse("a.0 | 'a.0"));
  CHECK(defs.resolve("K") == parse("rec K. a.K"));
  CHECK(defs.resolve("KB") == Process::par(parse("rec K. a.K"), parse("b.0")));

  CHECK_THROWS_AS(load_definitions("agent A = b.B;\nagent B = a.A;"), DefinitionError);
  CHECK_THROWS_AS(load_definitions("agent A = 0;\nagent A = 0;"), DefinitionError);
  CHECK_THROWS_AS(load_definitions("agent A = undefined.X;"), DefinitionError);
}
