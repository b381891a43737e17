#include <doctest.h>

#include "ccs/lts.hpp"

using namespace ccs;

TEST_CASE("explore the handshake process") {
  // States: a|'a, 0|'a, a|0, 0|0; edges: the root's three plus one from
  // each intermediate state into 0|0.
  Lts l = explore(parse("a.0 | 'a.0"));
  CHECK(l.size() == 4);
  std::size_t edges = 0;
  for (std::size_t s = 0; s < l.size(); ++s) edges += l.edges(static_cast<StateId>(s)).size();
  CHECK(edges == 5);
}

TEST_CASE("explore base cases") {
  Lts nil = explore(parse("0"));
  CHECK(nil.size() == 1);
  CHECK(nil.edges(nil.root()).empty());

  Lts loop = explore(parse("rec A. a.A"));
  CHECK(loop.size() == 1);
  REQUIRE(loop.edges(loop.root()).size() == 1);
  CHECK(loop.edges(loop.root())[0].second == loop.root());
}

TEST_CASE("explore reports a state budget overrun with a frontier sample") {
  try {
    explore(parse("rec A. a.(A | b.0)"), 20);
    FAIL("expected StateBudgetError");
  } catch (const StateBudgetError& e) {
    CHECK(e.visited > 20);
    CHECK_FALSE(e.frontier_sample.empty());
  }
}

TEST_CASE("saturation of t.a.0") {
  Lts l = explore(parse("t.a.0"));
  WeakLts w = saturate(l);
  StateId root = l.root();
  StateId mid = l.state_of(parse("a.0"));
  StateId done = l.state_of(parse("0"));
  REQUIRE(mid >= 0);
  REQUIRE(done >= 0);

  CHECK(w.eps(root, mid));
  CHECK(w.weak_visible(root, Label(Polarity::input, "a"), done));
  for (StateId s = 0; s < static_cast<StateId>(l.size()); ++s) CHECK(w.eps(s, s));

  // Full weak τ needs at least one step, the hat allows staying.
  CHECK_FALSE(w.weak_full(root, Action::make_tau(), root));
  CHECK(w.weak_hat(root, Action::make_tau(), root));
  CHECK(w.weak_full(root, Action::make_tau(), mid));

  CHECK(w.single_hat(root, Action::make_tau(), root));
  CHECK(w.single_hat(root, Action::make_tau(), mid));
  CHECK_FALSE(w.single_hat(root, Action::make_tau(), done));
}

TEST_CASE("stability") {
  Lts a = explore(parse("a.0"));
  CHECK(is_stable(a, a.root()));
  Lts t = explore(parse("t.0"));
  CHECK_FALSE(is_stable(t, t.root()));
  Lts handshake = explore(parse("a.0 | 'a.0"));
  CHECK_FALSE(is_stable(handshake, handshake.root()));
}

TEST_CASE("deterministic DOT output") {
  Lts nil = explore(parse("0"));
  std::string d = to_dot(nil);
  CHECK(d.find("digraph") != std::string::npos);
  CHECK(d.find("->") == std::string::npos);

  Lts a = explore(parse("a.0"));
  std::string da = to_dot(a);
  CHECK(da.find("s0 -> s1 [label=\"a\"]") != std::string::npos);
  CHECK(da.find("doublecircle") != std::string::npos);
  CHECK(da == to_dot(explore(parse("a.0"))));
}
