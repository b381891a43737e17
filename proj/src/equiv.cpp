#include "ccs/equiv.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace ccs {

bool PairRelation::contains(StateId a, StateId b) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

namespace {

// Candidate relation between two LTSs, kept with its transpose so both
// clause directions are row scans.
struct Product {
  const WeakLts& a;
  const WeakLts& b;
  BitMatrix r;   // |A| x |B|
  BitMatrix rt;  // |B| x |A|

  Product(const WeakLts& a_, const WeakLts& b_)
      : a(a_), b(b_), r(a_.size(), b_.size()), rt(b_.size(), a_.size()) {
    for (std::size_t s = 0; s < a.size(); ++s)
      for (std::size_t t = 0; t < b.size(); ++t) {
        r.set(s, t);
        rt.set(t, s);
      }
  }

  void erase(StateId s, StateId t) {
    r.clear(s, t);
    rt.clear(t, s);
  }
};

// ∃t' : t ⇒̂u t' (in B) ∧ R(s', t')
bool hat_response_right(const Product& pr, StateId t, const Action& u, StateId s_after) {
  const BitMatrix* row_src = u.is_tau() ? &pr.b.eps_matrix() : pr.b.weak_matrix(u.label());
  if (!row_src) return false;
  return pr.r.row_intersects(s_after, row_src->row(t));
}

// ∃s' : s ⇒̂u s' (in A) ∧ R(s', t')
bool hat_response_left(const Product& pr, StateId s, const Action& u, StateId t_after) {
  const BitMatrix* row_src = u.is_tau() ? &pr.a.eps_matrix() : pr.a.weak_matrix(u.label());
  if (!row_src) return false;
  return pr.rt.row_intersects(t_after, row_src->row(s));
}

// ∃s' : s ⇒u s' (in A, full weak: τ needs at least one step) ∧ R(s', t')
bool full_response_left(const Product& pr, StateId s, const Action& u, StateId t_after) {
  const BitMatrix* row_src = u.is_tau() ? &pr.a.weak_tau_matrix() : pr.a.weak_matrix(u.label());
  if (!row_src) return false;
  return pr.rt.row_intersects(t_after, row_src->row(s));
}

// ∃t' : t ↪u t' (in B, at most one step) ∧ R(s', t')
bool single_response_right(const Product& pr, StateId t, const Action& u, StateId s_after) {
  if (u.is_tau() && pr.r.get(s_after, t)) return true;
  for (const auto& [act, t2] : pr.b.base().edges(t))
    if (act == u && pr.r.get(s_after, t2)) return true;
  return false;
}

// ∃t' : t −u→ t' ∧ R(s', t')
bool strong_response_right(const Product& pr, StateId t, const Action& u, StateId s_after) {
  for (const auto& [act, t2] : pr.b.base().edges(t))
    if (act == u && pr.r.get(s_after, t2)) return true;
  return false;
}

bool strong_response_left(const Product& pr, StateId s, const Action& u, StateId t_after) {
  for (const auto& [act, s2] : pr.a.base().edges(s))
    if (act == u && pr.r.get(s2, t_after)) return true;
  return false;
}

template <typename Ok>
void refine(Product& pr, Ok ok) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId s = 0; s < static_cast<StateId>(pr.a.size()); ++s)
      for (StateId t = 0; t < static_cast<StateId>(pr.b.size()); ++t)
        if (pr.r.get(s, t) && !ok(pr, s, t)) {
          pr.erase(s, t);
          changed = true;
        }
  }
}

bool strong_ok(const Product& pr, StateId s, StateId t) {
  for (const auto& [u, s2] : pr.a.base().edges(s))
    if (!strong_response_right(pr, t, u, s2)) return false;
  for (const auto& [u, t2] : pr.b.base().edges(t))
    if (!strong_response_left(pr, s, u, t2)) return false;
  return true;
}

bool weak_ok(const Product& pr, StateId s, StateId t) {
  for (const auto& [u, s2] : pr.a.base().edges(s))
    if (!hat_response_right(pr, t, u, s2)) return false;
  for (const auto& [u, t2] : pr.b.base().edges(t))
    if (!hat_response_left(pr, s, u, t2)) return false;
  return true;
}

bool expansion_ok(const Product& pr, StateId s, StateId t) {
  for (const auto& [u, s2] : pr.a.base().edges(s))
    if (!single_response_right(pr, t, u, s2)) return false;
  for (const auto& [u, t2] : pr.b.base().edges(t))
    if (!full_response_left(pr, s, u, t2)) return false;
  return true;
}

// Clause 1 of the contraction preorder; clause 2 was applied as the initial
// mask, so only this clause participates in the fixpoint.
bool contraction_clause1_ok(const Product& pr, StateId s, StateId t) {
  for (const auto& [u, s2] : pr.a.base().edges(s))
    if (!single_response_right(pr, t, u, s2)) return false;
  return true;
}

}  // namespace

BitMatrix strong_gfp(const WeakLts& a, const WeakLts& b) {
  Product pr(a, b);
  refine(pr, strong_ok);
  return std::move(pr.r);
}

BitMatrix weak_gfp(const WeakLts& a, const WeakLts& b) {
  Product pr(a, b);
  refine(pr, weak_ok);
  return std::move(pr.r);
}

BitMatrix expansion_gfp(const WeakLts& a, const WeakLts& b) {
  Product pr(a, b);
  refine(pr, expansion_ok);
  return std::move(pr.r);
}

BitMatrix contraction_gfp(const WeakLts& a, const WeakLts& b, const BitMatrix& weak) {
  Product pr(a, b);
  // Static filter: every move of the right state must be answered by
  // s ⇒̂u s' with (s', t') weakly bisimilar.
  for (StateId s = 0; s < static_cast<StateId>(a.size()); ++s)
    for (StateId t = 0; t < static_cast<StateId>(b.size()); ++t) {
      bool ok = true;
      for (const auto& [u, t2] : b.base().edges(t)) {
        const BitMatrix* row_src = u.is_tau() ? &a.eps_matrix() : a.weak_matrix(u.label());
        bool matched = false;
        if (row_src) {
          const std::uint64_t* arow = row_src->row(s);
          for (StateId s2 = 0; s2 < static_cast<StateId>(a.size()) && !matched; ++s2)
            if (((arow[s2 / 64] >> (s2 % 64)) & 1u) && weak.get(s2, t2)) matched = true;
        }
        if (!matched) {
          ok = false;
          break;
        }
      }
      if (!ok) pr.erase(s, t);
    }
  refine(pr, contraction_clause1_ok);
  return std::move(pr.r);
}

BitMatrix contraction_gfp(const WeakLts& a, const WeakLts& b) {
  return contraction_gfp(a, b, weak_gfp(a, b));
}

// ---------------------------------------------------------------------------
// Process-level verdicts

namespace {

enum class Rel { strong, weak, expansion, contraction };

struct Explored {
  std::shared_ptr<const WeakLts> a, b;
};

Explored explore_pair(const Process& p, const Process& q, const Budget& budget) {
  Explored e;
  e.a = std::make_shared<WeakLts>(saturate(explore(p, budget.max_states, budget.step)));
  e.b = std::make_shared<WeakLts>(saturate(explore(q, budget.max_states, budget.step)));
  return e;
}

bool response_exists(const WeakLts& a, const WeakLts& b, const BitMatrix& r, Rel rel, bool left_challenge,
                     StateId other, const Action& u, StateId after, std::vector<StateId>* collect) {
  // left_challenge: challenge from the A side, response from B into r(after, t').
  bool found = false;
  auto consider_right = [&](StateId t2) {
    if (r.get(after, t2)) {
      found = true;
      if (collect) collect->push_back(t2);
    }
  };
  auto consider_left = [&](StateId s2) {
    if (r.get(s2, after)) {
      found = true;
      if (collect) collect->push_back(s2);
    }
  };
  if (left_challenge) {
    switch (rel) {
      case Rel::strong:
        for (const auto& [act, t2] : b.base().edges(other))
          if (act == u) consider_right(t2);
        break;
      case Rel::weak:
        for (StateId t2 = 0; t2 < static_cast<StateId>(b.size()); ++t2)
          if (b.weak_hat(other, u, t2)) consider_right(t2);
        break;
      case Rel::expansion:
      case Rel::contraction:
        if (u.is_tau()) consider_right(other);
        for (const auto& [act, t2] : b.base().edges(other))
          if (act == u) consider_right(t2);
        break;
    }
  } else {
    switch (rel) {
      case Rel::strong:
        for (const auto& [act, s2] : a.base().edges(other))
          if (act == u) consider_left(s2);
        break;
      case Rel::weak:
        for (StateId s2 = 0; s2 < static_cast<StateId>(a.size()); ++s2)
          if (a.weak_hat(other, u, s2)) consider_left(s2);
        break;
      case Rel::expansion:
        for (StateId s2 = 0; s2 < static_cast<StateId>(a.size()); ++s2)
          if (a.weak_full(other, u, s2)) consider_left(s2);
        break;
      case Rel::contraction:
        break;  // clause 2 residuals live in ≈, not in the candidate relation
    }
  }
  return found;
}

// The computed GFP restricted to pairs reachable from the seeds by
// challenge/response matching.
PairRelation reachable_witness(const WeakLts& a, const WeakLts& b, const BitMatrix& r, Rel rel,
                               std::vector<std::pair<StateId, StateId>> seeds) {
  std::set<std::pair<StateId, StateId>> seen;
  std::deque<std::pair<StateId, StateId>> queue;
  for (auto& pr : seeds)
    if (r.get(pr.first, pr.second) && seen.insert(pr).second) queue.push_back(pr);
  while (!queue.empty()) {
    auto [s, t] = queue.front();
    queue.pop_front();
    std::vector<StateId> hits;
    for (const auto& [u, s2] : a.base().edges(s)) {
      hits.clear();
      response_exists(a, b, r, rel, true, t, u, s2, &hits);
      for (StateId t2 : hits)
        if (seen.insert({s2, t2}).second) queue.push_back({s2, t2});
    }
    for (const auto& [u, t2] : b.base().edges(t)) {
      hits.clear();
      response_exists(a, b, r, rel, false, s, u, t2, &hits);
      for (StateId s2 : hits)
        if (seen.insert({s2, t2}).second) queue.push_back({s2, t2});
    }
  }
  PairRelation out;
  out.pairs.assign(seen.begin(), seen.end());
  return out;
}

// First violated clause at (s, t) against the final relation, in
// deterministic order: left challenges by edge order, then right ones.
// For the contraction preorder the right clause lands in ≈, so the weak
// GFP is consulted instead of the candidate relation.
Distinguisher first_violation(const WeakLts& a, const WeakLts& b, const BitMatrix& r, Rel rel,
                              StateId s, StateId t, const BitMatrix* weak = nullptr) {
  for (const auto& [u, s2] : a.base().edges(s))
    if (!response_exists(a, b, r, rel, true, t, u, s2, nullptr))
      return Distinguisher{s, t, "left move unmatched", u};
  if (rel != Rel::contraction) {
    for (const auto& [u, t2] : b.base().edges(t))
      if (!response_exists(a, b, r, rel, false, s, u, t2, nullptr))
        return Distinguisher{s, t, "right move unmatched", u};
  } else if (weak) {
    for (const auto& [u, t2] : b.base().edges(t)) {
      bool matched = false;
      for (StateId s2 = 0; s2 < static_cast<StateId>(a.size()) && !matched; ++s2)
        if (a.weak_hat(s, u, s2) && weak->get(s2, t2)) matched = true;
      if (!matched) return Distinguisher{s, t, "right move unmatched", u};
    }
  }
  return Distinguisher{s, t, "pair outside relation", Action::make_tau()};
}

Verdict make_verdict(Explored e, BitMatrix r, Rel rel, const BitMatrix* weak = nullptr) {
  Verdict v;
  v.left = e.a;
  v.right = e.b;
  StateId ra = e.a->base().root(), rb = e.b->base().root();
  v.holds = r.get(ra, rb);
  if (v.holds)
    v.witness = reachable_witness(*e.a, *e.b, r, rel, {{ra, rb}});
  else
    v.reason = first_violation(*e.a, *e.b, r, rel, ra, rb, weak);
  return v;
}

}  // namespace

Verdict strong_bisim(const Process& p, const Process& q, const Budget& budget) {
  Explored e = explore_pair(p, q, budget);
  return make_verdict(e, strong_gfp(*e.a, *e.b), Rel::strong);
}

Verdict weak_bisim(const Process& p, const Process& q, const Budget& budget) {
  Explored e = explore_pair(p, q, budget);
  return make_verdict(e, weak_gfp(*e.a, *e.b), Rel::weak);
}

Verdict expansion(const Process& p, const Process& q, const Budget& budget) {
  Explored e = explore_pair(p, q, budget);
  return make_verdict(e, expansion_gfp(*e.a, *e.b), Rel::expansion);
}

Verdict contraction(const Process& p, const Process& q, const Budget& budget) {
  Explored e = explore_pair(p, q, budget);
  BitMatrix w = weak_gfp(*e.a, *e.b);
  return make_verdict(e, contraction_gfp(*e.a, *e.b, w), Rel::contraction, &w);
}

Verdict rooted_bisim(const Process& p, const Process& q, const Budget& budget) {
  Explored e = explore_pair(p, q, budget);
  const WeakLts& a = *e.a;
  const WeakLts& b = *e.b;
  BitMatrix w = weak_gfp(a, b);
  StateId ra = a.base().root(), rb = b.base().root();

  Verdict v;
  v.left = e.a;
  v.right = e.b;
  std::vector<std::pair<StateId, StateId>> seeds;
  // Root moves must be answered by full weak transitions (a root τ needs
  // at least one τ), residuals weakly bisimilar.
  for (const auto& [u, s2] : a.base().edges(ra)) {
    bool matched = false;
    for (StateId t2 = 0; t2 < static_cast<StateId>(b.size()); ++t2)
      if (b.weak_full(rb, u, t2) && w.get(s2, t2)) {
        matched = true;
        seeds.emplace_back(s2, t2);
      }
    if (!matched) {
      v.reason = Distinguisher{ra, rb, "root left move unmatched", u};
      return v;
    }
  }
  for (const auto& [u, t2] : b.base().edges(rb)) {
    bool matched = false;
    for (StateId s2 = 0; s2 < static_cast<StateId>(a.size()); ++s2)
      if (a.weak_full(ra, u, s2) && w.get(s2, t2)) {
        matched = true;
        seeds.emplace_back(s2, t2);
      }
    if (!matched) {
      v.reason = Distinguisher{ra, rb, "root right move unmatched", u};
      return v;
    }
  }
  v.holds = true;
  v.witness = reachable_witness(a, b, w, Rel::weak, std::move(seeds));
  v.witness.pairs.insert(std::lower_bound(v.witness.pairs.begin(), v.witness.pairs.end(),
                                          std::make_pair(ra, rb)),
                         {ra, rb});
  v.witness.pairs.erase(std::unique(v.witness.pairs.begin(), v.witness.pairs.end()),
                        v.witness.pairs.end());
  return v;
}

Verdict rooted_contraction(const Process& p, const Process& q, const Budget& budget) {
  Explored e = explore_pair(p, q, budget);
  const WeakLts& a = *e.a;
  const WeakLts& b = *e.b;
  BitMatrix w = weak_gfp(a, b);
  BitMatrix c = contraction_gfp(a, b, w);
  StateId ra = a.base().root(), rb = b.base().root();

  Verdict v;
  v.left = e.a;
  v.right = e.b;
  std::vector<std::pair<StateId, StateId>> seeds;
  // Root moves of p are answered by exactly one step into the contraction;
  // root moves of q by full weak transitions into ≈.
  for (const auto& [u, s2] : a.base().edges(ra)) {
    bool matched = false;
    for (const auto& [act, t2] : b.base().edges(rb))
      if (act == u && c.get(s2, t2)) {
        matched = true;
        seeds.emplace_back(s2, t2);
      }
    if (!matched) {
      v.reason = Distinguisher{ra, rb, "root left move unmatched", u};
      return v;
    }
  }
  for (const auto& [u, t2] : b.base().edges(rb)) {
    bool matched = false;
    for (StateId s2 = 0; s2 < static_cast<StateId>(a.size()) && !matched; ++s2)
      if (a.weak_full(ra, u, s2) && w.get(s2, t2)) matched = true;
    if (!matched) {
      v.reason = Distinguisher{ra, rb, "root right move unmatched", u};
      return v;
    }
  }
  v.holds = true;
  v.witness = reachable_witness(a, b, c, Rel::contraction, std::move(seeds));
  v.witness.pairs.insert(std::lower_bound(v.witness.pairs.begin(), v.witness.pairs.end(),
                                          std::make_pair(ra, rb)),
                         {ra, rb});
  v.witness.pairs.erase(std::unique(v.witness.pairs.begin(), v.witness.pairs.end()),
                        v.witness.pairs.end());
  return v;
}

// ---------------------------------------------------------------------------
// Partition refinement (signature refinement over strong or saturated moves)

namespace {

std::vector<int> refine_blocks(std::size_t n,
                               const std::function<std::set<std::pair<Action, int>>(StateId, const std::vector<int>&)>& signature) {
  std::vector<int> block(n, 0);
  std::size_t blocks = 1;
  for (;;) {
    std::map<std::pair<int, std::set<std::pair<Action, int>>>, int> next_ids;
    std::vector<int> next(n);
    for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
      auto key = std::make_pair(block[s], signature(s, block));
      auto [it, fresh] = next_ids.emplace(std::move(key), static_cast<int>(next_ids.size()));
      next[s] = it->second;
      (void)fresh;
    }
    if (next_ids.size() == blocks) return next;
    blocks = next_ids.size();
    block = std::move(next);
  }
}

}  // namespace

std::vector<int> strong_blocks(const Lts& l) {
  return refine_blocks(l.size(), [&l](StateId s, const std::vector<int>& block) {
    std::set<std::pair<Action, int>> sig;
    for (const auto& [u, t] : l.edges(s)) sig.emplace(u, block[t]);
    return sig;
  });
}

std::vector<int> weak_blocks(const WeakLts& w) {
  const Lts& l = w.base();
  return refine_blocks(l.size(), [&](StateId s, const std::vector<int>& block) {
    std::set<std::pair<Action, int>> sig;
    for (StateId t = 0; t < static_cast<StateId>(l.size()); ++t) {
      if (w.eps(s, t)) sig.emplace(Action::make_tau(), block[t]);
      for (const Label& lab : l.labels())
        if (w.weak_visible(s, lab, t)) sig.emplace(Action::visible(lab), block[t]);
    }
    return sig;
  });
}

bool strong_bisim_pr(const Process& p, const Process& q, const Budget& budget) {
  Lts a = explore(p, budget.max_states, budget.step);
  Lts b = explore(q, budget.max_states, budget.step);
  Lts u = disjoint_union(a, b);
  std::vector<int> block = strong_blocks(u);
  return block[a.root()] == block[static_cast<StateId>(a.size()) + b.root()];
}

bool weak_bisim_pr(const Process& p, const Process& q, const Budget& budget) {
  Lts a = explore(p, budget.max_states, budget.step);
  Lts b = explore(q, budget.max_states, budget.step);
  Lts u = disjoint_union(a, b);
  std::vector<int> block = weak_blocks(saturate(u));
  return block[a.root()] == block[static_cast<StateId>(a.size()) + b.root()];
}

}  // namespace ccs
