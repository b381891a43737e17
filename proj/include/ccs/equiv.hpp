#ifndef CCS_EQUIV_HPP
#define CCS_EQUIV_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccs/lts.hpp"

namespace ccs {

struct Budget {
  std::size_t max_states = 10000;
  StepOptions step;
};

// A set of state pairs (left LTS state, right LTS state), sorted.
struct PairRelation {
  std::vector<std::pair<StateId, StateId>> pairs;

  std::size_t size() const { return pairs.size(); }
  bool contains(StateId a, StateId b) const;
};

struct Distinguisher {
  StateId left = 0, right = 0;
  std::string clause;
  Action action;
};

struct Verdict {
  bool holds = false;
  std::shared_ptr<const WeakLts> left, right;
  PairRelation witness;                  // when holds: contains the root pair,
                                         // closed under the relation's clauses
  std::optional<Distinguisher> reason;   // when not: first violated clause under
                                         // the deterministic pair ordering
};

// Greatest fixpoints over the full product of state sets, computed by
// deleting clause violators until stable.
BitMatrix strong_gfp(const WeakLts& a, const WeakLts& b);
BitMatrix weak_gfp(const WeakLts& a, const WeakLts& b);
BitMatrix expansion_gfp(const WeakLts& a, const WeakLts& b);
// Contraction clause 2 refers to ≈, not to the candidate relation, so it is
// applied once as a static filter (computed from `weak`, the weak-bisim GFP
// of the same pair of LTSs) before iterating clause 1.
BitMatrix contraction_gfp(const WeakLts& a, const WeakLts& b, const BitMatrix& weak);
BitMatrix contraction_gfp(const WeakLts& a, const WeakLts& b);

// Process-level verdicts. All explore within budget.max_states and
// propagate StateBudgetError.
Verdict strong_bisim(const Process& p, const Process& q, const Budget& budget = {});
Verdict weak_bisim(const Process& p, const Process& q, const Budget& budget = {});
Verdict rooted_bisim(const Process& p, const Process& q, const Budget& budget = {});
Verdict expansion(const Process& p, const Process& q, const Budget& budget = {});         // p ≽e q
Verdict contraction(const Process& p, const Process& q, const Budget& budget = {});       // p ≽bis q
Verdict rooted_contraction(const Process& p, const Process& q, const Budget& budget = {}); // p ≽c q

// Partition-refinement fast path for the two equivalences (signature
// refinement; for the weak one over the saturated moves). Used to
// cross-check the fixpoint engine.
std::vector<int> strong_blocks(const Lts& l);
std::vector<int> weak_blocks(const WeakLts& w);
bool strong_bisim_pr(const Process& p, const Process& q, const Budget& budget = {});
bool weak_bisim_pr(const Process& p, const Process& q, const Budget& budget = {});

}  // namespace ccs

#endif
