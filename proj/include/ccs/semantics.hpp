#ifndef CCS_SEMANTICS_HPP
#define CCS_SEMANTICS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "ccs/syntax.hpp"

namespace ccs {

using ActionList = std::vector<Action>;

struct StepOptions {
  // Nested rec unfoldings allowed on one derivation path before giving up
  // (rec A. A would otherwise diverge).
  int unfold_budget = 64;
};

// All one-step transitions of a closed process: PREFIX, SUM1/2, PAR1/2/3,
// RESTR, RELABELING, REC. Targets are canonical; the result is sorted by
// (action, target key) and deduplicated.
std::vector<std::pair<Action, Process>> step(const Process& p, const StepOptions& opts = {});

// True iff no element of acts is visible.
bool no_label(const ActionList& acts);

// True iff acts = L1 ++ [u] ++ L2 with no visible action in L1 or L2.
// Throws NotVisibleError when u is τ.
bool unique_label(const Action& u, const ActionList& acts);

// True iff q is reachable from p by exactly the actions in acts (empty
// list: canonical forms equal). Throws TraceBudgetError when the search
// visits more than state_budget states.
bool trace_holds(const Process& p, const ActionList& acts, const Process& q,
                 std::size_t state_budget = 10000, const StepOptions& opts = {});

}  // namespace ccs

#endif
