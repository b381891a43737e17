#ifndef CCS_SOLUTIONS_HPP
#define CCS_SOLUTIONS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccs/congruence.hpp"
#include "ccs/context.hpp"
#include "ccs/equiv.hpp"

namespace ccs {

// Which behavioural relation the system is read under. strong/weak/rooted
// make it a system of equations; contraction/rooted_contraction a system
// of contractions (the solution is evaluated under the preorder).
enum class SolveRelation { strong, weak, rooted, contraction, rooted_contraction };

std::string to_string(SolveRelation r);
std::optional<SolveRelation> solve_relation_from(const std::string& name);

struct SystemSpec {
  Context body;  // single variable, multi-hole
  SolveRelation relation = SolveRelation::weak;

  bool contraction_flavor() const {
    return relation == SolveRelation::contraction || relation == SolveRelation::rooted_contraction;
  }
};

// Verification record for one unique-solution theorem instance. The
// conclusion is only present when every hypothesis check passed.
struct SolutionReport {
  std::string theorem;
  std::vector<std::pair<std::string, bool>> hypothesis_checks;
  std::optional<Verdict> conclusion;

  bool hypotheses_ok() const;
  bool ok() const { return hypotheses_ok() && conclusion && conclusion->holds; }
};

// Equations: relation(p, body[p]). Contractions: p ≽ body[p].
bool is_solution(const SystemSpec& spec, const Process& p, const Budget& budget = {});

// Hypotheses per variant — strong: WG; weak: SG ∧ SEQ; rooted: SG ∧ SEQ;
// contraction: WGS; rooted-contraction: WG — plus solutionhood of p and q.
// Conclusion: ∼ / ≈ / ≈c / ≈ / ≈c respectively.
SolutionReport unique_solution(const SystemSpec& spec, const Process& p, const Process& q,
                               const Budget& budget = {});

struct UnfoldEntry {
  Context residual;
  std::vector<std::pair<Action, Context>> steps;  // the context-level trace taken
};

// Runs hole-inert traces of compose(c, iterate(e, n)) along acts and
// returns every reachable residual context. Requires GCONTEXT(c), WGS(e)
// and |acts| <= n, so the holes sit below at least n prefixes and cannot
// act: for every residual C' and closed Q,
// trace_holds(apply(compose(c, iterate(e, n)), Q), acts, apply(C', Q)).
std::vector<UnfoldEntry> unfold_decompose(const Context& c, const Context& e, std::size_t n,
                                          const ActionList& acts, const StepOptions& opts = {});

// Given p ≽bis q and a no-label or unique-label trace acts from p, mirrors
// it on q: each visible step is answered by exactly one step, each τ step
// by at most one, so the result is never longer and keeps the label
// discipline. Returns the mirrored action list and the endpoint reached.
std::optional<std::pair<ActionList, Process>> contraction_trace_transfer(
    const Process& p, const Process& q, const ActionList& acts, const Budget& budget = {});

enum class TransferVariant { contraction, rooted_contraction };

struct TransferEntry {
  Process target;       // R with apply(c,p) ⇒u R
  ActionList left_trace;
  ActionList right_trace;
  Context residual;     // C' with contraction(R, apply(C', p))
  Process right_witness;  // z with apply(c,q) ⇒̂u z (⇒u for the rooted variant) and z ≈ apply(C', q)
};

// The transfer step behind the unique-solution proofs: for every weak
// transition apply(c,p) ⇒u R finds a residual context C' such that R
// contracts to apply(C',p) while apply(c,q) weakly reaches a state weakly
// bisimilar to apply(C',q).
std::vector<TransferEntry> solution_transfer(const Context& e, const Process& p, const Process& q,
                                             const Context& c, const Action& u,
                                             TransferVariant variant, const Budget& budget = {});

}  // namespace ccs

#endif
