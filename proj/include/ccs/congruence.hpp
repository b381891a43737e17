#ifndef CCS_CONGRUENCE_HPP
#define CCS_CONGRUENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ccs/context.hpp"
#include "ccs/equiv.hpp"

namespace ccs {

// Result of a bounded check of a universally quantified statement:
// refutations are certain, confirmations are bound-qualified.
struct TriState {
  enum class Kind { confirmed, refuted, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<Process> refuting_probe;
  std::optional<Context> refuting_context;
  std::string note;

  bool confirmed() const { return kind == Kind::confirmed; }
  bool refuted() const { return kind == Kind::refuted; }
};

// Shortest-then-lexicographic name not occurring in any of the processes.
Name fresh_name(const std::vector<Process>& among);

// A label the process has no weak transition for, chosen as the first
// fresh name with input polarity.
Label free_action(const Process& p, const Budget& budget = {});

// Refuted(r) on the first probe r with ¬(p + r ≈ q + r); otherwise
// Confirmed relative to the probe set.
TriState sum_equiv_bounded(const Process& p, const Process& q, const std::vector<Process>& probes,
                           const Budget& budget = {});

// Single-characteristic-probe deciders: a fresh summand a.0 makes
// p + a.0 ≈ q + a.0 equivalent to p ≈c q (and the contraction analogue).
bool decide_rooted_via_sum(const Process& p, const Process& q, const Budget& budget = {});
bool decide_rooted_contraction_via_sum(const Process& p, const Process& q, const Budget& budget = {});

enum class ClosureRelation { weak, contraction };

// All contexts derivable over the alphabet up to the given AST height, in
// deterministic order (by height; leaves, then prefixes, restrictions,
// relabelings, sums, pars; children in enumeration order).
std::vector<Context> enumerate_contexts(std::size_t depth, const std::vector<Name>& alphabet);

// Refuted(C) on the first enumerated C with ¬relation(C[p], C[q]); else
// Confirmed at this depth.
TriState composition_closure_bounded(ClosureRelation relation, const Process& p, const Process& q,
                                     std::size_t depth, const std::vector<Name>& alphabet,
                                     const Budget& budget = {});

// p ≈ q  ⇔  p ≈c q ∨ p ≈c τ.q ∨ τ.p ≈c q
struct HennessyDengReport {
  bool weakly_bisimilar = false;
  bool rooted = false;
  bool rooted_with_tau_right = false;
  bool rooted_with_tau_left = false;
  bool rhs() const { return rooted || rooted_with_tau_right || rooted_with_tau_left; }
  bool biconditional_holds() const { return weakly_bisimilar == rhs(); }
};

HennessyDengReport hennessy_deng_check(const Process& p, const Process& q, const Budget& budget = {});

// Instance check for the stable-witness characterization: if k is stable
// and no weak derivative of p or q is weakly bisimilar to k, then sum
// compatibility over the probes should agree with rooted bisimilarity.
struct Prop3Report {
  bool stable_k = false;
  bool p_derivatives_clear = false;
  bool q_derivatives_clear = false;
  TriState probes;
  bool rooted_holds = false;
  // False only if every probe confirmed yet rooted bisimilarity fails,
  // which the theorem rules out when the probes include the
  // characteristic c.k.
  bool consistent = true;
};

// Throws HypothesisError naming the failing clause ("stability",
// "p-derivative", "q-derivative"); PreconditionError if no probe has the
// shape c.k with c fresh.
Prop3Report prop3_instance_check(const Process& p, const Process& q, const Process& k,
                                 const std::vector<Process>& probes, const Budget& budget = {});

std::vector<Process> prop3_default_probes(const Process& p, const Process& q, const Process& k);

}  // namespace ccs

#endif
