#include "ccs/congruence.hpp"

#include <algorithm>

namespace ccs {

Name fresh_name(const std::vector<Process>& among) {
  std::set<Name> used;
  for (const Process& p : among) {
    std::set<Name> names = all_names(p);
    used.insert(names.begin(), names.end());
  }
  for (char c = 'a'; c <= 'z'; ++c) {
    Name candidate(1, c);
    if (!used.count(candidate)) return candidate;
  }
  for (int i = 0;; ++i) {
    Name candidate = "n" + std::to_string(i);
    if (!used.count(candidate)) return candidate;
  }
}

Label free_action(const Process& p, const Budget& budget) {
  // Trigger the budget check so infinite-state suspects fail loudly here
  // rather than in a later relation query.
  explore(p, budget.max_states, budget.step);
  return Label(Polarity::input, fresh_name({p}));
}

TriState sum_equiv_bounded(const Process& p, const Process& q, const std::vector<Process>& probes,
                           const Budget& budget) {
  for (const Process& r : probes) {
    if (!weak_bisim(Process::sum(p, r), Process::sum(q, r), budget).holds) {
      TriState out;
      out.kind = TriState::Kind::refuted;
      out.refuting_probe = r;
      out.note = "p + r and q + r are not weakly bisimilar for r = " + pretty(r);
      return out;
    }
  }
  TriState out;
  out.kind = TriState::Kind::confirmed;
  out.note = "confirmed for all " + std::to_string(probes.size()) + " probes";
  return out;
}

namespace {

Process fresh_summand(const Process& p, const Process& q) {
  return Process::prefix(Action::input(fresh_name({p, q})), Process::nil());
}

}  // namespace

bool decide_rooted_via_sum(const Process& p, const Process& q, const Budget& budget) {
  Process probe = fresh_summand(p, q);
  return weak_bisim(Process::sum(p, probe), Process::sum(q, probe), budget).holds;
}

bool decide_rooted_contraction_via_sum(const Process& p, const Process& q, const Budget& budget) {
  Process probe = fresh_summand(p, q);
  return contraction(Process::sum(p, probe), Process::sum(q, probe), budget).holds;
}

// ---------------------------------------------------------------------------
// Context enumeration

std::vector<Context> enumerate_contexts(std::size_t depth, const std::vector<Name>& alphabet) {
  // Height 0: the hole, nil, input-prefixed nils, output-prefixed nils.
  std::vector<Context> all;
  all.push_back(Context::hole());
  all.push_back(Context::leaf(Process::nil()));
  for (const Name& n : alphabet)
    all.push_back(Context::leaf(Process::prefix(Action::input(n), Process::nil())));
  for (const Name& n : alphabet)
    all.push_back(Context::leaf(Process::prefix(Action::output(n), Process::nil())));

  std::size_t level_begin = 0;
  for (std::size_t d = 0; d < depth; ++d) {
    std::size_t level_end = all.size();
    std::vector<Context> fresh;
    auto add = [&fresh](Context c) { fresh.push_back(std::move(c)); };

    for (std::size_t i = level_begin; i < level_end; ++i) {
      add(Context::prefix(Action::make_tau(), all[i]));
      for (const Name& n : alphabet) add(Context::prefix(Action::input(n), all[i]));
      for (const Name& n : alphabet) add(Context::prefix(Action::output(n), all[i]));
      for (const Name& n : alphabet) add(Context::restriction({n}, all[i]));
      for (const Name& from : alphabet)
        for (const Name& to : alphabet)
          if (from != to) add(Context::relabel(all[i], Relabeling(std::map<Name, Name>{{from, to}})));
    }
    // Binary nodes: at least one child from the newest level.
    for (std::size_t i = 0; i < level_end; ++i)
      for (std::size_t j = 0; j < level_end; ++j) {
        if (i < level_begin && j < level_begin) continue;
        add(Context::sum(all[i], all[j]));
      }
    for (std::size_t i = 0; i < level_end; ++i)
      for (std::size_t j = 0; j < level_end; ++j) {
        if (i < level_begin && j < level_begin) continue;
        add(Context::par(all[i], all[j]));
      }

    level_begin = level_end;
    all.insert(all.end(), std::make_move_iterator(fresh.begin()),
               std::make_move_iterator(fresh.end()));
  }
  return all;
}

TriState composition_closure_bounded(ClosureRelation relation, const Process& p, const Process& q,
                                     std::size_t depth, const std::vector<Name>& alphabet,
                                     const Budget& budget) {
  for (const Context& c : enumerate_contexts(depth, alphabet)) {
    Process cp = apply(c, p), cq = apply(c, q);
    bool holds = relation == ClosureRelation::weak ? weak_bisim(cp, cq, budget).holds
                                                   : contraction(cp, cq, budget).holds;
    if (!holds) {
      TriState out;
      out.kind = TriState::Kind::refuted;
      out.refuting_context = c;
      out.note = "context " + pretty(c) + " distinguishes";
      return out;
    }
  }
  TriState out;
  out.kind = TriState::Kind::confirmed;
  out.note = "confirmed for all contexts up to depth " + std::to_string(depth);
  return out;
}

HennessyDengReport hennessy_deng_check(const Process& p, const Process& q, const Budget& budget) {
  HennessyDengReport r;
  r.weakly_bisimilar = weak_bisim(p, q, budget).holds;
  r.rooted = rooted_bisim(p, q, budget).holds;
  r.rooted_with_tau_right = rooted_bisim(p, Process::prefix(Action::make_tau(), q), budget).holds;
  r.rooted_with_tau_left = rooted_bisim(Process::prefix(Action::make_tau(), p), q, budget).holds;
  return r;
}

// ---------------------------------------------------------------------------
// PROP3 instance checking

namespace {

// No weak derivative of root is weakly bisimilar to k.
bool derivatives_clear_of(const WeakLts& w, const Process& k, const Budget& budget) {
  const Lts& l = w.base();
  StateId root = l.root();
  std::set<StateId> derivatives;
  for (StateId t = 0; t < static_cast<StateId>(l.size()); ++t) {
    if (w.weak_tau_matrix().get(root, t)) derivatives.insert(t);
    for (const Label& lab : l.labels())
      if (w.weak_visible(root, lab, t)) derivatives.insert(t);
  }
  for (StateId t : derivatives)
    if (weak_bisim(l.process(t), k, budget).holds) return false;
  return true;
}

}  // namespace

std::vector<Process> prop3_default_probes(const Process& p, const Process& q, const Process& k) {
  Name c = fresh_name({p, q, k});
  Process ck = Process::prefix(Action::input(c), k);
  std::vector<Process> probes;
  probes.push_back(ck);
  probes.push_back(k);
  probes.push_back(Process::sum(ck, k));
  probes.push_back(Process::prefix(Action::input(c), Process::nil()));
  return probes;
}

Prop3Report prop3_instance_check(const Process& p, const Process& q, const Process& k,
                                 const std::vector<Process>& probes, const Budget& budget) {
  // The characteristic probe c.k with c fresh must be present.
  bool has_characteristic = false;
  for (const Process& r : probes) {
    if (r.kind() != Process::Kind::prefix || !r.action().is_visible()) continue;
    if (!(r.child() == k)) continue;
    Name c = r.action().label().name;
    std::set<Name> used = all_names(p);
    std::set<Name> qn = all_names(q), kn = all_names(k);
    used.insert(qn.begin(), qn.end());
    used.insert(kn.begin(), kn.end());
    if (!used.count(c)) {
      has_characteristic = true;
      break;
    }
  }
  if (!has_characteristic)
    throw PreconditionError("probe set lacks the characteristic probe c.k with c fresh");

  Prop3Report report;
  WeakLts wk = saturate(explore(k, budget.max_states, budget.step));
  report.stable_k = is_stable(wk.base(), wk.base().root());
  if (!report.stable_k) throw HypothesisError("stability");

  WeakLts wp = saturate(explore(p, budget.max_states, budget.step));
  WeakLts wq = saturate(explore(q, budget.max_states, budget.step));
  report.p_derivatives_clear = derivatives_clear_of(wp, k, budget);
  if (!report.p_derivatives_clear) throw HypothesisError("p-derivative");
  report.q_derivatives_clear = derivatives_clear_of(wq, k, budget);
  if (!report.q_derivatives_clear) throw HypothesisError("q-derivative");

  report.probes = sum_equiv_bounded(p, q, probes, budget);
  report.rooted_holds = rooted_bisim(p, q, budget).holds;
  report.consistent = !(report.probes.confirmed() && !report.rooted_holds);
  return report;
}

}  // namespace ccs
