#include "ccs/semantics.hpp"

#include <algorithm>
#include <map>

namespace ccs {

namespace {

using Transition = std::pair<Action, Process>;

void step_impl(const Process& p, int budget, std::vector<Transition>& out) {
  switch (p.kind()) {
    case Process::Kind::nil:
      return;
    case Process::Kind::var:
      throw OpenTermError("cannot step open term: free variable '" + p.name() + "'");
    case Process::Kind::prefix:
      out.emplace_back(p.action(), p.child());
      return;
    case Process::Kind::sum:
      step_impl(p.left(), budget, out);
      step_impl(p.right(), budget, out);
      return;
    case Process::Kind::par: {
      std::vector<Transition> ls, rs;
      step_impl(p.left(), budget, ls);
      step_impl(p.right(), budget, rs);
      Process right = p.right();
      Process left = p.left();
      for (const auto& [u, target] : ls) out.emplace_back(u, Process::par(target, right));
      for (const auto& [u, target] : rs) out.emplace_back(u, Process::par(left, target));
      for (const auto& [lu, lt] : ls) {
        if (!lu.is_visible()) continue;
        Label want = lu.label().complement();
        for (const auto& [ru, rt] : rs)
          if (ru.is_visible() && ru.label() == want)
            out.emplace_back(Action::make_tau(), Process::par(lt, rt));
      }
      return;
    }
    case Process::Kind::restriction: {
      std::vector<Transition> inner;
      step_impl(p.child(), budget, inner);
      for (auto& [u, target] : inner) {
        if (u.is_visible() && p.hidden().count(u.label().name)) continue;
        out.emplace_back(u, Process::restriction(p.hidden(), std::move(target)));
      }
      return;
    }
    case Process::Kind::relabel: {
      std::vector<Transition> inner;
      step_impl(p.child(), budget, inner);
      for (auto& [u, target] : inner)
        out.emplace_back(relabel_action(p.relabeling(), u),
                         Process::relabel(std::move(target), p.relabeling()));
      return;
    }
    case Process::Kind::rec: {
      if (budget <= 0)
        throw UnguardedRecursionError("unguarded recursion: rec '" + p.name() +
                                      "' unfolds without reaching a prefix");
      step_impl(substitute(p.child(), p.name(), p), budget - 1, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Action, Process>> step(const Process& p, const StepOptions& opts) {
  if (!is_closed(p)) throw OpenTermError("step requires a closed process: " + pretty(p));
  std::vector<Transition> raw;
  step_impl(p, opts.unfold_budget, raw);

  std::map<std::pair<Action, std::string>, Process> dedup;
  for (auto& [u, target] : raw) {
    Process canon = canonical(target);
    std::string key = pretty(canon);
    dedup.emplace(std::make_pair(u, std::move(key)), std::move(canon));
  }
  std::vector<Transition> out;
  out.reserve(dedup.size());
  for (auto& [k, target] : dedup) out.emplace_back(k.first, std::move(target));
  return out;
}

bool no_label(const ActionList& acts) {
  return std::none_of(acts.begin(), acts.end(), [](const Action& u) { return u.is_visible(); });
}

bool unique_label(const Action& u, const ActionList& acts) {
  if (u.is_tau()) throw NotVisibleError("unique_label expects a visible action");
  auto it = std::find(acts.begin(), acts.end(), u);
  if (it == acts.end()) return false;
  ActionList before(acts.begin(), it), after(std::next(it), acts.end());
  return no_label(before) && no_label(after);
}

bool trace_holds(const Process& p, const ActionList& acts, const Process& q,
                 std::size_t state_budget, const StepOptions& opts) {
  std::map<std::string, Process> frontier;
  {
    Process canon = canonical(p);
    std::string key = pretty(canon);
    frontier.emplace(std::move(key), std::move(canon));
  }
  std::size_t visited = frontier.size();
  for (const Action& u : acts) {
    std::map<std::string, Process> next;
    for (const auto& [key, state] : frontier)
      for (const auto& [act, target] : step(state, opts))
        if (act == u) next.emplace(pretty(target), target);
    visited += next.size();
    if (visited > state_budget)
      throw TraceBudgetError("trace search exceeded " + std::to_string(state_budget) + " states");
    frontier = std::move(next);
    if (frontier.empty()) return false;
  }
  return frontier.count(structural_key(q)) != 0;
}

}  // namespace ccs
