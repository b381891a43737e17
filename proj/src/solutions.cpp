#include "ccs/solutions.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>

namespace ccs {

std::string to_string(SolveRelation r) {
  switch (r) {
    case SolveRelation::strong: return "strong";
    case SolveRelation::weak: return "weak";
    case SolveRelation::rooted: return "rooted";
    case SolveRelation::contraction: return "contraction";
    case SolveRelation::rooted_contraction: return "rooted-contraction";
  }
  return "?";
}

std::optional<SolveRelation> solve_relation_from(const std::string& name) {
  if (name == "strong") return SolveRelation::strong;
  if (name == "weak") return SolveRelation::weak;
  if (name == "rooted") return SolveRelation::rooted;
  if (name == "contraction") return SolveRelation::contraction;
  if (name == "rooted-contraction") return SolveRelation::rooted_contraction;
  return std::nullopt;
}

bool SolutionReport::hypotheses_ok() const {
  return std::all_of(hypothesis_checks.begin(), hypothesis_checks.end(),
                     [](const auto& check) { return check.second; });
}

namespace {

Verdict run_relation(SolveRelation rel, const Process& p, const Process& q, const Budget& budget) {
  switch (rel) {
    case SolveRelation::strong: return strong_bisim(p, q, budget);
    case SolveRelation::weak: return weak_bisim(p, q, budget);
    case SolveRelation::rooted: return rooted_bisim(p, q, budget);
    case SolveRelation::contraction: return contraction(p, q, budget);
    case SolveRelation::rooted_contraction: return rooted_contraction(p, q, budget);
  }
  return {};
}

}  // namespace

bool is_solution(const SystemSpec& spec, const Process& p, const Budget& budget) {
  if (!is_closed(p)) throw OpenTermError("solutions must be closed: " + pretty(p));
  return run_relation(spec.relation, p, apply(spec.body, p), budget).holds;
}

SolutionReport unique_solution(const SystemSpec& spec, const Process& p, const Process& q,
                               const Budget& budget) {
  SolutionReport report;
  Classification k = classify(spec.body);

  SolveRelation conclusion_rel = SolveRelation::weak;
  switch (spec.relation) {
    case SolveRelation::strong:
      report.theorem = "strong-equation";
      report.hypothesis_checks.emplace_back("WG(body)", k.wg);
      conclusion_rel = SolveRelation::strong;
      break;
    case SolveRelation::weak:
      report.theorem = "weak-equation";
      report.hypothesis_checks.emplace_back("SG(body)", k.sg);
      report.hypothesis_checks.emplace_back("SEQ(body)", k.seq);
      conclusion_rel = SolveRelation::weak;
      break;
    case SolveRelation::rooted:
      report.theorem = "rooted-equation";
      report.hypothesis_checks.emplace_back("SG(body)", k.sg);
      report.hypothesis_checks.emplace_back("SEQ(body)", k.seq);
      conclusion_rel = SolveRelation::rooted;
      break;
    case SolveRelation::contraction:
      report.theorem = "contraction";
      report.hypothesis_checks.emplace_back("WGS(body)", k.wgs);
      conclusion_rel = SolveRelation::weak;
      break;
    case SolveRelation::rooted_contraction:
      report.theorem = "rooted-contraction";
      report.hypothesis_checks.emplace_back("WG(body)", k.wg);
      conclusion_rel = SolveRelation::rooted;
      break;
  }

  report.hypothesis_checks.emplace_back("p is a solution", is_solution(spec, p, budget));
  report.hypothesis_checks.emplace_back("q is a solution", is_solution(spec, q, budget));
  if (report.hypotheses_ok()) report.conclusion = run_relation(conclusion_rel, p, q, budget);
  return report;
}

// ---------------------------------------------------------------------------
// Unfolding

namespace {

std::vector<UnfoldEntry> unfold_run(const Context& c, const Context& e, std::size_t n,
                                    const ActionList& acts, const StepOptions& opts) {
  std::map<std::string, UnfoldEntry> frontier;
  Context start = compose(c, iterate(e, n));
  frontier.emplace(structural_key(start), UnfoldEntry{start, {}});
  for (const Action& u : acts) {
    std::map<std::string, UnfoldEntry> next;
    for (const auto& [key, entry] : frontier) {
      for (const auto& [act, residual] : context_step(entry.residual, opts)) {
        if (!(act == u)) continue;
        UnfoldEntry extended = entry;
        extended.residual = residual;
        extended.steps.emplace_back(act, residual);
        next.emplace(structural_key(residual), std::move(extended));
      }
    }
    frontier = std::move(next);
  }
  std::vector<UnfoldEntry> out;
  out.reserve(frontier.size());
  for (auto& [key, entry] : frontier) out.push_back(std::move(entry));
  return out;
}

}  // namespace

std::vector<UnfoldEntry> unfold_decompose(const Context& c, const Context& e, std::size_t n,
                                          const ActionList& acts, const StepOptions& opts) {
  if (!classify(c).gcontext)
    throw PreconditionError("unfold_decompose: outer context is not GCONTEXT: " + pretty(c));
  if (!classify(e).wgs)
    throw PreconditionError("unfold_decompose: body is not WGS: " + pretty(e));
  if (acts.size() > n)
    throw PreconditionError("unfold_decompose: trace longer than unfolding depth");
  return unfold_run(c, e, n, acts, opts);
}

// ---------------------------------------------------------------------------
// Trace transfer across the contraction preorder

namespace {

// First path from the root realizing acts, choosing the smallest successor
// at each step (depth-first with backtracking). With target >= 0 the path
// must end in that state.
bool find_trace_path(const Lts& l, StateId from, const ActionList& acts, std::size_t i,
                     StateId target, std::vector<StateId>& path) {
  path.push_back(from);
  if (i == acts.size()) {
    if (target < 0 || from == target) return true;
    path.pop_back();
    return false;
  }
  for (const auto& [u, t] : l.edges(from)) {
    if (!(u == acts[i])) continue;
    if (find_trace_path(l, t, acts, i + 1, target, path)) return true;
  }
  path.pop_back();
  return false;
}

// Mirrors a concrete path of A on the B side through the contraction
// relation: visible steps are answered by exactly one step, τ steps by at
// most one, preferring the move onto the identical canonical state, then
// the smallest stepping response, then staying put. The invariant
// (path[i], t) ∈ contraction is maintained, so the final pair is related.
std::optional<std::pair<ActionList, StateId>> mirror_path(const Lts& a, const Lts& b,
                                                          const BitMatrix& c,
                                                          const std::vector<StateId>& path,
                                                          const ActionList& acts) {
  StateId t = b.root();
  ActionList mirrored;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    const Action& u = acts[i];
    StateId after = path[i + 1];
    StateId chosen = -1;
    bool stepped = false;
    for (const auto& [act, t2] : b.edges(t)) {
      if (!(act == u) || !c.get(after, t2)) continue;
      if (b.key(t2) == a.key(after)) {
        chosen = t2;
        stepped = true;
        break;
      }
      if (!stepped) {
        chosen = t2;
        stepped = true;
      }
    }
    if (!stepped && u.is_tau() && c.get(after, t)) {
      chosen = t;
    } else if (!stepped) {
      return std::nullopt;  // clause 1 rules this out for related pairs
    }
    if (stepped) mirrored.push_back(u);
    t = chosen;
  }
  return std::make_pair(std::move(mirrored), t);
}

}  // namespace

std::optional<std::pair<ActionList, Process>> contraction_trace_transfer(
    const Process& p, const Process& q, const ActionList& acts, const Budget& budget) {
  std::size_t visible = std::count_if(acts.begin(), acts.end(),
                                      [](const Action& u) { return u.is_visible(); });
  if (visible > 1)
    throw PreconditionError("trace must have no visible action or a unique one");

  Verdict v = contraction(p, q, budget);
  if (!v.holds) throw PreconditionError("trace transfer requires p to contract to q");
  const WeakLts& a = *v.left;
  const WeakLts& b = *v.right;
  BitMatrix c = contraction_gfp(a, b);

  std::vector<StateId> path;
  if (!find_trace_path(a.base(), a.base().root(), acts, 0, -1, path))
    throw PreconditionError("the action list is not a trace of p");

  auto mirrored = mirror_path(a.base(), b.base(), c, path, acts);
  if (!mirrored) return std::nullopt;
  return std::make_pair(std::move(mirrored->first), b.base().process(mirrored->second));
}

// ---------------------------------------------------------------------------
// Transfer step of the unique-solution proofs

namespace {

// Shortest action list realizing from ⇒u to: all τ except (for visible u)
// a single u step. Empty result = no such weak transition.
std::optional<ActionList> shortest_weak_trace(const Lts& l, StateId from, const Action& u,
                                              StateId to) {
  if (u.is_tau()) {
    //  ≥1 τ step: BFS over τ edges, seeded with the τ successors of from.
    std::vector<int> dist(l.size(), -1);
    std::deque<StateId> queue;
    for (const auto& [act, t] : l.edges(from))
      if (act.is_tau() && dist[t] < 0) {
        dist[t] = 1;
        queue.push_back(t);
      }
    while (!queue.empty()) {
      StateId cur = queue.front();
      queue.pop_front();
      for (const auto& [act, t] : l.edges(cur))
        if (act.is_tau() && dist[t] < 0) {
          dist[t] = dist[cur] + 1;
          queue.push_back(t);
        }
    }
    if (dist[to] < 0) return std::nullopt;
    return ActionList(static_cast<std::size_t>(dist[to]), Action::make_tau());
  }
  // Two phases: before and after the u step; τ moves stay in phase.
  std::vector<std::array<int, 2>> dist(l.size(), {-1, -1});
  std::deque<std::pair<StateId, int>> queue;
  dist[from][0] = 0;
  queue.push_back({from, 0});
  std::map<std::pair<StateId, int>, std::pair<StateId, int>> parent;
  while (!queue.empty()) {
    auto [cur, phase] = queue.front();
    queue.pop_front();
    for (const auto& [act, t] : l.edges(cur)) {
      int next_phase = -1;
      if (act.is_tau())
        next_phase = phase;
      else if (act == u && phase == 0)
        next_phase = 1;
      if (next_phase < 0 || dist[t][next_phase] >= 0) continue;
      dist[t][next_phase] = dist[cur][phase] + 1;
      parent[{t, next_phase}] = {cur, phase};
      queue.push_back({t, next_phase});
    }
  }
  if (dist[to][1] < 0) return std::nullopt;
  ActionList acts;
  std::pair<StateId, int> cur{to, 1};
  while (!(cur.first == from && cur.second == 0)) {
    auto prev = parent.at(cur);
    acts.push_back(prev.second == 0 && cur.second == 1 ? u : Action::make_tau());
    cur = prev;
  }
  std::reverse(acts.begin(), acts.end());
  return acts;
}

}  // namespace

std::vector<TransferEntry> solution_transfer(const Context& e, const Process& p, const Process& q,
                                             const Context& c, const Action& u,
                                             TransferVariant variant, const Budget& budget) {
  if (variant == TransferVariant::contraction) {
    if (!classify(e).wgs) throw PreconditionError("solution_transfer: body is not WGS");
    if (!classify(c).gcontext) throw PreconditionError("solution_transfer: context is not GCONTEXT");
    SystemSpec spec{e, SolveRelation::contraction};
    if (!is_solution(spec, p, budget) || !is_solution(spec, q, budget))
      throw PreconditionError("solution_transfer: p, q must be contraction solutions of the body");
  } else {
    if (!classify(e).wg) throw PreconditionError("solution_transfer: body is not WG");
    if (!classify(c).context) throw PreconditionError("solution_transfer: not a context");
    SystemSpec spec{e, SolveRelation::rooted_contraction};
    if (!is_solution(spec, p, budget) || !is_solution(spec, q, budget))
      throw PreconditionError(
          "solution_transfer: p, q must be rooted-contraction solutions of the body");
  }

  Process cp = apply(c, p);
  WeakLts a = saturate(explore(cp, budget.max_states, budget.step));
  StateId root = a.base().root();

  std::vector<StateId> targets;
  for (StateId t = 0; t < static_cast<StateId>(a.size()); ++t)
    if (a.weak_full(root, u, t)) targets.push_back(t);

  Process cq = apply(c, q);
  WeakLts b = saturate(explore(cq, budget.max_states, budget.step));

  std::vector<TransferEntry> out;
  for (StateId target : targets) {
    std::optional<ActionList> acts = shortest_weak_trace(a.base(), root, u, target);
    if (!acts) continue;
    std::size_t n = acts->size();

    // Unfold the body once per step of the trace, then mirror the specific
    // path to this target through the contraction between apply(c,p) and
    // its unfolding: the mirrored endpoint is contraction-related to the
    // target and lands on a residual context by the unfolding lemma.
    Context unfolded = compose(c, iterate(e, n));
    Process fp = apply(unfolded, p);
    Verdict related = contraction(cp, fp, budget);
    if (!related.holds)
      throw PreconditionError("solution_transfer: the unfolding is not contraction-related");
    const Lts& af = related.left->base();
    const Lts& bf = related.right->base();
    BitMatrix cmat = contraction_gfp(*related.left, *related.right);

    StateId target_af = af.state_of(a.base().process(target));
    std::vector<StateId> path;
    if (target_af < 0 || !find_trace_path(af, af.root(), *acts, 0, target_af, path))
      throw Error("solution_transfer: no concrete path reaches the target");
    auto transferred = mirror_path(af, bf, cmat, path, *acts);
    if (!transferred) throw Error("solution_transfer: trace transfer failed unexpectedly");
    Process endpoint = bf.process(transferred->second);

    std::vector<UnfoldEntry> residuals = unfold_run(c, e, n, transferred->first, budget.step);
    const Context* residual = nullptr;
    for (const UnfoldEntry& entry : residuals)
      if (apply(entry.residual, p) == endpoint) {
        residual = &entry.residual;
        break;
      }
    if (!residual) throw Error("solution_transfer: no residual context matches the endpoint");

    if (!contraction(a.base().process(target), apply(*residual, p), budget).holds)
      throw Error("solution_transfer: residual does not contract the target");

    // Right side: apply(c,q) ⇒̂u z (⇒u for the rooted variant) with
    // z ≈ apply(residual, q).
    Process expected = apply(*residual, q);
    StateId rootq = b.base().root();
    std::optional<Process> witness;
    for (StateId z = 0; z < static_cast<StateId>(b.size()); ++z) {
      bool reach = variant == TransferVariant::contraction ? b.weak_hat(rootq, u, z)
                                                           : b.weak_full(rootq, u, z);
      if (!reach) continue;
      if (weak_bisim(b.base().process(z), expected, budget).holds) {
        witness = b.base().process(z);
        break;
      }
    }
    if (!witness) throw Error("solution_transfer: no weakly bisimilar witness on the right");

    out.push_back(TransferEntry{a.base().process(target), *acts, transferred->first, *residual,
                                *witness});
  }
  return out;
}

}  // namespace ccs
