#include "ccs/context.hpp"

#include <algorithm>
#include <map>

namespace ccs {

struct Context::Node {
  Kind kind = Kind::hole;
  Process proc;  // leaf
  Action act;
  std::set<Name> hidden;
  Relabeling relab;
  NodePtr a, b;
};

Context::Context() : node_(std::make_shared<const Node>()) {}

Context Context::hole() { return Context(); }

Context Context::leaf(Process closed) {
  if (!is_closed(closed))
    throw OpenTermError("context leaves must be closed: " + pretty(closed));
  auto node = std::make_shared<Node>();
  node->kind = Kind::leaf;
  node->proc = std::move(closed);
  return Context(std::move(node));
}

Context Context::prefix(Action u, Context body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::prefix;
  node->act = std::move(u);
  node->a = std::move(body.node_);
  return Context(std::move(node));
}

Context Context::sum(Context left, Context right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::sum;
  node->a = std::move(left.node_);
  node->b = std::move(right.node_);
  return Context(std::move(node));
}

Context Context::par(Context left, Context right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::par;
  node->a = std::move(left.node_);
  node->b = std::move(right.node_);
  return Context(std::move(node));
}

Context Context::restriction(std::set<Name> hidden, Context body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::restriction;
  node->hidden = std::move(hidden);
  node->a = std::move(body.node_);
  return Context(std::move(node));
}

Context Context::relabel(Context body, Relabeling rf) {
  if (rf.mapping().empty()) return body;  // identity relabeling is a no-op
  auto node = std::make_shared<Node>();
  node->kind = Kind::relabel;
  node->relab = std::move(rf);
  node->a = std::move(body.node_);
  return Context(std::move(node));
}

Context::Kind Context::kind() const { return node_->kind; }
const Process& Context::process() const { return node_->proc; }
const Action& Context::action() const { return node_->act; }
Context Context::child() const { return Context(node_->a); }
Context Context::left() const { return Context(node_->a); }
Context Context::right() const { return Context(node_->b); }
const std::set<Name>& Context::hidden() const { return node_->hidden; }
const Relabeling& Context::relabeling() const { return node_->relab; }

bool Context::operator==(const Context& other) const {
  return structural_key(*this) == structural_key(other);
}

bool has_hole(const Context& c) {
  switch (c.kind()) {
    case Context::Kind::hole:
      return true;
    case Context::Kind::leaf:
      return false;
    case Context::Kind::prefix:
    case Context::Kind::restriction:
    case Context::Kind::relabel:
      return has_hole(c.child());
    case Context::Kind::sum:
    case Context::Kind::par:
      return has_hole(c.left()) || has_hole(c.right());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing and printing via the process grammar with the '_' marker

namespace {

Context from_tree(const Process& tree) {
  if (tree.kind() == Process::Kind::var && tree.name() == detail::hole_marker)
    return Context::hole();
  std::set<Name> fv = free_variables(tree);
  if (!fv.count(detail::hole_marker)) {
    if (!fv.empty())
      throw OpenTermError("context leaf has free variables: " + pretty(tree));
    return Context::leaf(tree);
  }
  switch (tree.kind()) {
    case Process::Kind::prefix:
      return Context::prefix(tree.action(), from_tree(tree.child()));
    case Process::Kind::sum:
      return Context::sum(from_tree(tree.left()), from_tree(tree.right()));
    case Process::Kind::par:
      return Context::par(from_tree(tree.left()), from_tree(tree.right()));
    case Process::Kind::restriction:
      return Context::restriction(tree.hidden(), from_tree(tree.child()));
    case Process::Kind::relabel:
      return Context::relabel(from_tree(tree.child()), tree.relabeling());
    case Process::Kind::rec:
      throw PreconditionError("holes may not occur under a rec binder: " + pretty(tree));
    default:
      throw PreconditionError("malformed context: " + pretty(tree));
  }
}

Process to_tree(const Context& c) {
  switch (c.kind()) {
    case Context::Kind::hole:
      return Process::var(detail::hole_marker);
    case Context::Kind::leaf:
      return c.process();
    case Context::Kind::prefix:
      return Process::prefix(c.action(), to_tree(c.child()));
    case Context::Kind::sum:
      return Process::sum(to_tree(c.left()), to_tree(c.right()));
    case Context::Kind::par:
      return Process::par(to_tree(c.left()), to_tree(c.right()));
    case Context::Kind::restriction:
      return Process::restriction(c.hidden(), to_tree(c.child()));
    case Context::Kind::relabel:
      return Process::relabel(to_tree(c.child()), c.relabeling());
  }
  return Process::nil();
}

}  // namespace

Context parse_context(std::string_view text) {
  return from_tree(detail::parse_allowing_holes(text));
}

std::string pretty(const Context& c) { return pretty(to_tree(c)); }

std::string structural_key(const Context& c) { return structural_key(to_tree(c)); }

// ---------------------------------------------------------------------------
// Application, composition, iteration

Process apply(const Context& c, const Process& p) {
  if (!is_closed(p)) throw OpenTermError("apply requires a closed process: " + pretty(p));
  switch (c.kind()) {
    case Context::Kind::hole:
      return p;
    case Context::Kind::leaf:
      return c.process();
    case Context::Kind::prefix:
      return Process::prefix(c.action(), apply(c.child(), p));
    case Context::Kind::sum:
      return Process::sum(apply(c.left(), p), apply(c.right(), p));
    case Context::Kind::par:
      return Process::par(apply(c.left(), p), apply(c.right(), p));
    case Context::Kind::restriction:
      return Process::restriction(c.hidden(), apply(c.child(), p));
    case Context::Kind::relabel:
      return Process::relabel(apply(c.child(), p), c.relabeling());
  }
  return p;
}

Context compose(const Context& outer, const Context& inner) {
  switch (outer.kind()) {
    case Context::Kind::hole:
      return inner;
    case Context::Kind::leaf:
      return outer;
    case Context::Kind::prefix:
      return Context::prefix(outer.action(), compose(outer.child(), inner));
    case Context::Kind::sum:
      return Context::sum(compose(outer.left(), inner), compose(outer.right(), inner));
    case Context::Kind::par:
      return Context::par(compose(outer.left(), inner), compose(outer.right(), inner));
    case Context::Kind::restriction:
      return Context::restriction(outer.hidden(), compose(outer.child(), inner));
    case Context::Kind::relabel:
      return Context::relabel(compose(outer.child(), inner), outer.relabeling());
  }
  return inner;
}

Context iterate(const Context& e, std::size_t n) {
  Context acc = Context::hole();
  for (std::size_t i = 0; i < n; ++i) acc = compose(e, acc);
  return acc;
}

Process to_process(const Context& c, const Name& var) {
  switch (c.kind()) {
    case Context::Kind::hole:
      return Process::var(var);
    case Context::Kind::leaf:
      return c.process();
    case Context::Kind::prefix:
      return Process::prefix(c.action(), to_process(c.child(), var));
    case Context::Kind::sum:
      return Process::sum(to_process(c.left(), var), to_process(c.right(), var));
    case Context::Kind::par:
      return Process::par(to_process(c.left(), var), to_process(c.right(), var));
    case Context::Kind::restriction:
      return Process::restriction(c.hidden(), to_process(c.child(), var));
    case Context::Kind::relabel:
      return Process::relabel(to_process(c.child(), var), c.relabeling());
  }
  return Process::var(var);
}

// ---------------------------------------------------------------------------
// Classification
//
// Each flag follows its own inductive rule block. The guarded-sum rule for
// GCONTEXT/WGS is the binary pattern a1..e1 + a2..e2: a summand matches it
// when it is a prefix context or a leaf whose top is a prefix.

namespace {

// A summand matches the guarded-sum pattern a..e when it is a prefix
// context or a constant whose top is a prefix.
bool prefix_shaped(const Context& c) {
  if (c.kind() == Context::Kind::prefix) return true;
  return c.kind() == Context::Kind::leaf && c.process().kind() == Process::Kind::prefix;
}

}  // namespace

Classification classify(const Context& c) {
  if (!has_hole(c))  // constant: in every class
    return Classification{true, true, true, true, true, true};

  switch (c.kind()) {
    case Context::Kind::hole:
      return Classification{.context = true, .gcontext = true, .wg = false,
                            .wgs = false, .sg = false, .seq = true};
    case Context::Kind::leaf:
      return Classification{true, true, true, true, true, true};  // unreachable: leaves are hole-free
    case Context::Kind::prefix: {
      Classification k = classify(c.child());
      Classification out;
      out.context = k.context;
      out.gcontext = k.gcontext;
      out.wg = k.context;
      out.wgs = k.gcontext;
      out.sg = (c.action().is_visible() && k.context) || k.sg;
      out.seq = k.seq;
      return out;
    }
    case Context::Kind::sum: {
      Classification k1 = classify(c.left());
      Classification k2 = classify(c.right());
      Classification out;
      out.context = k1.context && k2.context;
      out.wg = k1.wg && k2.wg;
      out.sg = k1.sg && k2.sg;
      out.seq = k1.seq && k2.seq;
      // Guarded-sum pattern a1..e1 + a2..e2: a prefix-shaped summand is WGS
      // exactly when its body is a guarded-sum context, so the premise
      // GCONTEXT(e1) ∧ GCONTEXT(e2) reads off the summands' own flags.
      bool guarded = prefix_shaped(c.left()) && prefix_shaped(c.right()) && k1.wgs && k2.wgs;
      out.gcontext = guarded;
      out.wgs = guarded;
      return out;
    }
    case Context::Kind::par: {
      Classification k1 = classify(c.left());
      Classification k2 = classify(c.right());
      Classification out;
      out.context = k1.context && k2.context;
      out.gcontext = k1.gcontext && k2.gcontext;
      out.wg = k1.wg && k2.wg;
      out.wgs = k1.wgs && k2.wgs;
      out.sg = k1.sg && k2.sg;
      out.seq = false;
      return out;
    }
    case Context::Kind::restriction:
    case Context::Kind::relabel: {
      Classification k = classify(c.child());
      k.seq = false;
      return k;
    }
  }
  return Classification{};
}

// ---------------------------------------------------------------------------
// Hole-inert transitions

std::vector<std::pair<Action, Context>> context_step(const Context& c, const StepOptions& opts) {
  std::vector<std::pair<Action, Context>> raw;
  switch (c.kind()) {
    case Context::Kind::hole:
      break;
    case Context::Kind::leaf:
      for (const auto& [u, target] : step(c.process(), opts))
        raw.emplace_back(u, Context::leaf(target));
      break;
    case Context::Kind::prefix:
      raw.emplace_back(c.action(), c.child());
      break;
    case Context::Kind::sum: {
      for (auto& [u, t] : context_step(c.left(), opts)) raw.emplace_back(u, std::move(t));
      for (auto& [u, t] : context_step(c.right(), opts)) raw.emplace_back(u, std::move(t));
      break;
    }
    case Context::Kind::par: {
      auto ls = context_step(c.left(), opts);
      auto rs = context_step(c.right(), opts);
      for (const auto& [u, t] : ls) raw.emplace_back(u, Context::par(t, c.right()));
      for (const auto& [u, t] : rs) raw.emplace_back(u, Context::par(c.left(), t));
      for (const auto& [lu, lt] : ls) {
        if (!lu.is_visible()) continue;
        Label want = lu.label().complement();
        for (const auto& [ru, rt] : rs)
          if (ru.is_visible() && ru.label() == want)
            raw.emplace_back(Action::make_tau(), Context::par(lt, rt));
      }
      break;
    }
    case Context::Kind::restriction: {
      for (auto& [u, t] : context_step(c.child(), opts)) {
        if (u.is_visible() && c.hidden().count(u.label().name)) continue;
        raw.emplace_back(u, Context::restriction(c.hidden(), std::move(t)));
      }
      break;
    }
    case Context::Kind::relabel: {
      for (auto& [u, t] : context_step(c.child(), opts))
        raw.emplace_back(relabel_action(c.relabeling(), u),
                         Context::relabel(std::move(t), c.relabeling()));
      break;
    }
  }
  std::map<std::pair<Action, std::string>, Context> dedup;
  for (auto& [u, t] : raw) dedup.emplace(std::make_pair(u, structural_key(t)), std::move(t));
  std::vector<std::pair<Action, Context>> out;
  out.reserve(dedup.size());
  for (auto& [k, t] : dedup) out.emplace_back(k.first, std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// Guardedness of free-variable expressions

namespace {

void scan_occurrences(const Process& e, std::set<Name>& bound, bool under_prefix, bool under_rec,
                      bool& all_guarded, bool& any_under_rec) {
  switch (e.kind()) {
    case Process::Kind::nil:
      return;
    case Process::Kind::var:
      if (!bound.count(e.name())) {
        if (under_rec)
          any_under_rec = true;
        else if (!under_prefix)
          all_guarded = false;
      }
      return;
    case Process::Kind::prefix:
      scan_occurrences(e.child(), bound, true, under_rec, all_guarded, any_under_rec);
      return;
    case Process::Kind::sum:
    case Process::Kind::par:
      scan_occurrences(e.left(), bound, under_prefix, under_rec, all_guarded, any_under_rec);
      scan_occurrences(e.right(), bound, under_prefix, under_rec, all_guarded, any_under_rec);
      return;
    case Process::Kind::restriction:
    case Process::Kind::relabel:
      scan_occurrences(e.child(), bound, under_prefix, under_rec, all_guarded, any_under_rec);
      return;
    case Process::Kind::rec: {
      bool fresh = bound.insert(e.name()).second;
      scan_occurrences(e.child(), bound, under_prefix, true, all_guarded, any_under_rec);
      if (fresh) bound.erase(e.name());
      return;
    }
  }
}

}  // namespace

bool weakly_guarded_expr(const Process& e) {
  std::set<Name> bound;
  bool all_guarded = true, any_under_rec = false;
  scan_occurrences(e, bound, false, false, all_guarded, any_under_rec);
  return all_guarded;
}

bool has_free_var_under_rec(const Process& e) {
  std::set<Name> bound;
  bool all_guarded = true, any_under_rec = false;
  scan_occurrences(e, bound, false, false, all_guarded, any_under_rec);
  return any_under_rec;
}

}  // namespace ccs
