#ifndef CCS_CONTEXT_HPP
#define CCS_CONTEXT_HPP

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccs/semantics.hpp"
#include "ccs/syntax.hpp"

namespace ccs {

// Single-variable multi-hole context: a process tree with Hole leaves.
// Leaf processes are closed; rec may only occur inside leaves.
class Context {
 public:
  enum class Kind { hole, leaf, prefix, sum, par, restriction, relabel };

  Context();  // hole

  static Context hole();
  static Context leaf(Process closed);  // OpenTermError if the process is open
  static Context prefix(Action u, Context body);
  static Context sum(Context left, Context right);
  static Context par(Context left, Context right);
  static Context restriction(std::set<Name> hidden, Context body);
  static Context relabel(Context body, Relabeling rf);

  Kind kind() const;
  const Process& process() const;        // leaf
  const Action& action() const;          // prefix
  Context child() const;                 // prefix, restriction, relabel
  Context left() const;                  // sum, par
  Context right() const;                 // sum, par
  const std::set<Name>& hidden() const;  // restriction
  const Relabeling& relabeling() const;  // relabel

  bool operator==(const Context& other) const;

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit Context(NodePtr n) : node_(std::move(n)) {}
  NodePtr node_;
};

// Derivability flags for the six inductive context classes. Hole-free
// subtrees count as constants in every class.
struct Classification {
  bool context = false;   // plain contexts
  bool gcontext = false;  // contexts with guarded sums only
  bool wg = false;        // weakly guarded: every hole under a prefix
  bool wgs = false;       // weakly guarded with guarded sums only
  bool sg = false;        // strongly guarded: every hole under a visible prefix
  bool seq = false;       // sequential: hole path uses only prefix and sum
};

// Process grammar extended with '_' for the hole.
Context parse_context(std::string_view text);
std::string pretty(const Context& c);
std::string structural_key(const Context& c);

bool has_hole(const Context& c);

// C[p]: every hole replaced by p (p must be closed).
Process apply(const Context& c, const Process& p);

// Substitutes inner at every hole of outer; apply(compose(c,d), p) =
// apply(c, apply(d, p)).
Context compose(const Context& outer, const Context& inner);

// iterate(e, 0) = hole, iterate(e, n+1) = compose(e, iterate(e, n)).
Context iterate(const Context& e, std::size_t n);

Classification classify(const Context& c);

// One-step transitions with holes inert; leaves step as processes.
std::vector<std::pair<Action, Context>> context_step(const Context& c, const StepOptions& opts = {});

// The context with var replacing every hole.
Process to_process(const Context& c, const Name& var);

// True iff every free-variable occurrence outside a rec binder sits under
// at least one prefix (i.e. the single-hole context there is weakly
// guarded). Occurrences under rec binders are invisible to this check;
// see has_free_var_under_rec.
bool weakly_guarded_expr(const Process& e);
bool has_free_var_under_rec(const Process& e);

}  // namespace ccs

#endif
