#ifndef CCS_SYNTAX_HPP
#define CCS_SYNTAX_HPP

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ccs/errors.hpp"

namespace ccs {

// Channel and variable identifiers share one space: [A-Za-z][A-Za-z0-9_]*.
using Name = std::string;

bool is_valid_name(std::string_view text);

enum class Polarity { input, output };

// A visible action: an input name or an output co-name.
struct Label {
  Name name;
  Polarity polarity = Polarity::input;

  Label() = default;
  Label(Polarity pol, Name n) : name(std::move(n)), polarity(pol) {}

  Label complement() const {
    return Label(polarity == Polarity::input ? Polarity::output : Polarity::input, name);
  }

  // Orders by name, input before output: a < 'a < b.
  auto operator<=>(const Label&) const = default;
};

std::string to_string(const Label& l);

// τ or a visible label. Visible actions order before τ so transition
// listings come out as a, 'a, ..., t.
class Action {
 public:
  Action() = default;  // τ

  static Action make_tau() { return Action(); }
  static Action visible(Label l) { return Action(std::move(l)); }
  static Action input(Name n) { return Action(Label(Polarity::input, std::move(n))); }
  static Action output(Name n) { return Action(Label(Polarity::output, std::move(n))); }

  bool is_tau() const { return !label_.has_value(); }
  bool is_visible() const { return label_.has_value(); }
  const Label& label() const { return *label_; }

  bool operator==(const Action&) const = default;
  std::strong_ordering operator<=>(const Action& other) const {
    if (label_.has_value() != other.label_.has_value())
      return label_.has_value() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!label_.has_value()) return std::strong_ordering::equal;
    return *label_ <=> *other.label_;
  }

 private:
  explicit Action(Label l) : label_(std::move(l)) {}
  std::optional<Label> label_;
};

std::string to_string(const Action& u);

// A finite renaming of channel names, identity outside its domain.
// Self-mappings are dropped so equal functions compare equal.
class Relabeling {
 public:
  Relabeling() = default;
  explicit Relabeling(std::map<Name, Name> mapping);

  const std::map<Name, Name>& mapping() const { return map_; }
  Name apply(const Name& n) const;
  bool operator==(const Relabeling&) const = default;
  auto operator<=>(const Relabeling&) const = default;

 private:
  std::map<Name, Name> map_;
};

Label relabel_label(const Relabeling& rf, const Label& l);
// τ is fixed; visible labels are renamed preserving polarity, so
// relabel(complement(l)) = complement(relabel(l)).
Action relabel_action(const Relabeling& rf, const Action& u);

// Immutable CCS term. Copies share structure.
class Process {
 public:
  enum class Kind { nil, var, prefix, sum, par, restriction, relabel, rec };

  Process();  // nil

  static Process nil();
  static Process var(Name n);
  static Process prefix(Action u, Process body);
  static Process sum(Process left, Process right);
  static Process par(Process left, Process right);
  static Process restriction(std::set<Name> hidden, Process body);
  static Process relabel(Process body, Relabeling rf);
  static Process rec(Name binder, Process body);

  Kind kind() const;
  const Name& name() const;              // var, rec
  const Action& action() const;          // prefix
  Process child() const;                 // prefix, restriction, relabel, rec
  Process left() const;                  // sum, par
  Process right() const;                 // sum, par
  const std::set<Name>& hidden() const;  // restriction
  const Relabeling& relabeling() const;  // relabel

  // Structural equality after canonical renaming of rec binders.
  bool operator==(const Process& other) const;

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit Process(NodePtr n) : node_(std::move(n)) {}
  NodePtr node_;

  friend Process canonical(const Process&);
  friend bool deep_equal(const Process&, const Process&);
};

// Concrete syntax: 0, a.P, 'a.P, t.P, +, |, nu {a,b} P, P[b/a], rec A. P,
// bare identifier = variable.
Process parse(std::string_view text);
std::string pretty(const Process& p);

// Replaces free occurrences of `var` in `body` by `value`. Throws
// CaptureError when an open value would be captured by a binder.
Process substitute(const Process& body, const Name& var, const Process& value);

std::set<Name> free_variables(const Process& p);
bool is_closed(const Process& p);

// Canonical form: rec binders renamed V0, V1, ... in preorder (skipping
// any name free in the whole term). LTS state identity uses this form.
Process canonical(const Process& p);

// Plain syntactic tree equality, no renaming.
bool deep_equal(const Process& a, const Process& b);

// Deterministic identity key: the pretty form of the canonical term.
std::string structural_key(const Process& p);

// Every channel name appearing in actions, restriction sets, or
// relabelings (domain and range). Transition labels of p always use
// names from this set.
std::set<Name> channel_names(const Process& p);
// channel_names plus variable and binder names.
std::set<Name> all_names(const Process& p);

namespace detail {
// Context parsing: '_' is accepted and carried as a variable with this
// (otherwise unlexable) name.
inline const Name hole_marker = "_";
Process parse_allowing_holes(std::string_view text);
}  // namespace detail

}  // namespace ccs

#endif
