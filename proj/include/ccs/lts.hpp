#ifndef CCS_LTS_HPP
#define CCS_LTS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccs/semantics.hpp"
#include "ccs/syntax.hpp"

namespace ccs {

using StateId = int;

// Dense bit matrix; rows are contiguous 64-bit words so row intersection
// tests are word-parallel.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * stride_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c) { bits_[r * stride_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  void clear(std::size_t r, std::size_t c) {
    bits_[r * stride_ + c / 64] &= ~(std::uint64_t{1} << (c % 64));
  }

  const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * stride_; }
  std::uint64_t* row(std::size_t r) { return bits_.data() + r * stride_; }
  std::size_t stride() const { return stride_; }

  // Does row r intersect the given row of equal width?
  bool row_intersects(std::size_t r, const std::uint64_t* other) const {
    const std::uint64_t* mine = row(r);
    for (std::size_t w = 0; w < stride_; ++w)
      if (mine[w] & other[w]) return true;
    return false;
  }

  // out |= row r.
  void or_row_into(std::size_t r, std::uint64_t* out) const {
    const std::uint64_t* mine = row(r);
    for (std::size_t w = 0; w < stride_; ++w) out[w] |= mine[w];
  }

  std::size_t count() const;

 private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Finite LTS: canonical states, sorted deduplicated edges, closed under step.
class Lts {
 public:
  StateId root() const { return root_; }
  std::size_t size() const { return states_.size(); }
  const Process& process(StateId s) const { return states_[s]; }
  const std::string& key(StateId s) const { return keys_[s]; }
  const std::vector<std::pair<Action, StateId>>& edges(StateId s) const { return edges_[s]; }
  const std::vector<Label>& labels() const { return labels_; }  // visible labels in use

  bool has_edge(StateId s, const Action& u, StateId t) const;
  StateId state_of(const Process& p) const;  // -1 when not a state

  friend Lts explore(const Process& p, std::size_t max_states, const StepOptions& opts);
  friend Lts disjoint_union(const Lts& a, const Lts& b);

 private:
  std::vector<Process> states_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, StateId> index_;
  std::vector<std::vector<std::pair<Action, StateId>>> edges_;
  std::vector<Label> labels_;
  StateId root_ = 0;
};

// Breadth-first closure of canonical states under step. Throws
// StateBudgetError (with a frontier sample) if the closure would exceed
// max_states; the process may then be infinite-state.
Lts explore(const Process& p, std::size_t max_states = 10000, const StepOptions& opts = {});

// Two LTSs side by side (states of b shifted); root is a's root.
Lts disjoint_union(const Lts& a, const Lts& b);

// No outgoing τ edge.
bool is_stable(const Lts& l, StateId s);

// Deterministic Graphviz digraph; states labelled with their pretty form,
// root drawn double-circled.
std::string to_dot(const Lts& l);

// Weak layer over a finite LTS.
//   eps:       reflexive-transitive τ closure         (⇒ε)
//   weak_tau:  at least one τ, i.e. eps ∘ −τ→ ∘ eps   (⇒τ)
//   weak l:    eps ∘ −l→ ∘ eps                        (⇒l)
// Derived accessors: ⇒̂τ = eps, ⇒̂l = weak l; ↪u = one step, or stay for τ.
class WeakLts {
 public:
  const Lts& base() const { return *base_; }
  std::shared_ptr<const Lts> base_ptr() const { return base_; }
  std::size_t size() const { return base_->size(); }

  bool eps(StateId s, StateId t) const { return eps_.get(s, t); }
  bool weak_visible(StateId s, const Label& l, StateId t) const;

  // ⇒u (for τ: at least one τ step).
  bool weak_full(StateId s, const Action& u, StateId t) const;
  // ⇒̂u (a τ challenge may be answered by staying put).
  bool weak_hat(StateId s, const Action& u, StateId t) const;
  // ↪u (at most one step).
  bool single_hat(StateId s, const Action& u, StateId t) const;

  const BitMatrix& eps_matrix() const { return eps_; }
  const BitMatrix& weak_tau_matrix() const { return weak_tau_; }
  const BitMatrix* weak_matrix(const Label& l) const;  // null if label unused

  friend WeakLts saturate(const Lts& l);

 private:
  std::shared_ptr<const Lts> base_;
  BitMatrix eps_, weak_tau_;
  std::map<Label, BitMatrix> weak_;
};

WeakLts saturate(const Lts& l);

}  // namespace ccs

#endif
