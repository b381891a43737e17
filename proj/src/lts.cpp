#include "ccs/lts.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <sstream>

namespace ccs {

std::size_t BitMatrix::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : bits_) n += std::popcount(w);
  return n;
}

bool Lts::has_edge(StateId s, const Action& u, StateId t) const {
  const auto& es = edges_[s];
  auto it = std::lower_bound(es.begin(), es.end(), std::make_pair(u, t));
  return it != es.end() && it->first == u && it->second == t;
}

StateId Lts::state_of(const Process& p) const {
  auto it = index_.find(structural_key(p));
  return it == index_.end() ? -1 : it->second;
}

Lts explore(const Process& p, std::size_t max_states, const StepOptions& opts) {
  if (!is_closed(p)) throw OpenTermError("explore requires a closed process: " + pretty(p));
  Lts l;
  auto intern = [&l](Process canon) -> StateId {
    std::string key = pretty(canon);
    auto it = l.index_.find(key);
    if (it != l.index_.end()) return it->second;
    StateId id = static_cast<StateId>(l.states_.size());
    l.states_.push_back(std::move(canon));
    l.keys_.push_back(key);
    l.index_.emplace(std::move(key), id);
    l.edges_.emplace_back();
    return id;
  };

  std::set<Label> labels;
  intern(canonical(p));
  for (StateId s = 0; s < static_cast<StateId>(l.states_.size()); ++s) {
    for (const auto& [u, target] : step(l.states_[s], opts)) {
      if (u.is_visible()) labels.insert(u.label());
      StateId t = intern(target);
      l.edges_[s].emplace_back(u, t);
      if (l.states_.size() > max_states) {
        std::vector<std::string> sample;
        for (std::size_t i = l.states_.size() - 1; i > 0 && sample.size() < 5; --i)
          sample.push_back(l.keys_[i]);
        throw StateBudgetError(l.states_.size(), std::move(sample));
      }
    }
    auto& es = l.edges_[s];
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
  }
  l.labels_.assign(labels.begin(), labels.end());
  return l;
}

Lts disjoint_union(const Lts& a, const Lts& b) {
  Lts u;
  u.states_ = a.states_;
  u.keys_ = a.keys_;
  u.edges_ = a.edges_;
  int offset = static_cast<int>(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    u.states_.push_back(b.states_[i]);
    u.keys_.push_back(b.keys_[i]);
    auto es = b.edges_[i];
    for (auto& [act, t] : es) t += offset;
    u.edges_.push_back(std::move(es));
  }
  // Keys may collide between the two halves; the union is only used for
  // block-wise comparisons, so the index maps each key to its first state.
  u.index_.clear();
  for (std::size_t i = 0; i < u.keys_.size(); ++i) u.index_.emplace(u.keys_[i], static_cast<StateId>(i));
  std::set<Label> labels(a.labels_.begin(), a.labels_.end());
  labels.insert(b.labels_.begin(), b.labels_.end());
  u.labels_.assign(labels.begin(), labels.end());
  u.root_ = a.root_;
  return u;
}

bool is_stable(const Lts& l, StateId s) {
  for (const auto& [u, t] : l.edges(s))
    if (u.is_tau()) return false;
  return true;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const Lts& l) {
  std::ostringstream out;
  out << "digraph lts {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (std::size_t s = 0; s < l.size(); ++s) {
    out << "  s" << s << " [label=\"" << dot_escape(l.key(static_cast<StateId>(s))) << "\"";
    if (static_cast<StateId>(s) == l.root()) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t s = 0; s < l.size(); ++s)
    for (const auto& [u, t] : l.edges(static_cast<StateId>(s)))
      out << "  s" << s << " -> s" << t << " [label=\"" << dot_escape(to_string(u)) << "\"];\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Weak saturation

bool WeakLts::weak_visible(StateId s, const Label& l, StateId t) const {
  auto it = weak_.find(l);
  return it != weak_.end() && it->second.get(s, t);
}

bool WeakLts::weak_full(StateId s, const Action& u, StateId t) const {
  return u.is_tau() ? weak_tau_.get(s, t) : weak_visible(s, u.label(), t);
}

bool WeakLts::weak_hat(StateId s, const Action& u, StateId t) const {
  return u.is_tau() ? eps_.get(s, t) : weak_visible(s, u.label(), t);
}

bool WeakLts::single_hat(StateId s, const Action& u, StateId t) const {
  if (u.is_tau() && s == t) return true;
  return base_->has_edge(s, u, t);
}

const BitMatrix* WeakLts::weak_matrix(const Label& l) const {
  auto it = weak_.find(l);
  return it == weak_.end() ? nullptr : &it->second;
}

WeakLts saturate(const Lts& l) {
  WeakLts w;
  w.base_ = std::make_shared<Lts>(l);
  std::size_t n = l.size();
  w.eps_ = BitMatrix(n, n);

  // eps: per-state BFS over τ edges.
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    std::deque<StateId> queue{s};
    w.eps_.set(s, s);
    while (!queue.empty()) {
      StateId cur = queue.front();
      queue.pop_front();
      for (const auto& [u, t] : l.edges(cur))
        if (u.is_tau() && !w.eps_.get(s, t)) {
          w.eps_.set(s, t);
          queue.push_back(t);
        }
    }
  }

  // weak u: eps ∘ −u→ ∘ eps, materialized per visible label plus τ.
  w.weak_tau_ = BitMatrix(n, n);
  for (const Label& lab : l.labels()) w.weak_.emplace(lab, BitMatrix(n, n));
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    for (StateId mid = 0; mid < static_cast<StateId>(n); ++mid) {
      if (!w.eps_.get(s, mid)) continue;
      for (const auto& [u, t] : l.edges(mid)) {
        BitMatrix& target = u.is_tau() ? w.weak_tau_ : w.weak_.at(u.label());
        w.eps_.or_row_into(t, target.row(s));
      }
    }
  }
  return w;
}

}  // namespace ccs
