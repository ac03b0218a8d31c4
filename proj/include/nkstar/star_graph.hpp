#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nkstar/permutation.hpp"

namespace nkstar {

struct GraphParams {
  int n = 0;
  int k = 0;

  /// 1 <= k < n.
  void validate() const {
    if (k < 1 || k >= n)
      throw std::invalid_argument("invalid (n,k) = (" + std::to_string(n) + "," + std::to_string(k) +
                                  "): need 1 <= k < n");
  }

  /// validate() plus n within the label capacity.
  void validate_labels() const {
    validate();
    if (n > kMaxSymbols) throw std::invalid_argument("n exceeds " + std::to_string(kMaxSymbols));
  }

  /// The orientation and routing need a non-trivial left and right half and at least two tail values.
  bool orientable() const { return k >= 3 && n - k >= 2; }

  void validate_orientable() const {
    validate();
    if (!orientable())
      throw std::invalid_argument("orientation requires k >= 3 and n - k >= 2, got (n,k) = (" + std::to_string(n) +
                                  "," + std::to_string(k) + ")");
  }

  /// n! / (n-k)!
  std::uint64_t node_count() const {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= static_cast<std::uint64_t>(n - i);
    return count;
  }

  friend bool operator==(const GraphParams&, const GraphParams&) = default;
};

/// A node of S(n,k), held as its extended label: the k-permutation followed by the unused symbols ascending.
class NodeLabel {
 public:
  NodeLabel() = default;

  static NodeLabel from_symbols(std::span<const int> symbols, GraphParams params) {
    params.validate_labels();
    if (static_cast<int>(symbols.size()) != params.k)
      throw std::invalid_argument("label has " + std::to_string(symbols.size()) + " symbols, expected k = " +
                                  std::to_string(params.k));
    std::vector<int> images(symbols.begin(), symbols.end());
    ValueSet used;
    for (int v : symbols) {
      if (v < 1 || v > params.n)
        throw std::invalid_argument("symbol " + std::to_string(v) + " outside 1.." + std::to_string(params.n));
      if (used.contains(v)) throw std::invalid_argument("duplicate symbol " + std::to_string(v));
      used.insert(v);
    }
    for (int v = 1; v <= params.n; ++v)
      if (!used.contains(v)) images.push_back(v);
    return NodeLabel(Permutation(images), params.k);
  }
  static NodeLabel from_symbols(std::initializer_list<int> symbols, GraphParams params) {
    return from_symbols(std::span<const int>(symbols.begin(), symbols.size()), params);
  }

  /// Any permutation of [n]; its tail is normalized by lead.
  static NodeLabel from_permutation(const Permutation& p, int k) { return NodeLabel(lead(p, k), k); }

  static NodeLabel parse(std::string_view text, GraphParams params) { return from_symbols(parse_values(text), params); }

  const Permutation& extended() const { return sigma_; }
  GraphParams params() const { return {sigma_.size(), k_}; }
  int n() const { return sigma_.size(); }
  int k() const { return k_; }

  int operator()(int pos) const { return sigma_(pos); }
  int position_of(int value) const { return sigma_.position_of(value); }
  int head() const { return sigma_(1); }

  Parity parity() const { return sign(sigma_); }

  std::vector<int> symbols() const {
    std::vector<int> out;
    for (int pos = 1; pos <= k_; ++pos) out.push_back(sigma_(pos));
    return out;
  }

  ValueSet values_at(int first, int last) const {
    ValueSet s;
    for (int pos = first; pos <= last; ++pos) s.insert(sigma_(pos));
    return s;
  }
  ValueSet head_set() const { return values_at(1, 1); }
  ValueSet arm() const { return values_at(2, k_); }
  ValueSet left_half() const { return values_at(2, left_half_end(k_)); }
  ValueSet right_half() const { return values_at(left_half_end(k_) + 1, k_); }
  ValueSet tail_end() const { return values_at(k_ + 1, n()); }
  ValueSet internal() const { return values_at(1, k_); }

  bool in_left_half_position(int pos) const { return pos >= 2 && pos <= left_half_end(k_); }
  bool in_right_half_position(int pos) const { return pos > left_half_end(k_) && pos <= k_; }

  /// Star neighbour across edge label i: swap positions 1 and i.
  NodeLabel swapped(int i) const {
    NodeLabel out = *this;
    out.sigma_.swap_positions(1, i);
    return out;
  }

  /// Clique neighbour with head value x taken from the tail.
  NodeLabel with_head(int x) const {
    NodeLabel out = *this;
    out.sigma_.swap_positions(1, sigma_.position_of(x));
    out.sigma_.sort_positions(k_ + 1, n());
    return out;
  }

  std::string to_string() const { return format_values(symbols()); }

  friend bool operator==(const NodeLabel& a, const NodeLabel& b) { return a.k_ == b.k_ && a.sigma_ == b.sigma_; }
  friend bool operator<(const NodeLabel& a, const NodeLabel& b) { return a.sigma_ < b.sigma_; }

 private:
  NodeLabel(Permutation sigma, int k) : sigma_(std::move(sigma)), k_(k) {}

  Permutation sigma_;
  int k_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const NodeLabel& u) { return os << u.to_string(); }

/// Dense index of a node: lexicographic rank of its k-permutation.
struct NodeId {
  std::uint64_t rank = 0;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

enum class EdgeType { star, clique };

constexpr const char* to_string(EdgeType t) { return t == EdgeType::star ? "star" : "clique"; }

/// Structural view of S(n,k): ranking and neighbour enumeration. Adjacency is derived from labels.
class StarGraph {
 public:
  explicit StarGraph(GraphParams params) : params_(params) {
    params_.validate_labels();
    // weight_[i] = (n-i-1)! / (n-k)!, the number of completions of a prefix of length i+1.
    weight_.assign(static_cast<std::size_t>(params_.k), 1);
    for (int i = params_.k - 2; i >= 0; --i) weight_[i] = weight_[i + 1] * static_cast<std::uint64_t>(params_.n - i - 1);
  }

  GraphParams params() const { return params_; }
  std::uint64_t node_count() const { return params_.node_count(); }

  NodeId rank(const NodeLabel& u) const {
    if (u.params() != params_) throw std::invalid_argument("label belongs to a different (n,k)");
    std::uint64_t r = 0;
    ValueSet used;
    for (int i = 0; i < params_.k; ++i) {
      int v = u(i + 1);
      int smaller_unused = (ValueSet::range(v - 1) - used).size();
      r += static_cast<std::uint64_t>(smaller_unused) * weight_[i];
      used.insert(v);
    }
    return NodeId{r};
  }

  NodeLabel unrank(NodeId id) const {
    if (id.rank >= node_count())
      throw std::out_of_range("rank " + std::to_string(id.rank) + " outside 0.." + std::to_string(node_count() - 1));
    std::vector<int> symbols;
    ValueSet unused = ValueSet::range(params_.n);
    std::uint64_t r = id.rank;
    for (int i = 0; i < params_.k; ++i) {
      auto digit = static_cast<int>(r / weight_[i]);
      r %= weight_[i];
      auto candidates = unused.values();
      int v = candidates[static_cast<std::size_t>(digit)];
      symbols.push_back(v);
      unused.erase(v);
    }
    return NodeLabel::from_symbols(symbols, params_);
  }

  NodeLabel parse(std::string_view text) const { return NodeLabel::parse(text, params_); }

 private:
  GraphParams params_;
  std::vector<std::uint64_t> weight_;
};

/// (i, neighbour) for each edge label i in 2..k.
inline std::vector<std::pair<int, NodeLabel>> star_neighbors(const NodeLabel& u) {
  std::vector<std::pair<int, NodeLabel>> out;
  for (int i = 2; i <= u.k(); ++i) out.emplace_back(i, u.swapped(i));
  return out;
}

/// The n-k nodes sharing u's arm, in ascending order of head.
inline std::vector<NodeLabel> clique_neighbors(const NodeLabel& u) {
  std::vector<NodeLabel> out;
  for (int x : u.tail_end().values()) out.push_back(u.with_head(x));
  return out;
}

/// Closed-form diameter of the undirected S(n,k).
inline int undirected_diameter_formula(GraphParams params) {
  params.validate();
  const auto [n, k] = params;
  return k <= n / 2 ? 2 * k - 1 : k + (n - 1) / 2;
}

/// One undirected edge per line, "<u> <v> <type>", smaller rank first, sorted by (rank u, rank v).
inline void write_edge_list(std::ostream& os, const StarGraph& graph) {
  std::vector<std::pair<std::uint64_t, std::string>> row;
  for (std::uint64_t r = 0; r < graph.node_count(); ++r) {
    NodeLabel u = graph.unrank(NodeId{r});
    row.clear();
    for (auto& [i, v] : star_neighbors(u)) row.emplace_back(graph.rank(v).rank, v.to_string() + " star");
    for (auto& v : clique_neighbors(u)) row.emplace_back(graph.rank(v).rank, v.to_string() + " clique");
    std::sort(row.begin(), row.end());
    const std::string from = u.to_string();
    for (auto& [rank, rest] : row)
      if (rank > r) os << from << ' ' << rest << '\n';
  }
}

}  // namespace nkstar
