#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkstar/star_graph.hpp"

namespace nkstar {

/// A directed edge of the oriented S(n,k). `position` is the star edge label (0 for clique edges).
struct Arc {
  NodeLabel from;
  NodeLabel to;
  EdgeType type = EdgeType::star;
  int position = 0;
};

namespace detail {

inline void require_orientable(const NodeLabel& u) {
  if (u.k() < 3) throw std::invalid_argument("orientation needs k >= 3");
}

/// Clique rule on heads: equal signs point from the larger head down, opposite signs from the smaller head up.
constexpr bool clique_arc_points_away(int head_u, Parity parity_u, int head_v, Parity parity_v) {
  return parity_u == parity_v ? head_u > head_v : head_u < head_v;
}

/// Whether an even (odd) node's star edge at position i leaves the node.
inline bool star_arc_points_away(Parity parity_u, int i, int k) {
  const bool left = i >= 2 && i <= left_half_end(k);
  return parity_u == Parity::even ? left : !left;
}

}  // namespace detail

inline Arc direction_of_star_edge(const NodeLabel& u, int i) {
  detail::require_orientable(u);
  if (i < 2 || i > u.k()) throw std::out_of_range("star edge label " + std::to_string(i) + " outside 2..k");
  NodeLabel v = u.swapped(i);
  if (detail::star_arc_points_away(u.parity(), i, u.k())) return {u, v, EdgeType::star, i};
  return {v, u, EdgeType::star, i};
}

inline bool are_clique_neighbors(const NodeLabel& u, const NodeLabel& v) {
  if (u.params() != v.params() || u.head() == v.head()) return false;
  for (int pos = 2; pos <= u.k(); ++pos)
    if (u(pos) != v(pos)) return false;
  return true;
}

inline Arc direction_of_clique_edge(const NodeLabel& u, const NodeLabel& v) {
  detail::require_orientable(u);
  if (!are_clique_neighbors(u, v))
    throw std::invalid_argument(u.to_string() + " and " + v.to_string() + " are not clique neighbours");
  if (detail::clique_arc_points_away(u.head(), u.parity(), v.head(), v.parity())) return {u, v, EdgeType::clique, 0};
  return {v, u, EdgeType::clique, 0};
}

/// All directed successors of u: star arcs by ascending position, then clique arcs by ascending head.
inline std::vector<Arc> out_neighbors(const NodeLabel& u) {
  detail::require_orientable(u);
  std::vector<Arc> out;
  const Parity parity = u.parity();
  for (int i = 2; i <= u.k(); ++i)
    if (detail::star_arc_points_away(parity, i, u.k())) out.push_back({u, u.swapped(i), EdgeType::star, i});
  for (int x : u.tail_end().values()) {
    NodeLabel v = u.with_head(x);
    if (detail::clique_arc_points_away(u.head(), parity, x, v.parity())) out.push_back({u, v, EdgeType::clique, 0});
  }
  return out;
}

/// The oriented fundamental clique of a node, members sorted by head value.
class OrientedClique {
 public:
  explicit OrientedClique(const NodeLabel& v) {
    detail::require_orientable(v);
    ValueSet heads = v.head_set() | v.tail_end();
    for (int h : heads.values()) {
      members_.push_back(h == v.head() ? v : v.with_head(h));
      heads_.push_back(h);
      parities_.push_back(members_.back().parity());
    }
    const int m = size();
    out_.assign(static_cast<std::size_t>(m), 0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (a != b && detail::clique_arc_points_away(heads_[a], parities_[a], heads_[b], parities_[b]))
          out_[a] |= std::uint32_t{1} << b;
  }

  int size() const { return static_cast<int>(heads_.size()); }
  const std::vector<NodeLabel>& members() const { return members_; }
  const std::vector<int>& heads() const { return heads_; }
  const std::vector<Parity>& parities() const { return parities_; }
  /// H(v) together with T(v), shared by all members.
  ValueSet head_values() const { return members_.front().head_set() | members_.front().tail_end(); }

  bool contains_head(int head) const { return std::binary_search(heads_.begin(), heads_.end(), head); }

  int index_of(int head) const {
    auto it = std::lower_bound(heads_.begin(), heads_.end(), head);
    if (it == heads_.end() || *it != head)
      throw std::invalid_argument("head " + std::to_string(head) + " is not a member of the clique");
    return static_cast<int>(it - heads_.begin());
  }

  const NodeLabel& member(int head) const { return members_[static_cast<std::size_t>(index_of(head))]; }

  bool has_arc_by_index(int a, int b) const { return (out_[a] >> b) & 1U; }
  bool has_arc(int from_head, int to_head) const { return has_arc_by_index(index_of(from_head), index_of(to_head)); }

  std::vector<int> out_heads(int head) const {
    std::vector<int> out;
    const int a = index_of(head);
    for (int b = 0; b < size(); ++b)
      if (has_arc_by_index(a, b)) out.push_back(heads_[b]);
    return out;
  }
  ValueSet out_head_set(int head) const {
    ValueSet s;
    for (int h : out_heads(head)) s.insert(h);
    return s;
  }

  int out_degree(int head) const { return static_cast<int>(out_heads(head).size()); }

  int even_count() const { return static_cast<int>(std::count(parities_.begin(), parities_.end(), Parity::even)); }
  int odd_count() const { return size() - even_count(); }

  /// Directed distances from every member to `to_head`, skipping `avoid` (if any) as an intermediate node.
  /// -1 marks unreachable members.
  std::vector<int> distances_to(int to_head, std::optional<int> avoid = std::nullopt) const {
    const int m = size();
    const int target = index_of(to_head);
    const int skip = avoid && *avoid != to_head && contains_head(*avoid) ? index_of(*avoid) : -1;
    std::vector<int> dist(static_cast<std::size_t>(m), -1);
    std::vector<int> queue{target};
    dist[target] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int b = queue[q];
      for (int a = 0; a < m; ++a)
        if (dist[a] < 0 && a != skip && has_arc_by_index(a, b)) {
          dist[a] = dist[b] + 1;
          queue.push_back(a);
        }
    }
    return dist;
  }

  /// Lexicographically smallest shortest directed path from head x to head y, as a head sequence.
  /// With `avoid`, the path may not pass through that head. Empty if no such path exists.
  std::vector<int> shortest_path(int x, int y, std::optional<int> avoid = std::nullopt) const {
    const int from = index_of(x);
    index_of(y);
    if (x == y) throw std::invalid_argument("shortest_path needs distinct endpoints");
    if (avoid && *avoid == x) avoid.reset();
    auto dist = distances_to(y, avoid);
    if (dist[from] < 0) return {};
    const int skip = avoid && contains_head(*avoid) ? index_of(*avoid) : -1;
    std::vector<int> path{x};
    for (int cur = from; dist[cur] > 0;) {
      int next = 0;
      while (next == skip || dist[next] != dist[cur] - 1 || !has_arc_by_index(cur, next)) ++next;
      path.push_back(heads_[next]);
      cur = next;
    }
    return path;
  }

  int distance(int x, int y) const {
    if (x == y) return 0;
    return distances_to(y)[index_of(x)];
  }

 private:
  std::vector<NodeLabel> members_;
  std::vector<int> heads_;
  std::vector<Parity> parities_;
  std::vector<std::uint32_t> out_;
};

inline OrientedClique oriented_clique(const NodeLabel& v) { return OrientedClique(v); }

/// P_v(x, y): shortest directed path between two members of v's fundamental clique.
inline std::vector<int> clique_shortest_path(const NodeLabel& v, int x, int y) {
  return OrientedClique(v).shortest_path(x, y);
}

struct CliqueAudit {
  bool out_degree_ok = true;
  bool sign_count_ok = true;
  bool alternation_ok = true;
  bool three_cycle_ok = true;
  bool four_cycle_ok = true;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Checks the out-degree and sign-balance claims, sign alternation by head order, and that every arc
/// lies on a directed 3-cycle except (when n-k is odd) the arc from the smallest to the largest head,
/// which must instead lie on a directed 4-cycle.
inline CliqueAudit audit_clique(const OrientedClique& q) {
  CliqueAudit report;
  const NodeLabel& any = q.members().front();
  const int gap = any.n() - any.k();
  const int m = q.size();
  auto fail = [&](bool& flag, std::string what) {
    flag = false;
    report.failures.push_back(std::move(what) + " in clique of " + any.to_string());
  };

  for (int h : q.heads())
    if (q.out_degree(h) < gap / 2) fail(report.out_degree_ok, "head " + std::to_string(h) + " has low out-degree");

  const int diff = q.even_count() - q.odd_count();
  if ((gap % 2 == 1 && diff != 0) || (gap % 2 == 0 && diff != 1 && diff != -1))
    fail(report.sign_count_ok, "sign counts " + std::to_string(q.even_count()) + "/" + std::to_string(q.odd_count()));

  for (int a = 0; a + 1 < m; ++a)
    if (q.parities()[a] == q.parities()[a + 1])
      fail(report.alternation_ok, "signs do not alternate at head " + std::to_string(q.heads()[a]));

  auto arc = [&](int a, int b) { return q.has_arc_by_index(a, b); };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!arc(a, b)) continue;
      bool on_three = false;
      for (int c = 0; c < m && !on_three; ++c) on_three = arc(b, c) && arc(c, a);
      const bool exceptional = gap % 2 == 1 && a == 0 && b == m - 1;
      if (exceptional) {
        if (on_three) fail(report.three_cycle_ok, "min-to-max arc unexpectedly lies on a 3-cycle");
        bool on_four = false;
        for (int c = 0; c < m && !on_four; ++c)
          for (int d = 0; d < m && !on_four; ++d)
            on_four = c != a && d != b && c != d && arc(b, c) && arc(c, d) && arc(d, a);
        if (!on_four) fail(report.four_cycle_ok, "min-to-max arc is not on a 4-cycle");
      } else if (!on_three) {
        fail(report.three_cycle_ok,
             "arc " + std::to_string(q.heads()[a]) + "->" + std::to_string(q.heads()[b]) + " is not on a 3-cycle");
      }
    }
  if (gap % 2 == 1 && !arc(0, m - 1)) fail(report.four_cycle_ok, "no arc from the smallest to the largest head");
  return report;
}

/// Directed arcs "<from> <to> <type>", sorted by from-rank then to-rank.
inline void write_arc_list(std::ostream& os, const StarGraph& graph) {
  graph.params().validate_orientable();
  std::vector<std::pair<std::uint64_t, std::string>> row;
  for (std::uint64_t r = 0; r < graph.node_count(); ++r) {
    NodeLabel u = graph.unrank(NodeId{r});
    row.clear();
    for (const Arc& a : out_neighbors(u)) row.emplace_back(graph.rank(a.to).rank, a.to.to_string() + ' ' + to_string(a.type));
    std::sort(row.begin(), row.end());
    const std::string from = u.to_string();
    for (auto& [rank, rest] : row) os << from << ' ' << rest << '\n';
  }
}

}  // namespace nkstar
