#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "nkstar/oracle.hpp"
#include "nkstar/star_graph.hpp"

using namespace nkstar;

namespace {

// Every k-permutation of [n] in dictionary order, built by brute force.
std::vector<std::vector<int>> all_k_permutations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      cur.push_back(v);
      self(self);
      cur.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return out;
}

// Neighbours straight from the definition, on raw symbol vectors.
std::vector<std::vector<int>> definition_neighbors(const std::vector<int>& u, int n) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 1; i < u.size(); ++i) {
    auto v = u;
    std::swap(v[0], v[i]);
    out.push_back(v);
  }
  for (int x = 1; x <= n; ++x) {
    if (std::find(u.begin(), u.end(), x) != u.end()) continue;
    auto v = u;
    v[0] = x;
    out.push_back(v);
  }
  return out;
}

int definition_diameter(int n, int k) {
  const auto nodes = all_k_permutations(n, k);
  int diam = 0;
  for (const auto& s : nodes) {
    std::map<std::vector<int>, int> dist{{s, 0}};
    std::queue<std::vector<int>> q;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto& v : definition_neighbors(u, n))
        if (dist.emplace(v, dist[u] + 1).second) {
          diam = std::max(diam, dist[u] + 1);
          q.push(v);
        }
    }
  }
  return diam;
}

NodeLabel label(std::initializer_list<int> symbols, int n) {
  return NodeLabel::from_symbols(symbols, {n, static_cast<int>(symbols.size())});
}

}  // namespace

TEST(GraphParams, Validation) {
  EXPECT_NO_THROW((GraphParams{5, 1}.validate()));
  EXPECT_THROW((GraphParams{5, 5}.validate()), std::invalid_argument);
  EXPECT_THROW((GraphParams{5, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((GraphParams{17, 3}.validate_labels()), std::invalid_argument);
  EXPECT_TRUE((GraphParams{5, 3}.orientable()));
  EXPECT_FALSE((GraphParams{5, 4}.orientable()));
  EXPECT_FALSE((GraphParams{5, 2}.orientable()));
  EXPECT_EQ((GraphParams{7, 4}.node_count()), 840U);
}

TEST(NodeLabel, ExtendedLabelAndParts) {
  const NodeLabel u = label({7, 2, 3, 4, 5}, 10);
  EXPECT_EQ(to_string(u.extended()), "7-2-3-4-5-1-6-8-9-10");
  EXPECT_EQ(u.head(), 7);
  EXPECT_EQ(u.arm(), (ValueSet{2, 3, 4, 5}));
  EXPECT_EQ(u.left_half(), (ValueSet{2, 3}));
  EXPECT_EQ(u.right_half(), (ValueSet{4, 5}));
  EXPECT_EQ(u.tail_end(), (ValueSet{1, 6, 8, 9, 10}));
  EXPECT_EQ(u.parity(), Parity::even);
  EXPECT_EQ(u.to_string(), "7-2-3-4-5");
}

TEST(NodeLabel, RejectsBadSymbols) {
  EXPECT_THROW(label({1, 1, 2}, 5), std::invalid_argument);
  EXPECT_THROW(label({1, 2, 6}, 5), std::invalid_argument);
  EXPECT_THROW(NodeLabel::parse("1-2", {5, 3}), std::invalid_argument);
  EXPECT_THROW(NodeLabel::parse("1-2-x", {5, 3}), std::invalid_argument);
}

TEST(Rank, Endpoints) {
  const StarGraph g({5, 3});
  EXPECT_EQ(g.rank(label({1, 2, 3}, 5)).rank, 0U);
  EXPECT_EQ(g.rank(label({5, 4, 3}, 5)).rank, 59U);
  EXPECT_EQ(g.unrank({0}), label({1, 2, 3}, 5));
  EXPECT_EQ(g.unrank({59}), label({5, 4, 3}, 5));
  EXPECT_THROW(g.unrank({60}), std::out_of_range);
  EXPECT_THROW(g.rank(label({1, 2, 3}, 6)), std::invalid_argument);
}

TEST(Rank, MatchesDictionaryOrder) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 3}, {6, 4}, {7, 2}, {6, 5}}) {
    const StarGraph g({n, k});
    const auto perms = all_k_permutations(n, k);
    ASSERT_EQ(perms.size(), g.node_count());
    for (std::size_t r = 0; r < perms.size(); ++r) {
      const NodeLabel u = NodeLabel::from_symbols(perms[r], {n, k});
      ASSERT_EQ(g.rank(u).rank, r);
      ASSERT_EQ(g.unrank({r}), u);
    }
  }
}

TEST(StarNeighbors, SmallExample) {
  const NodeLabel u = label({7, 2, 3, 4, 5}, 10);
  const auto nb = star_neighbors(u);
  ASSERT_EQ(nb.size(), 4U);
  const std::vector<std::string> expected{"2-7-3-4-5", "3-2-7-4-5", "4-2-3-7-5", "5-2-3-4-7"};
  for (std::size_t j = 0; j < nb.size(); ++j) {
    EXPECT_EQ(nb[j].first, static_cast<int>(j) + 2);
    EXPECT_EQ(nb[j].second.to_string(), expected[j]);
  }
}

TEST(StarNeighbors, InvolutionAndTwoPositionsChange) {
  const StarGraph g({7, 4});
  for (std::uint64_t r = 0; r < g.node_count(); ++r) {
    const NodeLabel u = g.unrank({r});
    for (auto& [i, v] : star_neighbors(u)) {
      ASSERT_EQ(v.swapped(i), u);
      int changed = 0;
      for (int pos = 1; pos <= u.k(); ++pos) changed += u(pos) != v(pos);
      ASSERT_EQ(changed, 2);
      ASSERT_EQ(v(1), u(i));
    }
  }
}

TEST(CliqueNeighbors, SmallExample) {
  const NodeLabel u = label({7, 2, 3, 4, 5}, 10);
  std::vector<int> heads;
  for (auto& v : clique_neighbors(u)) {
    heads.push_back(v.head());
    EXPECT_EQ(v.arm(), u.arm());
    for (int pos = 2; pos <= 5; ++pos) EXPECT_EQ(v(pos), u(pos));
  }
  EXPECT_EQ(heads, (std::vector<int>{1, 6, 8, 9, 10}));
}

TEST(CliqueNeighbors, SizeAndEquivalence) {
  const StarGraph g({5, 3});
  for (std::uint64_t r = 0; r < g.node_count(); ++r) {
    const NodeLabel u = g.unrank({r});
    auto members = [](const NodeLabel& x) {
      std::set<std::uint64_t> s;
      for (auto& v : clique_neighbors(x)) s.insert(StarGraph({5, 3}).rank(v).rank);
      s.insert(StarGraph({5, 3}).rank(x).rank);
      return s;
    };
    const auto mine = members(u);
    ASSERT_EQ(mine.size(), 3U);
    for (auto& v : clique_neighbors(u)) ASSERT_EQ(members(v), mine);
  }
  const StarGraph g6({6, 3});
  for (std::uint64_t r = 0; r < g6.node_count(); ++r) ASSERT_EQ(clique_neighbors(g6.unrank({r})).size(), 3U);
}

TEST(Neighbors, MatchDefinitionAndDegree) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 3}, {6, 3}, {6, 4}, {7, 4}, {7, 6}}) {
    const StarGraph g({n, k});
    for (std::uint64_t r = 0; r < g.node_count(); ++r) {
      const NodeLabel u = g.unrank({r});
      std::set<std::vector<int>> ours;
      for (auto& [i, v] : star_neighbors(u)) ours.insert(v.symbols());
      for (auto& v : clique_neighbors(u)) ours.insert(v.symbols());
      const auto def = definition_neighbors(u.symbols(), n);
      ASSERT_EQ(ours, std::set<std::vector<int>>(def.begin(), def.end()));
      ASSERT_EQ(static_cast<int>(ours.size()), n - 1);
    }
  }
}

TEST(Partitions, CliquesAndStars) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 3}, {6, 3}, {6, 4}, {7, 4}}) {
    const StarGraph g({n, k});
    std::set<std::pair<std::vector<int>, std::uint32_t>> cliques;  // (arm, head-or-tail set)
    std::set<std::uint32_t> symbol_sets;
    for (std::uint64_t r = 0; r < g.node_count(); ++r) {
      const NodeLabel u = g.unrank({r});
      auto s = u.symbols();
      cliques.insert({std::vector<int>(s.begin() + 1, s.end()), (u.head_set() | u.tail_end()).mask()});
      symbol_sets.insert(u.internal().mask());
    }
    std::uint64_t clique_count = 1, choose = 1;
    for (int i = 0; i < k - 1; ++i) clique_count *= static_cast<std::uint64_t>(n - i);  // n!/(n-k+1)!
    for (int i = 0; i < k; ++i) choose = choose * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
    EXPECT_EQ(cliques.size(), clique_count);
    EXPECT_EQ(symbol_sets.size(), choose);
  }
}

TEST(Partitions, StarEdgesConnectEachSymbolSet) {
  const GraphParams p{6, 3};
  const StarGraph g(p);
  std::vector<std::uint64_t> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint64_t r = 0; r < g.node_count(); ++r)
    for (auto& [i, v] : star_neighbors(g.unrank({r}))) parent[find(r)] = find(g.rank(v).rank);
  std::map<std::uint64_t, std::set<std::uint32_t>> sets_per_component;
  for (std::uint64_t r = 0; r < g.node_count(); ++r) sets_per_component[find(r)].insert(g.unrank({r}).internal().mask());
  EXPECT_EQ(sets_per_component.size(), 20U);
  for (auto& [root, sets] : sets_per_component) EXPECT_EQ(sets.size(), 1U);
}

TEST(UndirectedDiameter, FormulaValues) {
  EXPECT_EQ(undirected_diameter_formula({10, 5}), 9);
  EXPECT_EQ(undirected_diameter_formula({5, 3}), 5);
  EXPECT_EQ(undirected_diameter_formula({6, 4}), 6);
  EXPECT_THROW(undirected_diameter_formula({4, 4}), std::invalid_argument);
}

TEST(UndirectedDiameter, DefinitionBfsOnSmallInstances) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 3}, {5, 4}, {6, 3}})
    EXPECT_EQ(definition_diameter(n, k), undirected_diameter_formula({n, k})) << n << "," << k;
}

TEST(UndirectedDiameter, CsrBfsUpTo2520Nodes) {
  int checked = 0;
  for (int n = 2; n <= 16; ++n)
    for (int k = 1; k < n; ++k) {
      const GraphParams p{n, k};
      if (p.node_count() > 2520) break;
      const auto d = undirected_diameter(p);
      ASSERT_TRUE(d.finite);
      ASSERT_EQ(d.diameter, undirected_diameter_formula(p)) << n << "," << k;
      ++checked;
    }
  EXPECT_GT(checked, 30);
}

TEST(EdgeList, FormatAndCount) {
  const StarGraph g({5, 3});
  std::ostringstream os;
  write_edge_list(os, g);
  std::istringstream in(os.str());
  std::string a, b, type, line;
  std::size_t edges = 0;
  std::set<std::pair<std::string, std::string>> seen;
  while (in >> a >> b >> type) {
    ++edges;
    EXPECT_TRUE(type == "star" || type == "clique");
    EXPECT_LT(g.rank(g.parse(a)).rank, g.rank(g.parse(b)).rank);
    EXPECT_TRUE(seen.insert({a, b}).second);
  }
  EXPECT_EQ(edges, 60U * 4U / 2U);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "1-2-3 2-1-3 star");
}
