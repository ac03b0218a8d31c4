#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "nkstar/oracle.hpp"

using namespace nkstar;

namespace {

// All-pairs distances by Floyd-Warshall over the arcs given by out_neighbors.
std::vector<std::vector<int>> floyd_warshall(const StarGraph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  constexpr int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (const Arc& a : out_neighbors(g.unrank({u}))) d[u][g.rank(a.to).rank] = 1;
  }
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) d[u][v] = std::min(d[u][v], d[u][w] + d[w][v]);
  return d;
}

}  // namespace

TEST(Bounds, TabulatedValues) {
  EXPECT_EQ(theorem_bound(10, 5), 23);
  EXPECT_EQ(theorem_bound(10, 7), 24);
  EXPECT_EQ(theorem_bound(12, 3), 18);
  EXPECT_EQ(theorem_bound(5, 3), 15);
  EXPECT_EQ(theorem_bound(6, 4), 17);
  EXPECT_EQ(theorem_bound(7, 4), 18);
  EXPECT_EQ(theorem_bound(9, 5), 22);
  EXPECT_EQ(theorem_delta(10, 7), 4);
  EXPECT_EQ(theorem_delta(12, 3), 1);
  EXPECT_EQ(theorem_delta(10, 5), 0);
  EXPECT_THROW(theorem_bound(5, 4), std::invalid_argument);
  EXPECT_THROW(theorem_bound(6, 2), std::invalid_argument);
}

TEST(Bounds, PriorBoundsForTheComparisonRow) {
  EXPECT_EQ(prior_bounds(10, 5).cheng_lipman, 45);
  EXPECT_EQ(prior_bounds(10, 7).cheng_lipman, 55);
  EXPECT_EQ(prior_bounds(10, 5).cheng_kruk, 25);
  EXPECT_EQ(prior_bounds(12, 6).cheng_kruk, 7 * 3 + 18);
}

TEST(Bounds, KFormIsTheWorstCaseOverTheRegime) {
  EXPECT_EQ(theorem_bound(12, 6), 27);
  EXPECT_EQ(theorem_bound_k_form(12, 6), 30);
  for (int n = 5; n <= 60; ++n)
    for (int k = 3; k <= n - 2; ++k) {
      ASSERT_GE(theorem_delta(n, k), 0);
      ASSERT_LE(theorem_bound(n, k), theorem_bound_k_form(n, k)) << n << "," << k;
      if (n <= 50) { ASSERT_LT(theorem_bound(n, k), prior_bounds(n, k).cheng_lipman) << n << "," << k; }
    }
}

TEST(Bounds, TableAndCsv) {
  const auto rows = bounds_table(7);
  ASSERT_EQ(rows.size(), 1U + 2U + 3U);
  EXPECT_EQ(rows.front().n, 5);
  EXPECT_EQ(rows.back().k, 5);
  std::ostringstream os;
  write_bounds_csv(os, bounds_table(10));
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "n,k,undirected_diam,delta,thm_bound,cheng_lipman,cheng_kruk");
  EXPECT_NE(os.str().find("\n10,5,9,0,23,45,25\n"), std::string::npos);
}

TEST(Csr, FromArcsAndReverse) {
  const CsrGraph g = CsrGraph::from_arcs(3, {{0, 2}, {0, 1}, {2, 1}});
  EXPECT_EQ(g.node_count(), 3U);
  EXPECT_EQ(g.arc_count(), 3U);
  EXPECT_EQ(std::vector<std::uint32_t>(g.neighbors(0).begin(), g.neighbors(0).end()), (std::vector<std::uint32_t>{1, 2}));
  const CsrGraph r = g.reversed();
  EXPECT_EQ(std::vector<std::uint32_t>(r.neighbors(1).begin(), r.neighbors(1).end()), (std::vector<std::uint32_t>{0, 2}));
  EXPECT_EQ(bfs_distances(g, 0), (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(bfs_distances(g, 1), (std::vector<int>{kUnreached, 0, kUnreached}));
}

TEST(Diameter, DirectedMatchesFloydWarshall) {
  for (GraphParams p : {GraphParams{5, 3}, GraphParams{6, 3}}) {
    const StarGraph g(p);
    const auto d = floyd_warshall(g);
    int diam = 0;
    for (const auto& row : d)
      for (int x : row) diam = std::max(diam, x);
    const auto r = directed_diameter(p, 2);
    EXPECT_TRUE(r.finite);
    EXPECT_EQ(r.diameter, diam);
    EXPECT_EQ(d[r.from.rank][r.to.rank], diam);
    const CsrGraph csr = build_oriented(g);
    for (std::uint32_t s = 0; s < g.node_count(); s += 5) {
      const auto dist = bfs_distances(csr, s);
      for (std::size_t v = 0; v < dist.size(); ++v) { ASSERT_EQ(dist[v], d[s][v]); }
    }
  }
}

TEST(Diameter, UndirectedMatchesFormulaAndSandwichHolds) {
  for (GraphParams p : {GraphParams{5, 3}, GraphParams{6, 3}, GraphParams{6, 4}, GraphParams{7, 3}}) {
    const auto u = undirected_diameter(p);
    EXPECT_EQ(u.diameter, undirected_diameter_formula(p));
    const auto d = directed_diameter(p);
    ASSERT_TRUE(d.finite);
    EXPECT_GE(d.diameter, u.diameter);
    EXPECT_LE(d.diameter, theorem_bound(p.n, p.k));
  }
}

TEST(Connectivity, StronglyConnectedSmallInstances) {
  for (GraphParams p : {GraphParams{5, 3}, GraphParams{6, 4}, GraphParams{7, 4}}) {
    const auto r = check_strong_connectivity(p);
    EXPECT_TRUE(r.strongly_connected) << p.n << "," << p.k;
    EXPECT_FALSE(r.witness.has_value());
  }
}

// Negative control: a single reversed arc never disconnects S(5,3), but turning a node into a sink does,
// and the checker must report a witness pair that BFS confirms.
TEST(Connectivity, FlippingArcsIsDetected) {
  const StarGraph g({5, 3});
  const CsrGraph base = build_oriented(g);
  for (std::uint32_t u = 0; u < base.node_count(); ++u)
    for (std::uint32_t v : base.neighbors(u)) {
      OrientedBuildOptions opts;
      opts.flipped_arcs = {{NodeId{u}, NodeId{v}}};
      const CsrGraph flipped = build_oriented(g, opts);
      ASSERT_EQ(flipped.arc_count(), base.arc_count());
      ASSERT_TRUE(check_strong_connectivity(flipped).strongly_connected) << u << "->" << v;
    }
  for (std::uint32_t sink : {0U, 17U, 59U}) {
    OrientedBuildOptions opts;
    for (std::uint32_t v : base.neighbors(sink)) opts.flipped_arcs.push_back({NodeId{sink}, NodeId{v}});
    const CsrGraph flipped = build_oriented(g, opts);
    EXPECT_TRUE(flipped.neighbors(sink).empty());
    const auto r = check_strong_connectivity(flipped);
    ASSERT_FALSE(r.strongly_connected);
    ASSERT_TRUE(r.witness.has_value());
    const auto [from, to] = *r.witness;
    EXPECT_EQ(bfs_distances(flipped, static_cast<std::uint32_t>(from.rank))[to.rank], kUnreached);
    EXPECT_FALSE(graph_diameter(flipped, 1).finite);
  }
  OrientedBuildOptions bad;
  const auto first = base.neighbors(0)[0];
  bad.flipped_arcs = {{NodeId{first}, NodeId{0}}};
  EXPECT_THROW(build_oriented(g, bad), std::invalid_argument);
}

TEST(Memory, BudgetIsEnforced) {
  EXPECT_THROW(check_memory_budget({16, 15}, 1024), InstanceTooLarge);
  EXPECT_THROW(build_undirected(StarGraph({9, 8}), 1), InstanceTooLarge);
  EXPECT_NO_THROW(check_memory_budget({7, 4}, 1024));
  EXPECT_GT(estimated_graph_bytes({8, 5}), estimated_graph_bytes({7, 5}));
}

TEST(ParallelFor, SameResultForAnyWorkerCount) {
  const StarGraph g({6, 4});
  const CsrGraph csr = build_oriented(g);
  const auto one = graph_diameter(csr, 1);
  for (int w : {2, 3, 8}) {
    const auto many = graph_diameter(csr, w);
    EXPECT_EQ(many.diameter, one.diameter);
    EXPECT_EQ(many.from, one.from);
    EXPECT_EQ(many.to, one.to);
  }
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::uint64_t i, int) { ++hits[i]; });
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  EXPECT_THROW(parallel_for(100, 3, [](std::uint64_t i, int) { if (i == 42) throw std::runtime_error("x"); }),
               std::runtime_error);
}

TEST(SampleRng, ReproducibleAndInRange) {
  SampleRng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(30240), y = b.below(30240);
    ASSERT_EQ(x, y);
    ASSERT_LT(x, 30240U);
    differs |= c.below(30240) != x;
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(a.below(0), std::invalid_argument);
  EXPECT_EQ(sample_pairs({9, 5}, 50, 3), sample_pairs({9, 5}, 50, 3));
  EXPECT_NE(sample_pairs({9, 5}, 50, 3), sample_pairs({9, 5}, 50, 4));
}

TEST(SampleRng, RoughlyUniform) {
  SampleRng rng(99);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) ++counts[rng.below(6)];
  for (int c : counts) { EXPECT_NEAR(c, 10000, 500); }
}

TEST(VerifyPair, Examples) {
  const GraphParams p{10, 5};
  const NodeLabel t = NodeLabel::parse("1-2-3-4-5", p);
  const PairRecord same = verify_pair(t, t);
  EXPECT_EQ(same.routed_length, 0);
  EXPECT_EQ(same.bfs_distance, 0);
  EXPECT_EQ(same.bound, 23);
  EXPECT_TRUE(same.ok);
  const PairRecord one = verify_pair(NodeLabel::parse("7-2-3-4-5", p), t);
  EXPECT_EQ(one.routed_length, 1);
  EXPECT_EQ(one.bfs_distance, 1);
  EXPECT_TRUE(one.ok);
}

TEST(Verify, AllPairsSmallInstances) {
  for (GraphParams p : {GraphParams{5, 3}, GraphParams{6, 3}}) {
    const auto s = verify_all_pairs(p);
    EXPECT_TRUE(s.ok) << (s.failures.empty() ? "" : s.failures.front());
    EXPECT_EQ(s.pairs_checked, p.node_count() * p.node_count());
    EXPECT_LE(s.max_bfs, s.max_routed);
    EXPECT_LE(s.max_routed, s.bound);
    EXPECT_EQ(s.max_bfs, directed_diameter(p).diameter);
  }
}

TEST(Verify, SampledAndDeterministic) {
  VerifyOptions opts;
  opts.workers = 3;
  const auto a = verify_samples({9, 5}, 2000, 1, opts);
  opts.workers = 1;
  const auto b = verify_samples({9, 5}, 2000, 1, opts);
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(a.pairs_checked, 2000U);
  EXPECT_EQ(a.max_routed, b.max_routed);
  EXPECT_EQ(a.max_bfs, b.max_bfs);
  EXPECT_LE(a.max_routed, 22);
}

TEST(Verify, CsvFormat) {
  VerifySummary row;
  row.n = 5;
  row.k = 3;
  row.pairs_checked = 3600;
  row.max_routed = 11;
  row.max_bfs = 8;
  row.bound = 15;
  std::ostringstream os;
  write_verify_csv(os, {row});
  EXPECT_EQ(os.str(), "n,k,pairs_checked,max_routed,max_bfs,bound,ok\n5,3,3600,11,8,15,true\n");
}

TEST(AuditTrace, EmptyTracePasses) {
  const GraphParams p{6, 3};
  const NodeLabel t = NodeLabel::parse("1-2-3", p);
  const auto audit = audit_trace(route(t, t));
  EXPECT_TRUE(audit.passed());
  EXPECT_NE(audit.find("reaches_target"), nullptr);
}

TEST(AuditTrace, CorruptedCountersAndStepsFail) {
  const GraphParams p{10, 5};
  RouteTrace tr = route(NodeLabel::parse("7-2-3-4-5", p), NodeLabel::parse("1-2-3-4-5", p));
  ASSERT_TRUE(audit_trace(tr).passed());

  RouteTrace counters = tr;
  counters.gamma1 = 3;
  const auto a = audit_trace(counters);
  ASSERT_NE(a.find("gamma1"), nullptr);
  EXPECT_FALSE(a.find("gamma1")->ok);
  EXPECT_EQ(describe(*a.find("gamma1")), "gamma1: gamma1 = 3 exceeds 2");
  EXPECT_FALSE(a.find("annotations_consistent")->ok);

  RouteTrace steps = tr;
  steps.steps[0].node = NodeLabel::parse("1-3-2-4-5", p);
  const auto b = audit_trace(steps);
  EXPECT_FALSE(b.find("arc_respect")->ok);
  EXPECT_FALSE(b.find("reaches_target")->ok);
}

TEST(AuditTrace, CounterLimitsForTheExampleNode) {
  const GraphParams p{10, 5};
  const auto lim = counter_limits(NodeLabel::parse("7-2-3-4-5", p), NodeLabel::parse("1-2-3-4-5", p));
  // |DE| = 1 and (n - k) / 2 = 2, so alpha <= 0 + 2 + 2.
  EXPECT_EQ(lim.alpha, 4);
  EXPECT_EQ(lim.beta, 5);
  EXPECT_EQ(lim.gamma1, 2);
  EXPECT_EQ(lim.gamma2, 2);
}

TEST(MeasuredReport, FillsMeasuredColumns) {
  const auto r = measured_bound_report({5, 3}, 2);
  ASSERT_TRUE(r.measured.has_value());
  EXPECT_TRUE(r.measured->strongly_connected);
  EXPECT_EQ(r.measured->bfs_directed_diam, directed_diameter({5, 3}).diameter);
  EXPECT_LE(r.measured->bfs_directed_diam, r.measured->max_routed_length);
  EXPECT_LE(r.measured->max_routed_length, r.thm_bound);
}
