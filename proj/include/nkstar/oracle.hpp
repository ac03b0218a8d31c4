#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nkstar/bounds.hpp"
#include "nkstar/orientation.hpp"
#include "nkstar/router.hpp"
#include "nkstar/star_graph.hpp"

namespace nkstar {

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMemoryMb = 1024;

/// Compressed adjacency over dense node ids.
struct CsrGraph {
  std::vector<std::uint32_t> offsets;  // node_count() + 1 entries
  std::vector<std::uint32_t> targets;

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(offsets.size() - 1); }
  std::size_t arc_count() const { return targets.size(); }
  std::span<const std::uint32_t> neighbors(std::uint32_t u) const {
    return {targets.data() + offsets[u], targets.data() + offsets[u + 1]};
  }

  static CsrGraph from_arcs(std::uint32_t nodes, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& arcs) {
    CsrGraph g;
    g.offsets.assign(static_cast<std::size_t>(nodes) + 1, 0);
    for (auto [u, v] : arcs) ++g.offsets[u + 1];
    for (std::uint32_t u = 0; u < nodes; ++u) g.offsets[u + 1] += g.offsets[u];
    g.targets.resize(arcs.size());
    std::vector<std::uint32_t> fill(g.offsets.begin(), g.offsets.end() - 1);
    for (auto [u, v] : arcs) g.targets[fill[u]++] = v;
    for (std::uint32_t u = 0; u < nodes; ++u)
      std::sort(g.targets.begin() + g.offsets[u], g.targets.begin() + g.offsets[u + 1]);
    return g;
  }

  CsrGraph reversed() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    arcs.reserve(targets.size());
    for (std::uint32_t u = 0; u < node_count(); ++u)
      for (std::uint32_t v : neighbors(u)) arcs.emplace_back(v, u);
    return from_arcs(node_count(), arcs);
  }
};

/// Rough peak footprint of building and searching one adjacency structure (plus its reverse).
inline std::size_t estimated_graph_bytes(GraphParams params) {
  const double nodes = static_cast<double>(params.node_count());
  const double per_node = 4.0 + 2.0 + 4.0 + (params.n - 1) * (8.0 + 4.0 + 4.0);
  return static_cast<std::size_t>(nodes * per_node);
}

inline void check_memory_budget(GraphParams params, std::size_t memory_mb) {
  params.validate_labels();
  const auto need = estimated_graph_bytes(params);
  if (params.node_count() >= (std::uint64_t{1} << 32) || need > (memory_mb << 20))
    throw InstanceTooLarge("S(" + std::to_string(params.n) + "," + std::to_string(params.k) + ") needs about " +
                           std::to_string(need >> 20) + " MiB, budget is " + std::to_string(memory_mb) + " MiB");
}

inline CsrGraph build_undirected(const StarGraph& graph, std::size_t memory_mb = kDefaultMemoryMb) {
  check_memory_budget(graph.params(), memory_mb);
  const auto nodes = static_cast<std::uint32_t>(graph.node_count());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  arcs.reserve(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(graph.params().n - 1));
  for (std::uint32_t u = 0; u < nodes; ++u) {
    const NodeLabel label = graph.unrank({u});
    for (auto& [i, v] : star_neighbors(label)) arcs.emplace_back(u, static_cast<std::uint32_t>(graph.rank(v).rank));
    for (auto& v : clique_neighbors(label)) arcs.emplace_back(u, static_cast<std::uint32_t>(graph.rank(v).rank));
  }
  return CsrGraph::from_arcs(nodes, arcs);
}

struct OrientedBuildOptions {
  std::size_t memory_mb = kDefaultMemoryMb;
  /// Arcs (from, to) of the orientation to reverse. Used only by negative controls.
  std::vector<std::pair<NodeId, NodeId>> flipped_arcs;
};

inline CsrGraph build_oriented(const StarGraph& graph, const OrientedBuildOptions& options = {}) {
  graph.params().validate_orientable();
  check_memory_budget(graph.params(), options.memory_mb);
  const auto nodes = static_cast<std::uint32_t>(graph.node_count());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  arcs.reserve(static_cast<std::size_t>(nodes) * static_cast<std::size_t>(graph.params().n - 1) / 2);
  for (std::uint32_t u = 0; u < nodes; ++u)
    for (const Arc& a : out_neighbors(graph.unrank({u})))
      arcs.emplace_back(u, static_cast<std::uint32_t>(graph.rank(a.to).rank));
  for (auto [from, to] : options.flipped_arcs) {
    const std::pair<std::uint32_t, std::uint32_t> arc{static_cast<std::uint32_t>(from.rank),
                                                      static_cast<std::uint32_t>(to.rank)};
    auto it = std::find(arcs.begin(), arcs.end(), arc);
    if (it == arcs.end())
      throw std::invalid_argument("cannot flip " + std::to_string(from.rank) + "->" + std::to_string(to.rank) +
                                  ": not an arc of the orientation");
    *it = {arc.second, arc.first};
  }
  return CsrGraph::from_arcs(nodes, arcs);
}

inline constexpr std::int16_t kUnreached = -1;

/// Per-worker BFS buffers.
struct BfsScratch {
  std::vector<std::int16_t> dist;
  std::vector<std::uint32_t> queue;
};

struct BfsSummary {
  int eccentricity = 0;
  std::uint32_t farthest = 0;  // smallest id at the eccentricity
  std::uint32_t reached = 0;
};

inline BfsSummary bfs(const CsrGraph& g, std::uint32_t source, BfsScratch& s) {
  const std::uint32_t n = g.node_count();
  s.dist.assign(n, kUnreached);
  s.queue.resize(n);
  std::size_t head = 0, tail = 0;
  s.queue[tail++] = source;
  s.dist[source] = 0;
  while (head < tail) {
    const std::uint32_t u = s.queue[head++];
    const auto next = static_cast<std::int16_t>(s.dist[u] + 1);
    for (std::uint32_t v : g.neighbors(u))
      if (s.dist[v] == kUnreached) {
        s.dist[v] = next;
        s.queue[tail++] = v;
      }
  }
  BfsSummary out;
  out.reached = static_cast<std::uint32_t>(tail);
  for (std::uint32_t v = 0; v < n; ++v)
    if (s.dist[v] > out.eccentricity) {
      out.eccentricity = s.dist[v];
      out.farthest = v;
    }
  return out;
}

inline std::vector<int> bfs_distances(const CsrGraph& g, std::uint32_t source) {
  BfsScratch s;
  bfs(g, source, s);
  return {s.dist.begin(), s.dist.end()};
}

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Calls body(index, worker) for every index in [0, count), spread over `workers` threads.
/// The first exception thrown by any worker is rethrown after all threads join.
template <class Body>
void parallel_for(std::uint64_t count, int workers, Body&& body) {
  workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_workers(workers)),
                                                     std::max<std::uint64_t>(count, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](int worker) {
    try {
      for (std::uint64_t i = next++; i < count; i = next++) body(i, worker);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = count;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

struct DiameterResult {
  int diameter = 0;
  NodeId from;
  NodeId to;
  bool finite = true;
};

/// Exact eccentricity maximum over all sources. The reported pair is the one with the smallest source,
/// then smallest target, among those achieving the maximum.
inline DiameterResult graph_diameter(const CsrGraph& g, int workers = 0) {
  const std::uint32_t n = g.node_count();
  const int w = resolve_workers(workers);
  std::vector<BfsScratch> scratch(static_cast<std::size_t>(w));
  std::vector<BfsSummary> per_source(n);
  parallel_for(n, w, [&](std::uint64_t src, int worker) {
    per_source[src] = bfs(g, static_cast<std::uint32_t>(src), scratch[static_cast<std::size_t>(worker)]);
  });
  DiameterResult r;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (per_source[u].reached != n) {
      if (r.finite) {
        r.finite = false;
        r.from = {u};
        BfsScratch s;
        bfs(g, u, s);
        r.to = {static_cast<std::uint32_t>(std::find(s.dist.begin(), s.dist.end(), kUnreached) - s.dist.begin())};
      }
      continue;
    }
    if (r.finite && per_source[u].eccentricity > r.diameter) {
      r.diameter = per_source[u].eccentricity;
      r.from = {u};
      r.to = {per_source[u].farthest};
    }
  }
  return r;
}

inline DiameterResult undirected_diameter(GraphParams params, int workers = 0, std::size_t memory_mb = kDefaultMemoryMb) {
  return graph_diameter(build_undirected(StarGraph(params), memory_mb), workers);
}

inline DiameterResult directed_diameter(GraphParams params, int workers = 0, std::size_t memory_mb = kDefaultMemoryMb) {
  return graph_diameter(build_oriented(StarGraph(params), {memory_mb, {}}), workers);
}

struct ConnectivityResult {
  bool strongly_connected = false;
  /// On failure: a pair (u, v) with no directed path from u to v.
  std::optional<std::pair<NodeId, NodeId>> witness;
};

/// Forward and reverse reachability from node 0.
inline ConnectivityResult check_strong_connectivity(const CsrGraph& g) {
  BfsScratch s;
  bfs(g, 0, s);
  for (std::uint32_t v = 0; v < g.node_count(); ++v)
    if (s.dist[v] == kUnreached) return {false, std::pair{NodeId{0}, NodeId{v}}};
  bfs(g.reversed(), 0, s);
  for (std::uint32_t v = 0; v < g.node_count(); ++v)
    if (s.dist[v] == kUnreached) return {false, std::pair{NodeId{v}, NodeId{0}}};
  return {true, std::nullopt};
}

inline ConnectivityResult check_strong_connectivity(GraphParams params, std::size_t memory_mb = kDefaultMemoryMb) {
  return check_strong_connectivity(build_oriented(StarGraph(params), {memory_mb, {}}));
}

// ---------------------------------------------------------------------------------------------
// Trace audits

struct AuditItem {
  std::string check;
  bool ok = true;
  int step = -1;  // offending move index, -1 when not tied to a step
  std::string detail;
};

struct TraceAudit {
  std::vector<AuditItem> items;

  bool passed() const {
    return std::all_of(items.begin(), items.end(), [](const AuditItem& i) { return i.ok; });
  }
  const AuditItem* find(std::string_view check) const {
    for (const auto& i : items)
      if (i.check == check) return &i;
    return nullptr;
  }
  std::vector<AuditItem> failures() const {
    std::vector<AuditItem> out;
    for (const auto& i : items)
      if (!i.ok) out.push_back(i);
    return out;
  }
};

inline std::string describe(const AuditItem& item) {
  std::string out = item.check;
  if (item.step >= 0) out += " at move " + std::to_string(item.step);
  if (!item.detail.empty()) out += ": " + item.detail;
  return out;
}

/// Upper bounds the counters of a route from s to t must respect.
struct CounterLimits {
  int alpha = 0;
  int beta = 0;
  int gamma1 = 2;
  int gamma2 = 0;
};

inline CounterLimits counter_limits(const NodeLabel& s, const NodeLabel& t) {
  const MoveContext m = move_context(s, t);
  const int half_gap = (s.n() - s.k()) / 2;
  const int de = m.DE.size();
  CounterLimits lim;
  lim.alpha = std::max(de - half_gap, 0) + 2 * std::min(de, half_gap) + 2;
  lim.beta = 2 * std::max(m.DL.size(), m.DR.size()) + s.k();
  lim.gamma2 = 2 + chi(s, t);
  return lim;
}

/// Checks a completed trace against the orientation, its own annotations, and the counting argument
/// behind the length bound. Every check is reported, failing or not.
inline TraceAudit audit_trace(const RouteTrace& trace) {
  TraceAudit audit;
  auto add = [&](std::string check, bool ok, int step = -1, std::string detail = {}) {
    audit.items.push_back({std::move(check), ok, step, ok ? std::string{} : std::move(detail)});
  };
  auto first_failure = [&](std::string check, auto&& predicate, auto&& explain) {
    for (int m = 1; m <= trace.length(); ++m)
      if (!predicate(m)) return add(std::move(check), false, m, explain(m));
    add(std::move(check), true);
  };
  const int last = trace.length();

  add("reaches_target", last == 0 ? trace.source == trace.target : trace.node(last) == trace.target, last,
      "trace ends at " + trace.node(last).to_string() + ", not " + trace.target.to_string());

  first_failure(
      "arc_respect",
      [&](int m) {
        for (const Arc& a : out_neighbors(trace.node(m - 1)))
          if (a.to == trace.node(m)) return true;
        return false;
      },
      [&](int m) { return "no arc " + trace.node(m - 1).to_string() + " -> " + trace.node(m).to_string(); });

  RouteTrace recount = trace;
  annotate(recount);
  const bool consistent = recount.alpha == trace.alpha && recount.beta == trace.beta &&
                          recount.gamma1 == trace.gamma1 && recount.gamma2 == trace.gamma2 &&
                          recount.m1 == trace.m1 && recount.m2 == trace.m2 && recount.m3 == trace.m3 &&
                          recount.m_zd == trace.m_zd && recount.chi == trace.chi;
  add("annotations_consistent", consistent, -1, "recorded counters, phase markers or chi differ from a recount");
  add("counter_sum", trace.alpha + trace.beta + trace.gamma1 + trace.gamma2 == last, -1,
      "alpha + beta + gamma1 + gamma2 = " + std::to_string(trace.alpha + trace.beta + trace.gamma1 + trace.gamma2) +
          " but the trace has " + std::to_string(last) + " moves");

  // The inequality checks read the recorded chi values; fall back to the recount if they are missing.
  const std::vector<int>& chi_at = trace.chi.size() == static_cast<std::size_t>(last) + 1 ? trace.chi : recount.chi;

  first_failure(
      "chi_nonincreasing_clique_seed",
      [&](int m) {
        const MoveKind kind = trace.steps[static_cast<std::size_t>(m - 1)].kind;
        return is_star_move(kind) || chi_at[m] <= chi_at[m - 1];
      },
      [&](int m) {
        return std::string(to_string(trace.steps[static_cast<std::size_t>(m - 1)].kind)) + " raised chi from " +
               std::to_string(chi_at[m - 1]) + " to " + std::to_string(chi_at[m]);
      });

  {
    int net = 0, worst_step = -1;
    for (int m = 1; m <= std::min(trace.m3, last); ++m) {
      if (!is_star_move(trace.steps[static_cast<std::size_t>(m - 1)].kind)) continue;
      net += chi_at[m] - chi_at[m - 1];
      if (net > 1 && worst_step < 0) worst_step = m;
    }
    add("star_chi_net_increase", net <= 1, worst_step,
        "star moves up to m3 = " + std::to_string(trace.m3) + " raised chi by " + std::to_string(net) + " in total");
  }

  const CounterLimits lim = counter_limits(trace.source, trace.target);
  auto bound_check = [&](std::string name, int value, int limit) {
    add(name, value <= limit, -1, name + " = " + std::to_string(value) + " exceeds " + std::to_string(limit));
  };
  bound_check("gamma1", trace.gamma1, lim.gamma1);
  bound_check("gamma2", trace.gamma2, lim.gamma2);
  bound_check("alpha", trace.alpha, lim.alpha);
  bound_check("beta", trace.beta, lim.beta);
  bound_check("length", last, theorem_bound(trace.params.n, trace.params.k));

  first_failure(
      "destination_head_in_tail",
      [&](int m) {
        const NodeLabel& c = trace.node(m - 1);
        if (trace.steps[static_cast<std::size_t>(m - 1)].kind != MoveKind::clique_move) return true;
        const bool iat_empty = (trace.target.arm() & c.tail_end()).empty();
        return !iat_empty || c.tail_end().contains(trace.target.head());
      },
      [&](int m) { return "clique move from " + trace.node(m - 1).to_string() + " with no internal value in reach"; });
  return audit;
}

/// Phase-shape properties: |DL| and |DR| never grow after m1, and exactly one of them is empty strictly
/// between m2 and m3.
inline TraceAudit audit_phases(const RouteTrace& trace) {
  TraceAudit audit;
  const int last = trace.length();
  AuditItem monotone{"dl_dr_nonincreasing_after_m1", true, -1, {}};
  for (int m = trace.m1 + 1; m <= last && monotone.ok; ++m)
    if (trace.dl_size[m] > trace.dl_size[m - 1] || trace.dr_size[m] > trace.dr_size[m - 1]) {
      monotone.ok = false;
      monotone.step = m;
      monotone.detail = "|DL|,|DR| went from " + std::to_string(trace.dl_size[m - 1]) + "," +
                        std::to_string(trace.dr_size[m - 1]) + " to " + std::to_string(trace.dl_size[m]) + "," +
                        std::to_string(trace.dr_size[m]);
    }
  audit.items.push_back(monotone);
  AuditItem one_sided{"one_side_empty_in_phase3", true, -1, {}};
  for (int m = trace.m2; m < trace.m3 && one_sided.ok; ++m)
    if ((trace.dl_size[m] == 0) == (trace.dr_size[m] == 0)) {
      one_sided.ok = false;
      one_sided.step = m;
      one_sided.detail = "|DL| = " + std::to_string(trace.dl_size[m]) + ", |DR| = " + std::to_string(trace.dr_size[m]);
    }
  audit.items.push_back(one_sided);
  return audit;
}

// ---------------------------------------------------------------------------------------------
// Pair verification

struct PairRecord {
  int routed_length = 0;
  int bfs_distance = 0;
  int bound = 0;
  bool ok = false;
};

/// Holds the oriented graph of one instance so that many pairs can be checked against BFS.
class PairVerifier {
 public:
  explicit PairVerifier(GraphParams params, std::size_t memory_mb = kDefaultMemoryMb)
      : graph_(params), csr_(build_oriented(graph_, {memory_mb, {}})), bound_(theorem_bound(params.n, params.k)) {}

  const StarGraph& graph() const { return graph_; }
  const CsrGraph& csr() const { return csr_; }
  int bound() const { return bound_; }

  PairRecord verify(const NodeLabel& s, const NodeLabel& t) const {
    const auto dist = bfs_distances(csr_, static_cast<std::uint32_t>(graph_.rank(s).rank));
    return record(route(s, t).length(), dist[graph_.rank(t).rank]);
  }

  PairRecord record(int routed, int bfs_distance) const {
    return {routed, bfs_distance, bound_, routed <= bound_ && bfs_distance >= 0 && bfs_distance <= routed};
  }

 private:
  StarGraph graph_;
  CsrGraph csr_;
  int bound_;
};

inline PairRecord verify_pair(const NodeLabel& s, const NodeLabel& t) { return PairVerifier(s.params()).verify(s, t); }

struct VerifyOptions {
  int workers = 0;
  std::size_t memory_mb = kDefaultMemoryMb;
  bool audit = false;    // also run audit_trace on every route
  bool with_bfs = true;  // compare against BFS distances
  std::size_t max_reported_failures = 20;
};

struct VerifySummary {
  int n = 0;
  int k = 0;
  std::uint64_t pairs_checked = 0;
  int max_routed = 0;
  int max_bfs = 0;
  int bound = 0;
  bool ok = true;
  std::uint64_t failure_count = 0;
  std::vector<std::string> failures;  // first few, ordered by (source, target)
};

inline void write_verify_csv(std::ostream& os, const std::vector<VerifySummary>& rows) {
  os << "n,k,pairs_checked,max_routed,max_bfs,bound,ok\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.k << ',' << r.pairs_checked << ',' << r.max_routed << ',' << r.max_bfs << ',' << r.bound
       << ',' << (r.ok ? "true" : "false") << '\n';
}

namespace detail {

struct WorkerTally {
  std::uint64_t pairs = 0;
  int max_routed = 0;
  int max_bfs = 0;
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, std::string>> failures;
  std::uint64_t failure_count = 0;
  BfsScratch scratch;
};

inline void check_one(const StarGraph& graph, const NodeLabel& s, std::uint64_t t_rank, int bfs_distance, int bound,
                      const VerifyOptions& options, WorkerTally& tally) {
  const NodeLabel t = graph.unrank({t_rank});
  const auto key = std::pair{graph.rank(s).rank, t_rank};
  auto fail = [&](std::string why) {
    ++tally.failure_count;
    tally.failures.emplace_back(key, s.to_string() + " -> " + t.to_string() + ": " + std::move(why));
  };
  ++tally.pairs;
  RouteTrace trace;
  try {
    trace = route(s, t, bound);
  } catch (const std::exception& e) {
    fail(e.what());
    return;
  }
  const int len = trace.length();
  tally.max_routed = std::max(tally.max_routed, len);
  if (options.with_bfs) {
    tally.max_bfs = std::max(tally.max_bfs, bfs_distance);
    if (bfs_distance < 0)
      fail("unreachable by BFS");
    else if (bfs_distance > len)
      fail("routed " + std::to_string(len) + " is shorter than BFS distance " + std::to_string(bfs_distance));
  }
  if (options.audit)
    for (const auto& item : audit_trace(trace).failures()) fail(describe(item));
}

inline VerifySummary merge(GraphParams params, int bound, std::vector<WorkerTally>& tallies, const VerifyOptions& options) {
  VerifySummary out;
  out.n = params.n;
  out.k = params.k;
  out.bound = bound;
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, std::string>> failures;
  for (auto& t : tallies) {
    out.pairs_checked += t.pairs;
    out.max_routed = std::max(out.max_routed, t.max_routed);
    out.max_bfs = std::max(out.max_bfs, t.max_bfs);
    out.failure_count += t.failure_count;
    failures.insert(failures.end(), t.failures.begin(), t.failures.end());
  }
  std::stable_sort(failures.begin(), failures.end(), [](auto& a, auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < failures.size() && i < options.max_reported_failures; ++i)
    out.failures.push_back(failures[i].second);
  out.ok = out.failure_count == 0;
  return out;
}

}  // namespace detail

/// Route every ordered pair (including s = t) and compare with BFS from each source.
inline VerifySummary verify_all_pairs(GraphParams params, const VerifyOptions& options = {}) {
  params.validate_orientable();
  const StarGraph graph(params);
  const int bound = theorem_bound(params.n, params.k);
  CsrGraph csr;
  if (options.with_bfs) csr = build_oriented(graph, {options.memory_mb, {}});
  const int workers = resolve_workers(options.workers);
  std::vector<detail::WorkerTally> tallies(static_cast<std::size_t>(workers));
  const std::uint64_t nodes = graph.node_count();
  parallel_for(nodes, workers, [&](std::uint64_t src, int w) {
    auto& tally = tallies[static_cast<std::size_t>(w)];
    if (options.with_bfs) bfs(csr, static_cast<std::uint32_t>(src), tally.scratch);
    const NodeLabel s = graph.unrank({src});
    for (std::uint64_t dst = 0; dst < nodes; ++dst)
      detail::check_one(graph, s, dst, options.with_bfs ? tally.scratch.dist[dst] : 0, bound, options, tally);
  });
  return detail::merge(params, bound, tallies, options);
}

/// Bounded integer draws from mt19937_64 by rejection, so the stream of pairs depends only on the seed.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SampleRng::below needs a positive bound");
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// `count` ordered pairs of node ids drawn independently and uniformly (s = t allowed).
inline std::vector<std::pair<NodeId, NodeId>> sample_pairs(GraphParams params, std::uint64_t count, std::uint64_t seed) {
  SampleRng rng(seed);
  const std::uint64_t nodes = params.node_count();
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const NodeId s{rng.below(nodes)};
    const NodeId t{rng.below(nodes)};
    out.emplace_back(s, t);
  }
  return out;
}

/// Route `count` seeded random pairs. With BFS enabled, pairs are grouped by source so each source is searched once.
inline VerifySummary verify_samples(GraphParams params, std::uint64_t count, std::uint64_t seed,
                                    const VerifyOptions& options = {}) {
  params.validate_orientable();
  const StarGraph graph(params);
  const int bound = theorem_bound(params.n, params.k);
  CsrGraph csr;
  if (options.with_bfs) csr = build_oriented(graph, {options.memory_mb, {}});
  auto pairs = sample_pairs(params, count, seed);
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (i == 0 || pairs[i].first != pairs[i - 1].first) group_start.push_back(i);
  group_start.push_back(pairs.size());

  const int workers = resolve_workers(options.workers);
  std::vector<detail::WorkerTally> tallies(static_cast<std::size_t>(workers));
  parallel_for(group_start.size() - 1, workers, [&](std::uint64_t g, int w) {
    auto& tally = tallies[static_cast<std::size_t>(w)];
    const NodeId src = pairs[group_start[g]].first;
    if (options.with_bfs) bfs(csr, static_cast<std::uint32_t>(src.rank), tally.scratch);
    const NodeLabel s = graph.unrank(src);
    for (std::size_t i = group_start[g]; i < group_start[g + 1]; ++i) {
      const auto dst = pairs[i].second.rank;
      detail::check_one(graph, s, dst, options.with_bfs ? tally.scratch.dist[dst] : 0, bound, options, tally);
    }
  });
  return detail::merge(params, bound, tallies, options);
}

/// Bound report with the measured columns filled in by exhaustive search.
inline BoundReport measured_bound_report(GraphParams params, int workers = 0, std::size_t memory_mb = kDefaultMemoryMb) {
  BoundReport r = bound_report(params.n, params.k);
  const CsrGraph g = build_oriented(StarGraph(params), {memory_mb, {}});
  BoundReport::Measured m;
  m.strongly_connected = check_strong_connectivity(g).strongly_connected;
  if (m.strongly_connected) m.bfs_directed_diam = graph_diameter(g, workers).diameter;
  VerifyOptions opts;
  opts.workers = workers;
  opts.memory_mb = memory_mb;
  opts.audit = false;
  opts.with_bfs = false;
  m.max_routed_length = verify_all_pairs(params, opts).max_routed;
  r.measured = m;
  return r;
}

}  // namespace nkstar
