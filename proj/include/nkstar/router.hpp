#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkstar/bounds.hpp"
#include "nkstar/orientation.hpp"
#include "nkstar/permutation.hpp"
#include "nkstar/star_graph.hpp"

namespace nkstar {

/// Value sets describing how the current node c differs from the destination t.
struct MoveContext {
  ValueSet I;    // internal values of t: positions 1..k
  ValueSet IA;   // internal values in t's arm
  ValueSet E;    // external values: t's tail-end
  ValueSet DI;   // internal values sitting in c's tail-end
  ValueSet DE;   // external values in c's head or arm
  ValueSet DEA;  // external values in c's arm
  ValueSet DEL;  // external values in c's left half
  ValueSet DER;  // external values in c's right half
  ValueSet S;    // values already at their destination position (1..k)
  ValueSet SL;   // settled, destined for t's left half
  ValueSet SR;   // settled, destined for t's right half
  ValueSet U;    // internal values at positions 1..k, not at their destination
  ValueSet ULL;  // unsettled, in c's left half, destined for t's left half
  ValueSet URR;  // unsettled, in c's right half, destined for t's right half
  ValueSet ULR;  // unsettled, in c's left half, destined for t's right half
  ValueSet URL;  // unsettled, in c's right half, destined for t's left half
  ValueSet DL;   // ULL | DEL
  ValueSet DR;   // URR | DER
};

inline MoveContext move_context(const NodeLabel& c, const NodeLabel& t) {
  if (c.params() != t.params()) throw std::invalid_argument("move_context: nodes belong to different graphs");
  MoveContext m;
  const int k = c.k();
  m.I = t.internal();
  m.IA = t.arm();
  m.E = t.tail_end();
  const ValueSet c_left = c.left_half(), c_right = c.right_half();
  const ValueSet t_left = t.left_half(), t_right = t.right_half();
  m.DI = m.I & c.tail_end();
  m.DE = m.E & c.internal();
  m.DEA = m.E & c.arm();
  m.DEL = m.E & c_left;
  m.DER = m.E & c_right;
  for (int pos = 1; pos <= k; ++pos) {
    const int v = c(pos);
    if (!m.I.contains(v)) continue;
    if (t(pos) == v)
      m.S.insert(v);
    else
      m.U.insert(v);
  }
  m.SL = m.S & t_left;
  m.SR = m.S & t_right;
  m.ULL = m.U & c_left & t_left;
  m.URR = m.U & c_right & t_right;
  m.ULR = m.U & c_left & t_right;
  m.URL = m.U & c_right & t_left;
  m.DL = m.ULL | m.DEL;
  m.DR = m.URR | m.DER;
  return m;
}

/// Alternating cycles of c relative to t.
inline int chi(const NodeLabel& c, const NodeLabel& t) {
  return alternating_cycle_count(c.extended(), t.extended(), c.k());
}

enum class MoveKind { clique_move, star_settling, star_crossing, seed_clique, seed_star };

constexpr const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::clique_move: return "clique_move";
    case MoveKind::star_settling: return "star_settling";
    case MoveKind::star_crossing: return "star_crossing";
    case MoveKind::seed_clique: return "seed_clique";
    case MoveKind::seed_star: return "seed_star";
  }
  return "?";
}

constexpr bool is_star_move(MoveKind kind) {
  return kind == MoveKind::star_settling || kind == MoveKind::star_crossing;
}

/// One hop chosen by the router: the next node, which subroutine and case picked it,
/// and the position whose value was exchanged with the head (a tail position for clique hops).
struct Move {
  NodeLabel next;
  MoveKind kind = MoveKind::clique_move;
  std::string case_label;
  int position = 0;
};

class RouteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// The sets a star move may draw from, seen from the half of c that the node's sign lets it swap into.
/// Even nodes act on the left half; odd nodes use the mirrored right-half sets.
struct ActiveHalf {
  ValueSet own_settled;     // SL / SR
  ValueSet own_unsettled;   // ULL / URR
  ValueSet other_unsettled; // URR / ULL
  ValueSet crossers;        // ULR / URL: sit in the active half, belong in the other one
  ValueSet displaced;       // DEL / DER
  ValueSet t_active;        // L(t) / R(t)
};

inline ActiveHalf active_half(const MoveContext& m, Parity parity, const NodeLabel& t) {
  if (parity == Parity::even) return {m.SL, m.ULL, m.URR, m.ULR, m.DEL, t.left_half()};
  return {m.SR, m.URR, m.ULL, m.URL, m.DER, t.right_half()};
}

inline Move star_swap(const NodeLabel& c, int value, MoveKind kind, std::string label) {
  const int pos = c.position_of(value);
  return {c.swapped(pos), kind, std::move(label), pos};
}

inline Move clique_hop(const NodeLabel& c, int head, MoveKind kind, std::string label) {
  return {c.with_head(head), kind, std::move(label), c.position_of(head)};
}

/// Among `targets`, the head nearest to c's head in its oriented clique; ties go to the smaller head.
/// Returns the first hop of the lexicographically smallest shortest path towards it.
inline std::optional<int> first_hop_to_nearest(const OrientedClique& q, int from, ValueSet targets,
                                               std::optional<int> avoid = std::nullopt) {
  int best_dist = -1, best_target = 0;
  for (int z : targets.values()) {
    if (!q.contains_head(z) || z == from) continue;
    const auto dist = q.distances_to(z, avoid)[q.index_of(from)];
    if (dist < 0) continue;
    if (avoid && dist != q.distance(from, z)) continue;  // avoiding must not lengthen the path
    if (best_dist < 0 || dist < best_dist) {
      best_dist = dist;
      best_target = z;
    }
  }
  if (best_dist < 0) return std::nullopt;
  return q.shortest_path(from, best_target, avoid)[1];
}

}  // namespace detail

/// Head equals the destination head and external values remain in the arm: leave through the clique.
inline Move seed_clique(const NodeLabel& c, const NodeLabel& t) {
  const MoveContext m = move_context(c, t);
  if (c.head() != t.head() || m.DEA.empty()) throw std::logic_error("seed_clique: precondition violated");
  const OrientedClique q(c);
  const ValueSet reach = q.out_head_set(c.head());
  if (ValueSet direct = m.I & reach; !direct.empty()) return detail::clique_hop(c, direct.min(), MoveKind::seed_clique, "1");
  auto hop = detail::first_hop_to_nearest(q, c.head(), m.DI);
  if (!hop || !m.E.contains(*hop)) throw std::logic_error("seed_clique: no clique path to a displaced internal value");
  return detail::clique_hop(c, *hop, MoveKind::seed_clique, "2");
}

/// Head equals the destination head and the arm holds only internal values: restart with a star swap.
inline Move seed_star(const NodeLabel& c, const NodeLabel& t) {
  const MoveContext m = move_context(c, t);
  if (c.head() != t.head() || !m.DEA.empty() || c == t) throw std::logic_error("seed_star: precondition violated");
  const auto half = detail::active_half(m, c.parity(), t);
  if ((half.own_unsettled | half.other_unsettled).empty()) {
    if (half.crossers.empty()) throw std::logic_error("seed_star: nothing to seed from");
    return detail::star_swap(c, half.crossers.min(), MoveKind::seed_star, "1");
  }
  for (ValueSet candidates : {half.own_unsettled, half.own_settled, half.crossers})
    if (!candidates.empty()) return detail::star_swap(c, candidates.min(), MoveKind::seed_star, "2");
  throw std::logic_error("seed_star: nothing to seed from");
}

/// Head is an external value: move within the fundamental clique towards an internal value.
inline Move clique_move(const NodeLabel& c, const NodeLabel& t) {
  const MoveContext m = move_context(c, t);
  if (!m.E.contains(c.head())) throw std::logic_error("clique_move: head is not external");
  const OrientedClique q(c);
  const ValueSet reach = q.out_head_set(c.head());
  if (ValueSet iax = m.IA & reach; !iax.empty()) return detail::clique_hop(c, iax.min(), MoveKind::clique_move, "1");
  const ValueSet iat = m.IA & c.tail_end();
  if (!iat.empty()) {
    if (auto hop = detail::first_hop_to_nearest(q, c.head(), iat, t.head()))
      return detail::clique_hop(c, *hop, MoveKind::clique_move, "2.1");
    if (auto hop = detail::first_hop_to_nearest(q, c.head(), iat))
      return detail::clique_hop(c, *hop, MoveKind::clique_move, "2.2");
    throw std::logic_error("clique_move: no path to an internal arm value");
  }
  if (!c.tail_end().contains(t.head()))
    throw std::logic_error("clique_move: destination head missing from the tail-end");
  return detail::clique_hop(c, q.shortest_path(c.head(), t.head())[1], MoveKind::clique_move, "3");
}

/// Head is an internal value other than the destination head: swap it into the arm.
inline Move star_move(const NodeLabel& c, const NodeLabel& t) {
  const int head = c.head();
  if (!t.arm().contains(head)) throw std::logic_error("star_move: head is not an internal arm value of t");
  const MoveContext m = move_context(c, t);
  const auto half = detail::active_half(m, c.parity(), t);
  if (half.t_active.contains(head)) {
    const int pos = t.position_of(head);
    return {c.swapped(pos), MoveKind::star_settling, "1", pos};
  }

  const Permutation rel = relative_permutation(c.extended(), t.extended());
  const auto psi = traverse_cycle(rel, head, Direction::backward);
  ValueSet in_psi;
  for (int v : psi) in_psi.insert(v);
  const auto cross = [&](int v, const char* label) { return detail::star_swap(c, v, MoveKind::star_crossing, label); };

  const ValueSet displaced = half.displaced | half.own_unsettled;
  if (ValueSet off = displaced - in_psi; !off.empty()) return cross(off.min(), "2.1");
  if (!displaced.empty())
    for (int v : psi)
      if (displaced.contains(v)) return cross(v, "2.2");
  if (!half.own_settled.empty()) return cross(half.own_settled.min(), "2.3");

  const ValueSet crossers_off = half.crossers - in_psi;
  if (!crossers_off.empty()) {
    const CycleDecomposition cycles = cycle_decompose(rel);
    for (int v : crossers_off.values()) {
      const auto& cyc = cycles.cycle_of(v);
      // An alternating cycle alternates between the two crosser sets; since c is fixed, one cycle is alternating
      // iff every member is a crosser of either half and consecutive members sit in different halves.
      bool alternating = cyc.size() >= 2;
      for (std::size_t i = 0; i < cyc.size() && alternating; ++i) {
        const int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
        alternating = (m.ULR.contains(a) && m.URL.contains(b)) || (m.URL.contains(a) && m.ULR.contains(b));
      }
      if (alternating) return cross(v, "2.4");
    }
    return cross(crossers_off.min(), "2.5");
  }
  if (!half.crossers.empty()) return cross(half.crossers.min(), "2.6");
  // Only the destination head is left in the active half (possible when that half has one position).
  const ValueSet active_positions_values = c.parity() == Parity::even ? c.left_half() : c.right_half();
  if (active_positions_values.contains(t.head())) return cross(t.head(), "2.7");
  throw std::logic_error("star_move: no eligible value in the active half");
}

/// Next hop from c towards t. Depends on (c, t) only.
inline Move route_step(const NodeLabel& c, const NodeLabel& t) {
  if (c.params() != t.params()) throw std::invalid_argument("route_step: nodes belong to different graphs");
  if (c == t) throw std::invalid_argument("route_step: already at the destination");
  if (c.head() == t.head()) {
    if (!(t.tail_end() & c.arm()).empty()) return seed_clique(c, t);
    return seed_star(c, t);
  }
  if (t.tail_end().contains(c.head())) return clique_move(c, t);
  return star_move(c, t);
}

enum class Phase { transient, symmetric_crossing, asymmetric_crossing, settling };

constexpr const char* to_string(Phase p) {
  switch (p) {
    case Phase::transient: return "transient";
    case Phase::symmetric_crossing: return "symmetric_crossing";
    case Phase::asymmetric_crossing: return "asymmetric_crossing";
    case Phase::settling: return "settling";
  }
  return "?";
}

struct RouteStep {
  NodeLabel node;  // b(m), the node reached by this move
  MoveKind kind;
  std::string case_label;
  int position;
  int head;
};

struct RouteTrace {
  GraphParams params;
  NodeLabel source;
  NodeLabel target;
  std::vector<RouteStep> steps;

  int alpha = 0;   // clique moves
  int beta = 0;    // star moves
  int gamma1 = 0;  // seeding clique moves
  int gamma2 = 0;  // seeding star moves
  int m1 = 0, m2 = 0, m3 = 0, m_zd = 0;

  /// Per node b(0..m_L): alternating-cycle count and the sizes of DL, DR and DI.
  std::vector<int> chi;
  std::vector<int> dl_size;
  std::vector<int> dr_size;
  std::vector<int> di_size;

  int length() const { return static_cast<int>(steps.size()); }

  const NodeLabel& node(int m) const { return m == 0 ? source : steps[static_cast<std::size_t>(m - 1)].node; }
};

/// Counters, phase boundaries and per-node statistics derived from the node sequence.
inline void annotate(RouteTrace& trace) {
  trace.alpha = trace.beta = trace.gamma1 = trace.gamma2 = 0;
  for (const auto& s : trace.steps) {
    switch (s.kind) {
      case MoveKind::clique_move: ++trace.alpha; break;
      case MoveKind::star_settling:
      case MoveKind::star_crossing: ++trace.beta; break;
      case MoveKind::seed_clique: ++trace.gamma1; break;
      case MoveKind::seed_star: ++trace.gamma2; break;
    }
  }
  const int last = trace.length();
  trace.chi.clear();
  trace.dl_size.clear();
  trace.dr_size.clear();
  trace.di_size.clear();
  for (int m = 0; m <= last; ++m) {
    const NodeLabel& b = trace.node(m);
    const MoveContext ctx = move_context(b, trace.target);
    trace.chi.push_back(chi(b, trace.target));
    trace.dl_size.push_back(ctx.DL.size());
    trace.dr_size.push_back(ctx.DR.size());
    trace.di_size.push_back(ctx.DI.size());
  }
  auto total = [&](int m) { return trace.dl_size[m] + trace.dr_size[m]; };
  auto one_empty = [&](int m) { return trace.dl_size[m] == 0 || trace.dr_size[m] == 0; };

  int first_one_empty = 0;
  while (!one_empty(first_one_empty)) ++first_one_empty;
  int m1 = 0;
  while (m1 < last && total(m1 + 1) == total(0)) ++m1;
  // The transient phase needs both DL and DR non-empty, so it cannot outlast the first node where one is empty.
  trace.m1 = std::min(m1, first_one_empty);
  trace.m2 = trace.m1;
  while (!one_empty(trace.m2)) ++trace.m2;
  trace.m3 = trace.m2;
  while (total(trace.m3) != 0) ++trace.m3;
  trace.m_zd = 0;
  while (trace.di_size[trace.m_zd] != 0) ++trace.m_zd;
}

/// Route a packet from s to t, one memoryless hop at a time. Throws RouteError past `max_moves` hops.
inline RouteTrace route(const NodeLabel& s, const NodeLabel& t, int max_moves) {
  if (s.params() != t.params()) throw std::invalid_argument("route: nodes belong to different graphs");
  s.params().validate_orientable();
  RouteTrace trace;
  trace.params = s.params();
  trace.source = s;
  trace.target = t;
  NodeLabel c = s;
  while (!(c == t)) {
    if (trace.length() >= max_moves)
      throw RouteError("route " + s.to_string() + " -> " + t.to_string() + " exceeded " + std::to_string(max_moves) +
                       " moves");
    Move mv = route_step(c, t);
    c = mv.next;
    trace.steps.push_back({c, mv.kind, std::move(mv.case_label), mv.position, c.head()});
  }
  annotate(trace);
  return trace;
}

/// Route with the move budget set to the oriented-diameter bound.
inline RouteTrace route(const NodeLabel& s, const NodeLabel& t) { return route(s, t, theorem_bound(s.n(), s.k())); }

inline Phase phase_of(int m, const RouteTrace& trace) {
  if (m < 0 || m > trace.length()) throw std::out_of_range("move index outside the trace");
  if (m <= trace.m1) return Phase::transient;
  if (m <= trace.m2) return Phase::symmetric_crossing;
  if (m <= trace.m3) return Phase::asymmetric_crossing;
  return Phase::settling;
}

}  // namespace nkstar
