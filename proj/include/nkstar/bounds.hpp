#pragma once

#include <ostream>
#include <optional>
#include <vector>

#include "nkstar/star_graph.hpp"

namespace nkstar {

/// Regime-dependent reduction term of the oriented-diameter bound.
inline int theorem_delta(int n, int k) {
  if (2 * k > n) return 2 * k - n;
  if (3 * k > n) return 0;
  return (n - 3 * k) / 2;
}

/// Upper bound on the diameter of the oriented S(n,k) for k >= 3 and n - k >= 2.
inline int theorem_bound(int n, int k) {
  GraphParams{n, k}.validate_orientable();
  return (n + k) / 2 + 2 * k + 6 - theorem_delta(n, k);
}

/// Worst case of theorem_bound over its regime, written in k alone.
inline int theorem_bound_k_form(int n, int k) { return n < 2 * k ? (7 * k) / 2 + 6 : 4 * k + 6; }

struct PriorBounds {
  int cheng_lipman = 0;
  int cheng_kruk = 0;
};

/// Earlier bounds for the same graphs. The Cheng-Kruk column follows the comparison table's reading
/// (odd n-k: 6(k-3)+13, even n-k: 7(k-3)+18).
inline PriorBounds prior_bounds(int n, int k) {
  GraphParams{n, k}.validate();
  PriorBounds b;
  b.cheng_lipman = k <= n / 2 ? 10 * k - 5 : 5 * k + 5 * ((n - 1) / 2);
  b.cheng_kruk = (n - k) % 2 == 1 ? 6 * (k - 3) + 13 : 7 * (k - 3) + 18;
  return b;
}

struct BoundReport {
  int n = 0;
  int k = 0;
  int undirected_diam = 0;
  int delta = 0;
  int thm_bound = 0;
  int k_form = 0;
  int cheng_lipman = 0;
  int cheng_kruk = 0;

  struct Measured {
    int bfs_directed_diam = 0;
    int max_routed_length = 0;
    bool strongly_connected = false;
  };
  std::optional<Measured> measured;
};

inline BoundReport bound_report(int n, int k) {
  BoundReport r;
  r.n = n;
  r.k = k;
  r.undirected_diam = undirected_diameter_formula({n, k});
  r.delta = theorem_delta(n, k);
  r.thm_bound = theorem_bound(n, k);
  r.k_form = theorem_bound_k_form(n, k);
  const auto prior = prior_bounds(n, k);
  r.cheng_lipman = prior.cheng_lipman;
  r.cheng_kruk = prior.cheng_kruk;
  return r;
}

/// One row per (n,k) with k >= 3, n - k >= 2 and n <= n_max, ordered by n then k.
inline std::vector<BoundReport> bounds_table(int n_max) {
  std::vector<BoundReport> rows;
  for (int n = 5; n <= n_max; ++n)
    for (int k = 3; k <= n - 2; ++k) rows.push_back(bound_report(n, k));
  return rows;
}

inline void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& rows) {
  os << "n,k,undirected_diam,delta,thm_bound,cheng_lipman,cheng_kruk\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.k << ',' << r.undirected_diam << ',' << r.delta << ',' << r.thm_bound << ','
       << r.cheng_lipman << ',' << r.cheng_kruk << '\n';
}

}  // namespace nkstar
