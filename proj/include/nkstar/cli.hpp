#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nkstar/bounds.hpp"
#include "nkstar/oracle.hpp"
#include "nkstar/orientation.hpp"
#include "nkstar/router.hpp"
#include "nkstar/star_graph.hpp"
#include "nkstar/trace_json.hpp"

namespace nkstar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerificationFailed = 2;

struct CliConfig {
  int n = 0;
  int k = 0;
  std::string command;
  std::string src;
  std::string dst;
  bool all_pairs = false;
  std::uint64_t sample_count = 0;
  std::uint64_t rng_seed = 0;
  std::string out_path;
  std::string trace_path;
  std::optional<int> max_moves;
  std::size_t memory_mb = kDefaultMemoryMb;
  int workers = 0;
  bool directed = false;
  bool audit = false;
  int n_max = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Writes to --out when given, otherwise to the command's standard output.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err), start_(std::chrono::steady_clock::now()) {}
  void operator()(const std::string& msg) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    err_ << "[nkstar " << std::fixed << std::setprecision(2) << s << "s] " << msg << '\n';
    err_.unsetf(std::ios::floatfield);
  }

 private:
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
};

inline GraphParams params_for(const CliConfig& cfg, bool orientable) {
  GraphParams p{cfg.n, cfg.k};
  try {
    p.validate_labels();
    if (orientable) p.validate_orientable();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

inline NodeLabel label_for(const std::string& text, GraphParams p, const char* what) {
  try {
    return NodeLabel::parse(text, p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid ") + what + " label: " + e.what());
  }
}

inline int cmd_build(const CliConfig& cfg, std::ostream& out, Log& log) {
  const GraphParams p = params_for(cfg, false);
  Sink sink(cfg.out_path, out);
  write_edge_list(sink.get(), StarGraph(p));
  log("wrote edge list of S(" + std::to_string(p.n) + "," + std::to_string(p.k) + "), " +
      std::to_string(p.node_count()) + " nodes");
  return kExitOk;
}

inline int cmd_orient(const CliConfig& cfg, std::ostream& out, Log& log) {
  const GraphParams p = params_for(cfg, true);
  Sink sink(cfg.out_path, out);
  write_arc_list(sink.get(), StarGraph(p));
  log("wrote arc list of the oriented S(" + std::to_string(p.n) + "," + std::to_string(p.k) + ")");
  return kExitOk;
}

inline int cmd_route(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const GraphParams p = params_for(cfg, true);
  const NodeLabel s = label_for(cfg.src, p, "source");
  const NodeLabel t = label_for(cfg.dst, p, "destination");
  const int bound = theorem_bound(p.n, p.k);
  RouteTrace trace;
  try {
    trace = route(s, t, cfg.max_moves.value_or(bound));
  } catch (const RouteError& e) {
    err << "route failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  out << "path " << s << " -> " << t << " length " << trace.length() << " bound " << bound << '\n';
  out << "0 " << s << '\n';
  for (int m = 1; m <= trace.length(); ++m) {
    const auto& step = trace.steps[static_cast<std::size_t>(m - 1)];
    out << m << ' ' << step.node << ' ' << to_string(step.kind) << ' ' << step.case_label << ' ' << step.position << '\n';
  }
  if (!cfg.trace_path.empty()) {
    Sink sink(cfg.trace_path, out);
    sink.get() << trace_to_json(trace).dump(2) << '\n';
  }
  return trace.length() <= bound ? kExitOk : kExitVerificationFailed;
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err, Log& log) {
  const GraphParams p = params_for(cfg, true);
  if (cfg.all_pairs == (cfg.sample_count > 0)) throw UsageError("verify needs exactly one of --all-pairs or --samples");
  VerifyOptions opts;
  opts.workers = cfg.workers;
  opts.memory_mb = cfg.memory_mb;
  opts.audit = cfg.audit;
  VerifySummary summary;
  if (cfg.all_pairs) {
    log("routing all " + std::to_string(p.node_count() * p.node_count()) + " ordered pairs");
    summary = verify_all_pairs(p, opts);
  } else {
    log("routing " + std::to_string(cfg.sample_count) + " pairs drawn with seed " + std::to_string(cfg.rng_seed));
    summary = verify_samples(p, cfg.sample_count, cfg.rng_seed, opts);
  }
  Sink sink(cfg.out_path, out);
  write_verify_csv(sink.get(), {summary});
  for (const auto& f : summary.failures) err << "FAIL " << f << '\n';
  if (summary.failure_count > summary.failures.size())
    err << "... " << summary.failure_count - summary.failures.size() << " more failures\n";
  log(summary.ok ? "verification passed" : "verification failed");
  return summary.ok ? kExitOk : kExitVerificationFailed;
}

inline int cmd_diameter(const CliConfig& cfg, std::ostream& out, Log& log) {
  const GraphParams p = params_for(cfg, cfg.directed);
  const StarGraph graph(p);
  const int formula = undirected_diameter_formula(p);
  bool ok = true;
  if (cfg.directed) {
    const CsrGraph g = build_oriented(graph, {cfg.memory_mb, {}});
    const auto conn = check_strong_connectivity(g);
    const int bound = theorem_bound(p.n, p.k);
    if (!conn.strongly_connected) {
      out << "n=" << p.n << " k=" << p.k << " strongly_connected=false witness=" << graph.unrank(conn.witness->first)
          << ',' << graph.unrank(conn.witness->second) << '\n';
      return kExitVerificationFailed;
    }
    const auto d = graph_diameter(g, cfg.workers);
    ok = d.diameter <= bound && d.diameter >= formula;
    out << "n=" << p.n << " k=" << p.k << " directed_diameter=" << d.diameter << " from=" << graph.unrank(d.from)
        << " to=" << graph.unrank(d.to) << " undirected_formula=" << formula << " bound=" << bound << '\n';
  } else {
    const auto d = graph_diameter(build_undirected(graph, cfg.memory_mb), cfg.workers);
    ok = d.finite && d.diameter == formula;
    out << "n=" << p.n << " k=" << p.k << " undirected_diameter=" << d.diameter << " from=" << graph.unrank(d.from)
        << " to=" << graph.unrank(d.to) << " formula=" << formula << '\n';
  }
  log(ok ? "diameter checks passed" : "diameter checks failed");
  return ok ? kExitOk : kExitVerificationFailed;
}

inline int cmd_bounds(const CliConfig& cfg, std::ostream& out, Log& log) {
  if (cfg.n_max < 5) throw UsageError("--n-max must be at least 5");
  const auto rows = bounds_table(cfg.n_max);
  Sink sink(cfg.out_path, out);
  write_bounds_csv(sink.get(), rows);
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.thm_bound < r.cheng_lipman && r.thm_bound <= r.k_form;
  log("wrote " + std::to_string(rows.size()) + " rows");
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Oriented (n,k)-star graphs: construction, routing and verification", "nkstar"};
  app.require_subcommand(1);

  auto add_nk = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "number of symbols")->required();
    sub->add_option("--k", cfg.k, "label length")->required();
  };
  auto add_parallel = [&](CLI::App* sub) {
    sub->add_option("--workers", cfg.workers, "worker threads (0 = hardware concurrency)");
    sub->add_option("--memory-mb", cfg.memory_mb, "memory budget for materialized graphs");
  };

  auto* build = app.add_subcommand("build", "export the undirected edge list");
  add_nk(build);
  build->add_option("--out", cfg.out_path, "output file");

  auto* orient = app.add_subcommand("orient", "export the oriented arc list");
  add_nk(orient);
  orient->add_option("--out", cfg.out_path, "output file");

  auto* route_cmd = app.add_subcommand("route", "route one packet and print its path");
  add_nk(route_cmd);
  route_cmd->add_option("--src", cfg.src, "source label, e.g. 7-2-3-4-5")->required();
  route_cmd->add_option("--dst", cfg.dst, "destination label")->required();
  route_cmd->add_option("--trace", cfg.trace_path, "write the trace as JSON");
  route_cmd->add_option("--max-moves", cfg.max_moves, "move budget (default: the diameter bound)");

  auto* verify = app.add_subcommand("verify", "route many pairs and check them against BFS and the bound");
  add_nk(verify);
  auto* all = verify->add_flag("--all-pairs", cfg.all_pairs, "every ordered pair");
  auto* samples = verify->add_option("--samples", cfg.sample_count, "number of random pairs");
  verify->add_option("--seed", cfg.rng_seed, "seed for --samples")->needs(samples);
  all->excludes(samples);
  verify->add_flag("--audit", cfg.audit, "also audit every trace against the counting inequalities");
  verify->add_option("--out", cfg.out_path, "CSV output file");
  add_parallel(verify);

  auto* diameter = app.add_subcommand("diameter", "exact diameter by BFS from every node");
  add_nk(diameter);
  diameter->add_flag("--directed", cfg.directed, "use the orientation");
  add_parallel(diameter);

  auto* bounds = app.add_subcommand("bounds", "bound comparison table");
  bounds->add_option("--n-max", cfg.n_max, "largest n")->required();
  bounds->add_option("--out", cfg.out_path, "CSV output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  detail::Log log(err);
  try {
    if (build->parsed()) return detail::cmd_build(cfg, out, log);
    if (orient->parsed()) return detail::cmd_orient(cfg, out, log);
    if (route_cmd->parsed()) return detail::cmd_route(cfg, out, err);
    if (verify->parsed()) return detail::cmd_verify(cfg, out, err, log);
    if (diameter->parsed()) return detail::cmd_diameter(cfg, out, log);
    if (bounds->parsed()) return detail::cmd_bounds(cfg, out, log);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InstanceTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace nkstar::cli
