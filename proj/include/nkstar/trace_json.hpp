#pragma once

#include <json.hpp>

#include "nkstar/router.hpp"

namespace nkstar {

inline nlohmann::ordered_json trace_to_json(const RouteTrace& trace) {
  nlohmann::ordered_json j;
  j["n"] = trace.params.n;
  j["k"] = trace.params.k;
  j["source"] = trace.source.to_string();
  j["target"] = trace.target.to_string();
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json step;
    step["node"] = s.node.to_string();
    step["move"] = to_string(s.kind);
    step["case"] = s.case_label;
    step["i"] = s.position;
    step["head"] = s.head;
    j["steps"].push_back(std::move(step));
  }
  auto& stats = j["stats"];
  stats["alpha"] = trace.alpha;
  stats["beta"] = trace.beta;
  stats["gamma1"] = trace.gamma1;
  stats["gamma2"] = trace.gamma2;
  stats["m1"] = trace.m1;
  stats["m2"] = trace.m2;
  stats["m3"] = trace.m3;
  stats["m_zd"] = trace.m_zd;
  stats["m_L"] = trace.length();
  stats["chi"] = trace.chi;
  return j;
}

}  // namespace nkstar
