#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mecsim/config.hpp"
#include "mecsim/types.hpp"

namespace mecsim::engine {

struct RunResult {
  Trace trace;
  RunSummary summary;
};

// Deterministic slot loop. Per slot, in fixed order: advance positions,
// compute distances, draw arrivals, apply the configured policy, serve and
// update queues, append one record per device. Equal (config, seed) pairs
// produce identical traces.
RunResult run(const SimConfig& cfg);

// Re-runs the same config (same seed, hence identical mobility and arrival
// sample paths) once per policy, so summary differences are attributable to
// the policy alone.
std::vector<std::pair<Policy, RunSummary>> compare_policies(
    const SimConfig& cfg, std::span<const Policy> policies);

}  // namespace mecsim::engine
