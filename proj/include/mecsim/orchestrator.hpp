#pragma once

#include "mecsim/config.hpp"
#include "mecsim/types.hpp"

namespace mecsim::orchestrator {

// Three-tier placement: devices keep what they can run cheaply and on time,
// the edge executes urgent work unconditionally, and overload pushes
// non-urgent work to the cloud.

enum class Tier { Device, Edge, Cloud };

struct Placement {
  Tier tier = Tier::Device;
  int admitted_slot = 0;
  int completion_slot = 0;
};

enum class IotDecision { ExecuteLocal, SendToEdge };
enum class EdgeDecision { ExecuteAtEdge, ForwardToCloud };

// The three signals a device weighs before keeping a task.
struct IotScore {
  bool mem_ok = false;
  Urgency urgency = Urgency::Normal;
  bool energy_ok = false;
};

struct TierRates {
  double device = 0.0;  // workload units per slot per tier
  double edge = 0.0;
  double cloud = 0.0;
};

// kappa * f^2 * cycles_per_bit * size_bits
double estimate_local_energy_j(const Task& task, const DeviceState& dev,
                               const SimConfig& cfg);

// Slots until a task accepted now would finish locally: time to drain the
// bits already queued ahead of it plus ceil(workload / exec_budget).
int local_completion_slots(const Task& task, const DeviceState& dev,
                           const SimConfig& cfg);

IotScore score_iot(const Task& task, const DeviceState& dev, const SimConfig& cfg);

// ExecuteLocal iff the feasibility rule passes on the device AND the local
// energy estimate fits the per-task cap AND (the task is not urgent OR local
// completion meets its deadline).
IotDecision iot_decide(const Task& task, const DeviceState& dev, const SimConfig& cfg);

// Urgent tasks always run at the edge. Normal tasks run there only while
// load / capacity is strictly below the configured threshold.
EdgeDecision edge_decide(const Task& task, const ServerState& srv);

// completion = admitted + ceil(workload / tier rate) + tx_slots
//              (+ cloud extra latency for cloud placements)
int complete(const Placement& placement, const Task& task, const TierRates& rates,
             int tx_slots, int cloud_extra_latency_slots);

// Fluid edge-load model: each slot the edge retires up to one slot's worth
// of capacity from its admitted backlog.
void decay_edge_load(ServerState& srv);

}  // namespace mecsim::orchestrator
