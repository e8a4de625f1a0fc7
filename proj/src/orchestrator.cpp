#include "mecsim/orchestrator.hpp"

#include <cmath>
#include <limits>

#include "mecsim/daee.hpp"
#include "mecsim/threshold.hpp"

namespace mecsim::orchestrator {
namespace {

int ceil_div_slots(double workload, double rate_per_slot) {
  if (workload <= 0.0) return 0;
  return static_cast<int>(std::ceil(workload / rate_per_slot));
}

}  // namespace

double estimate_local_energy_j(const Task& task, const DeviceState& dev,
                               const SimConfig& cfg) {
  const double cycles = cfg.device.cycles_per_bit * static_cast<double>(task.size_bits);
  return dev.energy_coeff * dev.cpu_hz * dev.cpu_hz * cycles;
}

int local_completion_slots(const Task& task, const DeviceState& dev,
                           const SimConfig& cfg) {
  int backlog_slots = 0;
  if (dev.q_bits > 0) {
    const std::int64_t rate = daee::local_bits_per_slot(cfg);
    if (rate <= 0) {
      return std::numeric_limits<int>::max() / 2;  // queue can never drain
    }
    backlog_slots = static_cast<int>((dev.q_bits + rate - 1) / rate);
  }
  return backlog_slots + ceil_div_slots(task.workload, dev.exec_budget);
}

IotScore score_iot(const Task& task, const DeviceState& dev, const SimConfig& cfg) {
  IotScore score;
  score.mem_ok = threshold::decide(task, as_executor(dev)).feasible;
  score.urgency = task.urgency;
  score.energy_ok = estimate_local_energy_j(task, dev, cfg) <= cfg.orchestrator.energy_cap_j;
  return score;
}

IotDecision iot_decide(const Task& task, const DeviceState& dev, const SimConfig& cfg) {
  const IotScore score = score_iot(task, dev, cfg);
  if (!score.mem_ok || !score.energy_ok) {
    return IotDecision::SendToEdge;
  }
  if (task.urgency == Urgency::Urgent &&
      local_completion_slots(task, dev, cfg) > task.deadline_slots) {
    return IotDecision::SendToEdge;
  }
  return IotDecision::ExecuteLocal;
}

EdgeDecision edge_decide(const Task& task, const ServerState& srv) {
  if (task.urgency == Urgency::Urgent) {
    return EdgeDecision::ExecuteAtEdge;
  }
  const double load_fraction = static_cast<double>(srv.edge_load_bits) /
                               static_cast<double>(srv.edge_capacity_bits_per_slot);
  return load_fraction < srv.load_threshold ? EdgeDecision::ExecuteAtEdge
                                            : EdgeDecision::ForwardToCloud;
}

int complete(const Placement& placement, const Task& task, const TierRates& rates,
             int tx_slots, int cloud_extra_latency_slots) {
  double rate = rates.device;
  if (placement.tier == Tier::Edge) rate = rates.edge;
  if (placement.tier == Tier::Cloud) rate = rates.cloud;
  int completion = placement.admitted_slot + ceil_div_slots(task.workload, rate) + tx_slots;
  if (placement.tier == Tier::Cloud) {
    completion += cloud_extra_latency_slots;
  }
  return completion;
}

void decay_edge_load(ServerState& srv) {
  srv.edge_load_bits =
      std::max<std::int64_t>(srv.edge_load_bits - srv.edge_capacity_bits_per_slot, 0);
}

}  // namespace mecsim::orchestrator
