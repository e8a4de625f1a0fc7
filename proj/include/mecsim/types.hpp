#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mecsim {

enum class Urgency { Normal, Urgent };

// One unit of offloadable work.
struct Task {
  int id = 0;
  double mem_mb = 0.0;          // memory footprint
  double workload = 0.0;        // execution-budget units
  Urgency urgency = Urgency::Normal;
  int deadline_slots = 1;       // relative to arrival_slot
  std::int64_t size_bits = 0;   // payload to transmit when offloaded
  int arrival_slot = 0;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct DeviceState {
  int id = 0;
  Position pos;
  double heading_rad = 0.0;
  double mem_avail_mb = 0.0;
  double exec_budget = 0.0;     // workload units it can retire per slot
  double cpu_hz = 0.0;
  double energy_coeff = 0.0;    // J / (cycle * Hz^2)
  double tx_power_w = 0.0;
  std::int64_t q_bits = 0;      // actual backlog
  std::int64_t h_bits = 0;      // virtual (deadline) backlog
  double velocity_mps = 0.0;
};

struct ServerState {
  Position pos;
  double heading_rad = 0.0;
  double velocity_mps = 0.0;
  double mem_avail_mb = 0.0;    // admission-check fields, same shape as a device's
  double exec_budget = 0.0;
  std::int64_t edge_capacity_bits_per_slot = 0;
  std::int64_t edge_load_bits = 0;
  double load_threshold = 0.8;  // fraction of capacity above which normal tasks go to cloud
  int cloud_extra_latency_slots = 0;
};

// The feasibility rule sees only these two fields of whatever executes a task.
struct Executor {
  double mem_avail_mb = 0.0;
  double exec_budget = 0.0;
};

inline Executor as_executor(const DeviceState& d) {
  return {d.mem_avail_mb, d.exec_budget};
}
inline Executor as_executor(const ServerState& s) {
  return {s.mem_avail_mb, s.exec_budget};
}

enum class SlotAction { Local, Offload, Edge, Cloud };

const char* to_string(SlotAction a);
const char* to_string(Urgency u);

// One trace row: state of one device at the end of one slot.
struct SlotRecord {
  int slot = 0;
  int device = 0;
  double distance_m = 0.0;
  std::int64_t q_bits = 0;
  std::int64_t h_bits = 0;
  SlotAction action = SlotAction::Local;
  double energy_j = 0.0;
  int deadline_missed = 0;  // misses charged to this device in this slot
};

using Trace = std::vector<SlotRecord>;

struct DeviceQueueStats {
  int device = 0;
  double mean_q_bits = 0.0;
  std::int64_t max_q_bits = 0;
};

struct RunSummary {
  int n_devices = 0;
  int n_slots = 0;
  std::string policy;
  std::vector<DeviceQueueStats> per_device;
  double total_energy_j = 0.0;
  int tasks_arrived = 0;
  int deadline_misses = 0;
  double deadline_miss_rate = 0.0;  // misses / tasks_arrived, 0 for empty runs
  // Fraction of (slot, device) records carrying each action; they sum to 1
  // for non-empty runs.
  double tier_fraction_local = 0.0;
  double tier_fraction_offload = 0.0;
  double tier_fraction_edge = 0.0;
  double tier_fraction_cloud = 0.0;
  double final_lyapunov = 0.0;
  // Exact bit accounting (arrived == served + dropped + final backlog).
  std::int64_t total_arrived_bits = 0;
  std::int64_t total_served_bits = 0;
  std::int64_t total_dropped_bits = 0;
  std::int64_t final_backlog_bits = 0;
};

}  // namespace mecsim
