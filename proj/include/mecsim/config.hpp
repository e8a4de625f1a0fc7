#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace mecsim {

enum class Policy { Threshold, Daee, Tiered, AlwaysLocal, AlwaysOffload };

const char* to_string(Policy p);
Policy policy_from_string(const std::string& s);  // throws ConfigError

struct TaskTemplate {
  double mem_mb_min = 100.0;
  double mem_mb_max = 600.0;
  double workload_min = 1.0;
  double workload_max = 8.0;
  std::int64_t size_bits_min = 100'000;
  std::int64_t size_bits_max = 500'000;
  int deadline_slots_min = 2;
  int deadline_slots_max = 12;
  double urgent_prob = 0.3;

  bool operator==(const TaskTemplate&) const = default;
};

struct ChannelParams {
  double bandwidth_hz = 1e6;     // B
  double noise_w_per_hz = 1e-15; // N0
  double ref_gain = 1e-5;        // g0; 0 permitted to model a dead channel
  double ref_dist_m = 1.0;       // d0
  double pathloss_exp = 3.0;     // alpha

  bool operator==(const ChannelParams&) const = default;
};

struct DaeeParams {
  double v_weight = 1e9;          // energy penalty weight V
  std::int64_t eps_bits = 50'000; // virtual-queue drift per lingering slot

  bool operator==(const DaeeParams&) const = default;
};

struct MobilityConfig {
  double device_velocity_mps = 2.0;
  double server_velocity_mps = 1.0;
  double turn_prob = 0.2;
  bool server_mobile = true;

  bool operator==(const MobilityConfig&) const = default;
};

struct DeviceParams {
  double mem_avail_mb = 750.0;
  double exec_budget = 4.0;      // workload units per slot
  double cpu_hz = 1e9;
  double energy_coeff = 1e-27;   // kappa
  double tx_power_w = 0.5;
  double cycles_per_bit = 1000.0;

  bool operator==(const DeviceParams&) const = default;
};

struct EdgeParams {
  double mem_avail_mb = 4000.0;
  double exec_budget = 32.0;
  std::int64_t capacity_bits_per_slot = 5'000'000;
  double load_threshold = 0.8;
  int cloud_extra_latency_slots = 3;
  double workload_per_slot = 16.0;        // edge tier service rate
  double cloud_workload_per_slot = 32.0;  // cloud tier service rate

  bool operator==(const EdgeParams&) const = default;
};

struct OrchestratorParams {
  double energy_cap_j = 0.4;  // max local energy a device accepts per task

  bool operator==(const OrchestratorParams&) const = default;
};

struct HflConfig {
  double eta = 0.1;
  int local_steps = 1;
  int n_clusters = 2;
  int clients_per_cluster = 3;
  int dim = 4;
  std::int64_t data_count_min = 1;
  std::int64_t data_count_max = 20;
  std::int64_t vote_count_b = 3;  // data count for the always-version-3 voter

  bool operator==(const HflConfig&) const = default;
};

struct SimConfig {
  int schema = 1;
  int n_devices = 5;
  int n_slots = 5;
  double slot_seconds = 1.0;
  std::uint64_t seed = 1;
  double arena_w = 100.0;
  double arena_h = 100.0;
  double arrival_prob = 0.3;
  Policy policy = Policy::Daee;
  bool drop_at_deadline = false;
  TaskTemplate task;
  ChannelParams channel;
  DaeeParams daee;
  MobilityConfig mobility;
  DeviceParams device;
  EdgeParams edge;
  OrchestratorParams orchestrator;
  HflConfig hfl;

  bool operator==(const SimConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { MissingField, OutOfRange, InconsistentBounds, UnknownKey, BadValue };

  ConfigError(Kind kind, std::string field, const std::string& message)
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  Kind kind() const { return kind_; }
  const std::string& field() const { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

// Validates a parsed JSON document against the schema: defaults applied,
// unknown keys rejected, every numeric field range- and finiteness-checked.
SimConfig validate_config(const nlohmann::json& raw);

SimConfig load_config_file(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const SimConfig& cfg);

}  // namespace mecsim
