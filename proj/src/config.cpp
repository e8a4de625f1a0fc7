#include "mecsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace mecsim {
namespace {

using nlohmann::json;

[[noreturn]] void fail(ConfigError::Kind kind, const std::string& field,
                       const std::string& what) {
  throw ConfigError(kind, field, "config: " + what);
}

void check_known_keys(const json& obj, const std::string& path,
                      std::initializer_list<std::string_view> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
      fail(ConfigError::Kind::UnknownKey, path + it.key(),
           "unknown key '" + path + it.key() + "'");
    }
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_double(const json& obj, const std::string& path, const char* key,
                  double def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_number()) {
    fail(ConfigError::Kind::BadValue, path + key, "'" + path + key + "' must be a number");
  }
  const double x = v->get<double>();
  if (!std::isfinite(x)) {
    fail(ConfigError::Kind::OutOfRange, path + key, "'" + path + key + "' must be finite");
  }
  return x;
}

std::int64_t get_int64(const json& obj, const std::string& path, const char* key,
                       std::int64_t def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_number_integer()) {
    fail(ConfigError::Kind::BadValue, path + key,
         "'" + path + key + "' must be an integer");
  }
  return v->get<std::int64_t>();
}

int get_int(const json& obj, const std::string& path, const char* key, int def) {
  return static_cast<int>(get_int64(obj, path, key, def));
}

std::uint64_t get_uint64(const json& obj, const std::string& path, const char* key,
                         std::uint64_t def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_number_integer() || (v->is_number_integer() && !v->is_number_unsigned() &&
                                  v->get<std::int64_t>() < 0)) {
    fail(ConfigError::Kind::OutOfRange, path + key,
         "'" + path + key + "' must be a non-negative integer");
  }
  return v->get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool def) {
  const json* v = find(obj, key);
  if (!v) return def;
  if (!v->is_boolean()) {
    fail(ConfigError::Kind::BadValue, path + key, "'" + path + key + "' must be a boolean");
  }
  return v->get<bool>();
}

void require_min(double value, double min, const char* field) {
  if (!(value >= min)) {
    std::ostringstream os;
    os << "'" << field << "' out of range: " << value << " (must be >= " << min << ")";
    fail(ConfigError::Kind::OutOfRange, field, os.str());
  }
}

void require_positive(double value, const char* field) {
  if (!(value > 0.0)) {
    std::ostringstream os;
    os << "'" << field << "' out of range: " << value << " (must be > 0)";
    fail(ConfigError::Kind::OutOfRange, field, os.str());
  }
}

void require_prob(double value, const char* field) {
  if (!(value >= 0.0 && value <= 1.0)) {
    std::ostringstream os;
    os << "'" << field << "' out of range: " << value << " (must be in [0, 1])";
    fail(ConfigError::Kind::OutOfRange, field, os.str());
  }
}

void require_ordered(double lo, double hi, const char* field) {
  if (!(lo <= hi)) {
    std::ostringstream os;
    os << "'" << field << "' inconsistent bounds: min " << lo << " > max " << hi;
    fail(ConfigError::Kind::InconsistentBounds, field, os.str());
  }
}

TaskTemplate parse_task(const json& obj) {
  check_known_keys(obj, "task.",
                   {"mem_mb_min", "mem_mb_max", "workload_min", "workload_max",
                    "size_bits_min", "size_bits_max", "deadline_slots_min",
                    "deadline_slots_max", "urgent_prob"});
  TaskTemplate t;
  t.mem_mb_min = get_double(obj, "task.", "mem_mb_min", t.mem_mb_min);
  t.mem_mb_max = get_double(obj, "task.", "mem_mb_max", t.mem_mb_max);
  t.workload_min = get_double(obj, "task.", "workload_min", t.workload_min);
  t.workload_max = get_double(obj, "task.", "workload_max", t.workload_max);
  t.size_bits_min = get_int64(obj, "task.", "size_bits_min", t.size_bits_min);
  t.size_bits_max = get_int64(obj, "task.", "size_bits_max", t.size_bits_max);
  t.deadline_slots_min = get_int(obj, "task.", "deadline_slots_min", t.deadline_slots_min);
  t.deadline_slots_max = get_int(obj, "task.", "deadline_slots_max", t.deadline_slots_max);
  t.urgent_prob = get_double(obj, "task.", "urgent_prob", t.urgent_prob);

  require_positive(t.mem_mb_min, "task.mem_mb_min");
  require_positive(t.workload_min, "task.workload_min");
  require_min(static_cast<double>(t.size_bits_min), 1.0, "task.size_bits_min");
  require_min(t.deadline_slots_min, 1.0, "task.deadline_slots_min");
  require_prob(t.urgent_prob, "task.urgent_prob");
  require_ordered(t.mem_mb_min, t.mem_mb_max, "task.mem_mb");
  require_ordered(t.workload_min, t.workload_max, "task.workload");
  require_ordered(static_cast<double>(t.size_bits_min),
                  static_cast<double>(t.size_bits_max), "task.size_bits");
  require_ordered(t.deadline_slots_min, t.deadline_slots_max, "task.deadline_slots");
  return t;
}

ChannelParams parse_channel(const json& obj) {
  check_known_keys(obj, "channel.",
                   {"bandwidth_hz", "noise_w_per_hz", "ref_gain", "ref_dist_m",
                    "pathloss_exp"});
  ChannelParams c;
  c.bandwidth_hz = get_double(obj, "channel.", "bandwidth_hz", c.bandwidth_hz);
  c.noise_w_per_hz = get_double(obj, "channel.", "noise_w_per_hz", c.noise_w_per_hz);
  c.ref_gain = get_double(obj, "channel.", "ref_gain", c.ref_gain);
  c.ref_dist_m = get_double(obj, "channel.", "ref_dist_m", c.ref_dist_m);
  c.pathloss_exp = get_double(obj, "channel.", "pathloss_exp", c.pathloss_exp);

  require_positive(c.bandwidth_hz, "channel.bandwidth_hz");
  require_positive(c.noise_w_per_hz, "channel.noise_w_per_hz");
  require_min(c.ref_gain, 0.0, "channel.ref_gain");
  require_positive(c.ref_dist_m, "channel.ref_dist_m");
  require_min(c.pathloss_exp, 0.0, "channel.pathloss_exp");
  return c;
}

DaeeParams parse_daee(const json& obj) {
  check_known_keys(obj, "daee.", {"v_weight", "eps_bits"});
  DaeeParams d;
  d.v_weight = get_double(obj, "daee.", "v_weight", d.v_weight);
  d.eps_bits = get_int64(obj, "daee.", "eps_bits", d.eps_bits);
  require_min(d.v_weight, 0.0, "daee.v_weight");
  require_min(static_cast<double>(d.eps_bits), 0.0, "daee.eps_bits");
  return d;
}

MobilityConfig parse_mobility(const json& obj) {
  check_known_keys(obj, "mobility.",
                   {"device_velocity_mps", "server_velocity_mps", "turn_prob",
                    "server_mobile"});
  MobilityConfig m;
  m.device_velocity_mps =
      get_double(obj, "mobility.", "device_velocity_mps", m.device_velocity_mps);
  m.server_velocity_mps =
      get_double(obj, "mobility.", "server_velocity_mps", m.server_velocity_mps);
  m.turn_prob = get_double(obj, "mobility.", "turn_prob", m.turn_prob);
  m.server_mobile = get_bool(obj, "mobility.", "server_mobile", m.server_mobile);

  require_min(m.device_velocity_mps, 0.0, "mobility.device_velocity_mps");
  require_min(m.server_velocity_mps, 0.0, "mobility.server_velocity_mps");
  require_prob(m.turn_prob, "mobility.turn_prob");
  return m;
}

DeviceParams parse_device(const json& obj) {
  check_known_keys(obj, "device.",
                   {"mem_avail_mb", "exec_budget", "cpu_hz", "energy_coeff",
                    "tx_power_w", "cycles_per_bit"});
  DeviceParams d;
  d.mem_avail_mb = get_double(obj, "device.", "mem_avail_mb", d.mem_avail_mb);
  d.exec_budget = get_double(obj, "device.", "exec_budget", d.exec_budget);
  d.cpu_hz = get_double(obj, "device.", "cpu_hz", d.cpu_hz);
  d.energy_coeff = get_double(obj, "device.", "energy_coeff", d.energy_coeff);
  d.tx_power_w = get_double(obj, "device.", "tx_power_w", d.tx_power_w);
  d.cycles_per_bit = get_double(obj, "device.", "cycles_per_bit", d.cycles_per_bit);

  require_min(d.mem_avail_mb, 0.0, "device.mem_avail_mb");
  require_positive(d.exec_budget, "device.exec_budget");
  require_positive(d.cpu_hz, "device.cpu_hz");
  require_min(d.energy_coeff, 0.0, "device.energy_coeff");
  require_positive(d.tx_power_w, "device.tx_power_w");
  require_positive(d.cycles_per_bit, "device.cycles_per_bit");
  return d;
}

EdgeParams parse_edge(const json& obj) {
  check_known_keys(obj, "edge.",
                   {"mem_avail_mb", "exec_budget", "capacity_bits_per_slot",
                    "load_threshold", "cloud_extra_latency_slots", "workload_per_slot",
                    "cloud_workload_per_slot"});
  EdgeParams e;
  e.mem_avail_mb = get_double(obj, "edge.", "mem_avail_mb", e.mem_avail_mb);
  e.exec_budget = get_double(obj, "edge.", "exec_budget", e.exec_budget);
  e.capacity_bits_per_slot =
      get_int64(obj, "edge.", "capacity_bits_per_slot", e.capacity_bits_per_slot);
  e.load_threshold = get_double(obj, "edge.", "load_threshold", e.load_threshold);
  e.cloud_extra_latency_slots =
      get_int(obj, "edge.", "cloud_extra_latency_slots", e.cloud_extra_latency_slots);
  e.workload_per_slot = get_double(obj, "edge.", "workload_per_slot", e.workload_per_slot);
  e.cloud_workload_per_slot =
      get_double(obj, "edge.", "cloud_workload_per_slot", e.cloud_workload_per_slot);

  require_min(e.mem_avail_mb, 0.0, "edge.mem_avail_mb");
  require_positive(e.exec_budget, "edge.exec_budget");
  require_min(static_cast<double>(e.capacity_bits_per_slot), 1.0,
              "edge.capacity_bits_per_slot");
  require_prob(e.load_threshold, "edge.load_threshold");
  require_min(e.cloud_extra_latency_slots, 0.0, "edge.cloud_extra_latency_slots");
  require_positive(e.workload_per_slot, "edge.workload_per_slot");
  require_positive(e.cloud_workload_per_slot, "edge.cloud_workload_per_slot");
  return e;
}

OrchestratorParams parse_orchestrator(const json& obj) {
  check_known_keys(obj, "orchestrator.", {"energy_cap_j"});
  OrchestratorParams o;
  o.energy_cap_j = get_double(obj, "orchestrator.", "energy_cap_j", o.energy_cap_j);
  require_min(o.energy_cap_j, 0.0, "orchestrator.energy_cap_j");
  return o;
}

HflConfig parse_hfl(const json& obj) {
  check_known_keys(obj, "hfl.",
                   {"eta", "local_steps", "n_clusters", "clients_per_cluster", "dim",
                    "data_count_min", "data_count_max", "vote_count_b"});
  HflConfig h;
  h.eta = get_double(obj, "hfl.", "eta", h.eta);
  h.local_steps = get_int(obj, "hfl.", "local_steps", h.local_steps);
  h.n_clusters = get_int(obj, "hfl.", "n_clusters", h.n_clusters);
  h.clients_per_cluster = get_int(obj, "hfl.", "clients_per_cluster", h.clients_per_cluster);
  h.dim = get_int(obj, "hfl.", "dim", h.dim);
  h.data_count_min = get_int64(obj, "hfl.", "data_count_min", h.data_count_min);
  h.data_count_max = get_int64(obj, "hfl.", "data_count_max", h.data_count_max);
  h.vote_count_b = get_int64(obj, "hfl.", "vote_count_b", h.vote_count_b);

  require_positive(h.eta, "hfl.eta");
  require_min(h.local_steps, 0.0, "hfl.local_steps");
  require_min(h.n_clusters, 1.0, "hfl.n_clusters");
  require_min(h.clients_per_cluster, 1.0, "hfl.clients_per_cluster");
  require_min(h.dim, 1.0, "hfl.dim");
  require_min(static_cast<double>(h.data_count_min), 1.0, "hfl.data_count_min");
  require_ordered(static_cast<double>(h.data_count_min),
                  static_cast<double>(h.data_count_max), "hfl.data_count");
  require_min(static_cast<double>(h.vote_count_b), 0.0, "hfl.vote_count_b");
  return h;
}

}  // namespace

const char* to_string(Policy p) {
  switch (p) {
    case Policy::Threshold: return "threshold";
    case Policy::Daee: return "daee";
    case Policy::Tiered: return "tiered";
    case Policy::AlwaysLocal: return "always_local";
    case Policy::AlwaysOffload: return "always_offload";
  }
  return "unknown";
}

Policy policy_from_string(const std::string& s) {
  if (s == "threshold") return Policy::Threshold;
  if (s == "daee") return Policy::Daee;
  if (s == "tiered") return Policy::Tiered;
  if (s == "always_local") return Policy::AlwaysLocal;
  if (s == "always_offload") return Policy::AlwaysOffload;
  fail(ConfigError::Kind::BadValue, "policy",
       "unknown policy '" + s +
           "' (expected threshold, daee, tiered, always_local or always_offload)");
}

SimConfig validate_config(const nlohmann::json& raw) {
  if (!raw.is_object()) {
    fail(ConfigError::Kind::BadValue, "", "top-level config must be a JSON object");
  }
  check_known_keys(raw, "",
                   {"schema", "n_devices", "n_slots", "slot_seconds", "seed", "arena_w",
                    "arena_h", "arrival_prob", "policy", "drop_at_deadline", "task",
                    "channel", "daee", "mobility", "device", "edge", "orchestrator",
                    "hfl"});

  SimConfig cfg;
  if (!find(raw, "schema")) {
    fail(ConfigError::Kind::MissingField, "schema", "missing required field 'schema'");
  }
  cfg.schema = get_int(raw, "", "schema", 0);
  if (cfg.schema != 1) {
    fail(ConfigError::Kind::BadValue, "schema", "unsupported schema version");
  }

  cfg.n_devices = get_int(raw, "", "n_devices", cfg.n_devices);
  cfg.n_slots = get_int(raw, "", "n_slots", cfg.n_slots);
  cfg.slot_seconds = get_double(raw, "", "slot_seconds", cfg.slot_seconds);
  cfg.seed = get_uint64(raw, "", "seed", cfg.seed);
  cfg.arena_w = get_double(raw, "", "arena_w", cfg.arena_w);
  cfg.arena_h = get_double(raw, "", "arena_h", cfg.arena_h);
  cfg.arrival_prob = get_double(raw, "", "arrival_prob", cfg.arrival_prob);
  cfg.drop_at_deadline = get_bool(raw, "", "drop_at_deadline", cfg.drop_at_deadline);

  if (const json* p = find(raw, "policy")) {
    if (!p->is_string()) {
      fail(ConfigError::Kind::BadValue, "policy", "'policy' must be a string");
    }
    cfg.policy = policy_from_string(p->get<std::string>());
  }

  require_min(cfg.n_devices, 1.0, "n_devices");
  require_min(cfg.n_slots, 1.0, "n_slots");
  require_positive(cfg.slot_seconds, "slot_seconds");
  if (!(cfg.arena_w > 0.0) || !(cfg.arena_h > 0.0)) {
    fail(ConfigError::Kind::InconsistentBounds, "arena",
         "arena dimensions must be positive");
  }
  require_prob(cfg.arrival_prob, "arrival_prob");

  const json empty = json::object();
  const json* section = find(raw, "task");
  cfg.task = parse_task(section ? *section : empty);
  section = find(raw, "channel");
  cfg.channel = parse_channel(section ? *section : empty);
  section = find(raw, "daee");
  cfg.daee = parse_daee(section ? *section : empty);
  section = find(raw, "mobility");
  cfg.mobility = parse_mobility(section ? *section : empty);
  section = find(raw, "device");
  cfg.device = parse_device(section ? *section : empty);
  section = find(raw, "edge");
  cfg.edge = parse_edge(section ? *section : empty);
  section = find(raw, "orchestrator");
  cfg.orchestrator = parse_orchestrator(section ? *section : empty);
  section = find(raw, "hfl");
  cfg.hfl = parse_hfl(section ? *section : empty);
  return cfg;
}

SimConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ConfigError::Kind::MissingField, "config",
         "cannot open config file '" + path.string() + "'");
  }
  json raw;
  try {
    raw = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ConfigError::Kind::BadValue, "config",
         std::string("config is not valid JSON: ") + e.what());
  }
  return validate_config(raw);
}

nlohmann::ordered_json to_json(const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema"] = cfg.schema;
  j["n_devices"] = cfg.n_devices;
  j["n_slots"] = cfg.n_slots;
  j["slot_seconds"] = cfg.slot_seconds;
  j["seed"] = cfg.seed;
  j["arena_w"] = cfg.arena_w;
  j["arena_h"] = cfg.arena_h;
  j["arrival_prob"] = cfg.arrival_prob;
  j["policy"] = to_string(cfg.policy);
  j["drop_at_deadline"] = cfg.drop_at_deadline;
  j["task"] = {
      {"mem_mb_min", cfg.task.mem_mb_min},
      {"mem_mb_max", cfg.task.mem_mb_max},
      {"workload_min", cfg.task.workload_min},
      {"workload_max", cfg.task.workload_max},
      {"size_bits_min", cfg.task.size_bits_min},
      {"size_bits_max", cfg.task.size_bits_max},
      {"deadline_slots_min", cfg.task.deadline_slots_min},
      {"deadline_slots_max", cfg.task.deadline_slots_max},
      {"urgent_prob", cfg.task.urgent_prob},
  };
  j["channel"] = {
      {"bandwidth_hz", cfg.channel.bandwidth_hz},
      {"noise_w_per_hz", cfg.channel.noise_w_per_hz},
      {"ref_gain", cfg.channel.ref_gain},
      {"ref_dist_m", cfg.channel.ref_dist_m},
      {"pathloss_exp", cfg.channel.pathloss_exp},
  };
  j["daee"] = {
      {"v_weight", cfg.daee.v_weight},
      {"eps_bits", cfg.daee.eps_bits},
  };
  j["mobility"] = {
      {"device_velocity_mps", cfg.mobility.device_velocity_mps},
      {"server_velocity_mps", cfg.mobility.server_velocity_mps},
      {"turn_prob", cfg.mobility.turn_prob},
      {"server_mobile", cfg.mobility.server_mobile},
  };
  j["device"] = {
      {"mem_avail_mb", cfg.device.mem_avail_mb},
      {"exec_budget", cfg.device.exec_budget},
      {"cpu_hz", cfg.device.cpu_hz},
      {"energy_coeff", cfg.device.energy_coeff},
      {"tx_power_w", cfg.device.tx_power_w},
      {"cycles_per_bit", cfg.device.cycles_per_bit},
  };
  j["edge"] = {
      {"mem_avail_mb", cfg.edge.mem_avail_mb},
      {"exec_budget", cfg.edge.exec_budget},
      {"capacity_bits_per_slot", cfg.edge.capacity_bits_per_slot},
      {"load_threshold", cfg.edge.load_threshold},
      {"cloud_extra_latency_slots", cfg.edge.cloud_extra_latency_slots},
      {"workload_per_slot", cfg.edge.workload_per_slot},
      {"cloud_workload_per_slot", cfg.edge.cloud_workload_per_slot},
  };
  j["orchestrator"] = {
      {"energy_cap_j", cfg.orchestrator.energy_cap_j},
  };
  j["hfl"] = {
      {"eta", cfg.hfl.eta},
      {"local_steps", cfg.hfl.local_steps},
      {"n_clusters", cfg.hfl.n_clusters},
      {"clients_per_cluster", cfg.hfl.clients_per_cluster},
      {"dim", cfg.hfl.dim},
      {"data_count_min", cfg.hfl.data_count_min},
      {"data_count_max", cfg.hfl.data_count_max},
      {"vote_count_b", cfg.hfl.vote_count_b},
  };
  return j;
}

}  // namespace mecsim
