#include "mecsim/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace mecsim::io {
namespace {

constexpr char kTraceHeader[] =
    "t,device_id,distance_m,q_bits,h_bits,action,energy_j,deadline_missed";

SlotAction action_from_string(std::string_view s) {
  if (s == "local") return SlotAction::Local;
  if (s == "offload") return SlotAction::Offload;
  if (s == "edge") return SlotAction::Edge;
  if (s == "cloud") return SlotAction::Cloud;
  throw IoError("trace: unknown action '" + std::string(s) + "'");
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError(std::string("trace: bad ") + what + " field '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

std::string format_distance(double d) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof(buf), "%.2f", d);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, static_cast<std::size_t>(ptr - buf));
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw IoError("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("rename to '" + path.string() + "' failed: " + ec.message());
  }
}

std::string trace_to_csv(const Trace& trace) {
  std::string out(kTraceHeader);
  out.push_back('\n');
  for (const auto& r : trace) {
    out += std::to_string(r.slot);
    out.push_back(',');
    out += std::to_string(r.device);
    out.push_back(',');
    out += format_distance(r.distance_m);
    out.push_back(',');
    out += std::to_string(r.q_bits);
    out.push_back(',');
    out += std::to_string(r.h_bits);
    out.push_back(',');
    out += to_string(r.action);
    out.push_back(',');
    out += format_double(r.energy_j);
    out.push_back(',');
    out += std::to_string(r.deadline_missed);
    out.push_back('\n');
  }
  return out;
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
  atomic_write(path, trace_to_csv(trace));
}

Trace parse_trace_csv(std::string_view csv) {
  Trace trace;
  std::size_t pos = 0;
  bool first = true;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    if (eol == std::string_view::npos) eol = csv.size();
    const std::string_view line = csv.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    if (first) {
      if (line != kTraceHeader) {
        throw IoError("trace: unexpected header '" + std::string(line) + "'");
      }
      first = false;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 8) {
      throw IoError("trace: expected 8 fields, got " + std::to_string(fields.size()));
    }
    SlotRecord r;
    r.slot = parse_number<int>(fields[0], "slot");
    r.device = parse_number<int>(fields[1], "device");
    r.distance_m = parse_number<double>(fields[2], "distance");
    r.q_bits = parse_number<std::int64_t>(fields[3], "q_bits");
    r.h_bits = parse_number<std::int64_t>(fields[4], "h_bits");
    r.action = action_from_string(fields[5]);
    r.energy_j = parse_number<double>(fields[6], "energy");
    r.deadline_missed = parse_number<int>(fields[7], "deadline_missed");
    trace.push_back(r);
  }
  if (first) {
    throw IoError("trace: empty file");
  }
  return trace;
}

Trace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open trace file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str());
}

std::string distance_table_csv(const Trace& trace, int steps) {
  int n_devices = 0;
  int n_slots = 0;
  for (const auto& r : trace) {
    n_devices = std::max(n_devices, r.device + 1);
    n_slots = std::max(n_slots, r.slot + 1);
  }
  const int rows = steps > 0 ? std::min(steps, n_slots) : n_slots;

  std::string out = "time_step";
  for (int d = 0; d < n_devices; ++d) {
    out += ",device_" + std::to_string(d + 1);
  }
  out.push_back('\n');

  // slot-major, device-minor row order lets us index records directly
  for (int t = 0; t < rows; ++t) {
    out += std::to_string(t);
    for (int d = 0; d < n_devices; ++d) {
      const auto& r = trace[static_cast<std::size_t>(t) * n_devices + d];
      if (r.slot != t || r.device != d) {
        throw IoError("trace rows are not in slot-major, device-minor order");
      }
      out.push_back(',');
      out += format_distance(r.distance_m);
    }
    out.push_back('\n');
  }
  return out;
}

void write_distance_table_csv(const Trace& trace, int steps,
                              const std::filesystem::path& path) {
  atomic_write(path, distance_table_csv(trace, steps));
}

nlohmann::ordered_json summary_to_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["policy"] = s.policy;
  j["n_devices"] = s.n_devices;
  j["n_slots"] = s.n_slots;
  j["total_energy_j"] = s.total_energy_j;
  j["tasks_arrived"] = s.tasks_arrived;
  j["deadline_misses"] = s.deadline_misses;
  j["deadline_miss_rate"] = s.deadline_miss_rate;
  j["tier_fractions"] = {
      {"local", s.tier_fraction_local},
      {"offload", s.tier_fraction_offload},
      {"edge", s.tier_fraction_edge},
      {"cloud", s.tier_fraction_cloud},
  };
  j["final_lyapunov"] = s.final_lyapunov;
  j["bits"] = {
      {"arrived", s.total_arrived_bits},
      {"served", s.total_served_bits},
      {"dropped", s.total_dropped_bits},
      {"final_backlog", s.final_backlog_bits},
  };
  j["per_device"] = nlohmann::ordered_json::array();
  for (const auto& d : s.per_device) {
    j["per_device"].push_back({
        {"device", d.device},
        {"mean_q_bits", d.mean_q_bits},
        {"max_q_bits", d.max_q_bits},
    });
  }
  return j;
}

void write_summary_json(const RunSummary& summary, const std::filesystem::path& path) {
  atomic_write(path, summary_to_json(summary).dump(2) + "\n");
}

void write_config_echo(const SimConfig& cfg, const std::filesystem::path& path) {
  atomic_write(path, to_json(cfg).dump(2) + "\n");
}

std::string gnuplot_script(const std::filesystem::path& trace_path, int n_devices) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 'time step'\n"
     << "set ylabel 'distance to server (m)'\n"
     << "set grid\n"
     << "plot ";
  for (int d = 0; d < n_devices; ++d) {
    if (d) os << ", \\\n     ";
    os << "'" << trace_path.string() << "' using 1:($2==" << d
       << " ? $3 : 1/0) with linespoints title 'device " << d + 1 << "'";
  }
  os << "\n";
  return os.str();
}

}  // namespace mecsim::io
