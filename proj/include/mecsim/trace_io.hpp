#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mecsim/config.hpp"
#include "mecsim/types.hpp"

namespace mecsim::io {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

// Distances are printed with exactly two decimals (IEEE nearest/even on the
// underlying binary value); all other doubles use the shortest
// round-trippable decimal form.
std::string format_distance(double d);
std::string format_double(double v);

// Write-to-temp-then-rename; partial files never land at `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// CSV with header t,device_id,distance_m,q_bits,h_bits,action,energy_j,
// deadline_missed. Rows ordered slot-major, device-minor.
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);
std::string trace_to_csv(const Trace& trace);

// Inverse of write_trace_csv up to the 2-decimal distance quantization.
Trace read_trace_csv(const std::filesystem::path& path);
Trace parse_trace_csv(std::string_view csv);

// Pivot of the trace's distance column: one row per slot, one column per
// device, values copied verbatim from the 2-decimal formatting.
std::string distance_table_csv(const Trace& trace, int steps);
void write_distance_table_csv(const Trace& trace, int steps,
                              const std::filesystem::path& path);

nlohmann::ordered_json summary_to_json(const RunSummary& summary);
void write_summary_json(const RunSummary& summary, const std::filesystem::path& path);

void write_config_echo(const SimConfig& cfg, const std::filesystem::path& path);

// gnuplot script plotting each device's distance column of a trace CSV.
std::string gnuplot_script(const std::filesystem::path& trace_path, int n_devices);

}  // namespace mecsim::io
