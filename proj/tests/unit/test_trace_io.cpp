#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mecsim/engine.hpp"
#include "mecsim/trace_io.hpp"

using namespace mecsim;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mecsim_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("an empty trace writes a header-only file") {
  CHECK(io::trace_to_csv({}) ==
        "t,device_id,distance_m,q_bits,h_bits,action,energy_j,deadline_missed\n");
}

TEST_CASE("a 5x5 trace writes header plus 25 rows") {
  SimConfig cfg;
  cfg.n_devices = 5;
  cfg.n_slots = 5;
  const auto result = engine::run(cfg);
  const std::string csv = io::trace_to_csv(result.trace);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);
}

TEST_CASE("distances print with exactly two decimals") {
  CHECK(io::format_distance(20.214999) == "20.21");
  CHECK(io::format_distance(0.0) == "0.00");
  // Rounding applies to the binary value: 2.675 is stored just below the
  // decimal midpoint, 7.695 just above it.
  CHECK(io::format_distance(2.675) == "2.67");
  CHECK(io::format_distance(7.695) == "7.70");
  CHECK(io::format_distance(100.0) == "100.00");
}

TEST_CASE("other doubles survive a text round trip exactly") {
  for (const double v : {0.5, 1e-27, 3.14159265358979, 123456.789, 0.1 + 0.2}) {
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("write/read round trip up to distance quantization") {
  TempDir tmp;
  SimConfig cfg;
  cfg.n_slots = 20;
  cfg.arrival_prob = 0.7;
  const auto result = engine::run(cfg);
  const auto path = tmp.path / "trace.csv";
  io::write_trace_csv(result.trace, path);
  const Trace parsed = io::read_trace_csv(path);
  REQUIRE(parsed.size() == result.trace.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    const auto& a = result.trace[i];
    const auto& b = parsed[i];
    CHECK(a.slot == b.slot);
    CHECK(a.device == b.device);
    CHECK(std::abs(a.distance_m - b.distance_m) <= 0.005 + 1e-12);
    CHECK(a.q_bits == b.q_bits);
    CHECK(a.h_bits == b.h_bits);
    CHECK(a.action == b.action);
    CHECK(a.energy_j == b.energy_j);  // exact: shortest round-trip format
    CHECK(a.deadline_missed == b.deadline_missed);
  }
}

TEST_CASE("atomic write leaves no temp file behind") {
  TempDir tmp;
  const auto path = tmp.path / "out.txt";
  io::atomic_write(path, "payload");
  CHECK(std::filesystem::exists(path));
  CHECK(!std::filesystem::exists(tmp.path / "out.txt.tmp"));
  std::ifstream in(path);
  std::string content;
  std::getline(in, content);
  CHECK(content == "payload");
}

TEST_CASE("rewriting the same trace produces identical bytes") {
  TempDir tmp;
  SimConfig cfg;
  cfg.n_slots = 30;
  const auto result = engine::run(cfg);
  io::write_trace_csv(result.trace, tmp.path / "a.csv");
  io::write_trace_csv(result.trace, tmp.path / "b.csv");
  std::ifstream fa(tmp.path / "a.csv"), fb(tmp.path / "b.csv");
  std::string a((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
  std::string b((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
  CHECK(a == b);
}

TEST_CASE("distance table layout matches the trace") {
  SimConfig cfg;
  cfg.n_devices = 5;
  cfg.n_slots = 8;
  const auto result = engine::run(cfg);
  const std::string table = io::distance_table_csv(result.trace, 5);
  std::istringstream is(table);
  std::string line;
  std::getline(is, line);
  CHECK(line == "time_step,device_1,device_2,device_3,device_4,device_5");
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("malformed traces are rejected") {
  CHECK_THROWS_AS(io::parse_trace_csv(""), io::IoError);
  CHECK_THROWS_AS(io::parse_trace_csv("nonsense header\n1,2,3\n"), io::IoError);
  CHECK_THROWS_AS(
      io::parse_trace_csv(
          "t,device_id,distance_m,q_bits,h_bits,action,energy_j,deadline_missed\n"
          "0,0,1.00,0,0,warp,0,0\n"),
      io::IoError);
}
