#pragma once

#include <cstdint>
#include <random>

namespace mecsim::rng {

// Purpose-split random streams. Every run derives all of its randomness from
// one master seed; each consumer gets its own stream so that adding draws in
// one subsystem never shifts the sample path of another. Stream order:
//   0 mobility (initial placement + per-slot walk, devices in id order, then server)
//   1 arrivals (per slot, devices in id order)
//   2 task fields (one block per arriving task, in arrival order)
//   3 federated-learning synthetic data
enum class StreamId : std::uint64_t {
  Mobility = 0,
  Arrivals = 1,
  TaskFields = 2,
  HflData = 3,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 with fixed, implementation-independent value mappings. The
// standard distributions are not specified bit-for-bit, so sampling is done
// here with documented formulas to keep traces reproducible across builds.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit mantissa mapping.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [lo, hi], unbiased via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span + 1) % span;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v > limit);
    return lo + static_cast<std::int64_t>(v % span);
  }

 private:
  std::mt19937_64 gen_;
};

inline Stream make_stream(std::uint64_t master_seed, StreamId id) {
  return Stream(splitmix64(master_seed + static_cast<std::uint64_t>(id)));
}

}  // namespace mecsim::rng
