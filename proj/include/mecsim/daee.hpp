#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "mecsim/config.hpp"
#include "mecsim/types.hpp"

namespace mecsim::daee {

// Delay-aware energy-efficient offloading: each slot the device picks the
// action minimizing V * energy + (Q + H) * (arrivals - service), where Q is
// the actual bit backlog and H a virtual queue whose boundedness enforces
// deadline behavior.

struct QueuePair {
  std::int64_t q_bits = 0;
  std::int64_t h_bits = 0;
};

enum class Mode { Local, Offload };

struct DaeeAction {
  Mode mode = Mode::Local;
  std::int64_t served_bits = 0;
  double energy_j = 0.0;
};

struct ChannelSnapshot {
  double distance_m = 0.0;
  double rate_bits_per_slot = 0.0;
};

// Shannon-style uplink rate with power-law path loss, in bits per slot:
//   B * tau * log2(1 + g0 * (max(d, d0)/d0)^(-alpha) * P / (N0 * B))
// Monotone non-increasing in d; strictly positive whenever ref_gain > 0.
double channel_rate(double distance_m, const SimConfig& cfg);

ChannelSnapshot snapshot_channel(double distance_m, const SimConfig& cfg);

// (1 / 2N) * sum_i (Q_i^2 + H_i^2). Throws std::invalid_argument on an empty
// span.
double lyapunov(std::span<const QueuePair> queues);

// One-slot queue update:
//   Q' = max(Q - served, 0) + arrivals
//   H' = max(H - served + eps * [Q > 0], 0)
// Service drains the pre-arrival backlog; arrivals join afterwards. The
// epsilon term charges the virtual queue for every slot the real backlog
// lingers.
QueuePair update_queues(QueuePair qp, std::int64_t arrivals_bits,
                        std::int64_t served_bits, std::int64_t eps_bits);

// V * energy + (Q + H) * (arrivals - served)
double drift_plus_penalty(QueuePair qp, const DaeeAction& action,
                          std::int64_t arrivals_bits, double v_weight);

// floor(cpu_hz * slot_seconds / cycles_per_bit) for the configured device
// parameters.
std::int64_t local_bits_per_slot(const SimConfig& cfg);

// Local: nominal service is the device's full per-slot CPU capacity; energy
// is kappa * f^2 * cycles over the bits actually available to process.
DaeeAction make_local_action(const DeviceState& dev, std::int64_t backlog_bits,
                             const SimConfig& cfg);

// Offload: service is min(channel rate, backlog); the radio burns P * tau
// for the slot regardless of how much it moves.
DaeeAction make_offload_action(const DeviceState& dev, const ChannelSnapshot& ch,
                               std::int64_t backlog_bits, const SimConfig& cfg);

// The full two-action candidate set, Local first (tie-break order).
std::array<DaeeAction, 2> candidate_actions(const DeviceState& dev,
                                            const ChannelSnapshot& ch,
                                            std::int64_t pending_arrivals_bits,
                                            const SimConfig& cfg);

// Argmin of drift_plus_penalty over the candidate set; ties go to Local.
DaeeAction decide_slot(const DeviceState& dev, const ChannelSnapshot& ch,
                       std::int64_t pending_arrivals_bits, const SimConfig& cfg);

}  // namespace mecsim::daee
