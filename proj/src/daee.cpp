#include "mecsim/daee.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mecsim/kernels.hpp"

namespace mecsim::daee {

double channel_rate(double distance_m, const SimConfig& cfg) {
  const auto& ch = cfg.channel;
  const double d = std::max(distance_m, ch.ref_dist_m);
  const double path_gain = ch.ref_gain * std::pow(d / ch.ref_dist_m, -ch.pathloss_exp);
  const double snr = path_gain * cfg.device.tx_power_w / (ch.noise_w_per_hz * ch.bandwidth_hz);
  // log1p keeps the rate strictly positive even when snr underflows 1 + snr.
  return ch.bandwidth_hz * cfg.slot_seconds * (std::log1p(snr) / std::numbers::ln2);
}

ChannelSnapshot snapshot_channel(double distance_m, const SimConfig& cfg) {
  return {distance_m, channel_rate(distance_m, cfg)};
}

double lyapunov(std::span<const QueuePair> queues) {
  if (queues.empty()) {
    throw std::invalid_argument("lyapunov: empty queue set");
  }
  std::vector<double> q(queues.size());
  std::vector<double> h(queues.size());
  for (std::size_t i = 0; i < queues.size(); ++i) {
    q[i] = static_cast<double>(queues[i].q_bits);
    h[i] = static_cast<double>(queues[i].h_bits);
  }
  const double sum = kernels::sum_squares_pair(q, h);
  return sum / (2.0 * static_cast<double>(queues.size()));
}

QueuePair update_queues(QueuePair qp, std::int64_t arrivals_bits,
                        std::int64_t served_bits, std::int64_t eps_bits) {
  QueuePair next;
  next.q_bits = std::max<std::int64_t>(qp.q_bits - served_bits, 0) + arrivals_bits;
  const std::int64_t drift = qp.q_bits > 0 ? eps_bits : 0;
  next.h_bits = std::max<std::int64_t>(qp.h_bits - served_bits + drift, 0);
  return next;
}

double drift_plus_penalty(QueuePair qp, const DaeeAction& action,
                          std::int64_t arrivals_bits, double v_weight) {
  const double backlog = static_cast<double>(qp.q_bits + qp.h_bits);
  const double net = static_cast<double>(arrivals_bits - action.served_bits);
  return v_weight * action.energy_j + backlog * net;
}

std::int64_t local_bits_per_slot(const SimConfig& cfg) {
  return static_cast<std::int64_t>(
      std::floor(cfg.device.cpu_hz * cfg.slot_seconds / cfg.device.cycles_per_bit));
}

DaeeAction make_local_action(const DeviceState& dev, std::int64_t backlog_bits,
                             const SimConfig& cfg) {
  const auto capacity = static_cast<std::int64_t>(
      std::floor(dev.cpu_hz * cfg.slot_seconds / cfg.device.cycles_per_bit));
  const std::int64_t processed = std::min(capacity, backlog_bits);
  const double cycles = cfg.device.cycles_per_bit * static_cast<double>(processed);
  const double energy = dev.energy_coeff * dev.cpu_hz * dev.cpu_hz * cycles;
  return {Mode::Local, capacity, energy};
}

DaeeAction make_offload_action(const DeviceState& dev, const ChannelSnapshot& ch,
                               std::int64_t backlog_bits, const SimConfig& cfg) {
  const auto rate = static_cast<std::int64_t>(std::floor(ch.rate_bits_per_slot));
  const std::int64_t served = std::min(rate, backlog_bits);
  const double energy = dev.tx_power_w * cfg.slot_seconds;
  return {Mode::Offload, served, energy};
}

std::array<DaeeAction, 2> candidate_actions(const DeviceState& dev,
                                            const ChannelSnapshot& ch,
                                            std::int64_t pending_arrivals_bits,
                                            const SimConfig& cfg) {
  const std::int64_t backlog = dev.q_bits + pending_arrivals_bits;
  return {make_local_action(dev, backlog, cfg),
          make_offload_action(dev, ch, backlog, cfg)};
}

DaeeAction decide_slot(const DeviceState& dev, const ChannelSnapshot& ch,
                       std::int64_t pending_arrivals_bits, const SimConfig& cfg) {
  const auto actions = candidate_actions(dev, ch, pending_arrivals_bits, cfg);
  const QueuePair qp{dev.q_bits, dev.h_bits};
  DaeeAction best = actions[0];
  double best_obj = drift_plus_penalty(qp, best, pending_arrivals_bits, cfg.daee.v_weight);
  for (std::size_t i = 1; i < actions.size(); ++i) {
    const double obj =
        drift_plus_penalty(qp, actions[i], pending_arrivals_bits, cfg.daee.v_weight);
    if (obj < best_obj) {
      best = actions[i];
      best_obj = obj;
    }
  }
  return best;
}

}  // namespace mecsim::daee
