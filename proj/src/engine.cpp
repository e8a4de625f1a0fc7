#include "mecsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>

#include "mecsim/daee.hpp"
#include "mecsim/kernels.hpp"
#include "mecsim/mobility.hpp"
#include "mecsim/orchestrator.hpp"
#include "mecsim/rng.hpp"
#include "mecsim/threshold.hpp"

namespace mecsim::engine {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A task's bits while they sit in a device queue.
struct PendingTask {
  std::int64_t remaining_bits = 0;
  int due_slot = 0;  // arrival slot + deadline
  bool miss_counted = false;
};

struct DeviceRuntime {
  DeviceState state;
  std::deque<PendingTask> fifo;
  double q_bits_sum = 0.0;
  std::int64_t q_bits_max = 0;
};

// Field draw order per task: mem, workload, urgency, deadline, size.
Task draw_task(rng::Stream& stream, const SimConfig& cfg, int id, int slot) {
  Task t;
  t.id = id;
  t.mem_mb = stream.uniform(cfg.task.mem_mb_min, cfg.task.mem_mb_max);
  t.workload = stream.uniform(cfg.task.workload_min, cfg.task.workload_max);
  t.urgency = stream.bernoulli(cfg.task.urgent_prob) ? Urgency::Urgent : Urgency::Normal;
  t.deadline_slots = static_cast<int>(
      stream.uniform_int(cfg.task.deadline_slots_min, cfg.task.deadline_slots_max));
  t.size_bits = stream.uniform_int(cfg.task.size_bits_min, cfg.task.size_bits_max);
  t.arrival_slot = slot;
  return t;
}

DeviceState make_device(int id, const SimConfig& cfg, rng::Stream& mobility_stream) {
  DeviceState d;
  d.id = id;
  d.pos.x = mobility_stream.uniform(0.0, cfg.arena_w);
  d.pos.y = mobility_stream.uniform(0.0, cfg.arena_h);
  d.heading_rad = mobility_stream.uniform(0.0, kTwoPi);
  d.mem_avail_mb = cfg.device.mem_avail_mb;
  d.exec_budget = cfg.device.exec_budget;
  d.cpu_hz = cfg.device.cpu_hz;
  d.energy_coeff = cfg.device.energy_coeff;
  d.tx_power_w = cfg.device.tx_power_w;
  d.velocity_mps = cfg.mobility.device_velocity_mps;
  return d;
}

ServerState make_server(const SimConfig& cfg, rng::Stream& mobility_stream) {
  ServerState s;
  s.pos = {cfg.arena_w / 2.0, cfg.arena_h / 2.0};
  s.heading_rad = mobility_stream.uniform(0.0, kTwoPi);
  s.velocity_mps = cfg.mobility.server_velocity_mps;
  s.mem_avail_mb = cfg.edge.mem_avail_mb;
  s.exec_budget = cfg.edge.exec_budget;
  s.edge_capacity_bits_per_slot = cfg.edge.capacity_bits_per_slot;
  s.edge_load_bits = 0;
  s.load_threshold = cfg.edge.load_threshold;
  s.cloud_extra_latency_slots = cfg.edge.cloud_extra_latency_slots;
  return s;
}

// Drains `bits` from the front of the queue; the queue total always equals
// the device's q_bits.
void drain_fifo(std::deque<PendingTask>& fifo, std::int64_t bits) {
  while (bits > 0 && !fifo.empty()) {
    PendingTask& front = fifo.front();
    const std::int64_t take = std::min(front.remaining_bits, bits);
    front.remaining_bits -= take;
    bits -= take;
    if (front.remaining_bits == 0) {
      fifo.pop_front();
    }
  }
}

struct Totals {
  std::int64_t arrived_bits = 0;
  std::int64_t served_bits = 0;
  std::int64_t dropped_bits = 0;
  int tasks_arrived = 0;
  int deadline_misses = 0;
  double energy_j = 0.0;
  std::array<std::int64_t, 4> action_counts{};  // indexed by SlotAction
};

}  // namespace

RunResult run(const SimConfig& cfg) {
  auto mobility_stream = rng::make_stream(cfg.seed, rng::StreamId::Mobility);
  auto arrival_stream = rng::make_stream(cfg.seed, rng::StreamId::Arrivals);
  auto task_stream = rng::make_stream(cfg.seed, rng::StreamId::TaskFields);

  const int n = cfg.n_devices;
  std::vector<DeviceRuntime> devices(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    devices[i].state = make_device(i, cfg, mobility_stream);
  }
  ServerState server = make_server(cfg, mobility_stream);

  const mobility::MobilityParams device_walk{
      cfg.mobility.device_velocity_mps, cfg.slot_seconds, cfg.arena_w, cfg.arena_h,
      cfg.mobility.turn_prob};
  const mobility::MobilityParams server_walk{
      cfg.mobility.server_velocity_mps, cfg.slot_seconds, cfg.arena_w, cfg.arena_h,
      cfg.mobility.turn_prob};
  const orchestrator::TierRates tier_rates{
      cfg.device.exec_budget, cfg.edge.workload_per_slot, cfg.edge.cloud_workload_per_slot};

  Trace trace;
  trace.reserve(static_cast<std::size_t>(std::max(n, 0)) *
                static_cast<std::size_t>(std::max(cfg.n_slots, 0)));
  std::vector<double> xs(n), ys(n), dist(n);
  std::vector<std::optional<Task>> arrivals(static_cast<std::size_t>(std::max(n, 0)));
  Totals totals;
  int next_task_id = 0;

  for (int t = 0; t < cfg.n_slots; ++t) {
    // 1. Mobility: devices in id order, then the server.
    for (auto& d : devices) {
      const auto step =
          mobility::step_position(d.state.pos, d.state.heading_rad, device_walk, mobility_stream);
      d.state.pos = step.pos;
      d.state.heading_rad = step.heading_rad;
    }
    if (cfg.mobility.server_mobile) {
      const auto step =
          mobility::step_position(server.pos, server.heading_rad, server_walk, mobility_stream);
      server.pos = step.pos;
      server.heading_rad = step.heading_rad;
    }

    // 2. Device-to-server distances.
    for (int i = 0; i < n; ++i) {
      xs[i] = devices[i].state.pos.x;
      ys[i] = devices[i].state.pos.y;
    }
    kernels::batch_distance(xs, ys, server.pos.x, server.pos.y, dist);

    // 3. Arrivals: at most one task per device per slot.
    for (int i = 0; i < n; ++i) {
      arrivals[i].reset();
      if (arrival_stream.bernoulli(cfg.arrival_prob)) {
        arrivals[i] = draw_task(task_stream, cfg, next_task_id++, t);
        totals.tasks_arrived += 1;
        totals.arrived_bits += arrivals[i]->size_bits;
      }
    }

    // The edge retires one slot of capacity before new admissions land.
    orchestrator::decay_edge_load(server);

    // 4-6. Decide, serve, update, record, per device in id order.
    for (int i = 0; i < n; ++i) {
      DeviceRuntime& dev = devices[i];
      const std::int64_t q_pre = dev.state.q_bits;
      const auto channel = daee::snapshot_channel(dist[i], cfg);

      std::int64_t queued_arrival_bits = 0;  // bits that enter this device's queue
      std::int64_t nominal_served = 0;
      double energy = 0.0;
      SlotAction action = SlotAction::Local;
      int misses_this_slot = 0;

      switch (cfg.policy) {
        case Policy::Daee: {
          queued_arrival_bits = arrivals[i] ? arrivals[i]->size_bits : 0;
          const auto act = daee::decide_slot(dev.state, channel, queued_arrival_bits, cfg);
          nominal_served = act.served_bits;
          energy = act.energy_j;
          action = act.mode == daee::Mode::Local ? SlotAction::Local : SlotAction::Offload;
          break;
        }
        case Policy::AlwaysLocal: {
          queued_arrival_bits = arrivals[i] ? arrivals[i]->size_bits : 0;
          const auto act =
              daee::make_local_action(dev.state, q_pre + queued_arrival_bits, cfg);
          nominal_served = act.served_bits;
          energy = act.energy_j;
          break;
        }
        case Policy::AlwaysOffload: {
          queued_arrival_bits = arrivals[i] ? arrivals[i]->size_bits : 0;
          const auto act = daee::make_offload_action(dev.state, channel,
                                                     q_pre + queued_arrival_bits, cfg);
          nominal_served = act.served_bits;
          energy = act.energy_j;
          action = SlotAction::Offload;
          break;
        }
        case Policy::Threshold: {
          // Offload the slot iff the arriving task is feasible on the edge.
          queued_arrival_bits = arrivals[i] ? arrivals[i]->size_bits : 0;
          const bool offload =
              arrivals[i] &&
              threshold::decide(*arrivals[i], as_executor(server)).feasible;
          const std::int64_t backlog = q_pre + queued_arrival_bits;
          const auto act = offload
                               ? daee::make_offload_action(dev.state, channel, backlog, cfg)
                               : daee::make_local_action(dev.state, backlog, cfg);
          nominal_served = act.served_bits;
          energy = act.energy_j;
          action = offload ? SlotAction::Offload : SlotAction::Local;
          break;
        }
        case Policy::Tiered: {
          if (arrivals[i]) {
            const Task& task = *arrivals[i];
            auto iot = orchestrator::iot_decide(task, dev.state, cfg);
            const auto rate_floor =
                static_cast<std::int64_t>(std::floor(channel.rate_bits_per_slot));
            if (iot == orchestrator::IotDecision::SendToEdge && rate_floor == 0) {
              iot = orchestrator::IotDecision::ExecuteLocal;  // no usable link
            }
            orchestrator::Placement placement;
            placement.admitted_slot = t;
            int tx_slots = 0;
            if (iot == orchestrator::IotDecision::ExecuteLocal) {
              placement.tier = orchestrator::Tier::Device;
              queued_arrival_bits = task.size_bits;
            } else {
              const auto edge = orchestrator::edge_decide(task, server);
              placement.tier = edge == orchestrator::EdgeDecision::ExecuteAtEdge
                                   ? orchestrator::Tier::Edge
                                   : orchestrator::Tier::Cloud;
              tx_slots = static_cast<int>(
                  (task.size_bits + rate_floor - 1) / rate_floor);
              energy += dev.state.tx_power_w * cfg.slot_seconds * tx_slots;
              server.edge_load_bits += task.size_bits;
              totals.served_bits += task.size_bits;  // bits leave the device now
              action = placement.tier == orchestrator::Tier::Edge ? SlotAction::Edge
                                                                  : SlotAction::Cloud;
            }
            placement.completion_slot = orchestrator::complete(
                placement, task, tier_rates, tx_slots, server.cloud_extra_latency_slots);
            if (placement.completion_slot - task.arrival_slot > task.deadline_slots) {
              misses_this_slot += 1;
              totals.deadline_misses += 1;
            }
          }
          // The device always works its own queue of locally kept bits.
          const auto act =
              daee::make_local_action(dev.state, q_pre + queued_arrival_bits, cfg);
          nominal_served = act.served_bits;
          energy += act.energy_j;
          break;
        }
      }

      // Service drains the pre-arrival backlog; arrivals join afterwards.
      const std::int64_t effective_served = std::min(nominal_served, q_pre);
      drain_fifo(dev.fifo, effective_served);
      totals.served_bits += effective_served;

      const auto qp = daee::update_queues({q_pre, dev.state.h_bits}, queued_arrival_bits,
                                          nominal_served, cfg.daee.eps_bits);
      dev.state.q_bits = qp.q_bits;
      dev.state.h_bits = qp.h_bits;
      if (queued_arrival_bits > 0) {
        dev.fifo.push_back(
            {queued_arrival_bits, arrivals[i]->arrival_slot + arrivals[i]->deadline_slots,
             false});
      }

      // Queue-age misses for the bit-queue policies; tiered misses were
      // already derived from the placement formula above.
      if (cfg.policy != Policy::Tiered) {
        for (auto it = dev.fifo.begin(); it != dev.fifo.end();) {
          if (!it->miss_counted && t >= it->due_slot && it->remaining_bits > 0) {
            it->miss_counted = true;
            misses_this_slot += 1;
            totals.deadline_misses += 1;
            if (cfg.drop_at_deadline) {
              totals.dropped_bits += it->remaining_bits;
              dev.state.q_bits -= it->remaining_bits;
              it = dev.fifo.erase(it);
              continue;
            }
          }
          ++it;
        }
      }

      totals.energy_j += energy;
      totals.action_counts[static_cast<std::size_t>(action)] += 1;
      dev.q_bits_sum += static_cast<double>(dev.state.q_bits);
      dev.q_bits_max = std::max(dev.q_bits_max, dev.state.q_bits);

      trace.push_back({t, i, dist[i], dev.state.q_bits, dev.state.h_bits, action, energy,
                       misses_this_slot});
    }
  }

  RunSummary summary;
  summary.n_devices = n;
  summary.n_slots = cfg.n_slots;
  summary.policy = to_string(cfg.policy);
  summary.total_energy_j = totals.energy_j;
  summary.tasks_arrived = totals.tasks_arrived;
  summary.deadline_misses = totals.deadline_misses;
  summary.deadline_miss_rate =
      totals.tasks_arrived > 0
          ? static_cast<double>(totals.deadline_misses) / totals.tasks_arrived
          : 0.0;

  const auto n_records = static_cast<double>(trace.size());
  if (!trace.empty()) {
    summary.tier_fraction_local = totals.action_counts[0] / n_records;
    summary.tier_fraction_offload = totals.action_counts[1] / n_records;
    summary.tier_fraction_edge = totals.action_counts[2] / n_records;
    summary.tier_fraction_cloud = totals.action_counts[3] / n_records;
  }

  std::vector<daee::QueuePair> final_queues;
  final_queues.reserve(devices.size());
  for (const auto& dev : devices) {
    DeviceQueueStats stats;
    stats.device = dev.state.id;
    stats.mean_q_bits =
        cfg.n_slots > 0 ? dev.q_bits_sum / static_cast<double>(cfg.n_slots) : 0.0;
    stats.max_q_bits = dev.q_bits_max;
    summary.per_device.push_back(stats);
    summary.final_backlog_bits += dev.state.q_bits;
    final_queues.push_back({dev.state.q_bits, dev.state.h_bits});
  }
  summary.final_lyapunov = final_queues.empty() ? 0.0 : daee::lyapunov(final_queues);
  summary.total_arrived_bits = totals.arrived_bits;
  summary.total_served_bits = totals.served_bits;
  summary.total_dropped_bits = totals.dropped_bits;
  return {std::move(trace), summary};
}

std::vector<std::pair<Policy, RunSummary>> compare_policies(
    const SimConfig& cfg, std::span<const Policy> policies) {
  std::vector<std::pair<Policy, RunSummary>> out;
  out.reserve(policies.size());
  for (const Policy p : policies) {
    SimConfig variant = cfg;
    variant.policy = p;
    out.emplace_back(p, run(variant).summary);
  }
  return out;
}

}  // namespace mecsim::engine
