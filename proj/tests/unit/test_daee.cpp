#include <doctest.h>

#include <cmath>
#include <vector>

#include "mecsim/daee.hpp"
#include "mecsim/rng.hpp"

using namespace mecsim;
using daee::DaeeAction;
using daee::Mode;
using daee::QueuePair;

namespace {

DeviceState device_from(const SimConfig& cfg, std::int64_t q, std::int64_t h) {
  DeviceState d;
  d.cpu_hz = cfg.device.cpu_hz;
  d.energy_coeff = cfg.device.energy_coeff;
  d.tx_power_w = cfg.device.tx_power_w;
  d.q_bits = q;
  d.h_bits = h;
  return d;
}

// Independent re-derivation of the two candidate actions and the argmin,
// written out from the definitions rather than calling candidate_actions.
DaeeAction brute_force_best(const DeviceState& dev, double rate_bits_per_slot,
                            std::int64_t arrivals, const SimConfig& cfg) {
  const std::int64_t backlog = dev.q_bits + arrivals;
  const auto cap = static_cast<std::int64_t>(
      std::floor(cfg.device.cpu_hz * cfg.slot_seconds / cfg.device.cycles_per_bit));
  const std::int64_t processed = std::min(cap, backlog);
  const double local_energy = dev.energy_coeff * dev.cpu_hz * dev.cpu_hz *
                              (cfg.device.cycles_per_bit * static_cast<double>(processed));
  const auto rate_floor = static_cast<std::int64_t>(std::floor(rate_bits_per_slot));
  const std::int64_t off_served = std::min(rate_floor, backlog);
  const double off_energy = dev.tx_power_w * cfg.slot_seconds;

  const double weights = static_cast<double>(dev.q_bits + dev.h_bits);
  const double obj_local = cfg.daee.v_weight * local_energy +
                           weights * static_cast<double>(arrivals - cap);
  const double obj_off = cfg.daee.v_weight * off_energy +
                         weights * static_cast<double>(arrivals - off_served);
  if (obj_off < obj_local) {
    return {Mode::Offload, off_served, off_energy};
  }
  return {Mode::Local, cap, local_energy};
}

}  // namespace

TEST_CASE("channel rate closed form at the reference distance") {
  SimConfig cfg;
  const double snr = cfg.channel.ref_gain * cfg.device.tx_power_w /
                     (cfg.channel.noise_w_per_hz * cfg.channel.bandwidth_hz);
  const double expected =
      cfg.channel.bandwidth_hz * cfg.slot_seconds * std::log2(1.0 + snr);
  CHECK(daee::channel_rate(cfg.channel.ref_dist_m, cfg) == doctest::Approx(expected));
  // Below d0 the path-loss factor saturates at 1.
  CHECK(daee::channel_rate(0.0, cfg) == daee::channel_rate(cfg.channel.ref_dist_m, cfg));
}

TEST_CASE("channel rate decays toward zero and stays positive") {
  SimConfig cfg;
  CHECK(daee::channel_rate(1e7, cfg) > 0.0);
  CHECK(daee::channel_rate(1e7, cfg) < 1e-3);
}

TEST_CASE("channel rate is monotone non-increasing in distance") {
  SimConfig cfg;
  auto stream = rng::make_stream(11, rng::StreamId::Mobility);
  for (int i = 0; i < 1000; ++i) {
    const double d1 = stream.uniform(0.0, 500.0);
    const double d2 = d1 + stream.uniform(0.0, 500.0);
    CHECK(daee::channel_rate(d2, cfg) <= daee::channel_rate(d1, cfg));
  }
}

TEST_CASE("steeper path loss lowers the rate beyond d0") {
  SimConfig cfg;
  const double base = daee::channel_rate(25.0, cfg);
  cfg.channel.pathloss_exp *= 2.0;
  CHECK(daee::channel_rate(25.0, cfg) < base);
}

TEST_CASE("lyapunov hand values") {
  CHECK(daee::lyapunov(std::vector<QueuePair>{{0, 0}}) == 0.0);
  CHECK(daee::lyapunov(std::vector<QueuePair>{{3, 4}}) == doctest::Approx(12.5));
  CHECK(daee::lyapunov(std::vector<QueuePair>{{1, 0}, {0, 1}}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(daee::lyapunov(std::vector<QueuePair>{}), std::invalid_argument);
}

TEST_CASE("lyapunov equals a direct summation on random states") {
  auto stream = rng::make_stream(12, rng::StreamId::Arrivals);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(stream.uniform_int(0, 32));
    std::vector<QueuePair> queues(n);
    double direct = 0.0;
    for (auto& qp : queues) {
      qp.q_bits = stream.uniform_int(0, 2'000'000);
      qp.h_bits = stream.uniform_int(0, 2'000'000);
      direct += static_cast<double>(qp.q_bits) * static_cast<double>(qp.q_bits) +
                static_cast<double>(qp.h_bits) * static_cast<double>(qp.h_bits);
    }
    direct /= 2.0 * n;
    const double got = daee::lyapunov(queues);
    CHECK(std::abs(got - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("queue update hand values") {
  CHECK(daee::update_queues({5, 0}, 2, 3, 0).q_bits == 4);
  CHECK(daee::update_queues({2, 0}, 0, 10, 0).q_bits == 0);
  CHECK(daee::update_queues({0, 0}, 0, 0, 7).h_bits == 0);  // idle slot
  // Lingering backlog charges the virtual queue.
  const auto qp = daee::update_queues({10, 4}, 0, 2, 7);
  CHECK(qp.q_bits == 8);
  CHECK(qp.h_bits == 4 - 2 + 7);
}

TEST_CASE("queues never go negative") {
  auto stream = rng::make_stream(13, rng::StreamId::Arrivals);
  for (int i = 0; i < 20000; ++i) {
    const QueuePair qp{stream.uniform_int(0, 1'000'000), stream.uniform_int(0, 1'000'000)};
    const auto next = daee::update_queues(qp, stream.uniform_int(0, 500'000),
                                          stream.uniform_int(0, 2'000'000),
                                          stream.uniform_int(0, 100'000));
    CHECK(next.q_bits >= 0);
    CHECK(next.h_bits >= 0);
  }
}

TEST_CASE("drift-plus-penalty hand values") {
  const DaeeAction served6{Mode::Local, 6, 2.0};
  CHECK(daee::drift_plus_penalty({10, 5}, served6, 4, 1.0) == doctest::Approx(-28.0));

  // V = 0 leaves the pure backlog drift term.
  const DaeeAction a{Mode::Local, 3, 9.0};
  CHECK(daee::drift_plus_penalty({2, 1}, a, 7, 0.0) == doctest::Approx(3.0 * 4.0));

  // Balanced slot with no energy.
  const DaeeAction b{Mode::Local, 5, 0.0};
  CHECK(daee::drift_plus_penalty({8, 2}, b, 5, 3.0) == 0.0);
}

TEST_CASE("decide_slot equals exhaustive enumeration") {
  auto stream = rng::make_stream(14, rng::StreamId::TaskFields);
  for (int i = 0; i < 5000; ++i) {
    SimConfig cfg;
    cfg.daee.v_weight = stream.uniform(0.0, 2e9);
    cfg.device.cpu_hz = stream.uniform(1e6, 2e9);
    cfg.device.cycles_per_bit = stream.uniform(100.0, 5000.0);
    cfg.device.tx_power_w = stream.uniform(0.01, 2.0);
    cfg.device.energy_coeff = stream.uniform(0.0, 5e-27);
    DeviceState dev = device_from(cfg, stream.uniform_int(0, 2'000'000),
                                  stream.uniform_int(0, 2'000'000));
    const double distance = stream.uniform(0.0, 200.0);
    const auto ch = daee::snapshot_channel(distance, cfg);
    const std::int64_t arrivals = stream.uniform_int(0, 600'000);

    const auto got = daee::decide_slot(dev, ch, arrivals, cfg);
    const auto want = brute_force_best(dev, ch.rate_bits_per_slot, arrivals, cfg);
    CHECK(got.mode == want.mode);
    CHECK(got.served_bits == want.served_bits);
    CHECK(got.energy_j == want.energy_j);
  }
}

TEST_CASE("dead channel keeps work local") {
  SimConfig cfg;
  cfg.channel.ref_gain = 0.0;  // rate is exactly zero everywhere
  DeviceState dev = device_from(cfg, 500'000, 100'000);
  const auto ch = daee::snapshot_channel(40.0, cfg);
  CHECK(ch.rate_bits_per_slot == 0.0);
  const auto act = daee::decide_slot(dev, ch, 10'000, cfg);
  CHECK(act.mode == Mode::Local);
}

TEST_CASE("no local capacity pushes backlog to the radio") {
  SimConfig cfg;
  cfg.device.cpu_hz = 100.0;  // floor(100 / 1000) = 0 bits per slot
  cfg.daee.v_weight = 1.0;
  DeviceState dev = device_from(cfg, 200'000, 0);
  const auto ch = daee::snapshot_channel(5.0, cfg);
  REQUIRE(ch.rate_bits_per_slot > 0.0);
  const auto act = daee::decide_slot(dev, ch, 0, cfg);
  CHECK(act.mode == Mode::Offload);
}

TEST_CASE("with equal service a huge V picks the cheaper action") {
  SimConfig cfg;
  cfg.daee.v_weight = 1e18;
  // Backlog exceeds both service rates, so both actions serve their maximum.
  DeviceState dev = device_from(cfg, 50'000'000, 0);
  const auto ch = daee::snapshot_channel(1.0, cfg);
  const auto local = daee::make_local_action(dev, dev.q_bits, cfg);
  const auto off = daee::make_offload_action(dev, ch, dev.q_bits, cfg);
  REQUIRE(local.energy_j != off.energy_j);
  const auto act = daee::decide_slot(dev, ch, 0, cfg);
  const auto cheaper = local.energy_j < off.energy_j ? Mode::Local : Mode::Offload;
  CHECK(act.mode == cheaper);
}
