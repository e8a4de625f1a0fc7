#include "mecsim/mobility.hpp"

#include <cmath>
#include <numbers>

namespace mecsim::mobility {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_heading(double h) {
  h = std::fmod(h, kTwoPi);
  if (h < 0.0) h += kTwoPi;
  return h;
}

}  // namespace

StepResult step_position(Position pos, double heading_rad,
                         const MobilityParams& params, rng::Stream& stream) {
  const double step = params.velocity_mps * params.slot_seconds;
  double x = pos.x + step * std::cos(heading_rad);
  double y = pos.y + step * std::sin(heading_rad);
  double h = heading_rad;

  if (x < 0.0) {
    x = 0.0;
    h = std::numbers::pi - h;
  } else if (x > params.arena_w) {
    x = params.arena_w;
    h = std::numbers::pi - h;
  }
  if (y < 0.0) {
    y = 0.0;
    h = -h;
  } else if (y > params.arena_h) {
    y = params.arena_h;
    h = -h;
  }
  h = wrap_heading(h);

  if (stream.bernoulli(params.turn_prob)) {
    h = stream.uniform(0.0, kTwoPi);
  }
  return {{x, y}, h};
}

double distance(Position a, Position b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace mecsim::mobility
