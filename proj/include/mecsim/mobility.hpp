#pragma once

#include "mecsim/rng.hpp"
#include "mecsim/types.hpp"

namespace mecsim::mobility {

struct MobilityParams {
  double velocity_mps = 0.0;
  double slot_seconds = 1.0;
  double arena_w = 0.0;
  double arena_h = 0.0;
  double turn_prob = 0.0;  // per-slot chance of re-drawing the heading
};

struct StepResult {
  Position pos;
  double heading_rad = 0.0;
};

// Bounded random walk: advance one slot along the current heading, clamp to
// the arena with heading reflection at walls, then re-draw the heading
// uniformly in [0, 2pi) with probability turn_prob. Consumes one uniform for
// the turn decision and a second one only when a turn happens.
StepResult step_position(Position pos, double heading_rad,
                         const MobilityParams& params, rng::Stream& stream);

// Euclidean device-to-server distance. Same arithmetic as the batched kernel
// so single and batch paths agree bitwise.
double distance(Position a, Position b);

}  // namespace mecsim::mobility
