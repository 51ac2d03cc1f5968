#pragma once

#include <cmath>
#include <numbers>

#include "lionman/disk/geometry.hpp"

namespace lionman::disk {

/// Principal argument of z in turns, in [0, 1).
inline double principal_turns(Point2 z) {
  double a = std::atan2(z.y, z.x) / (2.0 * std::numbers::pi);
  if (a < 0.0) a += 1.0;
  if (a >= 1.0) a -= 1.0;
  return a;
}

/// Representative of `d` modulo 1 in (-1/2, 1/2].
inline double wrap_increment(double d) { return d - std::ceil(d - 0.5); }

/// Running lift of the lion's angle to the universal cover of the circle.
///
/// The zero set of the path splits time into components. Inside a component
/// omega accumulates principal-branch increments; the first lifted value of a
/// component is the principal argument, in [0,1). That base choice reads only
/// past samples, so the lift is causal.
struct LiftState {
  bool in_component = false;
  double omega = 0.0;       // lifted angle, turns
  double last_angle = 0.0;  // principal argument of the last nonzero sample
};

inline LiftState lift_step(LiftState state, Point2 z) {
  if (norm(z) <= kZeroThreshold) {
    state.in_component = false;
    return state;
  }
  const double a = principal_turns(z);
  if (!state.in_component) {
    state.in_component = true;
    state.omega = a;
  } else {
    state.omega += wrap_increment(a - state.last_angle);
  }
  state.last_angle = a;
  return state;
}

}  // namespace lionman::disk
