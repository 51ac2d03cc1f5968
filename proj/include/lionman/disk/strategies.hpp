#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lionman/core/errors.hpp"
#include "lionman/core/strategy.hpp"
#include "lionman/disk/geometry.hpp"
#include "lionman/disk/lift.hpp"

namespace lionman::disk {

// ---------------------------------------------------------------------------
// Boundary evader
// ---------------------------------------------------------------------------

/// Evader state: the angle lift plus the last evaluated radius and target
/// angle theta (turns).
struct BesiState {
  LiftState lift;
  double rho = 0.0;
  double theta = 0.0;
};

/// theta = 0 while the lion is within radius 1/2, then
/// theta = (2 rho - 1)(omega + 1/2), which reaches omega + 1/2 (the antipode)
/// on the boundary.
inline double evader_theta(double rho, double omega) {
  if (rho <= 0.5) return 0.0;
  return (2.0 * rho - 1.0) * (omega + 0.5);
}

/// Advances the state with one lion sample and returns the man's position
/// e^(2 pi i theta) on the unit circle.
inline Point2 besicovitch_step(BesiState& state, Point2 lion_sample) {
  state.lift = lift_step(state.lift, lion_sample);
  state.rho = norm(lion_sample);
  state.theta = evader_theta(state.rho, state.lift.omega);
  return from_turns(state.theta);
}

/// Man strategy for lion start 0 and man start 1 in the closed disk. The man
/// never leaves the boundary circle.
///
/// In closed mode the response at t uses the lion's sample at t. In strict
/// mode it uses the previous sample, a one-step lag.
class BesicovitchMan : public StrategyBase<BesicovitchMan, Point2> {
 public:
  static constexpr Point2 kStart{1.0, 0.0};

  Role role() const override { return Role::man; }
  std::string name() const override { return "besicovitch"; }

  void observe(const Sample<Point2>& lion) override { position_ = besicovitch_step(state_, lion.position); }
  Point2 emit(double) override { return position_; }

  const BesiState& state() const { return state_; }

 private:
  BesiState state_;
  Point2 position_ = kStart;
};

inline StrategyHandle<Point2> make_besicovitch_man() { return StrategyHandle<Point2>::make<BesicovitchMan>(); }

// ---------------------------------------------------------------------------
// Pursuer for path-connected Hausdorff spaces
// ---------------------------------------------------------------------------

/// Runs gamma (from l to m) at double speed during [0, 1/2], then replays the
/// man's own path at double speed, alpha(2t - 1), which meets the man at t = 1.
/// After t = 1 it stays at alpha(1).
///
/// Man positions between recorded samples are interpolated linearly and
/// projected back into the space; a requested time past the latest observed
/// sample falls back to that sample.
class HausdorffLion : public StrategyBase<HausdorffLion, Point2> {
 public:
  HausdorffLion(Path<Point2> gamma, PlanarSpace space) : gamma_(std::move(gamma)), space_(space) {
    if (!gamma_) throw PreconditionError("HausdorffLion: empty connecting path");
  }

  Role role() const override { return Role::lion; }
  std::string name() const override { return "hausdorff"; }
  std::vector<double> event_times() const override { return {0.5, 1.0}; }

  void observe(const Sample<Point2>& man) override {
    if (!times_.empty() && !(man.t > times_.back())) throw ContractViolation("HausdorffLion: non-monotone time");
    times_.push_back(man.t);
    points_.push_back(man.position);
  }

  Point2 emit(double t) override {
    if (t <= 0.5) return gamma_(2.0 * t);
    return man_at(std::min(2.0 * t - 1.0, 1.0));
  }

 private:
  Point2 man_at(double s) const {
    if (times_.empty()) return gamma_(1.0);
    auto it = std::lower_bound(times_.begin(), times_.end(), s);
    if (it == times_.end()) return points_.back();
    const auto i = static_cast<std::size_t>(it - times_.begin());
    if (times_[i] == s || i == 0) return points_[i];
    const double w = (s - times_[i - 1]) / (times_[i] - times_[i - 1]);
    return space_.project(lerp(points_[i - 1], points_[i], w));
  }

  Path<Point2> gamma_;
  PlanarSpace space_;
  std::vector<double> times_;
  std::vector<Point2> points_;
};

inline StrategyHandle<Point2> make_hausdorff_lion(Path<Point2> gamma, PlanarSpace space) {
  return StrategyHandle<Point2>::make<HausdorffLion>(std::move(gamma), space);
}

/// Hausdorff lion whose first half runs connect_path(l, m).
inline StrategyHandle<Point2> make_hausdorff_lion(PlanarSpace space, Point2 lion_start, Point2 man_start) {
  return make_hausdorff_lion(connect_path(space, lion_start, man_start), space);
}

// ---------------------------------------------------------------------------
// Evader from a fixed-point-free map
// ---------------------------------------------------------------------------

using PlanarMap = std::function<Point2(Point2)>;

inline PlanarMap antipodal_map() {
  return [](Point2 p) { return -p; };
}

/// Rotation about the origin by `turns`.
inline PlanarMap rotation_map(double turns) {
  const Point2 c = from_turns(turns);
  return [c](Point2 p) { return Point2{c.x * p.x - c.y * p.y, c.y * p.x + c.x * p.y}; };
}

/// Man at f(lion). Starts at f(l); before any lion sample is observed it
/// stays there.
class FixedPointFreeMan : public StrategyBase<FixedPointFreeMan, Point2> {
 public:
  FixedPointFreeMan(PlanarMap f, Point2 lion_start, std::string name)
      : f_(std::move(f)), position_(f_(lion_start)), name_(std::move(name)) {}

  Role role() const override { return Role::man; }
  std::string name() const override { return name_; }
  void observe(const Sample<Point2>& lion) override { position_ = f_(lion.position); }
  Point2 emit(double) override { return position_; }

 private:
  PlanarMap f_;
  Point2 position_;
  std::string name_;
};

/// Builds the evader after checking f on the space's probe points; a probe
/// with |f(p) - p| <= 1e-12 (or f(p) outside the space) rejects the map.
inline StrategyHandle<Point2> make_fixed_point_free_man(PlanarMap f, const PlanarSpace& space, Point2 lion_start,
                                                        std::string name = "fixed-point-free") {
  if (!f) throw PreconditionError("fixed_point_free_man: empty map");
  for (const Point2& p : space.probe_points()) {
    const Point2 q = f(p);
    if (!space.contains(q)) throw PreconditionError("fixed_point_free_man: map leaves the space");
    if (distance(p, q) <= 1e-12) {
      throw PreconditionError("fixed_point_free_man: map has a fixed point at (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ")");
    }
  }
  return StrategyHandle<Point2>::make<FixedPointFreeMan>(std::move(f), lion_start, std::move(name));
}

}  // namespace lionman::disk
