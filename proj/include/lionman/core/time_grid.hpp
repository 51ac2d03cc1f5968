#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lionman/core/errors.hpp"

namespace lionman {

/// Discretization of the time axis [0, horizon].
///
/// Base samples are k*dt for k = 0..floor(horizon/dt). Event times are merged
/// in: an event closer than `kSnapTolerance` to an existing sample replaces it
/// (so the event instant is represented exactly), otherwise it is inserted.
class TimeGrid {
 public:
  static constexpr double kSnapTolerance = 1e-13;

  TimeGrid(double dt, double horizon, std::span<const double> event_times = {})
      : dt_(dt), horizon_(horizon) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw PreconditionError("TimeGrid: dt must be positive and finite");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
      throw PreconditionError("TimeGrid: horizon must be positive and finite");
    }
    const auto steps = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
    times_.reserve(steps + event_times.size());
    for (std::size_t k = 0; k < steps; ++k) {
      times_.push_back(static_cast<double>(k) * dt);
    }
    for (double e : event_times) {
      if (!std::isfinite(e) || e < 0.0) {
        throw PreconditionError("TimeGrid: event times must be finite and nonnegative");
      }
      if (e > horizon_ + kSnapTolerance) continue;
      merge(e);
    }
  }

  double dt() const { return dt_; }
  double horizon() const { return horizon_; }
  std::size_t size() const { return times_.size(); }
  double operator[](std::size_t i) const { return times_[i]; }
  std::span<const double> times() const { return times_; }

  /// Index of the sample equal to `t` (within the snap tolerance), if any.
  std::optional<std::size_t> find(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t - tolerance_at(t));
    if (it != times_.end() && std::abs(*it - t) <= tolerance_at(t)) {
      return static_cast<std::size_t>(it - times_.begin());
    }
    return std::nullopt;
  }

 private:
  static double tolerance_at(double t) { return kSnapTolerance * std::max(1.0, std::abs(t)); }

  void merge(double e) {
    auto it = std::lower_bound(times_.begin(), times_.end(), e);
    const double tol = tolerance_at(e);
    if (it != times_.end() && std::abs(*it - e) <= tol) {
      *it = e;
      return;
    }
    if (it != times_.begin() && std::abs(*(it - 1) - e) <= tol) {
      *(it - 1) = e;
      return;
    }
    times_.insert(it, e);
  }

  double dt_;
  double horizon_;
  std::vector<double> times_;
};

}  // namespace lionman
