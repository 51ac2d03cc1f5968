#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "lionman/core/errors.hpp"
#include "lionman/core/strategy.hpp"
#include "lionman/finite/space.hpp"

namespace lionman::finite {

/// Piecewise-constant path in a finite space.
///
/// breakpoints: 0 = t_0 < t_1 < ... < t_k
/// intervals[i]: value on the open interval (t_i, t_{i+1}); the last one on
///               (t_k, +inf)
/// instants[i]:  value at the instant t_i
struct StepPath {
  std::vector<double> breakpoints{0.0};
  std::vector<PointId> intervals{PointId{}};
  std::vector<PointId> instants{PointId{}};

  static StepPath constant(PointId p) { return StepPath{{0.0}, {p}, {p}}; }

  std::size_t jumps() const { return breakpoints.size() - 1; }

  /// Value at time t >= 0.
  PointId operator()(double t) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    if (it == breakpoints.begin()) return instants.front();
    const auto i = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    return breakpoints[i] == t ? instants[i] : intervals[i];
  }

  PointId start() const { return instants.front(); }

  friend bool operator==(const StepPath&, const StepPath&) = default;
};

/// Throws FormatError unless the path is well formed on `space`.
inline void validate(const FiniteSpace& space, const StepPath& path) {
  const auto& b = path.breakpoints;
  if (b.empty() || b.front() != 0.0) throw FormatError("step path must start with breakpoint 0");
  if (path.intervals.size() != b.size() || path.instants.size() != b.size()) {
    throw FormatError("step path needs one interval value and one instant value per breakpoint");
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!std::isfinite(b[i])) throw FormatError("step path breakpoints must be finite");
    if (i > 0 && !(b[i] > b[i - 1])) throw FormatError("step path breakpoints must increase strictly");
    if (!space.contains(path.intervals[i]) || !space.contains(path.instants[i])) {
      throw FormatError("step path value outside the space");
    }
  }
}

/// Drops breakpoints i > 0 where instants[i] == intervals[i-1] == intervals[i].
inline StepPath canonical(const StepPath& path) {
  StepPath out{{path.breakpoints[0]}, {path.intervals[0]}, {path.instants[0]}};
  for (std::size_t i = 1; i < path.breakpoints.size(); ++i) {
    const PointId prev = out.intervals.back();
    if (path.instants[i] == prev && path.intervals[i] == prev) continue;
    out.breakpoints.push_back(path.breakpoints[i]);
    out.intervals.push_back(path.intervals[i]);
    out.instants.push_back(path.instants[i]);
  }
  return out;
}

inline Path<PointId> as_path(StepPath path) {
  return [p = std::move(path)](double t) { return p(t); };
}

/// Continuity by specialization: at every breakpoint the neighbouring
/// interval values lie below the instant value.
inline bool is_continuous(const FiniteSpace& space, const StepPath& path) {
  for (std::size_t i = 0; i < path.breakpoints.size(); ++i) {
    if (!space.leq(path.intervals[i], path.instants[i])) return false;
    if (i > 0 && !space.leq(path.intervals[i - 1], path.instants[i])) return false;
  }
  return true;
}

/// Continuity by definition: every open set has an open preimage in
/// [0, +inf). The preimage is a union of pieces; it is open iff each instant
/// it contains also contains the open intervals on both sides (only the right
/// one at t = 0).
inline bool is_continuous_oracle(const FiniteSpace& space, const StepPath& path) {
  const std::vector<std::uint32_t> opens = space.open_masks();
  const std::size_t k = path.breakpoints.size();
  for (std::uint32_t open : opens) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!(open >> path.instants[i].index & 1U)) continue;
      if (!(open >> path.intervals[i].index & 1U)) return false;
      if (i > 0 && !(open >> path.intervals[i - 1].index & 1U)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fences
// ---------------------------------------------------------------------------

/// Shortest sequence of consecutively comparable points from a to b. BFS over
/// the comparability graph, expanding neighbours in lexicographic order.
inline std::vector<PointId> shortest_fence(const FiniteSpace& space, PointId a, PointId b) {
  if (!space.contains(a) || !space.contains(b)) throw DomainError("shortest_fence: point outside the space");
  const std::size_t n = space.size();
  std::vector<std::int64_t> parent(n, -1);
  std::vector<bool> seen(n, false);
  std::queue<std::uint32_t> q;
  q.push(a.index);
  seen[a.index] = true;
  while (!q.empty() && !seen[b.index]) {
    const std::uint32_t u = q.front();
    q.pop();
    for (std::uint32_t v = 0; v < n; ++v) {
      if (seen[v]) continue;
      if (space.leq(PointId{u}, PointId{v}) || space.leq(PointId{v}, PointId{u})) {
        seen[v] = true;
        parent[v] = u;
        q.push(v);
      }
    }
  }
  if (!seen[b.index]) {
    throw PreconditionError("'" + space.name(a) + "' and '" + space.name(b) + "' lie in different path components");
  }
  std::vector<PointId> fence{b};
  for (std::uint32_t v = b.index; v != a.index; v = static_cast<std::uint32_t>(parent[v])) {
    fence.push_back(PointId{static_cast<std::uint32_t>(parent[v])});
  }
  std::reverse(fence.begin(), fence.end());
  return fence;
}

/// Appends the traversal of `fence` to `path`, which must currently end in
/// fence.front() after `start`. Jumps are evenly spaced in (start, arrival];
/// the value is fence.back() at `arrival` and afterwards.
///
/// An upward step c <= c' puts c' at the jump instant; a downward step
/// c >= c' keeps c at the instant. When the last step goes down, the jumps
/// are spaced so the last one lands strictly before `arrival`.
inline void append_fence(const FiniteSpace& space, StepPath& path, const std::vector<PointId>& fence, double start,
                         double arrival) {
  const std::size_t m = fence.size() - 1;
  if (m == 0) return;
  if (!(arrival > start)) throw PreconditionError("fence arrival must come after its start");
  const bool last_up = space.leq(fence[m - 1], fence[m]);
  const double spacing = (arrival - start) / static_cast<double>(last_up ? m : m + 1);
  for (std::size_t j = 1; j <= m; ++j) {
    const PointId from = fence[j - 1];
    const PointId to = fence[j];
    const double t = (last_up && j == m) ? arrival : start + spacing * static_cast<double>(j);
    path.breakpoints.push_back(t);
    path.instants.push_back(space.leq(from, to) ? to : from);
    path.intervals.push_back(to);
  }
}

/// Continuous step path from a (at t = 0) to b (at and after `arrival_time`)
/// along the shortest fence.
inline StepPath fence_path(const FiniteSpace& space, PointId a, PointId b, double arrival_time) {
  const auto fence = shortest_fence(space, a, b);
  StepPath path = StepPath::constant(a);
  append_fence(space, path, fence, 0.0, arrival_time);
  return path;
}

}  // namespace lionman::finite
