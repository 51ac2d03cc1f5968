#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lionman/core/errors.hpp"
#include "lionman/core/match.hpp"
#include "lionman/finite/space.hpp"
#include "lionman/finite/step_path.hpp"

namespace lionman::finite {

struct FalsifyResult {
  StepPath defeating_path;
  double capture_time = 1.0;
  PointId capture_point;
  /// First grid instant at which the man already coincides with the
  /// defeating path in the replay (may be earlier than capture_time).
  std::optional<double> earliest_coincidence;
};

/// Defeats any causal man strategy in a space with a minimum x0.
///
/// The lion path b goes from l down to x0 by t = 1/2 and stays there. The
/// man's response z = S(b)(1) is read off a replay; b' equals b on [0, 1) and
/// is z from t = 1 on, which is continuous because x0 lies below z. Since b'
/// and b agree before 1, a causal man answers b' with z as well, so he is
/// caught at t = 1. A different answer is reported as a causality violation.
inline FalsifyResult falsify_man_strategy(const FiniteSpace& space, PointId lion_start,
                                          const StrategyHandle<PointId>& man, double dt = 1.0 / 64.0) {
  if (man.role() != Role::man) throw PreconditionError("falsify_man_strategy expects a man strategy");
  if (!space.contains(lion_start)) throw DomainError("falsify_man_strategy: lion start outside the space");
  const auto x0 = minimum(space);
  if (!x0) throw PreconditionError("space has no minimum point");

  const StepPath descent = fence_path(space, lion_start, *x0, 0.5);
  const std::vector<double> events{0.5, 1.0};
  const TimeGrid grid(dt, 1.0, events);

  const PointId z = respond_to_path(man, grid, as_path(descent), EvalMode::closed).back();

  StepPath defeating = descent;
  defeating.breakpoints.push_back(1.0);
  defeating.instants.push_back(z);
  defeating.intervals.push_back(z);
  defeating = canonical(defeating);
  if (!is_continuous(space, defeating)) throw ContractViolation("falsifier built a discontinuous path");

  const auto replay = respond_to_path(man, grid, as_path(defeating), EvalMode::closed);
  if (replay.back() != z) {
    throw CausalityViolation("man strategy '" + man.name() +
                             "' answered differently at t=1 to paths that agree before t=1");
  }

  FalsifyResult result{defeating, 1.0, z, std::nullopt};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (replay[j] == defeating(grid[j])) {
      result.earliest_coincidence = grid[j];
      break;
    }
  }
  return result;
}

}  // namespace lionman::finite
