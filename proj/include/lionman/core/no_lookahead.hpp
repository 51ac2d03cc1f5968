#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lionman/core/errors.hpp"
#include "lionman/core/match.hpp"
#include "lionman/core/strategy.hpp"
#include "lionman/core/time_grid.hpp"

namespace lionman {

/// A strategy in its offline form: the whole sampled response to a whole
/// opponent path. Anything shaped like this can be tested for causality,
/// including responders that are not built on the online interface.
template <class P>
using PathResponder = std::function<std::vector<P>(const TimeGrid&, const Path<P>&)>;

/// Produces the k-th divergent continuation of `base` forked at `fork_time`.
/// The returned path must agree with `base` strictly before `fork_time`.
template <class P>
using ForkGenerator = std::function<Path<P>(const Path<P>& base, double fork_time, std::size_t k)>;

struct Divergence {
  std::size_t fork_index;
  double fork_time;
  std::size_t step;
  double t;
};

struct NoLookaheadReport {
  bool passed = true;
  std::size_t forks_checked = 0;
  std::optional<Divergence> first_divergence;
};

template <class P>
PathResponder<P> responder_of(const StrategyHandle<P>& strategy, EvalMode mode) {
  return [strategy, mode](const TimeGrid& grid, const Path<P>& opponent) {
    return respond_to_path(strategy, grid, opponent, mode);
  };
}

/// Fork test of the no-lookahead rule.
///
/// For each fork time t_f the opponent path is replaced by a continuation
/// that agrees with the base before t_f. Outputs must then agree with the base
/// run at every step before t_f; at t_f itself they must agree in strict mode
/// (the step-f output only sees samples < t_f) and in closed mode whenever
/// the forked opponent sample at t_f equals the base sample.
template <class P>
NoLookaheadReport check_no_lookahead(const PathResponder<P>& responder, const TimeGrid& grid,
                                     const Path<P>& base, std::span<const double> fork_times,
                                     const ForkGenerator<P>& fork_generator, EvalMode mode) {
  std::vector<std::size_t> fork_steps;
  fork_steps.reserve(fork_times.size());
  for (double tf : fork_times) {
    auto idx = grid.find(tf);
    if (!idx) throw PreconditionError("fork time " + std::to_string(tf) + " is not a grid sample");
    fork_steps.push_back(*idx);
  }

  const std::vector<P> reference = responder(grid, base);
  NoLookaheadReport report;
  for (std::size_t k = 0; k < fork_steps.size(); ++k) {
    const std::size_t f = fork_steps[k];
    const double tf = grid[f];
    Path<P> forked = fork_generator(base, tf, k);
    for (std::size_t j = 0; j < f; ++j) {
      if (!(forked(grid[j]) == base(grid[j]))) {
        throw PreconditionError("fork generator disagrees with the base path before t=" +
                                std::to_string(tf));
      }
    }
    const bool check_fork_step =
        mode == EvalMode::strict || forked(tf) == base(tf);
    const std::size_t last = check_fork_step ? f : (f == 0 ? 0 : f - 1);
    const bool any = check_fork_step || f > 0;

    const std::vector<P> response = responder(grid, forked);
    ++report.forks_checked;
    if (!any) continue;
    for (std::size_t j = 0; j <= last; ++j) {
      if (!(response[j] == reference[j])) {
        report.passed = false;
        report.first_divergence = Divergence{k, tf, j, grid[j]};
        return report;
      }
    }
  }
  return report;
}

template <class P>
NoLookaheadReport check_no_lookahead(const StrategyHandle<P>& strategy, const TimeGrid& grid,
                                     const Path<P>& base, std::span<const double> fork_times,
                                     const ForkGenerator<P>& fork_generator, EvalMode mode) {
  return check_no_lookahead(responder_of(strategy, mode), grid, base, fork_times, fork_generator, mode);
}

}  // namespace lionman
