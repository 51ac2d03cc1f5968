#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "lionman/core/errors.hpp"
#include "lionman/core/strategy.hpp"
#include "lionman/core/time_grid.hpp"
#include "lionman/core/trace.hpp"

namespace lionman {

template <class P>
using SpaceCheck = std::function<bool(const P&)>;

/// Event times requested by a player (empty for recorded paths).
template <class P>
std::vector<double> event_times_of(const Player<P>& player) {
  if (const auto* s = std::get_if<StrategyHandle<P>>(&player)) return s->event_times();
  return {};
}

/// Grid over [0, horizon] with every event time of the given players merged in.
template <class P>
TimeGrid make_grid(double dt, double horizon, std::initializer_list<const Player<P>*> players) {
  std::vector<double> events;
  for (const auto* p : players) {
    auto e = event_times_of(*p);
    events.insert(events.end(), e.begin(), e.end());
  }
  std::sort(events.begin(), events.end());
  return TimeGrid(dt, horizon, events);
}

namespace detail {

template <class P>
void check_in_space(const SpaceCheck<P>& in_space, const P& p, Role who, double t) {
  if (in_space && !in_space(p)) {
    throw ContractViolation(std::string(to_string(who)) + " position outside the space at t=" +
                            std::to_string(t));
  }
}

inline void check_monotone(const TimeGrid& grid) {
  for (std::size_t j = 1; j < grid.size(); ++j) {
    if (!(grid[j] > grid[j - 1])) throw ContractViolation("non-monotone time grid");
  }
}

}  // namespace detail

/// Plays one match on the grid until capture or the horizon.
///
/// In strict mode each strategy's step j is emitted from opponent samples at
/// steps < j; with two strategies both move simultaneously. Closed mode is
/// only allowed against a recorded opponent, whose sample at step j is
/// observed before step j is emitted.
template <class P>
Trace<P> run_match(const TimeGrid& grid, Player<P> lion, Player<P> man,
                   const CapturePredicate<P>& capture, EvalMode mode,
                   const SpaceCheck<P>& in_space = {}) {
  auto* lion_s = std::get_if<StrategyHandle<P>>(&lion);
  auto* man_s = std::get_if<StrategyHandle<P>>(&man);
  auto* lion_p = std::get_if<Path<P>>(&lion);
  auto* man_p = std::get_if<Path<P>>(&man);
  if (!lion_s && !man_s) throw ContractViolation("run_match: at most one player may be recorded");
  if (lion_s && man_s && mode == EvalMode::closed) {
    throw ContractViolation("run_match: closed mode needs a recorded opponent");
  }
  if ((lion_p && !*lion_p) || (man_p && !*man_p)) throw ContractViolation("run_match: empty path");
  if (lion_s && lion_s->role() != Role::lion) throw ContractViolation("run_match: lion slot holds a man strategy");
  if (man_s && man_s->role() != Role::man) throw ContractViolation("run_match: man slot holds a lion strategy");
  detail::check_monotone(grid);

  Trace<P> trace;
  trace.samples.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid[j];
    P lion_pos = lion_p ? (*lion_p)(t) : P{};
    P man_pos = man_p ? (*man_p)(t) : P{};
    if (mode == EvalMode::closed) {
      if (lion_s) lion_s->observe({t, man_pos});
      if (man_s) man_s->observe({t, lion_pos});
    }
    if (lion_s) lion_pos = lion_s->emit(t);
    if (man_s) man_pos = man_s->emit(t);
    detail::check_in_space(in_space, lion_pos, Role::lion, t);
    detail::check_in_space(in_space, man_pos, Role::man, t);

    TraceSample<P> s{t, lion_pos, man_pos, capture.distance(lion_pos, man_pos),
                     capture.captured(lion_pos, man_pos)};
    if (s.dist && (!trace.min_distance || *s.dist < *trace.min_distance)) {
      trace.min_distance = s.dist;
    }
    trace.samples.push_back(s);
    if (s.captured) {
      trace.captured_at = t;
      trace.capture_step = j;
      break;
    }
    if (mode == EvalMode::strict) {
      if (lion_s) lion_s->observe({t, man_pos});
      if (man_s) man_s->observe({t, lion_pos});
    }
  }
  return trace;
}

/// Outputs of `strategy` against a recorded opponent at every grid step, with
/// no capture cut-off. This is the strategy viewed as a map from opponent
/// paths to own paths.
template <class P>
std::vector<P> respond_to_path(StrategyHandle<P> strategy, const TimeGrid& grid,
                               const Path<P>& opponent, EvalMode mode) {
  std::vector<P> out;
  out.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double t = grid[j];
    const P opp = opponent(t);
    if (mode == EvalMode::closed) strategy.observe({t, opp});
    out.push_back(strategy.emit(t));
    if (mode == EvalMode::strict) strategy.observe({t, opp});
  }
  return out;
}

}  // namespace lionman
