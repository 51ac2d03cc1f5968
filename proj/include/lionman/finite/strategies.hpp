#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lionman/core/errors.hpp"
#include "lionman/core/no_lookahead.hpp"
#include "lionman/core/random.hpp"
#include "lionman/core/strategy.hpp"
#include "lionman/finite/space.hpp"
#include "lionman/finite/step_path.hpp"

namespace lionman::finite {

// ---------------------------------------------------------------------------
// Pursuer for path-connected finite spaces
// ---------------------------------------------------------------------------

/// Visit schedule: the pursuit path sits at targets[n] at times[n], with
/// times t_n = 1 - 2^-n (n = 1, 2, ...) and targets cycling through all points
/// in lexicographic order.
struct VisitSchedule {
  std::vector<double> times;
  std::vector<PointId> targets;
};

inline VisitSchedule visit_schedule(const FiniteSpace& space, std::size_t length) {
  VisitSchedule s;
  for (std::size_t n = 1; n <= length; ++n) {
    s.times.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(n)));
    s.targets.push_back(PointId{static_cast<std::uint32_t>((n - 1) % space.size())});
  }
  return s;
}

/// Continuous step path from l that is at targets[n] at times[n], joining
/// consecutive targets by shortest fences. Constant after the last visit.
inline StepPath visiting_path(const FiniteSpace& space, PointId lion_start, const VisitSchedule& schedule) {
  StepPath path = StepPath::constant(lion_start);
  PointId at = lion_start;
  double from = 0.0;
  for (std::size_t n = 0; n < schedule.times.size(); ++n) {
    append_fence(space, path, shortest_fence(space, at, schedule.targets[n]), from, schedule.times[n]);
    at = schedule.targets[n];
    from = schedule.times[n];
  }
  return path;
}

/// Lion strategy for a path-connected finite space.
///
/// Phase 1 follows the visiting path. At the first schedule time t_n where
/// the man's sample lies in U_{y_n} (i.e. man <= y_n) the lion switches to
/// phase 2 and from then on copies the man's most recent sample strictly
/// before the current time.
///
/// Phase 2 is a sampled stand-in for copying a chosen germ representative: it
/// captures any piecewise-constant man whose pieces cover two consecutive grid
/// samples, which is the class of paths the grid can represent.
class AspaceLion : public StrategyBase<AspaceLion, PointId> {
 public:
  static constexpr std::size_t kDefaultScheduleLength = 40;

  AspaceLion(std::shared_ptr<const FiniteSpace> space, PointId lion_start,
             std::size_t schedule_length = kDefaultScheduleLength)
      : space_(std::move(space)) {
    if (!space_->contains(lion_start)) throw DomainError("AspaceLion: start outside the space");
    if (!is_path_connected(*space_)) throw PreconditionError("AspaceLion: space is not path-connected");
    schedule_ = visit_schedule(*space_, schedule_length);
    pursuit_ = visiting_path(*space_, lion_start, schedule_);
  }

  Role role() const override { return Role::lion; }
  std::string name() const override { return "aspace-lion"; }
  std::vector<double> event_times() const override { return schedule_.times; }

  void observe(const Sample<PointId>& man) override {
    before_latest_ = latest_;
    latest_ = man;
    if (trigger_) return;
    auto it = std::lower_bound(schedule_.times.begin(), schedule_.times.end(), man.t);
    if (it == schedule_.times.end() || *it != man.t) return;
    const auto n = static_cast<std::size_t>(it - schedule_.times.begin());
    if (space_->leq(man.position, schedule_.targets[n])) trigger_ = Trigger{n, man.t};
  }

  PointId emit(double t) override {
    if (trigger_ && t > trigger_->time) {
      if (latest_ && latest_->t < t) return latest_->position;
      return before_latest_->position;
    }
    return pursuit_(t);
  }

  struct Trigger {
    std::size_t index;  // zero-based position in the schedule
    double time;
  };

  const std::optional<Trigger>& trigger() const { return trigger_; }
  const StepPath& pursuit_path() const { return pursuit_; }
  const VisitSchedule& schedule() const { return schedule_; }

 private:
  std::shared_ptr<const FiniteSpace> space_;
  VisitSchedule schedule_;
  StepPath pursuit_;
  std::optional<Trigger> trigger_;
  std::optional<Sample<PointId>> latest_;
  std::optional<Sample<PointId>> before_latest_;
};

inline StrategyHandle<PointId> make_aspace_lion(std::shared_ptr<const FiniteSpace> space, PointId lion_start,
                                                std::size_t schedule_length = AspaceLion::kDefaultScheduleLength) {
  return StrategyHandle<PointId>::make<AspaceLion>(std::move(space), lion_start, schedule_length);
}

// ---------------------------------------------------------------------------
// Man fixtures
// ---------------------------------------------------------------------------

namespace detail {

// Keeps the opponent's most recent sample strictly before the query time.
class EarlierSample {
 public:
  void push(const Sample<PointId>& s) {
    before_latest_ = latest_;
    latest_ = s;
  }
  std::optional<PointId> before(double t) const {
    if (latest_ && latest_->t < t) return latest_->position;
    if (before_latest_ && before_latest_->t < t) return before_latest_->position;
    return std::nullopt;
  }

 private:
  std::optional<Sample<PointId>> latest_;
  std::optional<Sample<PointId>> before_latest_;
};

}  // namespace detail

/// Stays at its start forever.
class SitMan : public StrategyBase<SitMan, PointId> {
 public:
  explicit SitMan(PointId start) : at_(start) {}
  Role role() const override { return Role::man; }
  std::string name() const override { return "sit"; }
  void observe(const Sample<PointId>&) override {}
  PointId emit(double) override { return at_; }

 private:
  PointId at_;
};

/// Stays put unless the lion's last earlier sample is its own position; then
/// moves to the lexicographically first other point.
class AvoidLastMan : public StrategyBase<AvoidLastMan, PointId> {
 public:
  AvoidLastMan(std::shared_ptr<const FiniteSpace> space, PointId start) : space_(std::move(space)), at_(start) {}
  Role role() const override { return Role::man; }
  std::string name() const override { return "avoid-last"; }
  void observe(const Sample<PointId>& lion) override { seen_.push(lion); }
  PointId emit(double t) override {
    const auto lion = seen_.before(t);
    if (lion && *lion == at_) {
      for (PointId p : space_->points()) {
        if (p != *lion) {
          at_ = p;
          break;
        }
      }
    }
    return at_;
  }

 private:
  std::shared_ptr<const FiniteSpace> space_;
  detail::EarlierSample seen_;
  PointId at_;
};

/// Walks through the points in index order, one step per `period`, starting
/// from its start point. Ignores the lion.
class CycleMan : public StrategyBase<CycleMan, PointId> {
 public:
  CycleMan(std::shared_ptr<const FiniteSpace> space, PointId start, double period = 0.1)
      : n_(space->size()), start_(start), period_(period) {}
  Role role() const override { return Role::man; }
  std::string name() const override { return "cycle"; }
  void observe(const Sample<PointId>&) override {}
  PointId emit(double t) override {
    const auto k = static_cast<std::uint64_t>(std::floor(t / period_ + 1e-9));
    return PointId{static_cast<std::uint32_t>((start_.index + k) % n_)};
  }

 private:
  std::size_t n_;
  PointId start_;
  double period_;
};

/// Moves to the lexicographically last point strictly above the lion's last
/// earlier sample (any other point when there is none).
class FleeUpMan : public StrategyBase<FleeUpMan, PointId> {
 public:
  FleeUpMan(std::shared_ptr<const FiniteSpace> space, PointId start) : space_(std::move(space)), at_(start) {}
  Role role() const override { return Role::man; }
  std::string name() const override { return "flee-up"; }
  void observe(const Sample<PointId>& lion) override { seen_.push(lion); }
  PointId emit(double t) override {
    const auto lion = seen_.before(t);
    if (!lion) return at_;
    std::optional<PointId> above, other;
    for (PointId p : space_->points()) {
      if (p == *lion) continue;
      if (!other) other = p;
      if (space_->leq(*lion, p)) above = p;
    }
    if (above) at_ = *above;
    else if (other) at_ = *other;
    return at_;
  }

 private:
  std::shared_ptr<const FiniteSpace> space_;
  detail::EarlierSample seen_;
  PointId at_;
};

inline std::vector<std::string> fixture_man_names() { return {"sit", "avoid-last", "cycle", "flee-up"}; }

inline StrategyHandle<PointId> make_fixture_man(const std::string& name, std::shared_ptr<const FiniteSpace> space,
                                                PointId start) {
  if (!space->contains(start)) throw DomainError("man start outside the space");
  if (name == "sit") return StrategyHandle<PointId>::make<SitMan>(start);
  if (name == "avoid-last") return StrategyHandle<PointId>::make<AvoidLastMan>(std::move(space), start);
  if (name == "cycle") return StrategyHandle<PointId>::make<CycleMan>(std::move(space), start);
  if (name == "flee-up") return StrategyHandle<PointId>::make<FleeUpMan>(std::move(space), start);
  throw PreconditionError("unknown man strategy '" + name + "'");
}

// ---------------------------------------------------------------------------
// Forks
// ---------------------------------------------------------------------------

/// Seeded fork generator for finite spaces: after the fork time the path
/// takes random values on random pieces.
inline ForkGenerator<PointId> step_fork_generator(std::shared_ptr<const FiniteSpace> space, std::uint64_t seed) {
  return [space, seed](const Path<PointId>& base, double tf, std::size_t k) -> Path<PointId> {
    auto rng = seeded_rng(seed, 0x51ed270b27fd3a4dULL + k);
    std::vector<double> cuts;
    std::vector<PointId> values;
    double t = tf;
    for (int i = 0; i < 6; ++i) {
      cuts.push_back(t);
      values.push_back(PointId{static_cast<std::uint32_t>(uniform_index(rng, space->size()))});
      t += uniform(rng, 0.01, 0.3);
    }
    return [base, tf, cuts, values](double s) {
      if (s < tf) return base(s);
      auto it = std::upper_bound(cuts.begin(), cuts.end(), s);
      return values[static_cast<std::size_t>(it - cuts.begin()) - 1];
    };
  };
}

}  // namespace lionman::finite
