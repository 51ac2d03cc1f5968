#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lionman/core/errors.hpp"
#include "lionman/core/strategy.hpp"

namespace lionman {

/// A retraction r: P -> Q onto a subspace, together with the inclusion of
/// that subspace back into P. Law: retract(include(q)) == q.
template <class P, class Q>
struct Retraction {
  std::function<Q(const P&)> retract;
  std::function<P(const Q&)> include;
};

template <class P>
Retraction<P, P> identity_retraction() {
  return {[](const P& p) { return p; }, [](const P& p) { return p; }};
}

/// Retraction along `outer` after `inner`: P -> Q -> R.
template <class P, class Q, class R>
Retraction<P, R> compose(Retraction<P, Q> inner, Retraction<Q, R> outer) {
  return {[inner, outer](const P& p) { return outer.retract(inner.retract(p)); },
          [inner, outer](const R& r) { return inner.include(outer.include(r)); }};
}

/// True iff retract(include(q)) == q for every given subspace point.
template <class P, class Q>
bool check_retraction_laws(const Retraction<P, Q>& r, std::span<const Q> subspace_points) {
  for (const Q& q : subspace_points) {
    if (!(r.retract(r.include(q)) == q)) return false;
  }
  return true;
}

namespace detail {

// Man strategy on P built from a man strategy on the subspace Q: the lion's
// samples are retracted before the inner strategy sees them.
template <class P, class Q>
class LiftedMan : public StrategyBase<LiftedMan<P, Q>, P> {
 public:
  LiftedMan(Retraction<P, Q> r, StrategyHandle<Q> inner) : r_(std::move(r)), inner_(std::move(inner)) {}

  Role role() const override { return Role::man; }
  std::string name() const override { return "lifted(" + inner_.name() + ")"; }
  void observe(const Sample<P>& s) override { inner_.observe({s.t, r_.retract(s.position)}); }
  P emit(double t) override { return r_.include(inner_.emit(t)); }
  std::vector<double> event_times() const override { return inner_.event_times(); }

 private:
  Retraction<P, Q> r_;
  StrategyHandle<Q> inner_;
};

// Lion strategy on the subspace Q built from a lion strategy on P: the man's
// samples are included into P and the outputs retracted onto Q.
template <class P, class Q>
class ProjectedLion : public StrategyBase<ProjectedLion<P, Q>, Q> {
 public:
  ProjectedLion(Retraction<P, Q> r, StrategyHandle<P> inner) : r_(std::move(r)), inner_(std::move(inner)) {}

  Role role() const override { return Role::lion; }
  std::string name() const override { return "projected(" + inner_.name() + ")"; }
  void observe(const Sample<Q>& s) override { inner_.observe({s.t, r_.include(s.position)}); }
  Q emit(double t) override { return r_.retract(inner_.emit(t)); }
  std::vector<double> event_times() const override { return inner_.event_times(); }

 private:
  Retraction<P, Q> r_;
  StrategyHandle<P> inner_;
};

}  // namespace detail

/// Transfers a man strategy on the subspace to the whole space. Outputs always
/// lie in the subspace; when the lion is in the subspace the inner strategy
/// already avoids it, and when it is outside it cannot coincide with the man.
template <class P, class Q>
StrategyHandle<P> lift_man_strategy(Retraction<P, Q> r, StrategyHandle<Q> man_on_subspace) {
  if (man_on_subspace.role() != Role::man) throw PreconditionError("lift_man_strategy expects a man strategy");
  return StrategyHandle<P>::template make<detail::LiftedMan<P, Q>>(std::move(r), std::move(man_on_subspace));
}

/// Transfers a lion strategy on the whole space down to the subspace.
template <class P, class Q>
StrategyHandle<Q> project_lion_strategy(Retraction<P, Q> r, StrategyHandle<P> lion_on_space) {
  if (lion_on_space.role() != Role::lion) throw PreconditionError("project_lion_strategy expects a lion strategy");
  return StrategyHandle<Q>::template make<detail::ProjectedLion<P, Q>>(std::move(r), std::move(lion_on_space));
}

}  // namespace lionman
