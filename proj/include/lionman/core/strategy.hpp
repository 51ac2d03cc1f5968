#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lionman/core/errors.hpp"

namespace lionman {

enum class Role { lion, man };

/// How much of the opponent's history a strategy sees when it emits step j.
///   strict: opponent samples at steps < j (live play, strategy vs strategy)
///   closed: opponent samples at steps <= j (only against a recorded path)
enum class EvalMode { strict, closed };

inline std::string_view to_string(Role r) { return r == Role::lion ? "lion" : "man"; }
inline std::string_view to_string(EvalMode m) { return m == EvalMode::strict ? "strict" : "closed"; }

template <class P>
struct Sample {
  double t;
  P position;
};

/// A continuous-time path, evaluated at whatever instants the engine asks for.
template <class P>
using Path = std::function<P(double)>;

/// Causal online transducer. The engine feeds opponent samples in time order
/// through observe() and asks for the own position through emit(); a strategy
/// never sees opponent samples the evaluation mode does not grant.
template <class P>
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual Role role() const = 0;
  virtual std::string name() const = 0;
  virtual void observe(const Sample<P>& opponent) = 0;
  virtual P emit(double t) = 0;
  /// Instants the strategy needs sampled exactly (schedule times, kinks).
  virtual std::vector<double> event_times() const { return {}; }
  virtual std::unique_ptr<Strategy> clone() const = 0;
};

/// CRTP helper providing clone() through the derived copy constructor.
template <class Derived, class P>
class StrategyBase : public Strategy<P> {
 public:
  std::unique_ptr<Strategy<P>> clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
};

/// Value-semantic owner of a strategy; copying clones the full state.
template <class P>
class StrategyHandle {
 public:
  StrategyHandle() = default;
  explicit StrategyHandle(std::unique_ptr<Strategy<P>> impl) : impl_(std::move(impl)) {}

  template <class S, class... Args>
  static StrategyHandle make(Args&&... args) {
    return StrategyHandle(std::make_unique<S>(std::forward<Args>(args)...));
  }

  StrategyHandle(const StrategyHandle& other) : impl_(other.impl_ ? other.impl_->clone() : nullptr) {}
  StrategyHandle& operator=(const StrategyHandle& other) {
    if (this != &other) impl_ = other.impl_ ? other.impl_->clone() : nullptr;
    return *this;
  }
  StrategyHandle(StrategyHandle&&) noexcept = default;
  StrategyHandle& operator=(StrategyHandle&&) noexcept = default;

  explicit operator bool() const { return impl_ != nullptr; }

  Role role() const { return get().role(); }
  std::string name() const { return get().name(); }
  void observe(const Sample<P>& s) { get().observe(s); }
  P emit(double t) { return get().emit(t); }
  std::vector<double> event_times() const { return get().event_times(); }

 private:
  Strategy<P>& get() const {
    if (!impl_) throw PreconditionError("empty strategy handle");
    return *impl_;
  }

  std::unique_ptr<Strategy<P>> impl_;
};

/// A participant in a match: either an evaluated strategy or a recorded path.
template <class P>
using Player = std::variant<StrategyHandle<P>, Path<P>>;

}  // namespace lionman
