#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "lionman/core/errors.hpp"

namespace lionman {

/// Capture test between the two players' positions.
///
/// Exact mode compares points for identity (finite spaces). Tolerance mode
/// declares capture when metric(a, b) <= epsilon (continuum spaces).
template <class P>
class CapturePredicate {
 public:
  using Metric = std::function<double(const P&, const P&)>;

  static CapturePredicate exact() { return CapturePredicate(); }

  static CapturePredicate within(double epsilon, Metric metric) {
    if (!(epsilon >= 0.0)) throw PreconditionError("capture tolerance must be >= 0");
    if (!metric) throw PreconditionError("tolerance capture needs a metric");
    CapturePredicate c;
    c.epsilon_ = epsilon;
    c.metric_ = std::move(metric);
    return c;
  }

  bool is_exact() const { return !metric_; }
  double epsilon() const { return epsilon_; }

  std::optional<double> distance(const P& a, const P& b) const {
    if (!metric_) return std::nullopt;
    return metric_(a, b);
  }

  bool captured(const P& lion, const P& man) const {
    if (!metric_) return lion == man;
    return metric_(lion, man) <= epsilon_;
  }

 private:
  CapturePredicate() = default;

  double epsilon_ = 0.0;
  Metric metric_;
};

template <class P>
struct TraceSample {
  double t;
  P lion;
  P man;
  std::optional<double> dist;
  bool captured = false;
};

/// Recorded positions of both players, up to and including capture (or the
/// horizon).
template <class P>
struct Trace {
  std::vector<TraceSample<P>> samples;
  std::optional<double> captured_at;
  std::optional<std::size_t> capture_step;
  std::optional<double> min_distance;

  bool captured() const { return captured_at.has_value(); }
};

}  // namespace lionman
