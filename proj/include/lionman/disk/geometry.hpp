#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "lionman/core/errors.hpp"
#include "lionman/core/strategy.hpp"

namespace lionman::disk {

/// A point of the plane; the closed unit disk, the unit circle and the unit
/// square are all subsets of it.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

using DiskPoint = Point2;

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// e^(2 pi i theta) with theta in turns.
inline Point2 from_turns(double theta) {
  const double a = 2.0 * std::numbers::pi * theta;
  return {std::cos(a), std::sin(a)};
}

/// Points with norm at most this count as the origin.
inline constexpr double kZeroThreshold = 1e-12;
/// Slack allowed when testing membership in the disk/circle/square.
inline constexpr double kMembershipSlack = 1e-12;

/// z / |z|. Undefined at the origin.
inline Point2 radial_retract(Point2 z) {
  const double r = norm(z);
  if (!(r > kZeroThreshold)) throw DomainError("radial_retract: input is the origin");
  return {z.x / r, z.y / r};
}

/// a + s (b - a), returning the endpoints exactly at s = 0 and s = 1.
inline Point2 lerp(Point2 a, Point2 b, double s) {
  if (s <= 0.0) return a;
  if (s >= 1.0) return b;
  return a + s * (b - a);
}

enum class PlanarKind { disk, circle, square };

/// One of the continuum arenas: closed unit disk, unit circle, unit square
/// [0,1]^2.
class PlanarSpace {
 public:
  explicit PlanarSpace(PlanarKind kind = PlanarKind::disk) : kind_(kind) {}

  static PlanarSpace parse(std::string_view name) {
    if (name == "disk") return PlanarSpace(PlanarKind::disk);
    if (name == "circle") return PlanarSpace(PlanarKind::circle);
    if (name == "square") return PlanarSpace(PlanarKind::square);
    throw FormatError("unknown planar space '" + std::string(name) + "'");
  }

  PlanarKind kind() const { return kind_; }

  std::string_view name() const {
    switch (kind_) {
      case PlanarKind::disk: return "disk";
      case PlanarKind::circle: return "circle";
      case PlanarKind::square: return "square";
    }
    return "disk";
  }

  bool contains(Point2 p) const {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
    switch (kind_) {
      case PlanarKind::disk: return norm(p) <= 1.0 + kMembershipSlack;
      case PlanarKind::circle: return std::abs(norm(p) - 1.0) <= kMembershipSlack;
      case PlanarKind::square:
        return p.x >= -kMembershipSlack && p.x <= 1.0 + kMembershipSlack && p.y >= -kMembershipSlack &&
               p.y <= 1.0 + kMembershipSlack;
    }
    return false;
  }

  /// Nearest point of the space; points already inside are returned as is.
  Point2 project(Point2 p) const {
    switch (kind_) {
      case PlanarKind::disk: {
        const double r = norm(p);
        return r <= 1.0 ? p : Point2{p.x / r, p.y / r};
      }
      case PlanarKind::circle: {
        const double r = norm(p);
        if (r <= kZeroThreshold) return {1.0, 0.0};
        if (std::abs(r - 1.0) <= kMembershipSlack) return p;
        return {p.x / r, p.y / r};
      }
      case PlanarKind::square:
        return {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
    }
    return p;
  }

  /// Finite sample of the space used by best-effort self-checks.
  std::vector<Point2> probe_points() const {
    std::vector<Point2> pts;
    switch (kind_) {
      case PlanarKind::disk:
        pts.push_back({0.0, 0.0});
        for (int r = 1; r <= 10; ++r) {
          for (int k = 0; k < 72; ++k) pts.push_back(0.1 * r * from_turns(k / 72.0));
        }
        break;
      case PlanarKind::circle:
        for (int k = 0; k < 720; ++k) pts.push_back(from_turns(k / 720.0));
        break;
      case PlanarKind::square:
        for (int i = 0; i <= 20; ++i) {
          for (int j = 0; j <= 20; ++j) pts.push_back({i / 20.0, j / 20.0});
        }
        break;
    }
    return pts;
  }

 private:
  PlanarKind kind_;
};

/// Recorded path through timed samples, linearly interpolated and projected
/// back into the space. Constant before the first and after the last sample.
class SampledPath {
 public:
  SampledPath(PlanarSpace space, std::vector<double> times, std::vector<Point2> points)
      : space_(space), times_(std::move(times)), points_(std::move(points)) {
    if (times_.empty() || times_.size() != points_.size()) {
      throw FormatError("sampled path needs matching, nonempty times and points");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
      if (!(times_[i] > times_[i - 1])) throw FormatError("sampled path times must increase strictly");
    }
    for (const auto& p : points_) {
      if (!space_.contains(p)) throw FormatError("sampled path leaves the space");
    }
  }

  Point2 operator()(double t) const {
    if (t <= times_.front()) return points_.front();
    if (t >= times_.back()) return points_.back();
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    const auto i = static_cast<std::size_t>(it - times_.begin());
    if (times_[i] == t) return points_[i];
    const double s = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
    return space_.project(lerp(points_[i - 1], points_[i], s));
  }

  const std::vector<double>& times() const { return times_; }
  const std::vector<Point2>& points() const { return points_; }
  const PlanarSpace& space() const { return space_; }

 private:
  PlanarSpace space_;
  std::vector<double> times_;
  std::vector<Point2> points_;
};

/// Path on [0,1] from a to b: straight segment in the disk and the square,
/// shorter arc on the circle. Constant outside [0,1].
inline Path<Point2> connect_path(const PlanarSpace& space, Point2 a, Point2 b) {
  if (!space.contains(a) || !space.contains(b)) throw PreconditionError("connect_path: endpoint outside the space");
  if (a == b) return [a](double) { return a; };
  if (space.kind() != PlanarKind::circle) {
    return [a, b](double t) { return lerp(a, b, t); };
  }
  const double start = std::atan2(a.y, a.x) / (2.0 * std::numbers::pi);
  double delta = std::atan2(b.y, b.x) / (2.0 * std::numbers::pi) - start;
  delta -= std::ceil(delta - 0.5);
  return [a, b, start, delta](double t) {
    if (t <= 0.0) return a;
    if (t >= 1.0) return b;
    return from_turns(start + t * delta);
  };
}

}  // namespace lionman::disk
