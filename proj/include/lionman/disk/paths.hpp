#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lionman/core/no_lookahead.hpp"
#include "lionman/core/random.hpp"
#include "lionman/disk/geometry.hpp"

namespace lionman::disk {

/// Uniform Catmull-Rom spline through control points at knots 0, h, 2h, ...;
/// constant after the last knot. Results are projected into the space.
class CatmullRomPath {
 public:
  CatmullRomPath(PlanarSpace space, double knot_spacing, std::vector<Point2> controls)
      : space_(space), h_(knot_spacing), c_(std::move(controls)) {}

  Point2 operator()(double t) const {
    if (t <= 0.0) return c_.front();
    const double u_all = t / h_;
    const auto last = c_.size() - 1;
    if (u_all >= static_cast<double>(last)) return c_.back();
    const auto i = static_cast<std::size_t>(u_all);
    const double u = u_all - static_cast<double>(i);
    const Point2 p0 = c_[i == 0 ? 0 : i - 1];
    const Point2 p1 = c_[i];
    const Point2 p2 = c_[i + 1];
    const Point2 p3 = c_[std::min(i + 2, last)];
    const double u2 = u * u;
    const double u3 = u2 * u;
    const Point2 q = 0.5 * ((2.0 * p1) + u * (p2 - p0) + u2 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) +
                            u3 * (3.0 * p1 - p0 - 3.0 * p2 + p3));
    return space_.project(q);
  }

 private:
  PlanarSpace space_;
  double h_;
  std::vector<Point2> c_;
};

/// Random point of the space. In the disk, a fraction lands exactly on the
/// boundary.
inline Point2 random_point(const PlanarSpace& space, std::mt19937_64& rng, double boundary_fraction = 0.3) {
  switch (space.kind()) {
    case PlanarKind::circle: return from_turns(uniform01(rng));
    case PlanarKind::square: return {uniform01(rng), uniform01(rng)};
    case PlanarKind::disk: {
      const double angle = uniform01(rng);
      const double r = uniform01(rng) < boundary_fraction ? 1.0 : std::sqrt(uniform01(rng));
      return r * from_turns(angle);
    }
  }
  return {};
}

/// Lion path from the origin: radius t/T up to the boundary, reached at t = T,
/// while the angle advances at a constant rate.
inline Path<Point2> spiral_path(std::mt19937_64& rng) {
  const double reach = uniform(rng, 0.5, 3.0);
  const double phase = uniform01(rng);
  const double rate = uniform(rng, -2.0, 2.0);
  return [reach, phase, rate](double t) {
    const double rho = std::min(1.0, std::max(0.0, t / reach));
    if (rho == 0.0) return Point2{0.0, 0.0};
    return rho * from_turns(phase + rate * t);
  };
}

/// Smooth random path from `start` through `knots` random control points.
inline Path<Point2> spline_path(const PlanarSpace& space, Point2 start, std::mt19937_64& rng, double horizon,
                                int knots = 8) {
  std::vector<Point2> controls{start};
  for (int k = 0; k < knots; ++k) controls.push_back(random_point(space, rng));
  return CatmullRomPath(space, horizon / knots, std::move(controls));
}

/// Polyline that alternates between the origin and random points, so the
/// path passes exactly through 0 every `segment` seconds.
inline Path<Point2> crossing_path(std::mt19937_64& rng, double horizon, double segment = 0.25) {
  const PlanarSpace disk(PlanarKind::disk);
  const auto n = static_cast<std::size_t>(std::ceil(horizon / segment)) + 1;
  std::vector<double> times;
  std::vector<Point2> points;
  for (std::size_t k = 0; k < n; ++k) {
    times.push_back(static_cast<double>(k) * segment);
    points.push_back(k % 2 == 0 ? Point2{0.0, 0.0} : random_point(disk, rng, 0.5));
  }
  return SampledPath(disk, std::move(times), std::move(points));
}

struct GeneratedPath {
  std::string kind;
  Path<Point2> path;
};

/// The index-th seeded lion path in the disk starting at the origin; kinds
/// cycle spiral, spline, crossing.
inline GeneratedPath random_lion_path(std::uint64_t seed, std::uint64_t index, double horizon) {
  auto rng = seeded_rng(seed, index);
  switch (index % 3) {
    case 0: return {"spiral", spiral_path(rng)};
    case 1: return {"spline", spline_path(PlanarSpace(PlanarKind::disk), {0.0, 0.0}, rng, horizon)};
    default: return {"crossing", crossing_path(rng, horizon)};
  }
}

/// Smooth seeded path in any planar space starting at `start`.
inline Path<Point2> random_planar_path(const PlanarSpace& space, Point2 start, std::uint64_t seed,
                                       std::uint64_t index, double horizon) {
  auto rng = seeded_rng(seed, index);
  return spline_path(space, start, rng, horizon);
}

/// Seeded path on the square's bottom edge (as x in [0, 1]) that stays
/// inside [0.1, 0.9]: a sum of two random sinusoids around 1/2.
inline Path<double> random_edge_path(std::uint64_t seed, std::uint64_t index) {
  auto rng = seeded_rng(seed, index);
  const double a1 = uniform(rng, 0.05, 0.2), f1 = uniform(rng, 1.0, 8.0), p1 = uniform(rng, 0.0, 6.3);
  const double a2 = uniform(rng, 0.0, 0.2), f2 = uniform(rng, 1.0, 8.0), p2 = uniform(rng, 0.0, 6.3);
  return [=](double t) { return 0.5 + a1 * std::sin(f1 * t + p1) + a2 * std::sin(f2 * t + p2); };
}

/// Seeded fork generator: the k-th continuation leaves base(t_f) along a
/// random drift plus oscillation, projected into the space.
inline ForkGenerator<Point2> planar_fork_generator(PlanarSpace space, std::uint64_t seed) {
  return [space, seed](const Path<Point2>& base, double tf, std::size_t k) -> Path<Point2> {
    auto rng = seeded_rng(seed, 0x9e3779b97f4a7c15ULL + k);
    const Point2 drift{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    const Point2 wobble{uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5)};
    const double freq = uniform(rng, 1.0, 20.0);
    const Point2 p0 = base(tf);
    return [space, base, tf, p0, drift, wobble, freq](double t) {
      if (t < tf) return base(t);
      if (t == tf) return p0;
      const double s = t - tf;
      return space.project(p0 + s * drift + std::sin(freq * s) * wobble);
    };
  };
}

}  // namespace lionman::disk
