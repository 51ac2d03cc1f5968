#pragma once

#include <algorithm>

#include "lionman/core/retraction.hpp"
#include "lionman/disk/geometry.hpp"

namespace lionman::disk {

/// Unit square onto its bottom edge, edge points written as x in [0, 1].
inline Retraction<Point2, double> square_edge_retraction() {
  return {[](const Point2& p) { return std::clamp(p.x, 0.0, 1.0); }, [](const double& x) { return Point2{x, 0.0}; }};
}

}  // namespace lionman::disk
