#pragma once

#include <vector>

#include "lionman/core/no_lookahead.hpp"

namespace lionman {

/// Deliberately non-causal responder: at each step it answers with the
/// opponent's position one sample ahead. Exists to prove the causality
/// tester can fail.
template <class P>
PathResponder<P> clairvoyant_responder() {
  return [](const TimeGrid& grid, const Path<P>& opponent) {
    std::vector<P> out;
    out.reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      out.push_back(opponent(grid[j + 1 < grid.size() ? j + 1 : j]));
    }
    return out;
  };
}

}  // namespace lionman
