#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lionman/core/errors.hpp"

namespace lionman::finite {

/// Index of a point in a FiniteSpace. Indices follow the lexicographic order
/// of the point names.
struct PointId {
  std::uint32_t index = 0;

  friend auto operator<=>(const PointId&, const PointId&) = default;
};

/// Sorted, duplicate-free set of points.
using PointSet = std::vector<PointId>;

/// Finite topological space stored as its specialization preorder.
///
/// Convention: x <= y iff x lies in every open set containing y, i.e.
/// x is in U_y, the minimal open set of y. Open sets are exactly the
/// down-sets of the preorder.
class FiniteSpace {
 public:
  /// Largest space for which open sets are enumerated.
  static constexpr std::size_t kMaxEnumerable = 20;

  /// Builds the space from pairs (a, b) meaning a <= b, closed under
  /// reflexivity and transitivity.
  static FiniteSpace from_relation(std::vector<std::string> names,
                                   const std::vector<std::pair<std::string, std::string>>& leq) {
    FiniteSpace s(std::move(names));
    for (const auto& [a, b] : leq) s.set(s.id(a), s.id(b));
    s.close_transitively();
    s.finish();
    return s;
  }

  /// Builds the space from its full family of open sets, which must contain
  /// the empty set and the whole space and be closed under union and
  /// intersection.
  static FiniteSpace from_opens(std::vector<std::string> names, const std::vector<std::vector<std::string>>& opens) {
    FiniteSpace s(std::move(names));
    const std::size_t n = s.size();
    std::set<std::vector<bool>> family;
    for (const auto& open : opens) {
      std::vector<bool> member(n, false);
      for (const auto& p : open) member[s.id(p).index] = true;
      family.insert(std::move(member));
    }
    if (!family.count(std::vector<bool>(n, false)) || !family.count(std::vector<bool>(n, true))) {
      throw FormatError("open sets must include the empty set and the whole space");
    }
    for (const auto& a : family) {
      for (const auto& b : family) {
        std::vector<bool> u(n), i(n);
        for (std::size_t k = 0; k < n; ++k) {
          u[k] = a[k] || b[k];
          i[k] = a[k] && b[k];
        }
        if (!family.count(u) || !family.count(i)) {
          throw FormatError("open sets are not closed under union and intersection");
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        bool below = true;
        for (const auto& o : family) {
          if (o[y] && !o[x]) {
            below = false;
            break;
          }
        }
        if (below) s.leq_[x * n + y] = 1;
      }
    }
    s.finish();
    return s;
  }

  /// Builds the space from a full n*n relation matrix (row-major, entry
  /// [a*n + b] set iff a <= b) indexed like `names`. Throws unless the matrix
  /// is a preorder.
  static FiniteSpace from_matrix(std::vector<std::string> names, const std::vector<std::uint8_t>& leq) {
    const std::size_t n = names.size();
    if (leq.size() != n * n) throw FormatError("relation matrix has the wrong size");
    std::vector<std::string> original = names;
    FiniteSpace s(std::move(names));
    std::vector<std::uint32_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = s.id(original[i]).index;
    for (std::size_t a = 0; a < n; ++a) {
      if (!leq[a * n + a]) throw FormatError("relation is not reflexive");
      for (std::size_t b = 0; b < n; ++b) {
        if (leq[a * n + b]) s.leq_[map[a] * n + map[b]] = 1;
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (s.leq_[a * n + b] && s.leq_[b * n + c] && !s.leq_[a * n + c]) {
            throw FormatError("relation is not transitive");
          }
    s.finish();
    return s;
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(PointId p) const { return names_.at(p.index); }

  std::optional<PointId> find(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return PointId{static_cast<std::uint32_t>(it - names_.begin())};
  }

  PointId id(const std::string& name) const {
    if (auto p = find(name)) return *p;
    throw DomainError("unknown point '" + name + "'");
  }

  std::vector<PointId> points() const {
    std::vector<PointId> pts(size());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = PointId{static_cast<std::uint32_t>(i)};
    return pts;
  }

  bool contains(PointId p) const { return p.index < size(); }

  bool leq(PointId a, PointId b) const { return leq_[a.index * size() + b.index] != 0; }

  /// U_x = { y : y <= x }.
  PointSet minimal_open(PointId x) const {
    PointSet u;
    for (std::uint32_t y = 0; y < size(); ++y) {
      if (leq(PointId{y}, x)) u.push_back(PointId{y});
    }
    return u;
  }

  /// Antisymmetry of the preorder.
  bool is_t0() const {
    for (std::uint32_t a = 0; a < size(); ++a)
      for (std::uint32_t b = a + 1; b < size(); ++b)
        if (leq(PointId{a}, PointId{b}) && leq(PointId{b}, PointId{a})) return false;
    return true;
  }

  /// Bitmask of U_x; only for spaces with at most 64 points.
  std::uint64_t down_mask(PointId x) const { return down_masks_.at(x.index); }

  /// Open sets as bitmasks (only for spaces with at most kMaxEnumerable
  /// points; cached for small spaces).
  std::vector<std::uint32_t> open_masks() const {
    if (size() > kMaxEnumerable) {
      throw PreconditionError("open-set enumeration refused for spaces with more than 20 points");
    }
    if (!open_masks_.empty()) return open_masks_;
    return enumerate_open_masks();
  }

  /// Pairs (a, b) with a <= b and a != b, in index order.
  std::vector<std::pair<PointId, PointId>> relation_pairs() const {
    std::vector<std::pair<PointId, PointId>> pairs;
    for (std::uint32_t a = 0; a < size(); ++a)
      for (std::uint32_t b = 0; b < size(); ++b)
        if (a != b && leq(PointId{a}, PointId{b})) pairs.emplace_back(PointId{a}, PointId{b});
    return pairs;
  }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.names_ == b.names_ && a.leq_ == b.leq_;
  }

 private:
  explicit FiniteSpace(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    if (std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
      throw FormatError("duplicate point names");
    }
    leq_.assign(size() * size(), 0);
    for (std::size_t i = 0; i < size(); ++i) leq_[i * size() + i] = 1;
  }

  void set(PointId a, PointId b) { leq_[a.index * size() + b.index] = 1; }

  void close_transitively() {
    const std::size_t n = size();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq_[i * n + k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq_[k * n + j]) leq_[i * n + j] = 1;
  }

  void finish() {
    if (size() <= 64) {
      down_masks_.assign(size(), 0);
      for (std::uint32_t x = 0; x < size(); ++x)
        for (std::uint32_t y = 0; y < size(); ++y)
          if (leq(PointId{y}, PointId{x})) down_masks_[x] |= std::uint64_t{1} << y;
    }
    if (size() <= 12) open_masks_ = enumerate_open_masks();
  }

  std::vector<std::uint32_t> enumerate_open_masks() const {
    std::vector<std::uint32_t> opens;
    const std::uint32_t limit = std::uint32_t{1} << size();
    for (std::uint32_t m = 0; m < limit; ++m) {
      bool down_closed = true;
      for (std::uint32_t x = 0; x < size() && down_closed; ++x) {
        if ((m >> x & 1U) && (down_masks_[x] & ~static_cast<std::uint64_t>(m))) down_closed = false;
      }
      if (down_closed) opens.push_back(m);
    }
    return opens;
  }

  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::uint64_t> down_masks_;
  std::vector<std::uint32_t> open_masks_;
};

// ---------------------------------------------------------------------------
// Topology on top of the preorder
// ---------------------------------------------------------------------------

inline PointSet to_point_set(std::vector<PointId> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

inline PointSet mask_to_set(std::uint64_t mask) {
  PointSet s;
  for (std::uint32_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) s.push_back(PointId{i});
  return s;
}

/// Smallest open set containing `subset`: the union of U_y over its points.
inline PointSet open_hull(const FiniteSpace& space, const PointSet& subset) {
  std::vector<bool> in(space.size(), false);
  for (PointId y : subset) {
    if (!space.contains(y)) throw DomainError("open_hull: point outside the space");
    for (PointId x : space.minimal_open(y)) in[x.index] = true;
  }
  PointSet hull;
  for (std::uint32_t i = 0; i < space.size(); ++i)
    if (in[i]) hull.push_back(PointId{i});
  return hull;
}

inline bool is_open(const FiniteSpace& space, const PointSet& subset) { return open_hull(space, subset) == subset; }

/// Same points, reversed order: the open sets of the dual are the closed sets
/// of the original.
inline FiniteSpace dual(const FiniteSpace& space) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto [a, b] : space.relation_pairs()) pairs.emplace_back(space.name(b), space.name(a));
  return FiniteSpace::from_relation(space.names(), pairs);
}

/// Connected components of the comparability graph, each sorted, ordered by
/// their smallest point.
inline std::vector<PointSet> path_components(const FiniteSpace& space) {
  const std::size_t n = space.size();
  std::vector<int> comp(n, -1);
  std::vector<PointSet> out;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<std::uint32_t> q;
    q.push(s);
    comp[s] = c;
    while (!q.empty()) {
      const std::uint32_t u = q.front();
      q.pop();
      out.back().push_back(PointId{u});
      for (std::uint32_t v = 0; v < n; ++v) {
        if (comp[v] < 0 && (space.leq(PointId{u}, PointId{v}) || space.leq(PointId{v}, PointId{u}))) {
          comp[v] = c;
          q.push(v);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline bool is_path_connected(const FiniteSpace& space) { return path_components(space).size() <= 1; }

/// Lexicographically first point below every point, if one exists.
inline std::optional<PointId> minimum(const FiniteSpace& space) {
  for (PointId x : space.points()) {
    bool below_all = true;
    for (PointId y : space.points()) {
      if (!space.leq(x, y)) {
        below_all = false;
        break;
      }
    }
    if (below_all) return x;
  }
  return std::nullopt;
}

}  // namespace lionman::finite
