#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include <json.hpp>

#include "lionman/core/errors.hpp"
#include "lionman/core/match.hpp"
#include "lionman/core/time_grid.hpp"
#include "lionman/disk/geometry.hpp"
#include "lionman/disk/paths.hpp"
#include "lionman/disk/strategies.hpp"
#include "lionman/finite/space.hpp"
#include "lionman/finite/step_path.hpp"
#include "lionman/finite/strategies.hpp"
#include "lionman/io/json_io.hpp"

namespace lionman::cli {

using nlohmann::json;

/// One side of a scenario: a strategy, a recorded path, or the clairvoyant
/// checking fixture (usable by `check` only).
template <class P>
struct Slot {
  Player<P> player;
  std::string label;
  bool clairvoyant = false;

  bool is_strategy() const { return std::holds_alternative<StrategyHandle<P>>(player); }
};

struct PlanarArena {
  using Point = disk::Point2;

  disk::PlanarSpace space;
  Slot<disk::Point2> lion;
  Slot<disk::Point2> man;
  double tolerance = 1e-9;

  CapturePredicate<disk::Point2> capture() const {
    return CapturePredicate<disk::Point2>::within(
        tolerance, [](const disk::Point2& a, const disk::Point2& b) { return disk::distance(a, b); });
  }
  SpaceCheck<disk::Point2> in_space() const {
    return [s = space](const disk::Point2& p) { return s.contains(p); };
  }
};

struct FiniteArena {
  using Point = finite::PointId;

  std::shared_ptr<const finite::FiniteSpace> space;
  Slot<finite::PointId> lion;
  Slot<finite::PointId> man;

  CapturePredicate<finite::PointId> capture() const { return CapturePredicate<finite::PointId>::exact(); }
  SpaceCheck<finite::PointId> in_space() const {
    return [s = space](const finite::PointId& p) { return s->contains(p); };
  }
};

struct Scenario {
  std::filesystem::path source;
  double dt = 0.01;
  double horizon = 1.0;
  EvalMode mode = EvalMode::strict;
  std::uint64_t seed = 0;
  std::variant<PlanarArena, FiniteArena> arena;
};

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where + " must be a number");
  return j.get<double>();
}

/// Inline JSON, or a string naming a file relative to the scenario.
inline json inline_or_file(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) return io::load_json_file(base / j.get<std::string>());
  return j;
}

inline EvalMode parse_mode(const std::string& s) {
  if (s == "strict") return EvalMode::strict;
  if (s == "closed") return EvalMode::closed;
  throw FormatError("eval_mode must be \"strict\" or \"closed\", got '" + s + "'");
}

struct PlayerJson {
  std::optional<std::string> strategy;
  json params = json::object();
  std::optional<json> recorded;
};

inline PlayerJson parse_player(const json& j, const char* role) {
  const std::string where = std::string("\"") + role + "\"";
  if (!j.is_object()) throw FormatError(where + " must be an object");
  const bool has_strategy = j.contains("strategy");
  const bool has_recorded = j.contains("recorded");
  if (has_strategy == has_recorded) throw FormatError(where + " needs exactly one of \"strategy\" and \"recorded\"");
  PlayerJson p;
  if (has_strategy) {
    if (!j.at("strategy").is_string()) throw FormatError(where + ".strategy must be a string");
    p.strategy = j.at("strategy").get<std::string>();
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw FormatError(where + ".params must be an object");
      p.params = j.at("params");
    }
  } else {
    p.recorded = j.at("recorded");
  }
  return p;
}

// ---- planar --------------------------------------------------------------

inline disk::Point2 default_start(disk::PlanarKind kind, Role role) {
  switch (kind) {
    case disk::PlanarKind::disk: return role == Role::lion ? disk::Point2{0.0, 0.0} : disk::Point2{1.0, 0.0};
    case disk::PlanarKind::circle: return role == Role::lion ? disk::Point2{1.0, 0.0} : disk::Point2{-1.0, 0.0};
    case disk::PlanarKind::square: return role == Role::lion ? disk::Point2{0.0, 0.0} : disk::Point2{1.0, 1.0};
  }
  return {};
}

inline Path<disk::Point2> planar_recorded(const json& rec, const disk::PlanarSpace& space, disk::Point2 start,
                                          const Scenario& sc, Role role) {
  if (rec.is_object() && rec.contains("generator")) {
    const std::string kind = rec.at("generator").get<std::string>();
    const auto index = rec.value("index", std::uint64_t{0});
    if (kind == "spline") return disk::random_planar_path(space, start, sc.seed, index, sc.horizon);
    if (kind == "lion-corpus") {
      if (space.kind() != disk::PlanarKind::disk || role != Role::lion) {
        throw FormatError("generator \"lion-corpus\" produces disk lion paths only");
      }
      return disk::random_lion_path(sc.seed, index, sc.horizon).path;
    }
    throw FormatError("unknown path generator '" + kind + "'");
  }
  const json doc = inline_or_file(rec, sc.source.parent_path());
  return io::sampled_path_from_json(space, doc);
}

inline Slot<disk::Point2> planar_slot(const PlayerJson& pj, Role role, const disk::PlanarSpace& space,
                                      disk::Point2 own_start, disk::Point2 other_start, const Scenario& sc) {
  const std::string role_name(to_string(role));
  if (pj.recorded) {
    auto path = planar_recorded(*pj.recorded, space, own_start, sc, role);
    return {path, "recorded " + role_name};
  }
  const std::string& name = *pj.strategy;
  if (name == "clairvoyant") return {Path<disk::Point2>{}, name, true};
  if (role == Role::lion) {
    if (name == "hausdorff") {
      if (pj.params.contains("gamma")) {
        const json doc = inline_or_file(pj.params.at("gamma"), sc.source.parent_path());
        return {disk::make_hausdorff_lion(io::sampled_path_from_json(space, doc), space), name};
      }
      return {disk::make_hausdorff_lion(space, own_start, other_start), name};
    }
    throw FormatError("unknown lion strategy '" + name + "' for space " + std::string(space.name()));
  }
  if (name == "besicovitch") {
    if (space.kind() != disk::PlanarKind::disk) throw FormatError("besicovitch runs in the disk only");
    if (!(own_start == disk::BesicovitchMan::kStart)) throw FormatError("besicovitch starts at [1, 0]");
    return {disk::make_besicovitch_man(), name};
  }
  if (name == "antipodal") return {disk::make_fixed_point_free_man(disk::antipodal_map(), space, other_start, name), name};
  if (name == "rotation") {
    const double turns = number(require(pj.params, "turns", "rotation params"), "rotation turns");
    return {disk::make_fixed_point_free_man(disk::rotation_map(turns), space, other_start, name), name};
  }
  throw FormatError("unknown man strategy '" + name + "' for space " + std::string(space.name()));
}

// ---- finite --------------------------------------------------------------

inline Slot<finite::PointId> finite_slot(const PlayerJson& pj, Role role,
                                         const std::shared_ptr<const finite::FiniteSpace>& space,
                                         finite::PointId own_start, const Scenario& sc) {
  const std::string role_name(to_string(role));
  if (pj.recorded) {
    const json doc = inline_or_file(*pj.recorded, sc.source.parent_path());
    auto path = io::step_path_from_json(*space, doc);
    if (!finite::is_continuous(*space, path)) throw FormatError("recorded " + role_name + " path is not continuous");
    return {finite::as_path(std::move(path)), "recorded " + role_name};
  }
  const std::string& name = *pj.strategy;
  if (name == "clairvoyant") return {Path<finite::PointId>{}, name, true};
  if (role == Role::lion) {
    if (name == "aspace") {
      const auto len = pj.params.value("schedule_length", finite::AspaceLion::kDefaultScheduleLength);
      return {finite::make_aspace_lion(space, own_start, len), name};
    }
    throw FormatError("unknown lion strategy '" + name + "' for a finite space");
  }
  return {finite::make_fixture_man(name, space, own_start), name};
}

inline finite::PointId finite_start(const json& start, const char* role, const finite::FiniteSpace& space,
                                    finite::PointId fallback) {
  if (!start.contains(role)) return fallback;
  const auto& v = start.at(role);
  if (!v.is_string()) throw FormatError(std::string("finite start.") + role + " must be a point name");
  return space.id(v.get<std::string>());
}

}  // namespace detail

/// Parses a scenario document. `source` anchors relative file references.
inline Scenario parse_scenario(const json& doc, const std::filesystem::path& source) {
  try {
    if (!doc.is_object()) throw FormatError("scenario must be a JSON object");
    Scenario sc;
    sc.source = source;
    const json& grid = detail::require(doc, "grid", "scenario");
    sc.dt = detail::number(detail::require(grid, "dt", "grid"), "grid.dt");
    sc.horizon = detail::number(detail::require(grid, "horizon", "grid"), "grid.horizon");
    if (!(sc.dt > 0.0) || !(sc.horizon >= 0.0)) throw FormatError("grid needs dt > 0 and horizon >= 0");
    if (doc.contains("eval_mode")) sc.mode = detail::parse_mode(doc.at("eval_mode").get<std::string>());
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned()) throw FormatError("seed must be a non-negative integer");
      sc.seed = doc.at("seed").get<std::uint64_t>();
    }
    const auto lion_json = detail::parse_player(detail::require(doc, "lion", "scenario"), "lion");
    const auto man_json = detail::parse_player(detail::require(doc, "man", "scenario"), "man");
    const json start = doc.value("start", json::object());
    const json& space_json = detail::require(doc, "space", "scenario");

    if (space_json.is_string()) {
      const auto space = disk::PlanarSpace::parse(space_json.get<std::string>());
      PlanarArena arena{space, {}, {}, doc.value("capture_tolerance", 1e-9)};
      if (!(arena.tolerance >= 0.0)) throw FormatError("capture_tolerance must be >= 0");
      auto start_of = [&](const char* role, Role r) {
        const auto p = start.contains(role) ? io::point2_from_json(start.at(role)) : detail::default_start(space.kind(), r);
        if (!space.contains(p)) throw FormatError(std::string("start.") + role + " lies outside the space");
        return p;
      };
      disk::Point2 lion_start = start_of("lion", Role::lion);
      disk::Point2 man_start = start_of("man", Role::man);
      // Recorded players start wherever their paths start; strategies are
      // built once both starts are known.
      if (lion_json.recorded) {
        arena.lion = detail::planar_slot(lion_json, Role::lion, space, lion_start, man_start, sc);
        lion_start = std::get<1>(arena.lion.player)(0.0);
      }
      if (man_json.recorded) {
        arena.man = detail::planar_slot(man_json, Role::man, space, man_start, lion_start, sc);
        man_start = std::get<1>(arena.man.player)(0.0);
      }
      if (lion_json.strategy) arena.lion = detail::planar_slot(lion_json, Role::lion, space, lion_start, man_start, sc);
      if (man_json.strategy) arena.man = detail::planar_slot(man_json, Role::man, space, man_start, lion_start, sc);
      sc.arena = std::move(arena);
      return sc;
    }

    if (!space_json.is_object() || !space_json.contains("finite")) {
      throw FormatError("space must be \"disk\", \"circle\", \"square\" or {\"finite\": ...}");
    }
    auto space = std::make_shared<const finite::FiniteSpace>(
        io::space_from_json(detail::inline_or_file(space_json.at("finite"), source.parent_path())));
    if (doc.contains("capture_tolerance") && doc.at("capture_tolerance") != 0) {
      throw FormatError("finite spaces use exact capture; capture_tolerance must be 0");
    }
    const auto pts = space->points();
    const auto lion_start = detail::finite_start(start, "lion", *space, pts.back());
    const auto man_start = detail::finite_start(start, "man", *space, pts.front());
    FiniteArena arena{space, detail::finite_slot(lion_json, Role::lion, space, lion_start, sc),
                      detail::finite_slot(man_json, Role::man, space, man_start, sc)};
    sc.arena = std::move(arena);
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  } catch (const PreconditionError& e) {
    throw FormatError(std::string("scenario: ") + e.what());
  }
}

inline Scenario load_scenario(const std::filesystem::path& file) {
  return parse_scenario(io::load_json_file(file), file);
}

/// Time grid for the scenario with every strategy's event times merged in.
template <class Arena>
TimeGrid scenario_grid(const Scenario& sc, const Arena& arena) {
  return make_grid<typename Arena::Point>(sc.dt, sc.horizon, {&arena.lion.player, &arena.man.player});
}

}  // namespace lionman::cli
