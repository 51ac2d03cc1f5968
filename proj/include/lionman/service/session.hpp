#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "lionman/core/errors.hpp"
#include "lionman/core/strategy.hpp"
#include "lionman/core/trace.hpp"
#include "lionman/disk/geometry.hpp"
#include "lionman/disk/strategies.hpp"
#include "lionman/io/json_io.hpp"

namespace lionman::service {

using nlohmann::json;

struct SessionOptions {
  double dt = 1.0 / 60.0;
  double capture_tolerance = 1e-9;
  /// Largest lion displacement per second, in disk radii. Off when empty.
  std::optional<double> speed_cap;
  /// Allowed error on client timestamps against j * dt.
  double time_tolerance = 1e-9;
};

/// Step refused without changing the session.
class StepRejected : public Error {
 public:
  StepRejected(const std::string& what, std::optional<double> expected_t)
      : Error(what), expected_t_(expected_t) {}
  std::optional<double> expected_t() const { return expected_t_; }

 private:
  std::optional<double> expected_t_;
};

/// Step on a session that has already ended with a capture.
class SessionGone : public Error {
 public:
  using Error::Error;
};

struct StepResult {
  double t;
  disk::Point2 lion;  // accepted position after clamping
  disk::Point2 man;
  double dist;
  bool captured;
};

/// One live match: the client drives the lion tick by tick, the man answers
/// in strict mode from the lion samples accepted before the current tick.
class Session {
 public:
  Session(std::string id, disk::PlanarSpace space, SessionOptions options)
      : id_(std::move(id)), space_(space), options_(options) {
    if (!(options_.dt > 0.0)) throw PreconditionError("session dt must be positive");
    switch (space_.kind()) {
      case disk::PlanarKind::disk:
        lion_ = {0.0, 0.0};
        man_strategy_ = disk::make_besicovitch_man();
        break;
      case disk::PlanarKind::circle:
        lion_ = {1.0, 0.0};
        man_strategy_ = disk::make_fixed_point_free_man(disk::antipodal_map(), space_, lion_, "antipodal");
        break;
      case disk::PlanarKind::square: throw PreconditionError("sessions run in the disk or the circle");
    }
    const disk::Point2 man = man_strategy_.emit(0.0);
    record(0.0, lion_, man);
    man_strategy_.observe({0.0, lion_});
  }

  const std::string& id() const { return id_; }
  const SessionOptions& options() const { return options_; }
  std::string_view space_name() const { return space_.name(); }

  /// {"t": 0, "lion": [x, y], "man": [x, y]}
  json init_json() const {
    std::lock_guard lock(mutex_);
    const auto& s = trace_.samples.front();
    return json{{"t", s.t}, {"lion", io::to_json(s.lion)}, {"man", io::to_json(s.man)}};
  }

  double next_t() const {
    std::lock_guard lock(mutex_);
    return static_cast<double>(trace_.samples.size()) * options_.dt;
  }

  bool closed() const {
    std::lock_guard lock(mutex_);
    return trace_.captured();
  }

  StepResult step(double t, disk::Point2 lion) {
    std::lock_guard lock(mutex_);
    if (trace_.captured()) throw SessionGone("session " + id_ + " ended with a capture");
    const double expected = static_cast<double>(trace_.samples.size()) * options_.dt;
    if (!std::isfinite(t) || std::abs(t - expected) > options_.time_tolerance) {
      throw StepRejected("expected t=" + io::json(expected).dump(), expected);
    }
    if (!std::isfinite(lion.x) || !std::isfinite(lion.y)) throw FormatError("lion position must be finite");
    lion = space_.project(lion);
    if (options_.speed_cap) {
      const double reach = *options_.speed_cap * options_.dt;
      const disk::Point2 d = lion - lion_;
      const double len = disk::norm(d);
      if (len > reach) lion = space_.project(lion_ + (reach / len) * d);
    }
    const disk::Point2 man = man_strategy_.emit(expected);
    lion_ = lion;
    const auto& s = record(expected, lion, man);
    if (!s.captured) man_strategy_.observe({expected, lion});
    return {s.t, s.lion, s.man, *s.dist, s.captured};
  }

  std::string trace_jsonl() const {
    std::lock_guard lock(mutex_);
    return io::trace_jsonl(trace_);
  }

  Trace<disk::Point2> trace() const {
    std::lock_guard lock(mutex_);
    return trace_;
  }

 private:
  const TraceSample<disk::Point2>& record(double t, disk::Point2 lion, disk::Point2 man) {
    const double d = disk::distance(lion, man);
    TraceSample<disk::Point2> s{t, lion, man, d, d <= options_.capture_tolerance};
    if (!trace_.min_distance || d < *trace_.min_distance) trace_.min_distance = d;
    trace_.samples.push_back(s);
    if (s.captured) {
      trace_.captured_at = t;
      trace_.capture_step = trace_.samples.size() - 1;
    }
    return trace_.samples.back();
  }

  std::string id_;
  disk::PlanarSpace space_;
  SessionOptions options_;
  StrategyHandle<disk::Point2> man_strategy_;
  disk::Point2 lion_;
  Trace<disk::Point2> trace_;
  mutable std::mutex mutex_;
};

/// All live sessions. Ended sessions stay readable (trace) until the
/// registry is destroyed.
class SessionRegistry {
 public:
  explicit SessionRegistry(SessionOptions options = {}) : options_(options), rng_(std::random_device{}()) {}

  const SessionOptions& options() const { return options_; }

  /// Accepts an empty body or {"space": "disk" | "circle"}; anything else
  /// (finite spaces, the square) is refused with PreconditionError.
  std::shared_ptr<Session> create(const json& request = json::object()) {
    disk::PlanarSpace space(disk::PlanarKind::disk);
    if (request.is_object() && request.contains("space")) {
      const auto& s = request.at("space");
      if (!s.is_string()) throw PreconditionError("sessions support the disk and the circle only");
      const std::string name = s.get<std::string>();
      if (name != "disk" && name != "circle") throw PreconditionError("sessions support the disk and the circle only");
      space = disk::PlanarSpace::parse(name);
    } else if (!request.is_null() && !request.is_object()) {
      throw FormatError("session request must be a JSON object");
    }
    std::lock_guard lock(mutex_);
    auto session = std::make_shared<Session>(fresh_id(), space, options_);
    sessions_.emplace(session->id(), session);
    return session;
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
  }

 private:
  std::string fresh_id() {
    std::ostringstream s;
    s << std::hex << std::setfill('0') << std::setw(16) << rng_() << std::setw(8) << ++counter_;
    return s.str();
  }

  SessionOptions options_;
  std::mt19937_64 rng_;
  std::uint64_t counter_ = 0;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  mutable std::mutex mutex_;
};

/// Parses a client frame {"t": float, "lion": [x, y]}.
inline std::pair<double, disk::Point2> parse_step_frame(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("frame is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("t") || !j.at("t").is_number() || !j.contains("lion")) {
    throw FormatError("frame must be {\"t\": number, \"lion\": [x, y]}");
  }
  return {j.at("t").get<double>(), io::point2_from_json(j.at("lion"))};
}

/// Answer frame for a step request, or an error object.
inline std::string handle_step_frame(Session& session, const std::string& text) {
  nlohmann::ordered_json reply;
  try {
    const auto [t, lion] = parse_step_frame(text);
    const auto r = session.step(t, lion);
    reply["t"] = r.t;
    reply["man"] = nlohmann::ordered_json(io::to_json(r.man));
    reply["dist"] = r.dist;
    reply["captured"] = r.captured;
  } catch (const StepRejected& e) {
    reply["error"] = "out_of_order";
    reply["message"] = e.what();
    if (e.expected_t()) reply["expected_t"] = *e.expected_t();
  } catch (const SessionGone& e) {
    reply["error"] = "gone";
    reply["message"] = e.what();
  } catch (const FormatError& e) {
    reply["error"] = "bad_frame";
    reply["message"] = e.what();
  }
  return reply.dump();
}

}  // namespace lionman::service
