#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lionman/core/errors.hpp"
#include "lionman/core/trace.hpp"
#include "lionman/disk/geometry.hpp"
#include "lionman/finite/space.hpp"
#include "lionman/finite/step_path.hpp"

namespace lionman::io {

using nlohmann::json;

inline json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("'" + path.string() + "': " + e.what());
  }
}

inline void save_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Planar points and sampled paths
// ---------------------------------------------------------------------------

inline json to_json(disk::Point2 p) { return json::array({p.x, p.y}); }

inline disk::Point2 point2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("expected a point [x, y], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

/// {"times": [...], "points": [[x, y], ...]}
inline disk::SampledPath sampled_path_from_json(const disk::PlanarSpace& space, const json& j) {
  if (!j.is_object() || !j.contains("times") || !j.contains("points")) {
    throw FormatError("sampled path needs \"times\" and \"points\"");
  }
  std::vector<double> times;
  std::vector<disk::Point2> points;
  for (const auto& t : j.at("times")) {
    if (!t.is_number()) throw FormatError("sampled path times must be numbers");
    times.push_back(t.get<double>());
  }
  for (const auto& p : j.at("points")) points.push_back(point2_from_json(p));
  return disk::SampledPath(space, std::move(times), std::move(points));
}

inline json to_json(const disk::SampledPath& path) {
  json points = json::array();
  for (const auto& p : path.points()) points.push_back(to_json(p));
  return json{{"times", path.times()}, {"points", std::move(points)}};
}

// ---------------------------------------------------------------------------
// Finite spaces and step paths
// ---------------------------------------------------------------------------

/// {"points": [...], "leq": [[a, b], ...]} or {"points": [...], "opens": [[...], ...]}
inline finite::FiniteSpace space_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("points")) throw FormatError("finite space needs \"points\"");
    auto names = j.at("points").get<std::vector<std::string>>();
    const bool has_leq = j.contains("leq");
    const bool has_opens = j.contains("opens");
    if (has_leq == has_opens) throw FormatError("finite space needs exactly one of \"leq\" and \"opens\"");
    if (has_leq) {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& pr : j.at("leq")) {
        if (!pr.is_array() || pr.size() != 2) throw FormatError("\"leq\" entries must be pairs");
        pairs.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
      }
      return finite::FiniteSpace::from_relation(std::move(names), pairs);
    }
    return finite::FiniteSpace::from_opens(std::move(names),
                                           j.at("opens").get<std::vector<std::vector<std::string>>>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("finite space: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("finite space: ") + e.what());
  }
}

/// Canonical form: points in lexicographic order, strict relation pairs.
inline json to_json(const finite::FiniteSpace& space) {
  json leq = json::array();
  for (auto [a, b] : space.relation_pairs()) leq.push_back(json::array({space.name(a), space.name(b)}));
  return json{{"points", space.names()}, {"leq", std::move(leq)}};
}

/// {"breakpoints": [...], "intervals": [...], "instants": [...]}
inline finite::StepPath step_path_from_json(const finite::FiniteSpace& space, const json& j) {
  try {
    finite::StepPath path;
    path.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    path.intervals.clear();
    path.instants.clear();
    for (const auto& v : j.at("intervals")) path.intervals.push_back(space.id(v.get<std::string>()));
    for (const auto& v : j.at("instants")) path.instants.push_back(space.id(v.get<std::string>()));
    finite::validate(space, path);
    return path;
  } catch (const json::exception& e) {
    throw FormatError(std::string("step path: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("step path: ") + e.what());
  }
}

inline json to_json(const finite::FiniteSpace& space, const finite::StepPath& path) {
  json intervals = json::array(), instants = json::array();
  for (auto p : path.intervals) intervals.push_back(space.name(p));
  for (auto p : path.instants) instants.push_back(space.name(p));
  return json{{"breakpoints", path.breakpoints}, {"intervals", std::move(intervals)}, {"instants", std::move(instants)}};
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

/// One JSON object per line:
/// {"step": int, "t": float, "lion": <point>, "man": <point>, "dist": float|null, "captured": bool}
template <class P, class PointWriter>
void write_trace_jsonl(std::ostream& out, const Trace<P>& trace, PointWriter&& point_json) {
  for (std::size_t j = 0; j < trace.samples.size(); ++j) {
    const auto& s = trace.samples[j];
    nlohmann::ordered_json line;
    line["step"] = j;
    line["t"] = s.t;
    line["lion"] = nlohmann::ordered_json(point_json(s.lion));
    line["man"] = nlohmann::ordered_json(point_json(s.man));
    line["dist"] = s.dist ? nlohmann::ordered_json(*s.dist) : nlohmann::ordered_json(nullptr);
    line["captured"] = s.captured;
    out << line.dump() << '\n';
  }
}

template <class P, class PointWriter>
std::string trace_jsonl(const Trace<P>& trace, PointWriter&& point_json) {
  std::ostringstream out;
  write_trace_jsonl(out, trace, std::forward<PointWriter>(point_json));
  return out.str();
}

inline std::string trace_jsonl(const Trace<disk::Point2>& trace) {
  return trace_jsonl(trace, [](disk::Point2 p) { return to_json(p); });
}

inline std::string trace_jsonl(const Trace<finite::PointId>& trace, const finite::FiniteSpace& space) {
  return trace_jsonl(trace, [&space](finite::PointId p) { return space.name(p); });
}

}  // namespace lionman::io
