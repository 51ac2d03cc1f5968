#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lionman/cli/scenario.hpp"
#include "lionman/core/clairvoyant.hpp"
#include "lionman/core/no_lookahead.hpp"
#include "lionman/core/random.hpp"
#include "lionman/finite/falsify.hpp"
#include "lionman/io/json_io.hpp"

namespace lionman::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_input = 2;
inline constexpr int contract_violation = 3;
inline constexpr int causality_failure = 4;
inline constexpr int no_minimum = 5;
}  // namespace exit_code

/// Shortest round-trip form of a double, as written in JSON ("1.0", "0.25").
inline std::string format_number(double x) { return nlohmann::json(x).dump(); }

/// Where output files go when no explicit path is given: $LIONMAN_OUT_DIR,
/// else the working directory.
inline std::filesystem::path default_output_dir() {
  if (const char* dir = std::getenv("LIONMAN_OUT_DIR"); dir && *dir) return dir;
  return ".";
}

inline std::filesystem::path output_path(const std::string& explicit_path, const std::string& default_name) {
  if (!explicit_path.empty()) return explicit_path;
  auto dir = default_output_dir();
  std::filesystem::create_directories(dir);
  return dir / default_name;
}

namespace detail {

inline std::string point_text(const PlanarArena&, const disk::Point2& p) {
  return "[" + format_number(p.x) + ", " + format_number(p.y) + "]";
}
inline std::string point_text(const FiniteArena& a, const finite::PointId& p) { return a.space->name(p); }

inline std::string trace_text(const PlanarArena&, const Trace<disk::Point2>& t) { return io::trace_jsonl(t); }
inline std::string trace_text(const FiniteArena& a, const Trace<finite::PointId>& t) {
  return io::trace_jsonl(t, *a.space);
}

// Opponent trajectory read back from a trace, used as a base path when the
// opponent is itself a strategy.
inline Path<disk::Point2> trajectory(const PlanarArena& a, const Trace<disk::Point2>& t, Role who) {
  std::vector<double> times;
  std::vector<disk::Point2> points;
  for (const auto& s : t.samples) {
    times.push_back(s.t);
    points.push_back(who == Role::lion ? s.lion : s.man);
  }
  return disk::SampledPath(a.space, std::move(times), std::move(points));
}

inline Path<finite::PointId> trajectory(const FiniteArena&, const Trace<finite::PointId>& t, Role who) {
  std::vector<double> times;
  std::vector<finite::PointId> points;
  for (const auto& s : t.samples) {
    times.push_back(s.t);
    points.push_back(who == Role::lion ? s.lion : s.man);
  }
  return [times, points](double s) {
    auto it = std::upper_bound(times.begin(), times.end(), s);
    return points[it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1];
  };
}

inline ForkGenerator<disk::Point2> fork_generator(const PlanarArena& a, std::uint64_t seed) {
  return disk::planar_fork_generator(a.space, seed);
}
inline ForkGenerator<finite::PointId> fork_generator(const FiniteArena& a, std::uint64_t seed) {
  return finite::step_fork_generator(a.space, seed);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOptions {
  std::string scenario;
  std::string out;
};

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  Scenario sc;
  try {
    sc = load_scenario(opt.scenario);
  } catch (const Error& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  return std::visit(
      [&](const auto& arena) -> int {
        if (arena.lion.clairvoyant || arena.man.clairvoyant) {
          err << "invalid scenario: the clairvoyant fixture is only available to `check`\n";
          return exit_code::invalid_input;
        }
        using P = typename std::decay_t<decltype(arena)>::Point;
        Trace<P> trace;
        try {
          const TimeGrid grid = scenario_grid(sc, arena);
          trace = run_match<P>(grid, arena.lion.player, arena.man.player, arena.capture(), sc.mode, arena.in_space());
        } catch (const Error& e) {
          err << "contract violation: " << e.what() << '\n';
          return exit_code::contract_violation;
        }
        const auto file = output_path(opt.out, std::filesystem::path(opt.scenario).stem().string() + ".trace.jsonl");
        std::ofstream f(file, std::ios::binary);
        if (!f) {
          err << "cannot write '" << file.string() << "'\n";
          return exit_code::invalid_input;
        }
        f << detail::trace_text(arena, trace);
        if (trace.captured()) {
          out << "captured at t=" << format_number(*trace.captured_at) << '\n';
        } else if (trace.min_distance) {
          out << "escaped, min_dist=" << format_number(*trace.min_distance) << '\n';
        } else {
          out << "escaped\n";
        }
        err << "trace: " << file.string() << '\n';
        return exit_code::ok;
      },
      sc.arena);
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckOptions {
  std::string scenario;
  std::size_t forks = 50;
  std::optional<std::uint64_t> seed;
};

inline int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  Scenario sc;
  try {
    sc = load_scenario(opt.scenario);
  } catch (const Error& e) {
    err << "invalid scenario: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  const std::uint64_t seed = opt.seed.value_or(sc.seed);
  return std::visit(
      [&](const auto& arena) -> int {
        using P = typename std::decay_t<decltype(arena)>::Point;
        const auto& lion = arena.lion;
        const auto& man = arena.man;
        if (lion.clairvoyant && man.clairvoyant) {
          err << "invalid scenario: at most one player may be the clairvoyant fixture\n";
          return exit_code::invalid_input;
        }
        if (!lion.is_strategy() && !man.is_strategy() && !lion.clairvoyant && !man.clairvoyant) {
          err << "invalid scenario: no strategy to check\n";
          return exit_code::invalid_input;
        }
        bool all_passed = true;
        try {
          const TimeGrid grid = scenario_grid(sc, arena);
          // Both players are strategies: each is checked against the other's
          // strict-mode trajectory.
          std::optional<Trace<P>> played;
          if (lion.is_strategy() && man.is_strategy()) {
            played = run_match<P>(grid, lion.player, man.player, arena.capture(), EvalMode::strict, arena.in_space());
          }
          auto rng = seeded_rng(seed, 0xc4ec);
          std::vector<double> fork_times;
          for (std::size_t k = 0; k < opt.forks && grid.size() > 1; ++k) {
            fork_times.push_back(grid[1 + uniform_index(rng, grid.size() - 1)]);
          }
          const EvalMode mode = played ? EvalMode::strict : sc.mode;
          const auto gen = detail::fork_generator(arena, seed);

          for (const auto* slot : {&lion, &man}) {
            if (!slot->is_strategy() && !slot->clairvoyant) continue;
            const Role role = slot == &lion ? Role::lion : Role::man;
            const auto& other = slot == &lion ? man : lion;
            Path<P> base = played ? detail::trajectory(arena, *played, role == Role::lion ? Role::man : Role::lion)
                                  : std::get<Path<P>>(other.player);
            const PathResponder<P> responder =
                slot->clairvoyant ? clairvoyant_responder<P>()
                                  : responder_of(std::get<StrategyHandle<P>>(slot->player), mode);
            const auto report = check_no_lookahead<P>(responder, grid, base, fork_times, gen, mode);
            out << slot->label << " (" << to_string(role) << ", " << to_string(mode) << "): ";
            if (report.passed) {
              out << "pass, " << report.forks_checked << " forks\n";
            } else {
              all_passed = false;
              const auto& d = *report.first_divergence;
              out << "FAIL: fork " << d.fork_index << " at t_f=" << format_number(d.fork_time)
                  << " changes the output at step " << d.step << " (t=" << format_number(d.t) << ")\n";
            }
          }
        } catch (const Error& e) {
          err << "contract violation: " << e.what() << '\n';
          return exit_code::contract_violation;
        }
        return all_passed ? exit_code::ok : exit_code::causality_failure;
      },
      sc.arena);
}

// ---------------------------------------------------------------------------
// falsify
// ---------------------------------------------------------------------------

struct FalsifyOptions {
  std::string space;
  std::string man;
  std::string lion_start;
  std::string man_start;
  double dt = 1.0 / 64.0;
  std::string out;
};

inline int cmd_falsify(const FalsifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::shared_ptr<const finite::FiniteSpace> space;
  StrategyHandle<finite::PointId> man;
  finite::PointId lion_start;
  try {
    space = std::make_shared<const finite::FiniteSpace>(io::space_from_json(io::load_json_file(opt.space)));
    const auto pts = space->points();
    lion_start = opt.lion_start.empty() ? pts.back() : space->id(opt.lion_start);
    const auto man_start = opt.man_start.empty() ? pts.front() : space->id(opt.man_start);
    if (!finite::minimum(*space)) {
      err << "space has no minimum point; the falsifier needs one\n";
      return exit_code::no_minimum;
    }
    man = finite::make_fixture_man(opt.man, space, man_start);
    if (!(opt.dt > 0.0)) throw PreconditionError("--dt must be positive");
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  finite::FalsifyResult result;
  try {
    result = finite::falsify_man_strategy(*space, lion_start, man, opt.dt);
  } catch (const CausalityViolation& e) {
    err << "causality violation: " << e.what() << '\n';
    return exit_code::causality_failure;
  } catch (const Error& e) {
    err << "contract violation: " << e.what() << '\n';
    return exit_code::contract_violation;
  }
  const auto file = output_path(opt.out, std::filesystem::path(opt.space).stem().string() + "." + opt.man +
                                             ".defeating.json");
  try {
    io::save_json_file(file, io::to_json(*space, result.defeating_path));
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code::invalid_input;
  }
  out << "captured at t=" << format_number(result.capture_time) << " at '" << space->name(result.capture_point)
      << "'\n";
  if (result.earliest_coincidence) out << "earliest coincidence at t=" << format_number(*result.earliest_coincidence) << '\n';
  err << "defeating path: " << file.string() << '\n';
  return exit_code::ok;
}

// ---------------------------------------------------------------------------
// space
// ---------------------------------------------------------------------------

struct SpaceOptions {
  std::string space;
  std::vector<std::string> checks;
  std::string out;
};

inline int cmd_space(const SpaceOptions& opt, std::ostream& out, std::ostream& err) {
  std::optional<finite::FiniteSpace> loaded;
  try {
    loaded = io::space_from_json(io::load_json_file(opt.space));
  } catch (const Error& e) {
    err << "invalid space: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  const finite::FiniteSpace& space = *loaded;
  std::vector<std::string> checks = opt.checks;
  if (checks.empty()) checks = {"t0", "connected"};
  for (const auto& c : checks) {
    if (c == "t0") {
      out << "t0: " << (space.is_t0() ? "true" : "false") << '\n';
    } else if (c == "connected") {
      const auto comps = finite::path_components(space);
      out << "connected: " << (comps.size() <= 1 ? "true" : "false") << " (" << comps.size() << " component"
          << (comps.size() == 1 ? "" : "s") << ")\n";
    } else if (c == "dual") {
      const auto doc = io::to_json(finite::dual(space));
      if (opt.out.empty()) {
        out << doc.dump(2) << '\n';
      } else {
        try {
          io::save_json_file(opt.out, doc);
        } catch (const Error& e) {
          err << e.what() << '\n';
          return exit_code::invalid_input;
        }
        out << "dual: " << opt.out << '\n';
      }
    } else {
      err << "unknown check '" << c << "'\n";
      return exit_code::invalid_input;
    }
  }
  return exit_code::ok;
}

}  // namespace lionman::cli
