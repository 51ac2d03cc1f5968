// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lionman/cli/app.hpp"
#include "lionman/core/clairvoyant.hpp"
#include "lionman/core/match.hpp"
#include "lionman/core/no_lookahead.hpp"
#include "lionman/core/random.hpp"
#include "lionman/core/retraction.hpp"
#include "lionman/disk/lift.hpp"
#include "lionman/disk/paths.hpp"
#include "lionman/disk/retractions.hpp"
#include "lionman/disk/strategies.hpp"
#include "lionman/finite/falsify.hpp"
#include "lionman/finite/strategies.hpp"
#include "support/enumerate.hpp"

using namespace lionman;
using disk::Point2;
using finite::FiniteSpace;
using finite::PointId;
using finite::StepPath;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records the first failure only.
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

CapturePredicate<Point2> within(double eps) {
  return CapturePredicate<Point2>::within(eps, [](const Point2& a, const Point2& b) { return disk::distance(a, b); });
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

std::vector<double> fork_times(const TimeGrid& g, std::uint64_t seed, std::size_t n) {
  auto rng = seeded_rng(seed, 0xf0c5);
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(g[1 + uniform_index(rng, g.size() - 1)]);
  return out;
}

// ---------------------------------------------------------------------------

Outcome boundary_and_antipodality() {
  Outcome o;
  const disk::PlanarSpace d(disk::PlanarKind::disk);
  const TimeGrid g(1e-3, 5.0);
  std::size_t samples = 0, boundary = 0;
  double worst_norm = 0.0, worst_antipode = 0.0;
  for (std::uint64_t i = 0; i < 120; ++i) {
    const auto lion = disk::random_lion_path(2024, i, 5.0);
    const auto tr = run_match<Point2>(g, lion.path, disk::make_besicovitch_man(), within(0.0), EvalMode::closed,
                                      [&d](const Point2& p) { return d.contains(p); });
    if (!(tr.min_distance && *tr.min_distance > 0.0)) o.fail("path " + std::to_string(i) + " reached distance 0");
    for (const auto& s : tr.samples) {
      ++samples;
      worst_norm = std::max(worst_norm, std::abs(disk::norm(s.man) - 1.0));
      if (disk::norm(s.lion) >= 1.0 - 1e-9) {
        ++boundary;
        worst_antipode = std::max(worst_antipode, disk::norm(s.man + s.lion));
      }
    }
  }
  if (worst_norm > 1e-12) o.fail("man left the boundary by " + fmt(worst_norm));
  if (worst_antipode > 1e-6) o.fail("antipode error " + fmt(worst_antipode));
  if (boundary == 0) o.fail("no boundary samples exercised");
  if (o.pass) {
    o.detail = "120 paths, " + std::to_string(samples) + " samples, " + std::to_string(boundary) +
               " on the boundary, max | |man|-1 | = " + fmt(worst_norm) + ", max |man+lion| = " + fmt(worst_antipode);
  }
  return o;
}

// ---------------------------------------------------------------------------

// A continuous step path with three jumps at seeded times.
StepPath random_continuous_step_path(const FiniteSpace& s, std::mt19937_64& rng) {
  for (;;) {
    StepPath p;
    p.breakpoints = {0.0};
    double t = 0.0;
    for (int i = 0; i < 3; ++i) p.breakpoints.push_back(t += uniform(rng, 0.1, 0.5));
    for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
      p.intervals.push_back(PointId{static_cast<std::uint32_t>(uniform_index(rng, s.size()))});
      p.instants.push_back(PointId{static_cast<std::uint32_t>(uniform_index(rng, s.size()))});
    }
    if (finite::is_continuous(s, p)) return p;
  }
}

Outcome no_lookahead_suite() {
  Outcome o;
  constexpr std::size_t kForks = 50;
  std::size_t checks = 0;
  auto expect = [&](const std::string& what, const NoLookaheadReport& r) {
    ++checks;
    if (!r.passed || r.forks_checked != kForks) o.fail(what + " failed the fork test");
  };
  const std::vector<EvalMode> modes{EvalMode::strict, EvalMode::closed};

  const disk::PlanarSpace d(disk::PlanarKind::disk), sq(disk::PlanarKind::square), c(disk::PlanarKind::circle);
  for (std::uint64_t i = 0; i < 3; ++i) {
    const TimeGrid g(0.01, 3.0);
    const auto base = disk::random_lion_path(77, i, 3.0).path;
    for (auto mode : modes) {
      expect("besicovitch", check_no_lookahead<Point2>(disk::make_besicovitch_man(), g, base,
                                                       fork_times(g, 100 + i, kForks),
                                                       disk::planar_fork_generator(d, 200 + i), mode));
    }
  }
  for (const auto* space : {&d, &sq}) {
    for (std::uint64_t i = 0; i < 3; ++i) {
      auto rng = seeded_rng(300, i);
      const Point2 l = disk::random_point(*space, rng), m = disk::random_point(*space, rng);
      const auto base = disk::random_planar_path(*space, m, 301, i, 1.5);
      const auto lion = disk::make_hausdorff_lion(*space, l, m);
      const TimeGrid g(0.01, 1.5, lion.event_times());
      for (auto mode : modes) {
        expect("hausdorff", check_no_lookahead<Point2>(lion, g, base, fork_times(g, 302 + i, kForks),
                                                       disk::planar_fork_generator(*space, 303 + i), mode));
      }
    }
  }
  for (std::uint64_t i = 0; i < 3; ++i) {
    const TimeGrid g(0.01, 2.0);
    const auto base = disk::random_planar_path(c, {1.0, 0.0}, 400, i, 2.0);
    const std::vector<StrategyHandle<Point2>> evaders{
        disk::make_fixed_point_free_man(disk::antipodal_map(), c, {1.0, 0.0}),
        disk::make_fixed_point_free_man(disk::rotation_map(0.25), c, {1.0, 0.0}, "rotation"),
        disk::make_fixed_point_free_man(disk::rotation_map(0.6), c, {1.0, 0.0}, "rotation")};
    for (const auto& man : evaders) {
      for (auto mode : modes) {
        expect(man.name(), check_no_lookahead<Point2>(man, g, base, fork_times(g, 401 + i, kForks),
                                                      disk::planar_fork_generator(c, 402 + i), mode));
      }
    }
  }

  const std::vector<std::shared_ptr<const FiniteSpace>> spaces{
      std::make_shared<const FiniteSpace>(FiniteSpace::from_relation({"0", "1"}, {{"0", "1"}})),
      std::make_shared<const FiniteSpace>(FiniteSpace::from_relation({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})),
      std::make_shared<const FiniteSpace>(FiniteSpace::from_relation({"a", "b", "c"}, {{"b", "a"}, {"b", "c"}})),
      std::make_shared<const FiniteSpace>(
          FiniteSpace::from_relation({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"b", "d"}}))};
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    const auto& s = spaces[si];
    auto rng = seeded_rng(500, si);
    for (std::uint64_t i = 0; i < 2; ++i) {
      const auto base = finite::as_path(random_continuous_step_path(*s, rng));
      for (PointId start : s->points()) {
        const auto lion = finite::make_aspace_lion(s, start);
        const TimeGrid g(0.05, 1.5, lion.event_times());
        for (auto mode : modes) {
          expect("aspace-lion", check_no_lookahead<PointId>(lion, g, base, fork_times(g, 501 + i, kForks),
                                                           finite::step_fork_generator(s, 502 + i), mode));
        }
        const TimeGrid fg(0.05, 1.5);
        for (const auto& name : finite::fixture_man_names()) {
          for (auto mode : modes) {
            expect(name, check_no_lookahead<PointId>(finite::make_fixture_man(name, s, start), fg, base,
                                                     fork_times(fg, 503 + i, kForks),
                                                     finite::step_fork_generator(s, 504 + i), mode));
          }
        }
      }
    }
  }

  // The clairvoyant responder must be caught, on both kinds of space.
  std::size_t caught = 0;
  for (std::uint64_t i = 0; i < 3; ++i) {
    const TimeGrid g(0.01, 2.0);
    const auto base = disk::random_lion_path(600, i, 2.0).path;
    const auto r = check_no_lookahead<Point2>(clairvoyant_responder<Point2>(), g, base, fork_times(g, 601 + i, kForks),
                                              disk::planar_fork_generator(d, 602 + i), EvalMode::strict);
    if (r.passed) o.fail("clairvoyant responder passed on planar base " + std::to_string(i));
    caught += !r.passed;
    const TimeGrid fg(0.05, 1.5);
    auto rng = seeded_rng(603, i);
    const auto fbase = finite::as_path(random_continuous_step_path(*spaces[1], rng));
    const auto fr = check_no_lookahead<PointId>(clairvoyant_responder<PointId>(), fg, fbase,
                                                fork_times(fg, 604 + i, kForks),
                                                finite::step_fork_generator(spaces[1], 605 + i), EvalMode::strict);
    if (fr.passed) o.fail("clairvoyant responder passed on finite base " + std::to_string(i));
    caught += !fr.passed;
  }
  if (o.pass) {
    o.detail = std::to_string(checks) + " strategy/base/mode checks x " + std::to_string(kForks) +
               " forks passed; clairvoyant caught " + std::to_string(caught) + "/6";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome hausdorff_capture_at_one() {
  Outcome o;
  std::size_t runs = 0;
  for (auto kind : {disk::PlanarKind::disk, disk::PlanarKind::square}) {
    const disk::PlanarSpace space(kind);
    for (double dt : {1e-2, 1e-3}) {
      for (std::uint64_t i = 0; i < 50; ++i) {
        auto rng = seeded_rng(700 + static_cast<std::uint64_t>(kind), i);
        const Point2 l = disk::random_point(space, rng), m = disk::random_point(space, rng);
        const Player<Point2> lion = disk::make_hausdorff_lion(space, l, m);
        const Player<Point2> man = disk::random_planar_path(space, m, 701, i, 1.5);
        const TimeGrid g = make_grid<Point2>(dt, 1.5, {&lion, &man});
        const auto tr = run_match<Point2>(g, lion, man, within(1e-9), EvalMode::closed,
                                          [&space](const Point2& p) { return space.contains(p); });
        ++runs;
        if (!tr.captured()) {
          o.fail(std::string(space.name()) + " dt=" + fmt(dt) + " path " + std::to_string(i) + ": no capture");
        } else if (*tr.captured_at != 1.0) {
          o.fail(std::string(space.name()) + " dt=" + fmt(dt) + " path " + std::to_string(i) + ": captured at " +
                 fmt(*tr.captured_at));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " runs (disk, square x dt 1e-2, 1e-3 x 50 paths), all captured at t=1";
  return o;
}

// ---------------------------------------------------------------------------

// Lift computed from the complex ratio of consecutive samples, and the
// winding number counted as signed crossings of the positive real axis.
struct OracleLift {
  double omega;
  long crossings;
};

OracleLift oracle_lift(const std::vector<Point2>& zs) {
  double a0 = std::atan2(zs[0].y, zs[0].x);
  if (a0 < 0) a0 += 2 * std::numbers::pi;
  double omega = a0 / (2 * std::numbers::pi);
  long crossings = 0;
  for (std::size_t i = 1; i < zs.size(); ++i) {
    const Point2 p = zs[i - 1], q = zs[i];
    const double cross = p.x * q.y - p.y * q.x, dot = p.x * q.x + p.y * q.y;
    omega += std::atan2(cross, dot) / (2 * std::numbers::pi);
    // Crossing the ray y = 0, x > 0 between p and q.
    const bool p_up = p.y >= 0, q_up = q.y >= 0;
    if (p_up != q_up) {
      const double x_at = p.x + (q.x - p.x) * (0.0 - p.y) / (q.y - p.y);
      if (x_at > 0) crossings += q_up ? 1 : -1;
    }
  }
  return {omega, crossings};
}

Outcome lift_oracle() {
  Outcome o;
  double worst = 0.0;
  long max_winding = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = seeded_rng(800, i);
    const std::size_t n = 40 + uniform_index(rng, 400);
    // Drift of up to a few turns over the whole sequence, plus jitter.
    const double drift = uniform(rng, -6.0, 6.0) / static_cast<double>(n);
    double angle = uniform(rng, 0.0, 1.0);
    std::vector<Point2> zs;
    for (std::size_t k = 0; k < n; ++k) {
      zs.push_back(uniform(rng, 0.05, 1.0) * disk::from_turns(angle));
      angle += drift + uniform(rng, -0.2, 0.2);
    }
    disk::LiftState st;
    for (const auto& z : zs) st = disk::lift_step(st, z);
    const auto ref = oracle_lift(zs);
    worst = std::max(worst, std::abs(st.omega - ref.omega));
    if (std::abs(st.omega - ref.omega) > 1e-9) o.fail("sequence " + std::to_string(i) + " differs by " +
                                                      fmt(std::abs(st.omega - ref.omega)));
    const double winding = st.omega - disk::principal_turns(zs.back());
    const long rounded = std::lround(winding);
    // Winding from the start angle in [0, 1): every positive-axis crossing is a
    // full turn; the start itself contributes nothing.
    if (std::abs(winding - static_cast<double>(rounded)) > 1e-9 || rounded != ref.crossings) {
      o.fail("sequence " + std::to_string(i) + ": winding " + fmt(winding) + " vs " + std::to_string(ref.crossings) +
             " crossings");
    }
    max_winding = std::max(max_winding, std::abs(rounded));
  }
  if (o.pass) {
    o.detail = "1000 sequences, max |lift - oracle| = " + fmt(worst) + ", windings up to " +
               std::to_string(max_winding) + " turns integer-exact";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome continuity_equivalence() {
  Outcome o;
  const std::vector<double> lattice{0.2, 0.4, 0.6, 0.8};  // with 0: five instants
  std::size_t spaces = 0, paths = 0, continuous = 0;
  for (std::size_t n = 1; n <= 4 && o.pass; ++n) {
    for (const auto& s : enumerate::all_preorders(n)) {
      ++spaces;
      enumerate::for_each_step_path(n, lattice, 3, [&](const StepPath& p) {
        ++paths;
        const bool fast = finite::is_continuous(s, p);
        continuous += fast;
        if (fast != finite::is_continuous_oracle(s, p)) o.fail("disagreement on a " + std::to_string(n) + "-point space");
      });
    }
  }
  if (o.pass) {
    o.detail = std::to_string(spaces) + " preorders, " + std::to_string(paths) + " space/path pairs (" +
               std::to_string(continuous) + " continuous), no disagreement";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome aspace_exhaustive() {
  Outcome o;
  const std::vector<double> lattice{0.25, 0.6, 0.9, 1.2};
  std::size_t spaces = 0, games = 0, escapes = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& raw : enumerate::all_preorders(n)) {
      if (!finite::is_path_connected(raw)) continue;
      ++spaces;
      const auto s = std::make_shared<const FiniteSpace>(raw);
      std::vector<StepPath> men;
      enumerate::for_each_step_path(n, lattice, 3, [&](const StepPath& p) {
        if (finite::is_continuous(*s, p)) men.push_back(p);
      });
      for (PointId l : s->points()) {
        const auto lion = finite::make_aspace_lion(s, l);
        const TimeGrid g(0.05, 1.5, lion.event_times());
        for (const auto& man : men) {
          ++games;
          const auto tr = run_match<PointId>(g, lion, finite::as_path(man), CapturePredicate<PointId>::exact(),
                                             EvalMode::closed);
          if (!tr.captured()) {
            ++escapes;
            o.fail("escape on a " + std::to_string(n) + "-point space from lion start " + s->name(l));
          }
        }
      }
    }
  }
  o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(spaces) + " path-connected spaces, " +
             std::to_string(games) + " games, " + std::to_string(escapes) + " escapes";
  return o;
}

// ---------------------------------------------------------------------------

Outcome falsifier() {
  Outcome o;
  std::size_t spaces = 0, runs = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& raw : enumerate::all_preorders(n)) {
      if (!finite::minimum(raw)) continue;
      ++spaces;
      const auto s = std::make_shared<const FiniteSpace>(raw);
      for (const auto& name : finite::fixture_man_names()) {
        for (PointId m : s->points()) {
          for (PointId l : s->points()) {
            ++runs;
            const auto r = finite::falsify_man_strategy(*s, l, finite::make_fixture_man(name, s, m));
            if (r.capture_time != 1.0) o.fail(name + ": capture time " + fmt(r.capture_time));
            if (!finite::is_continuous_oracle(*s, r.defeating_path)) o.fail(name + ": defeating path not continuous");
            // Independent replay with a fresh copy of the man.
            const TimeGrid g(1.0 / 64.0, 1.0, std::vector<double>{0.5, 1.0});
            const auto replay = respond_to_path(finite::make_fixture_man(name, s, m), g,
                                                finite::as_path(r.defeating_path), EvalMode::closed);
            if (replay.back() != r.defeating_path(1.0) || r.defeating_path(1.0) != r.capture_point) {
              o.fail(name + ": replay does not coincide at t=1");
            }
          }
        }
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(spaces) + " spaces with a minimum, " + std::to_string(runs) +
               " (fixture, man start, lion start) runs, all captured at t=1.0";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome retraction_laws() {
  Outcome o;
  const disk::PlanarSpace d(disk::PlanarKind::disk), sq(disk::PlanarKind::square);
  auto rng = seeded_rng(900);
  std::vector<Point2> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(disk::random_point(d, rng));
  const auto id = identity_retraction<Point2>();
  if (!check_retraction_laws<Point2, Point2>(id, pts)) o.fail("identity retraction laws");

  // Transfers along the identity must not change a single sample.
  const TimeGrid g(0.01, 2.0);
  const auto lion_path = disk::random_lion_path(901, 1, 2.0).path;
  const auto plain = run_match<Point2>(g, lion_path, disk::make_besicovitch_man(), within(1e-9), EvalMode::closed);
  const auto lifted = run_match<Point2>(g, lion_path, lift_man_strategy(id, disk::make_besicovitch_man()),
                                        within(1e-9), EvalMode::closed);
  if (io::trace_jsonl(plain) != io::trace_jsonl(lifted)) o.fail("lifted man differs from the original");
  const Point2 m0 = disk::random_point(d, rng);
  const auto man_path = disk::random_planar_path(d, m0, 902, 0, 2.0);
  const TimeGrid hg(0.01, 2.0, std::vector<double>{0.5, 1.0});
  const auto lion = disk::make_hausdorff_lion(d, {0.0, 0.0}, m0);
  const auto a = run_match<Point2>(hg, lion, man_path, within(1e-9), EvalMode::closed);
  const auto b = run_match<Point2>(hg, project_lion_strategy(id, lion), man_path, within(1e-9), EvalMode::closed);
  if (io::trace_jsonl(a) != io::trace_jsonl(b)) o.fail("projected lion differs from the original");

  const auto edge = disk::square_edge_retraction();
  std::vector<double> xs;
  for (int i = 0; i <= 100; ++i) xs.push_back(i / 100.0);
  if (!check_retraction_laws<Point2, double>(edge, xs)) o.fail("square edge retraction laws");
  auto edge_capture = CapturePredicate<double>::within(1e-9, [](const double& x, const double& y) {
    return std::abs(x - y);
  });
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Path<double> man = disk::random_edge_path(903, i);
    const double l0 = uniform(rng, 0.0, 1.0);
    auto projected = project_lion_strategy<Point2, double>(
        edge, disk::make_hausdorff_lion(sq, edge.include(l0), edge.include(man(0.0))));
    const TimeGrid eg(0.01, 2.0, std::vector<double>{0.5, 1.0});
    const auto tr = run_match<double>(eg, projected, man, edge_capture, EvalMode::closed);
    if (!tr.captured() || *tr.captured_at != 1.0) {
      o.fail("edge path " + std::to_string(i) + ": " + (tr.captured() ? "captured at " + fmt(*tr.captured_at)
                                                                       : std::string("no capture")));
    }
  }
  if (o.pass) o.detail = "identity transfers exact; square->edge projection captured 20/20 edge paths at t=1";
  return o;
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("lionman-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(LIONMAN_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    std::string traces[2];
    int codes[2];
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / (std::to_string(run) + ".jsonl");
      std::ostringstream sink;
      codes[run] = cli::run({"simulate", entry.path().string(), "--out", out.string()}, sink, sink);
      traces[run] = slurp(out);
      fs::remove(out);
    }
    if (codes[0] == cli::exit_code::invalid_input) continue;  // check-only scenarios
    ++compared;
    if (codes[0] != codes[1] || traces[0] != traces[1] || traces[0].empty()) {
      o.fail(entry.path().filename().string() + " produced different traces");
    }
  }
  fs::remove_all(dir);
  if (compared == 0) o.fail("no scenarios found");
  if (o.pass) o.detail = std::to_string(compared) + " scenarios simulated twice, traces byte-identical";
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double budget_s;  // 0 = no runtime limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"boundary-and-antipodality", boundary_and_antipodality, 30.0},
      {"no-lookahead-suite", no_lookahead_suite, 60.0},
      {"hausdorff-capture-at-one", hausdorff_capture_at_one, 0.0},
      {"lift-oracle", lift_oracle, 0.0},
      {"finite-continuity-equivalence", continuity_equivalence, 300.0},
      {"aspace-lion-exhaustive", aspace_exhaustive, 0.0},
      {"falsifier", falsifier, 0.0},
      {"retraction-laws", retraction_laws, 0.0},
      {"determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) o.fail("took " + fmt(secs) + " s, limit " + fmt(c.budget_s) + " s");
    failed += !o.pass;
    std::printf("%s %-30s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
