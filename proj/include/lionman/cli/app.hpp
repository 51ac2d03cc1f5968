#pragma once

#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lionman/cli/commands.hpp"
#include "lionman/service/server.hpp"

namespace lionman::cli {

struct ServeOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;
  double dt = 1.0 / 60.0;
  double tolerance = 1e-9;
  double speed_cap = 0.0;  // 0 disables the cap
  std::string static_dir;
};

inline int cmd_serve(const ServeOptions& opt, std::ostream& out, std::ostream& err) {
  service::ServerOptions so;
  so.address = opt.address;
  so.port = opt.port;
  so.session.dt = opt.dt;
  so.session.capture_tolerance = opt.tolerance;
  if (opt.speed_cap > 0.0) so.session.speed_cap = opt.speed_cap;
  so.static_dir = opt.static_dir;
  if (!(opt.dt > 0.0) || !(opt.tolerance >= 0.0) || opt.speed_cap < 0.0) {
    err << "serve: dt must be positive, tolerance and speed cap non-negative\n";
    return exit_code::invalid_input;
  }
  try {
    service::Server server(so);
    server.run([&](unsigned short port) { out << "listening on http://" << so.address << ':' << port << std::endl; });
  } catch (const std::exception& e) {
    err << "serve: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  return exit_code::ok;
}

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Lion and man pursuit games on the disk and on finite spaces", "lionman"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write its trace as JSONL");
  simulate->add_option("scenario", sim.scenario, "Scenario JSON file")->required();
  simulate->add_option("--out", sim.out, "Trace file (default: $LIONMAN_OUT_DIR/<scenario>.trace.jsonl)");

  CheckOptions chk;
  std::uint64_t check_seed = 0;
  auto* check = app.add_subcommand("check", "Fork-test every strategy in a scenario for lookahead");
  check->add_option("scenario", chk.scenario, "Scenario JSON file")->required();
  check->add_option("--forks", chk.forks, "Number of seeded forks per strategy")->capture_default_str();
  auto* seed_opt = check->add_option("--seed", check_seed, "Fork seed (default: the scenario seed)");

  FalsifyOptions fal;
  auto* falsify = app.add_subcommand("falsify", "Build a lion path that defeats a man strategy");
  falsify->add_option("space", fal.space, "Finite space JSON file")->required();
  falsify->add_option("man", fal.man, "Man strategy: sit, avoid-last, cycle, flee-up")->required();
  falsify->add_option("--lion-start", fal.lion_start, "Lion start point (default: last point)");
  falsify->add_option("--man-start", fal.man_start, "Man start point (default: first point)");
  falsify->add_option("--dt", fal.dt, "Replay grid spacing")->capture_default_str();
  falsify->add_option("--out", fal.out, "Defeating path file (default: $LIONMAN_OUT_DIR/<space>.<man>.defeating.json)");

  SpaceOptions spc;
  auto* space = app.add_subcommand("space", "Report properties of a finite space");
  space->add_option("space", spc.space, "Finite space JSON file")->required();
  space->add_option("--check", spc.checks, "t0, connected or dual (repeatable)")
      ->check(CLI::IsMember({"t0", "connected", "dual"}));
  space->add_option("--out", spc.out, "Where --check dual writes the dual space (default: stdout)");

  ServeOptions srv;
  auto* serve = app.add_subcommand("serve", "Run the live-play session service");
  serve->add_option("--address", srv.address, "Bind address")->envname("LIONMAN_ADDRESS")->capture_default_str();
  serve->add_option("--port", srv.port, "TCP port")->envname("LIONMAN_PORT")->capture_default_str();
  serve->add_option("--dt", srv.dt, "Server tick in seconds")->envname("LIONMAN_DT")->capture_default_str();
  serve->add_option("--tolerance", srv.tolerance, "Capture tolerance")->envname("LIONMAN_TOLERANCE")->capture_default_str();
  serve->add_option("--speed-cap", srv.speed_cap, "Lion speed cap in radii per second, 0 for none")
      ->envname("LIONMAN_SPEED_CAP")
      ->capture_default_str();
  serve->add_option("--static", srv.static_dir, "Directory served for other GET requests")
      ->envname("LIONMAN_STATIC_DIR");

  std::vector<std::string> argv_store{"lionman"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::invalid_input;
  }

  if (*simulate) return cmd_simulate(sim, out, err);
  if (*check) {
    if (*seed_opt) chk.seed = check_seed;
    return cmd_check(chk, out, err);
  }
  if (*falsify) return cmd_falsify(fal, out, err);
  if (*space) return cmd_space(spc, out, err);
  return cmd_serve(srv, out, err);
}

}  // namespace lionman::cli
