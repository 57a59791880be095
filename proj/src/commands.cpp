#include "illusion/commands.hpp"

#include "illusion/lqr.hpp"
#include "illusion/report.hpp"
#include "illusion/scenario_io.hpp"
#include "illusion/simulator.hpp"

#include <cstdio>
#include <fstream>
#include <string>

namespace illusion {

namespace fs = std::filesystem;

namespace {

int exit_code(const Error &e) { return is_config_error(e.code()) ? 1 : 2; }

std::string point_str(const Point2 &p) { return "[" + format_number(p.x()) + "," + format_number(p.y()) + "]"; }

std::string rounded(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

template <typename Writer> void write_file(const fs::path &path, Writer &&writer) {
  std::ofstream f(path);
  if (!f)
    throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  writer(f);
  if (!f)
    throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

} // namespace

int cmd_run(const fs::path &scenario_path, const fs::path &output_dir, std::optional<ProducerMode> mode_override,
            std::ostream &out, std::ostream &err) {
  try {
    Scenario raw = load_scenario(scenario_path);
    if (mode_override)
      raw = with_mode(std::move(raw), *mode_override);
    const ValidatedScenario scenario = validate_scenario(raw);
    const TrajectoryLog log = run_closed_loop(scenario);

    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec)
      throw Error(ErrorCode::Io, "cannot create output directory '" + output_dir.string() + "'");
    write_file(output_dir / "trajectory.csv", [&](std::ostream &f) { write_csv(f, log); });
    write_file(output_dir / "trajectory.svg", [&](std::ostream &f) { write_trajectory_svg(f, log, raw); });
    write_file(output_dir / "actions.svg", [&](std::ostream &f) { write_action_svg(f, log); });

    const StageRecord &last = log.records.back();
    out << "mode=" << to_string(raw.producer.mode) << " stages=" << last.stage
        << " reason=" << to_string(log.reason)
        << " final_iota=" << (last.estimate ? point_str(*last.estimate) : std::string("empty"))
        << " final_omega_r=" << point_str(last.position) << '\n';
    return log.reason == TerminationReason::ImplausibleIState ? 2 : 0;
  } catch (const Error &e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e);
  }
}

int cmd_gain(const fs::path &scenario_path, std::ostream &out, std::ostream &err) {
  try {
    const ValidatedScenario scenario = validate_scenario(load_scenario(scenario_path));
    const auto sol = lqr_gain(build_system(scenario->receiver.gain), scenario->producer.Q, scenario->producer.R);
    out << "K_p (full precision):\n";
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 4; ++c) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%s%.17g", c ? " " : "  ", sol.gain(r, c));
        out << buf;
      }
      out << '\n';
    }
    out << "K_p (2 decimals):\n";
    for (int r = 0; r < 2; ++r) {
      out << ' ';
      for (int c = 0; c < 4; ++c)
        out << ' ' << rounded(sol.gain(r, c));
      out << '\n';
    }
    out << "DARE residual: " << format_number(sol.residual) << '\n';
    return 0;
  } catch (const Error &e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e);
  }
}

int cmd_default(const fs::path &output_path, std::ostream &out, std::ostream &err) {
  try {
    save_scenario(default_scenario(), output_path);
    out << "wrote " << output_path.string() << '\n';
    return 0;
  } catch (const Error &e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return 1;
  }
}

} // namespace illusion
