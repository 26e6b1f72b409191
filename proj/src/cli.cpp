#include "orthostiff/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "orthostiff/error.hpp"
#include "orthostiff/param_file.hpp"
#include "orthostiff/report.hpp"
#include "orthostiff/validation.hpp"

namespace orthostiff {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidSpec, what + ": '" + text + "' is not a number");
}

// "a:b" in percent -> fractions.
std::pair<double, double> percent_range(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw Error(ErrorKind::InvalidSpec, what + " must look like a:b (percent)");
  return {to_number(parts[0], what) / 100.0, to_number(parts[1], what) / 100.0};
}

Vector3 position(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw Error(ErrorKind::InvalidSpec, "--at needs x,y,z");
  return {to_number(parts[0], "--at"), to_number(parts[1], "--at"), to_number(parts[2], "--at")};
}

DesignParameter design_parameter(const std::string& text) {
  if (auto p = parse_design_parameter(text)) return *p;
  throw Error(ErrorKind::InvalidSpec, "unknown design parameter '" + text + "' (L_f, h_f, b_f, lambda, d, L_B, S_B)");
}

StiffnessTarget target(const std::string& text) {
  if (auto t = parse_target(text)) return *t;
  throw Error(ErrorKind::InvalidSpec, "target must be Ka or Kb (got '" + text + "')");
}

// Raw option strings; converted once CLI11 is done.
struct RawOptions {
  std::string format = "csv";
  std::string at;
  std::string param = "L_f";
  std::string params = "h_f,L_f";
  std::string target = "Ka";
  std::string range = "-100:200";
  std::string range1 = "0:100";
  std::string range2 = "0:100";
  std::string samples2text;
  std::string feed = "+y";
  std::string vary;
  std::string compensator = "h_f";
  std::string bracket = "-100:400";
};

ManipulatorParameters resolve_parameters(const RunConfig& config, std::ostream& err) {
  std::string path = config.param_file;
  if (path.empty()) {
    if (const char* env = std::getenv("ORTHOSTIFF_PARAMS"); env && *env) path = env;
  }
  if (path.empty()) return ManipulatorParameters{};
  LoadedParameters loaded = load_parameters(path);
  for (const std::string& n : loaded.notices) err << "notice: " << n << '\n';
  return loaded.params;
}

class Sink {
 public:
  Sink(const RunConfig& config, std::ostream& out) : config_(config), out_(out) {
    if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);
  }

  // Writes `content` to out_dir/name, or to the output stream.
  void emit(const std::string& name, const std::string& content) {
    if (config_.out_dir.empty()) {
      out_ << content;
      return;
    }
    const std::filesystem::path path = std::filesystem::path(config_.out_dir) / name;
    std::ofstream file(path, std::ios::binary);
    file << content;
    if (!file) throw std::runtime_error("cannot write " + path.string());
  }

  std::string path_of(const std::string& name) const {
    return (std::filesystem::path(config_.out_dir) / name).string();
  }

 private:
  const RunConfig& config_;
  std::ostream& out_;
};

template <class Writer>
std::string capture(Writer&& w) {
  std::ostringstream s;
  w(s);
  return s.str();
}

int run_isotropic(const ManipulatorParameters& params, const RunConfig& config, Sink& sink) {
  const IsotropicStiffness closed = isotropic_closed_form(params);
  const Matrix6 kappa = compliance_matrix(Pose{}, params).kappa;
  const Matrix6 K = cartesian_stiffness(ComplianceMatrix{kappa});
  if (config.format == OutputFormat::Json) {
    sink.emit("isotropic.json", isotropic_json(closed, kappa, K));
    return kExitOk;
  }
  sink.emit("isotropic.csv", capture([&](std::ostream& s) {
              s << "quantity,value\n";
              s << "K_a," << format_number(closed.torsional) << '\n';
              s << "K_b," << format_number(closed.translational) << '\n';
              for (int i = 0; i < 6; ++i) s << "kappa_" << i + 1 << i + 1 << ',' << format_number(kappa(i, i)) << '\n';
              for (int i = 0; i < 6; ++i) s << "K_" << i + 1 << i + 1 << ',' << format_number(K(i, i)) << '\n';
            }));
  return kExitOk;
}

int run_stiffness(const ManipulatorParameters& params, const RunConfig& config, Sink& sink) {
  const Matrix6 kappa = compliance_matrix(Pose{config.position}, params).kappa;
  const Matrix6 K = cartesian_stiffness(ComplianceMatrix{kappa});
  if (config.format == OutputFormat::Json) {
    sink.emit("stiffness.json", stiffness_json(config.position, kappa, K));
  } else {
    sink.emit("stiffness.csv", capture([&](std::ostream& s) {
                write_matrix(s, "kappa", kappa);
                write_matrix(s, "K", K);
              }));
  }
  return kExitOk;
}

int run_validate(const ManipulatorParameters& params, const RunConfig& config, Sink& sink) {
  const auto results = run_validation(params, config.validate_poses, config.validate_seed);
  bool all = true;
  sink.emit("validate.txt", capture([&](std::ostream& s) {
              for (const CheckResult& r : results) {
                s << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                all = all && r.passed;
              }
            }));
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

ParseOutcome parse_arguments(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
  RunConfig config;
  RawOptions raw;

  CLI::App app{"Lumped-spring stiffness analysis of a three-leg translational parallel machine"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--param-file,-p", config.param_file, "parameter file (default: $ORTHOSTIFF_PARAMS)");
  app.add_option("--out,-o", config.out_dir, "output directory; data goes to stdout when omitted");
  app.add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--plot-script", config.plot_script, "also write a gnuplot script next to the CSV");

  auto* iso = app.add_subcommand("isotropic", "K_a, K_b and the diagonal of kappa and K at the isotropic pose");
  auto* stiff = app.add_subcommand("stiffness", "6x6 compliance and stiffness at one pose");
  stiff->add_option("--at", raw.at, "x,y,z [mm]")->required();

  auto* sweep = app.add_subcommand("sweep", "stiffness ratio over a one-parameter variation");
  sweep->add_option("--param", raw.param, "L_f, h_f, b_f, lambda, d, L_B or S_B");
  sweep->add_option("--target", raw.target, "Ka or Kb");
  sweep->add_option("--range", raw.range, "variation a:b in percent (default -100:200)");
  sweep->add_option("--samples", config.sweep.samples, "sample count");
  sweep->add_flag("--pipeline", "evaluate with the numeric pipeline instead of the closed form");
  sweep->add_flag("--strict", config.sweep.strict_range, "fail instead of clamping lambda");

  auto* surf = app.add_subcommand("surface", "stiffness ratio over a two-parameter variation");
  surf->add_option("--params", raw.params, "P1,P2");
  surf->add_option("--target", raw.target, "Ka or Kb");
  surf->add_option("--range1", raw.range1, "variation of P1 in percent");
  surf->add_option("--range2", raw.range2, "variation of P2 in percent");
  surf->add_option("--samples", raw.samples2text, "n or n1,n2");
  surf->add_flag("--pipeline", "evaluate with the numeric pipeline");

  auto* groove = app.add_subcommand("groove-map", "maximum tracking error of groove paths over the workspace");
  groove->add_option("--fx", config.groove.force.x(), "cutting force x [N]");
  groove->add_option("--fy", config.groove.force.y(), "cutting force y [N]");
  groove->add_option("--fz", config.groove.force.z(), "cutting force z [N]");
  groove->add_option("--grid", config.groove.grid, "cells per axis");
  groove->add_option("--path-samples", config.groove.path_samples, "samples per groove");
  groove->add_option("--feed", raw.feed, "+x, -x, +y, -y, +z or -z");
  groove->add_option("--zone-factor", config.groove.zone_factor, "stiffest-zone threshold over the minimum");
  groove->add_option("--threads", config.groove.threads, "worker threads, 0 for all cores");

  auto* comp = app.add_subcommand("compensate", "variation of one parameter that restores the initial stiffness");
  comp->add_option("--vary", raw.vary, "P:percent, the disturbing change");
  comp->add_option("--compensator", raw.compensator, "parameter to solve for");
  comp->add_option("--target", raw.target, "Ka or Kb");
  comp->add_option("--bracket", raw.bracket, "search interval a:b in percent");

  auto* val = app.add_subcommand("validate", "run the built-in invariant suite");
  val->add_option("--poses", config.validate_poses, "random poses");
  val->add_option("--seed", config.validate_seed, "pose seed");

  std::vector<std::string> args;
  for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    ParseOutcome outcome;
    outcome.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    return outcome;
  }

  config.format = raw.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (*iso) {
    config.command = Command::Isotropic;
  } else if (*stiff) {
    config.command = Command::Stiffness;
    config.position = position(raw.at);
  } else if (*sweep) {
    config.command = Command::Sweep;
    config.sweep.parameter = design_parameter(raw.param);
    config.sweep.target = target(raw.target);
    std::tie(config.sweep.t_min, config.sweep.t_max) = percent_range(raw.range, "--range");
    if (sweep->count("--pipeline")) config.sweep.evaluation = Evaluation::Pipeline;
  } else if (*surf) {
    config.command = Command::Surface;
    const auto names = split(raw.params, ',');
    if (names.size() != 2) throw Error(ErrorKind::InvalidSpec, "--params needs two names P1,P2");
    config.surface.first = design_parameter(names[0]);
    config.surface.second = design_parameter(names[1]);
    config.surface.target = target(raw.target);
    std::tie(config.surface.t1_min, config.surface.t1_max) = percent_range(raw.range1, "--range1");
    std::tie(config.surface.t2_min, config.surface.t2_max) = percent_range(raw.range2, "--range2");
    if (!raw.samples2text.empty()) {
      const auto n = split(raw.samples2text, ',');
      if (n.size() > 2) throw Error(ErrorKind::InvalidSpec, "--samples takes n or n1,n2");
      config.surface.samples1 = static_cast<int>(to_number(n[0], "--samples"));
      config.surface.samples2 = static_cast<int>(to_number(n.back(), "--samples"));
    }
    if (surf->count("--pipeline")) config.surface.evaluation = Evaluation::Pipeline;
  } else if (*groove) {
    config.command = Command::GrooveMap;
    config.groove.feed = parse_feed_direction(raw.feed);
  } else if (*comp) {
    config.command = Command::Compensate;
    if (!raw.vary.empty()) {
      const auto parts = split(raw.vary, ':');
      if (parts.size() != 2) throw Error(ErrorKind::InvalidSpec, "--vary must look like P:percent");
      config.compensation.varied = design_parameter(parts[0]);
      config.compensation.varied_t = to_number(parts[1], "--vary") / 100.0;
    }
    config.compensation.compensator = design_parameter(raw.compensator);
    config.compensation.target = target(raw.target);
    std::tie(config.compensation.t_lo, config.compensation.t_hi) = percent_range(raw.bracket, "--bracket");
  } else {
    config.command = Command::Validate;
  }
  if (config.plot_script && config.out_dir.empty()) {
    throw Error(ErrorKind::InvalidSpec, "--plot-script needs --out");
  }
  return {config, kExitOk};
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ManipulatorParameters params = resolve_parameters(config, err);
  Sink sink(config, out);
  const bool json = config.format == OutputFormat::Json;

  switch (config.command) {
    case Command::Isotropic:
      return run_isotropic(params, config, sink);
    case Command::Stiffness:
      return run_stiffness(params, config, sink);
    case Command::Validate:
      return run_validate(params, config, sink);
    case Command::Sweep: {
      const SweepResult r = ratio_curve(config.sweep, params);
      for (std::size_t k = 0; k < r.t.size(); ++k) {
        if (r.clamped[k]) err << "notice: lambda clamped at t = " << format_number(r.t[k]) << '\n';
        if (!r.valid[k]) err << "notice: stiffness undefined at t = " << format_number(r.t[k]) << '\n';
      }
      const std::string stem = "sweep_" + std::string(symbol(r.parameter)) + "_" + std::string(symbol(r.target));
      if (json) {
        sink.emit(stem + ".json", sweep_json(r));
      } else {
        sink.emit(stem + ".csv", capture([&](std::ostream& s) { write_sweep_csv(s, r); }));
      }
      if (config.plot_script) sink.emit(stem + ".gp", sweep_plot_script(r, stem + ".csv"));
      return kExitOk;
    }
    case Command::Surface: {
      const SurfaceResult r = surface(config.surface, params);
      const std::string stem = "surface_" + std::string(symbol(r.first)) + "_" + std::string(symbol(r.second)) +
                               "_" + std::string(symbol(r.target));
      if (json) {
        sink.emit(stem + ".json", surface_json(r));
      } else {
        sink.emit(stem + ".csv", capture([&](std::ostream& s) { write_surface_csv(s, r); }));
      }
      if (config.plot_script) sink.emit(stem + ".gp", surface_plot_script(r, stem + ".csv"));
      return kExitOk;
    }
    case Command::GrooveMap: {
      if (config.groove.feed != FeedDirection::PlusY) {
        err << "notice: feed " << symbol(config.groove.feed) << " is an extrapolation beyond +y grooves\n";
      }
      const TrackingErrorMap map = tracking_error_map(config.groove, params);
      const std::string csv = capture([&](std::ostream& s) { write_map_csv(s, map); });
      const std::string summary = map_json(map, params);
      if (config.out_dir.empty()) {
        out << (json ? summary : csv);
      } else {
        sink.emit("groove_map.csv", csv);
        sink.emit("groove_map.json", summary);
      }
      if (config.plot_script) sink.emit("groove_map.gp", map_plot_script(map, "groove_map.csv"));
      if (map.valid_cells < static_cast<int>(map.cells.size())) {
        err << "notice: " << map.cells.size() - map.valid_cells << " cells unreachable\n";
      }
      return kExitOk;
    }
    case Command::Compensate: {
      const CompensationResult r = compensation_solve(config.compensation, params);
      if (json) {
        sink.emit("compensation.json", compensation_json(config.compensation, r));
      } else {
        sink.emit("compensation.csv", capture([&](std::ostream& s) {
                    s << "target,varied,varied_t,compensator,t,ratio\n";
                    s << symbol(config.compensation.target) << ','
                      << (config.compensation.varied ? symbol(*config.compensation.varied) : "") << ','
                      << format_number(config.compensation.varied_t) << ',' << symbol(config.compensation.compensator)
                      << ',' << format_number(r.t) << ',' << format_number(r.ratio) << '\n';
                  }));
      }
      return kExitOk;
    }
  }
  return kExitOk;
}

int run(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
  try {
    const ParseOutcome parsed = parse_arguments(argc, argv, out, err);
    if (!parsed.config) return parsed.exit_code;
    return execute(*parsed.config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e.kind()) ? kExitUsage : kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace orthostiff
