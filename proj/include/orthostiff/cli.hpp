#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "orthostiff/machining.hpp"
#include "orthostiff/parametric.hpp"

namespace orthostiff {

enum class Command { Isotropic, Stiffness, Sweep, Surface, GrooveMap, Compensate, Validate };

enum class OutputFormat { Csv, Json };

struct RunConfig {
  Command command = Command::Isotropic;
  std::string param_file;  // empty: ORTHOSTIFF_PARAMS, then built-in defaults
  std::string out_dir;     // empty: data goes to the output stream
  OutputFormat format = OutputFormat::Csv;
  bool plot_script = false;

  Vector3 position = Vector3::Zero();
  SweepSpec sweep;
  SurfaceSpec surface;
  GrooveMapSpec groove;
  CompensationSpec compensation;
  int validate_poses = 200;
  std::uint64_t validate_seed = 20051;
};

struct ParseOutcome {
  std::optional<RunConfig> config;  // empty when parsing ended the run (help, bad flags)
  int exit_code = 0;
};

/// Exit status: 0 success, 1 usage error, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

ParseOutcome parse_arguments(int argc, const char* const argv[], std::ostream& out, std::ostream& err);

/// Runs one command. Diagnostics go to `err`, data to files or `out`.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

int run(int argc, const char* const argv[], std::ostream& out, std::ostream& err);

}  // namespace orthostiff
