#pragma once

#include <istream>
#include <string>
#include <vector>

#include "orthostiff/parameters.hpp"

namespace orthostiff {

/// Parameter files hold one `key = value` per line; `#` starts a comment.
/// Keys: L_f h_f b_f lambda lambda_deg d L_B S_B E nu k_act h_z
/// workspace_lo workspace_hi. Workspace bounds take one value or x,y,z.
struct LoadedParameters {
  ManipulatorParameters params;
  std::vector<std::string> notices;  // one per key left at its default
};

/// Throws Error(ParseError) with "source:line:column" on malformed input and
/// Error(ValidationError) when the result violates an invariant.
LoadedParameters parse_parameters(std::istream& in, const std::string& source = "<input>");
LoadedParameters load_parameters(const std::string& path);

/// Inverse of parse_parameters, every key written explicitly.
std::string format_parameters(const ManipulatorParameters& params);

}  // namespace orthostiff
