#include "orthostiff/parameters.hpp"

#include <cmath>
#include <string>

#include "orthostiff/error.hpp"

namespace orthostiff {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::ValidationError,
                std::string(name) + " must be strictly positive (got " + std::to_string(value) + ")");
  }
}

}  // namespace

void ManipulatorParameters::validate() const {
  require_positive(foot_length, "L_f");
  require_positive(foot_height, "h_f");
  require_positive(foot_width, "b_f");
  require_positive(bar_spacing, "d");
  require_positive(bar_length, "L_B");
  require_positive(bar_section, "S_B");
  require_positive(youngs_modulus, "E");
  require_positive(actuator_stiffness, "k_act");
  require_positive(tool_length, "h_z");
  if (!(foot_angle >= 0.0 && foot_angle <= kPi / 2.0)) {
    throw Error(ErrorKind::ValidationError,
                "lambda must lie in [0, pi/2] (got " + std::to_string(rad_to_deg(foot_angle)) + " deg)");
  }
  if (!(poisson_ratio > 0.0 && poisson_ratio < 0.5)) {
    throw Error(ErrorKind::ValidationError, "nu must lie in (0, 0.5)");
  }
  for (int axis = 0; axis < 3; ++axis) {
    if (!(workspace_lo[axis] < workspace_hi[axis])) {
      throw Error(ErrorKind::ValidationError, "workspace_lo must be below workspace_hi on every axis");
    }
  }
}

bool ManipulatorParameters::in_workspace(const Vector3& p) const {
  return (p.array() >= workspace_lo.array()).all() && (p.array() <= workspace_hi.array()).all();
}

SectionProperties section_properties(const ManipulatorParameters& params) {
  const double h = params.foot_height;
  const double b = params.foot_width;
  SectionProperties s{};
  s.bending_inertia_1 = b * h * h * h / 12.0;
  s.bending_inertia_2 = h * b * b * b / 12.0;
  s.polar_moment = h * b * (h * h + b * b) / 12.0;
  s.area = h * b;
  s.shear_modulus = params.youngs_modulus / (2.0 * (1.0 + params.poisson_ratio));
  return s;
}

}  // namespace orthostiff
