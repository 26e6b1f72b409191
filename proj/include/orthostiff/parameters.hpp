#pragma once

#include "orthostiff/types.hpp"

namespace orthostiff {

/// Geometric, material and actuator constants of the manipulator.
/// Units are N, mm and rad throughout. Member defaults are the prototype
/// dimensions with aluminium links.
struct ManipulatorParameters {
  double foot_length = 150.0;       // L_f  [mm]
  double foot_height = 26.0;        // h_f  [mm], in the foot plane
  double foot_width = 16.0;         // b_f  [mm], normal to the foot plane
  double foot_angle = kPi / 4.0;    // lambda [rad], foot axis vs drive axis
  double bar_spacing = 80.0;        // d    [mm], between parallelogram bars
  double bar_length = 310.0;        // L_B  [mm]
  double bar_section = 144.0;       // S_B  [mm^2]
  double youngs_modulus = 7.0e4;    // E    [N/mm^2]
  double poisson_ratio = 0.3;       // nu
  double actuator_stiffness = 1.0e5;  // k_act [N/mm]
  double tool_length = 100.0;       // h_z  [mm]
  Vector3 workspace_lo = Vector3::Constant(-73.65);
  Vector3 workspace_hi = Vector3::Constant(126.35);

  /// Throws Error(ValidationError) naming the first violated invariant.
  void validate() const;

  bool in_workspace(const Vector3& p) const;
  Vector3 workspace_center() const { return 0.5 * (workspace_lo + workspace_hi); }
};

struct SectionProperties {
  double bending_inertia_1;  // I_f1 = b_f h_f^3 / 12 [mm^4]
  double bending_inertia_2;  // I_f2 = h_f b_f^3 / 12 [mm^4]
  double polar_moment;       // I_f0 = h_f b_f (h_f^2 + b_f^2) / 12 [mm^4]
  double area;               // A_f = h_f b_f [mm^2]
  double shear_modulus;      // G = E / (2 (1 + nu)) [N/mm^2]
};

SectionProperties section_properties(const ManipulatorParameters& params);

}  // namespace orthostiff
