#pragma once

#include <array>

#include "orthostiff/leg_kinematics.hpp"
#include "orthostiff/parameters.hpp"

namespace orthostiff {

/// Spring constants of the retained joints of one leg, in kRetainedJoints
/// order. Translational entries (k1, k6, k8) in N/mm, rotational ones in
/// N.mm/rad.
struct VirtualStiffness {
  std::array<double, kRetainedPerLeg> values{};

  double actuator() const { return values[0]; }          // k1
  double foot_bending() const { return values[1]; }      // k2
  double foot_bending_torque() const { return values[2]; }  // k3
  double foot_torsion() const { return values[3]; }      // k4
  double foot_rotation() const { return values[4]; }     // k5
  double foot_axial() const { return values[5]; }        // k6
  double bar_tension() const { return values[6]; }       // k8
  double bar_differential() const { return values[7]; }  // k10
};

/// Lumped spring constants of a leg whose parallelogram is at angle `beta`.
/// Throws DegenerateStiffness when |beta| >= pi/2 or any constant is not
/// strictly positive.
VirtualStiffness virtual_joint_stiffnesses(const ManipulatorParameters& params, double beta);

}  // namespace orthostiff
