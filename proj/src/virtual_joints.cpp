#include "orthostiff/virtual_joints.hpp"

#include <cmath>
#include <string>

#include "orthostiff/error.hpp"

namespace orthostiff {

VirtualStiffness virtual_joint_stiffnesses(const ManipulatorParameters& params, double beta) {
  if (!(std::abs(beta) < kPi / 2.0)) {
    throw Error(ErrorKind::DegenerateStiffness, "parallelogram angle |beta| >= pi/2 cancels k10");
  }
  const SectionProperties sec = section_properties(params);
  const double E = params.youngs_modulus;
  const double Lf = params.foot_length;
  const double LB = params.bar_length;
  const double SB = params.bar_section;
  const double d = params.bar_spacing;

  VirtualStiffness k;
  k.values = {
      params.actuator_stiffness,
      3.0 * E * sec.bending_inertia_1 / Lf,
      2.0 * E * sec.bending_inertia_2 / Lf,
      sec.shear_modulus * sec.polar_moment / Lf,
      E * sec.bending_inertia_2 / Lf,
      E * sec.area / Lf,
      2.0 * E * SB / LB,
      E * SB * d * d * std::cos(beta) / (2.0 * LB),
  };
  for (std::size_t i = 0; i < k.values.size(); ++i) {
    if (!(k.values[i] > 0.0) || !std::isfinite(k.values[i])) {
      throw Error(ErrorKind::DegenerateStiffness,
                  "spring " + std::string(joint_name(kRetainedJoints[i])) + " is not strictly positive");
    }
  }
  return k;
}

}  // namespace orthostiff
