#pragma once

#include <array>

#include "orthostiff/parameters.hpp"
#include "orthostiff/types.hpp"

namespace orthostiff {

/// Joints of one flexible leg, in chain order from the linear guide to the
/// platform. The foot springs sit at the proximal end of the foot; the bar
/// springs sit at the distal end of the parallelogram.
enum class LegJoint : int {
  Actuator = 0,        // prismatic drive, k1 = k_act
  FootBending,         // k2, about the revolute axis s (normal to the foot plane)
  FootBendingTorque,   // k3, about s x f (in the foot plane, normal to the foot)
  FootTorsion,         // k4, about the foot axis f
  FootRotation,        // k5, about s x f
  FootAxial,           // k6, translation along f
  ProximalRevolute,    // passive, axis s at the foot tip
  Parallelogram,       // passive, circular translation of the bar pair
  BarTension,          // k8, translation along the bars
  BarDifferential,     // k10, rotation about the parallelogram normal m
  DistalRevolute,      // passive, axis s at the platform anchor
  DecouplingRevolute,  // passive, axis u at the platform anchor
};

inline constexpr int kLegJointCount = 12;
inline constexpr int kRetainedPerLeg = 8;
inline constexpr int kPassivePerLeg = 4;

inline constexpr int index_of(LegJoint j) { return static_cast<int>(j); }

/// Retained joints in stiffness order (k1, k2, k3, k4, k5, k6, k8, k10).
inline constexpr std::array<LegJoint, kRetainedPerLeg> kRetainedJoints = {
    LegJoint::Actuator,     LegJoint::FootBending, LegJoint::FootBendingTorque, LegJoint::FootTorsion,
    LegJoint::FootRotation, LegJoint::FootAxial,   LegJoint::BarTension,        LegJoint::BarDifferential};

inline constexpr std::array<LegJoint, kPassivePerLeg> kPassiveJoints = {
    LegJoint::ProximalRevolute, LegJoint::Parallelogram, LegJoint::DistalRevolute,
    LegJoint::DecouplingRevolute};

bool is_translational(LegJoint j);
const char* joint_name(LegJoint j);

struct Pose {
  Vector3 position = Vector3::Zero();  // platform reference point [mm]
};

/// Fixed frame data of leg `leg_index` (1..3). The drive axis of leg i is the
/// i-th world axis; at p = 0 the bars are aligned with the drive axes.
struct LegGeometry {
  int leg_index = 1;
  Vector3 drive_axis;     // u
  Vector3 torque_axis;    // m, normal of the parallelogram plane, lies in the foot plane
  Vector3 revolute_axis;  // s = u x m, normal of the foot plane
  Vector3 foot_axis;      // f = cos(lambda) u + sin(lambda) m
  Vector3 foot_normal;    // s x f
  Vector3 slider_origin;  // slider point at rho = 0
  double anchor_offset = 0.0;  // platform anchor distance from the reference point along u
};

LegGeometry leg_geometry(int leg_index, const ManipulatorParameters& params);

struct LegConfiguration {
  int leg_index = 1;
  double rho = 0.0;                          // actuated travel [mm]
  std::array<double, kLegJointCount> theta{};  // per LegJoint, rad or mm
  double beta = 0.0;                         // angle between bars and drive axis [rad]

  double joint(LegJoint j) const { return theta[index_of(j)]; }
  /// Counter-rotation of the distal parallelogram pivots.
  double parallelogram_counter_angle() const { return -joint(LegJoint::Parallelogram); }
};

/// Result of placing a leg chain: platform frame plus every joint's world
/// axis and the point it passes through.
struct LegPlacement {
  Matrix3 orientation = Matrix3::Identity();
  Vector3 platform_point = Vector3::Zero();
  Vector3 foot_base = Vector3::Zero();
  Vector3 foot_tip = Vector3::Zero();
  Vector3 anchor = Vector3::Zero();
  Vector3 bar_direction = Vector3::UnitX();
  std::array<Vector3, kLegJointCount> axes{};
  std::array<Vector3, kLegJointCount> points{};
};

/// Forward placement of one chain for arbitrary joint values, virtual ones
/// included.
LegPlacement place_leg(const LegConfiguration& cfg, const ManipulatorParameters& params);

LegConfiguration leg_inverse_kinematics(int leg_index, const Pose& pose,
                                        const ManipulatorParameters& params);
std::array<LegConfiguration, 3> inverse_kinematics(const Pose& pose, const ManipulatorParameters& params);

struct LegJacobian {
  int leg_index = 1;
  Eigen::Matrix<double, 6, kLegJointCount> columns;  // twist generators [w; v]
  std::array<Vector3, kLegJointCount> axes{};         // e_j
  std::array<Vector3, kLegJointCount> moment_arms{};  // r_j, joint to reference point
  double beta = 0.0;

  auto column(LegJoint j) const { return columns.col(index_of(j)); }
};

/// Throws InconsistentConfiguration when the chain does not deliver the
/// fixed platform orientation or when beta disagrees with the bar direction.
LegJacobian leg_jacobian(const LegConfiguration& cfg, const ManipulatorParameters& params);

}  // namespace orthostiff
