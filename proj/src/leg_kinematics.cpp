#include "orthostiff/leg_kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orthostiff/error.hpp"

namespace orthostiff {

namespace {

constexpr double kClosureTolerance = 1e-9;

void check_leg_index(int leg_index) {
  if (leg_index < 1 || leg_index > 3) {
    throw Error(ErrorKind::InvalidSpec, "leg index must be 1, 2 or 3");
  }
}

}  // namespace

bool is_translational(LegJoint j) {
  switch (j) {
    case LegJoint::Actuator:
    case LegJoint::FootAxial:
    case LegJoint::Parallelogram:
    case LegJoint::BarTension:
      return true;
    default:
      return false;
  }
}

const char* joint_name(LegJoint j) {
  switch (j) {
    case LegJoint::Actuator: return "actuator";
    case LegJoint::FootBending: return "foot_bending";
    case LegJoint::FootBendingTorque: return "foot_bending_torque";
    case LegJoint::FootTorsion: return "foot_torsion";
    case LegJoint::FootRotation: return "foot_rotation";
    case LegJoint::FootAxial: return "foot_axial";
    case LegJoint::ProximalRevolute: return "proximal_revolute";
    case LegJoint::Parallelogram: return "parallelogram";
    case LegJoint::BarTension: return "bar_tension";
    case LegJoint::BarDifferential: return "bar_differential";
    case LegJoint::DistalRevolute: return "distal_revolute";
    case LegJoint::DecouplingRevolute: return "decoupling_revolute";
  }
  return "?";
}

LegGeometry leg_geometry(int leg_index, const ManipulatorParameters& params) {
  check_leg_index(leg_index);
  const int i = leg_index - 1;
  LegGeometry g;
  g.leg_index = leg_index;
  g.drive_axis = Vector3::Unit(i);
  g.torque_axis = Vector3::Unit((i + 1) % 3);
  g.revolute_axis = g.drive_axis.cross(g.torque_axis);
  g.foot_axis = std::cos(params.foot_angle) * g.drive_axis + std::sin(params.foot_angle) * g.torque_axis;
  g.foot_normal = g.revolute_axis.cross(g.foot_axis);
  g.anchor_offset = 0.0;
  // Sliders sit on the negative side of their guide; at rho = 0 the bars lie
  // on the drive axis and the platform is at the origin.
  g.slider_origin = -(g.anchor_offset + params.bar_length) * g.drive_axis - params.foot_length * g.foot_axis;
  return g;
}

LegPlacement place_leg(const LegConfiguration& cfg, const ManipulatorParameters& params) {
  const LegGeometry g = leg_geometry(cfg.leg_index, params);
  const Vector3& u = g.drive_axis;
  const Vector3& m = g.torque_axis;
  const Vector3& s = g.revolute_axis;
  const Vector3& f = g.foot_axis;
  const Vector3& fn = g.foot_normal;

  LegPlacement out;
  Matrix3 rot = Matrix3::Identity();
  auto rotate = [&](LegJoint j, const Vector3& local_axis, const Vector3& point) {
    out.axes[index_of(j)] = rot * local_axis;
    out.points[index_of(j)] = point;
    rot = rot * axis_rotation(local_axis, cfg.joint(j));
  };

  const Vector3 slider = g.slider_origin + cfg.joint(LegJoint::Actuator) * u;
  out.axes[index_of(LegJoint::Actuator)] = u;
  out.points[index_of(LegJoint::Actuator)] = slider;
  out.foot_base = slider;

  rotate(LegJoint::FootBending, s, slider);
  rotate(LegJoint::FootBendingTorque, fn, slider);
  rotate(LegJoint::FootTorsion, f, slider);
  rotate(LegJoint::FootRotation, fn, slider);
  out.axes[index_of(LegJoint::FootAxial)] = rot * f;
  out.points[index_of(LegJoint::FootAxial)] = slider;
  const Vector3 tip = slider + (params.foot_length + cfg.joint(LegJoint::FootAxial)) * (rot * f);
  out.foot_tip = tip;

  rotate(LegJoint::ProximalRevolute, s, tip);

  // The distal short side of the parallelogram translates; it keeps the
  // orientation of the proximal one.
  const Vector3 bar_local = axis_rotation(m, cfg.joint(LegJoint::Parallelogram)) * u;
  const Vector3 bar = rot * bar_local;
  const double bar_len = params.bar_length + cfg.joint(LegJoint::BarTension);
  const Vector3 anchor = tip + bar_len * bar;
  out.axes[index_of(LegJoint::Parallelogram)] = rot * m;
  out.points[index_of(LegJoint::Parallelogram)] = tip;
  out.axes[index_of(LegJoint::BarTension)] = bar;
  out.points[index_of(LegJoint::BarTension)] = anchor;
  out.bar_direction = bar;
  out.anchor = anchor;

  rotate(LegJoint::BarDifferential, m, anchor);
  rotate(LegJoint::DistalRevolute, s, anchor);
  rotate(LegJoint::DecouplingRevolute, u, anchor);

  out.orientation = rot;
  out.platform_point = anchor + rot * (g.anchor_offset * u);
  return out;
}

LegConfiguration leg_inverse_kinematics(int leg_index, const Pose& pose, const ManipulatorParameters& params) {
  const LegGeometry g = leg_geometry(leg_index, params);
  const Vector3& u = g.drive_axis;

  // Vector from the guide line reference to the anchor: rho u + L_B n.
  const Vector3 anchor = pose.position - g.anchor_offset * u;
  const Vector3 delta = anchor - g.slider_origin - params.foot_length * g.foot_axis;
  const double axial = delta.dot(u);
  const Vector3 perp = delta - axial * u;
  const double sin_beta = perp.norm() / params.bar_length;

  if (sin_beta > 1.0) {
    throw Error(ErrorKind::UnreachablePose,
                "leg " + std::to_string(leg_index) + ": offset " + std::to_string(perp.norm()) +
                    " mm from the drive line exceeds the bar length " + std::to_string(params.bar_length) + " mm");
  }
  if (sin_beta >= 1.0 - 1e-12) {
    throw Error(ErrorKind::FoldedParallelogram,
                "leg " + std::to_string(leg_index) + ": parallelogram folded (|beta| = pi/2)");
  }

  const double cos_beta = std::sqrt((1.0 - sin_beta) * (1.0 + sin_beta));
  const Vector3 bar = perp / params.bar_length + cos_beta * u;

  LegConfiguration cfg;
  cfg.leg_index = leg_index;
  cfg.rho = axial - params.bar_length * cos_beta;
  cfg.beta = std::atan2(sin_beta, cos_beta);

  // bar = Rot(s, a) Rot(m, c) u = cos(c) (cos(a) u + sin(a) m) - sin(c) s
  const double gamma = -std::asin(std::clamp(bar.dot(g.revolute_axis), -1.0, 1.0));
  const double proximal = std::atan2(bar.dot(g.torque_axis), bar.dot(u));
  cfg.theta[index_of(LegJoint::Actuator)] = cfg.rho;
  cfg.theta[index_of(LegJoint::ProximalRevolute)] = proximal;
  cfg.theta[index_of(LegJoint::Parallelogram)] = gamma;
  cfg.theta[index_of(LegJoint::DistalRevolute)] = -proximal;
  cfg.theta[index_of(LegJoint::DecouplingRevolute)] = 0.0;
  return cfg;
}

std::array<LegConfiguration, 3> inverse_kinematics(const Pose& pose, const ManipulatorParameters& params) {
  return {leg_inverse_kinematics(1, pose, params), leg_inverse_kinematics(2, pose, params),
          leg_inverse_kinematics(3, pose, params)};
}

LegJacobian leg_jacobian(const LegConfiguration& cfg, const ManipulatorParameters& params) {
  const LegPlacement placed = place_leg(cfg, params);
  const LegGeometry g = leg_geometry(cfg.leg_index, params);

  if ((placed.orientation - Matrix3::Identity()).norm() > kClosureTolerance) {
    throw Error(ErrorKind::InconsistentConfiguration,
                "leg " + std::to_string(cfg.leg_index) + " does not preserve the platform orientation");
  }
  if (std::abs(std::cos(cfg.beta) - placed.bar_direction.dot(g.drive_axis)) > kClosureTolerance) {
    throw Error(ErrorKind::InconsistentConfiguration,
                "leg " + std::to_string(cfg.leg_index) + ": beta does not match the bar direction");
  }

  LegJacobian jac;
  jac.leg_index = cfg.leg_index;
  jac.beta = cfg.beta;
  const Vector3& p = placed.platform_point;
  for (int k = 0; k < kLegJointCount; ++k) {
    const auto joint = static_cast<LegJoint>(k);
    const Vector3& e = placed.axes[k];
    const Vector3 r = p - placed.points[k];
    jac.axes[k] = e;
    jac.moment_arms[k] = r;
    if (joint == LegJoint::Parallelogram) {
      // e7 x r7 - e7bis x r7bis with the same axis at both pivots.
      const Vector3 r_bis = p - placed.anchor;
      jac.columns.col(k) << Vector3::Zero(), e.cross(r) - e.cross(r_bis);
    } else if (is_translational(joint)) {
      jac.columns.col(k) << Vector3::Zero(), e;
    } else {
      jac.columns.col(k) << e, e.cross(r);
    }
  }
  return jac;
}

}  // namespace orthostiff
