#include "orthostiff/stiffness.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "orthostiff/error.hpp"

namespace orthostiff {

namespace {

Eigen::Matrix<double, 6, kRetainedPerLeg> retained_columns(const LegJacobian& leg) {
  Eigen::Matrix<double, 6, kRetainedPerLeg> out;
  for (int r = 0; r < kRetainedPerLeg; ++r) out.col(r) = leg.column(kRetainedJoints[r]);
  return out;
}

Eigen::Matrix<double, 6, kPassivePerLeg> passive_columns(const LegJacobian& leg) {
  Eigen::Matrix<double, 6, kPassivePerLeg> out;
  for (int q = 0; q < kPassivePerLeg; ++q) out.col(q) = leg.column(kPassiveJoints[q]);
  return out;
}

// num / den with 0 / x = 0 and x / 0 = +inf for x > 0.
double limit_ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

double inverse_or_zero(double compliance) {
  return std::isinf(compliance) ? 0.0 : 1.0 / compliance;
}

}  // namespace

Eigen::MatrixXd block_diagonal_jacobian(const std::array<LegJacobian, 3>& legs) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(18, kJointCount);
  for (int i = 0; i < 3; ++i) J.block(6 * i, kLegJointCount * i, 6, kLegJointCount) = legs[i].columns;
  return J;
}

Eigen::MatrixXd platform_stack() {
  Eigen::MatrixXd R(18, 6);
  R << Matrix6::Identity(), Matrix6::Identity(), Matrix6::Identity();
  return R;
}

PassiveElimination eliminate_passive_joints(const std::array<LegJacobian, 3>& legs) {
  constexpr int P = kPassivePerLeg;
  constexpr int Q = kRetainedPerLeg;
  PassiveElimination out;
  out.A = Eigen::MatrixXd::Zero(12, kRetainedCount);
  out.B = Eigen::MatrixXd::Zero(12, kPassiveCount);

  const auto jr1 = retained_columns(legs[0]);
  const auto jp1 = passive_columns(legs[0]);
  for (int loop = 0; loop < 2; ++loop) {
    const int other = loop + 1;
    const int row = 6 * loop;
    out.B.block(row, 0, 6, P) = jp1;
    out.B.block(row, P * other, 6, P) = -passive_columns(legs[other]);
    out.A.block(row, 0, 6, Q) = -jr1;
    out.A.block(row, Q * other, 6, Q) = retained_columns(legs[other]);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.B);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  out.condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(out.condition <= kConditionLimit)) {
    throw Error(ErrorKind::SerialSingularity,
                "passive-joint matrix B is singular (condition " + std::to_string(out.condition) + ")");
  }
  const Eigen::MatrixXd passive_map = out.B.fullPivLu().solve(out.A);

  out.V = Eigen::MatrixXd::Zero(kJointCount, kRetainedCount);
  for (int leg = 1; leg <= 3; ++leg) {
    for (int r = 0; r < Q; ++r) out.V(global_joint(leg, kRetainedJoints[r]), Q * (leg - 1) + r) = 1.0;
    for (int q = 0; q < P; ++q) {
      out.V.row(global_joint(leg, kPassiveJoints[q])) = passive_map.row(P * (leg - 1) + q);
    }
  }
  return out;
}

Eigen::MatrixXd reduced_jacobian(const Eigen::MatrixXd& J, const Eigen::MatrixXd& V, const Eigen::MatrixXd& R) {
  const Eigen::MatrixXd RtR = R.transpose() * R;
  return RtR.ldlt().solve(R.transpose() * (J * V));
}

Eigen::MatrixXd joint_stiffness_matrix(const std::array<VirtualStiffness, 3>& springs) {
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(kRetainedCount, kRetainedCount);
  for (int leg = 0; leg < 3; ++leg) {
    for (int r = 0; r < kRetainedPerLeg; ++r) {
      K(kRetainedPerLeg * leg + r, kRetainedPerLeg * leg + r) = springs[leg].values[r];
    }
  }
  return K;
}

SystemMatrices assemble_system(const Pose& pose, const ManipulatorParameters& params) {
  const auto configs = inverse_kinematics(pose, params);
  std::array<LegJacobian, 3> legs;
  std::array<VirtualStiffness, 3> springs;
  for (int i = 0; i < 3; ++i) {
    legs[i] = leg_jacobian(configs[i], params);
    springs[i] = virtual_joint_stiffnesses(params, configs[i].beta);
  }

  SystemMatrices sys;
  PassiveElimination elim = eliminate_passive_joints(legs);
  sys.J = block_diagonal_jacobian(legs);
  sys.R = platform_stack();
  sys.A = std::move(elim.A);
  sys.B = std::move(elim.B);
  sys.V = std::move(elim.V);
  sys.passive_condition = elim.condition;
  sys.Jp = reduced_jacobian(sys.J, sys.V, sys.R);
  sys.KJ = joint_stiffness_matrix(springs);
  return sys;
}

ComplianceMatrix compliance_from_system(const SystemMatrices& sys) {
  // kappa = J' K_J^-1 J'^T with K_J diagonal: scale columns by 1/sqrt(k).
  const Eigen::VectorXd root = sys.KJ.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd M = sys.Jp * root.asDiagonal();
  ComplianceMatrix c;
  c.kappa = M * M.transpose();
  c.kappa = 0.5 * (c.kappa + c.kappa.transpose()).eval();
  return c;
}

ComplianceMatrix compliance_matrix(const Pose& pose, const ManipulatorParameters& params) {
  return compliance_from_system(assemble_system(pose, params));
}

Matrix6 cartesian_stiffness(const ComplianceMatrix& compliance) {
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(compliance.kappa, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(5);
  if (!(lo > 0.0) || hi / lo > kConditionLimit) {
    throw Error(ErrorKind::SingularCompliance,
                "compliance matrix is not invertible (eigenvalues " + std::to_string(lo) + " .. " +
                    std::to_string(hi) + ")");
  }
  Eigen::LLT<Matrix6> llt(compliance.kappa);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularCompliance, "compliance matrix is not positive definite");
  }
  Matrix6 K = llt.solve(Matrix6::Identity());
  return 0.5 * (K + K.transpose());
}

IsotropicStiffness isotropic_closed_form_unchecked(const ManipulatorParameters& params) {
  const double E = params.youngs_modulus;
  const double Lf = params.foot_length;
  const double h = params.foot_height;
  const double b = params.foot_width;
  const double c2 = std::pow(std::cos(params.foot_angle), 2);
  const double s2 = std::pow(std::sin(params.foot_angle), 2);
  const double LB = params.bar_length;
  const double SB = params.bar_section;
  const double d = params.bar_spacing;

  // Torsion coefficient 60 (1 + nu); equals 78 for nu = 0.3.
  const double torsion = 60.0 * (1.0 + params.poisson_ratio);
  const double bars_rot = limit_ratio(2.0 * LB, SB * d * d);
  const double foot_rot =
      limit_ratio(2.0 * Lf * (torsion * b * b + c2 * (45.0 * h * h + (45.0 - torsion) * b * b)),
                  5.0 * h * b * b * b * (b * b + h * h));
  const double rot_compliance = (bars_rot + foot_rot) / E;

  const double actuator = limit_ratio(1.0, params.actuator_stiffness);
  const double bars_trans = limit_ratio(LB, 2.0 * SB * E);
  const double foot_trans = limit_ratio(4.0 * Lf * Lf * Lf * s2, E * h * h * h * b);

  IsotropicStiffness k;
  k.torsional = inverse_or_zero(rot_compliance);
  k.translational = inverse_or_zero(actuator + bars_trans + foot_trans);
  return k;
}

IsotropicStiffness isotropic_closed_form(const ManipulatorParameters& params) {
  params.validate();
  return isotropic_closed_form_unchecked(params);
}

IsotropicStiffness isotropic_from_pipeline(const ManipulatorParameters& params) {
  const Matrix6 K = cartesian_stiffness(compliance_matrix(Pose{}, params));
  return {K(0, 0), K(3, 3)};
}

TranslationalUnivariate translational_univariate(const ManipulatorParameters& params) {
  const double E = params.youngs_modulus;
  const double Lf = params.foot_length;
  const double s2 = std::pow(std::sin(params.foot_angle), 2);
  TranslationalUnivariate u;
  u.constant = 1.0 / params.actuator_stiffness + params.bar_length / (2.0 * params.bar_section * E);
  u.foot_coefficient = 4.0 * Lf * Lf * Lf * s2 / E;
  return u;
}

}  // namespace orthostiff
