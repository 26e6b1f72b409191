#pragma once

#include <array>

#include "orthostiff/leg_kinematics.hpp"
#include "orthostiff/parameters.hpp"
#include "orthostiff/types.hpp"
#include "orthostiff/virtual_joints.hpp"

namespace orthostiff {

inline constexpr int kJointCount = 3 * kLegJointCount;     // 36
inline constexpr int kRetainedCount = 3 * kRetainedPerLeg;  // 24
inline constexpr int kPassiveCount = 3 * kPassivePerLeg;    // 12

/// Condition-number ceiling for every factorization in the pipeline.
inline constexpr double kConditionLimit = 1e12;

inline constexpr int global_joint(int leg_index, LegJoint j) { return kLegJointCount * (leg_index - 1) + index_of(j); }

/// Kinetostatic matrices of one pose. Retained joint rates are ordered per
/// leg as (k1, k2, k3, k4, k5, k6, k8, k10), legs in index order.
struct SystemMatrices {
  Eigen::MatrixXd J;   // 18 x 36, block diagonal of the leg Jacobians
  Eigen::MatrixXd R;   // 18 x 6, [I6 I6 I6]^T
  Eigen::MatrixXd A;   // 12 x 24, loop closure, retained side
  Eigen::MatrixXd B;   // 12 x 12, loop closure, passive side
  Eigen::MatrixXd V;   // 36 x 24, theta_dot = V theta_dot'
  Eigen::MatrixXd Jp;  // 6 x 24, reduced Jacobian J'
  Eigen::MatrixXd KJ;  // 24 x 24, diagonal joint stiffness
  double passive_condition = 0.0;  // condition number of B
};

struct PassiveElimination {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd V;
  double condition = 0.0;
};

Eigen::MatrixXd block_diagonal_jacobian(const std::array<LegJacobian, 3>& legs);
Eigen::MatrixXd platform_stack();

/// Solves B theta'' = A theta' from the two loop closures J1 t1 = J2 t2 and
/// J1 t1 = J3 t3 and builds V. Throws SerialSingularity when B is singular.
PassiveElimination eliminate_passive_joints(const std::array<LegJacobian, 3>& legs);

/// J' = (R^T R)^-1 R^T J V.
Eigen::MatrixXd reduced_jacobian(const Eigen::MatrixXd& J, const Eigen::MatrixXd& V, const Eigen::MatrixXd& R);

Eigen::MatrixXd joint_stiffness_matrix(const std::array<VirtualStiffness, 3>& springs);

SystemMatrices assemble_system(const Pose& pose, const ManipulatorParameters& params);

/// 6x6 compliance mapping a wrench [T; F] to a displacement [Omega; V].
struct ComplianceMatrix {
  Matrix6 kappa = Matrix6::Zero();
};

ComplianceMatrix compliance_from_system(const SystemMatrices& sys);
ComplianceMatrix compliance_matrix(const Pose& pose, const ManipulatorParameters& params);

/// K = kappa^-1. Throws SingularCompliance when kappa is not positive
/// definite or its condition number exceeds kConditionLimit.
Matrix6 cartesian_stiffness(const ComplianceMatrix& compliance);

struct IsotropicStiffness {
  double torsional = 0.0;      // K_a [N.mm/rad]
  double translational = 0.0;  // K_b [N/mm]
};

/// Closed-form diagonal stiffness at the isotropic pose. Validates params.
IsotropicStiffness isotropic_closed_form(const ManipulatorParameters& params);

/// Same formulas without validation; zero-size sections, zero spacing or an
/// infinite actuator stiffness are evaluated as limits (e.g. b_f = 0 gives
/// K_a = K_b = 0).
IsotropicStiffness isotropic_closed_form_unchecked(const ManipulatorParameters& params);

/// Diagonal of K = kappa^-1 from the numeric pipeline at p = 0.
IsotropicStiffness isotropic_from_pipeline(const ManipulatorParameters& params);

/// K_b as 1 / (constant + foot_coefficient / (h_f^3 b_f)), all other
/// parameters fixed.
struct TranslationalUnivariate {
  double constant = 0.0;
  double foot_coefficient = 0.0;
};

TranslationalUnivariate translational_univariate(const ManipulatorParameters& params);

}  // namespace orthostiff
