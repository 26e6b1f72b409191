#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "orthostiff/error.hpp"
#include "orthostiff/stiffness.hpp"
#include "orthostiff/validation.hpp"

using namespace orthostiff;

namespace {

// Compliance from the stationary total potential energy: minimise
// 1/2 theta^T K theta - w^T d under J theta = R d for all 36 joint rates,
// passive joints having zero stiffness. Independent of the V elimination.
Matrix6 energy_compliance(const Pose& pose, const ManipulatorParameters& params) {
  const auto cfgs = inverse_kinematics(pose, params);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(18, 36);
  Eigen::VectorXd k = Eigen::VectorXd::Zero(36);
  for (int i = 0; i < 3; ++i) {
    J.block(6 * i, 12 * i, 6, 12) = leg_jacobian(cfgs[i], params).columns;
    const VirtualStiffness s = virtual_joint_stiffnesses(params, cfgs[i].beta);
    for (int r = 0; r < kRetainedPerLeg; ++r) k(12 * i + index_of(kRetainedJoints[r])) = s.values[r];
  }
  Eigen::MatrixXd R(18, 6);
  R << Matrix6::Identity(), Matrix6::Identity(), Matrix6::Identity();

  // Unknowns (theta, d, lambda); scale rows so the system is well balanced.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(60, 60);
  M.block(0, 0, 36, 36) = k.asDiagonal();
  M.block(0, 42, 36, 18) = J.transpose();
  M.block(36, 42, 6, 18) = -R.transpose();
  M.block(42, 0, 18, 36) = J;
  M.block(42, 36, 18, 6) = -R;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(60, 6);
  rhs.block(36, 0, 6, 6) = Matrix6::Identity();
  const Eigen::MatrixXd sol = M.fullPivLu().solve(rhs);
  return sol.block(36, 0, 6, 6);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no orthostiff::Error thrown";
  return ErrorKind::InvalidParameters;
}

}  // namespace

TEST(ClosedForm, PrototypeValues) {
  const IsotropicStiffness k = isotropic_closed_form(ManipulatorParameters{});
  EXPECT_NEAR(k.translational, 2715.357888, 1e-5);
  EXPECT_NEAR(k.torsional / 3.611098e6, 1.0, 1e-6);
}

TEST(ClosedForm, TorsionCoefficientAtDefaultPoisson) {
  // The fixed coefficients 78 and -33 hold at nu = 0.3.
  const double E = 7e4, Lf = 150, h = 26, b = 16, LB = 310, SB = 144, d = 80, c2 = 0.5;
  const double compliance =
      (2 * LB / (SB * d * d) + 2 * Lf * (78 * b * b + c2 * (45 * h * h - 33 * b * b)) / (5 * h * b * b * b * (b * b + h * h))) / E;
  EXPECT_NEAR(isotropic_closed_form(ManipulatorParameters{}).torsional * compliance, 1.0, 1e-12);
}

TEST(ClosedForm, Limits) {
  ManipulatorParameters p;
  p.foot_width = 0.0;
  EXPECT_EQ(isotropic_closed_form_unchecked(p).torsional, 0.0);
  EXPECT_EQ(isotropic_closed_form_unchecked(p).translational, 0.0);
  p = {};
  p.bar_spacing = 0.0;
  EXPECT_EQ(isotropic_closed_form_unchecked(p).torsional, 0.0);
  EXPECT_GT(isotropic_closed_form_unchecked(p).translational, 0.0);
  p = {};
  p.actuator_stiffness = std::numeric_limits<double>::infinity();
  EXPECT_GT(isotropic_closed_form_unchecked(p).translational, 2715.36);
  p = {};
  p.foot_width = 0.0;
  EXPECT_EQ(kind_of([&] { isotropic_closed_form(p); }), ErrorKind::ValidationError);
}

TEST(ClosedForm, UnivariateConstants) {
  const TranslationalUnivariate u = translational_univariate(ManipulatorParameters{});
  EXPECT_NEAR(u.constant / 2.537698413e-5, 1.0, 1e-9);
  EXPECT_NEAR(u.foot_coefficient / 96.42857143, 1.0, 1e-9);
  ManipulatorParameters p;
  p.foot_height = 31.0;
  p.foot_width = 12.5;
  EXPECT_NEAR(isotropic_closed_form(p).translational * (u.constant + u.foot_coefficient / (31.0 * 31 * 31 * 12.5)),
              1.0, 1e-12);
}

TEST(SystemMatrices, Dimensions) {
  const SystemMatrices sys = assemble_system(Pose{Vector3(5, -12, 30)}, ManipulatorParameters{});
  EXPECT_EQ(sys.J.rows(), 18);
  EXPECT_EQ(sys.J.cols(), 36);
  EXPECT_EQ(sys.B.rows(), 12);
  EXPECT_EQ(sys.B.cols(), 12);
  EXPECT_EQ(sys.A.cols(), 24);
  EXPECT_EQ(sys.V.rows(), 36);
  EXPECT_EQ(sys.V.cols(), 24);
  EXPECT_EQ(sys.Jp.rows(), 6);
  EXPECT_EQ(sys.Jp.cols(), 24);
  EXPECT_LT(sys.passive_condition, 1e4);
  // Retained joints map onto themselves.
  for (int leg = 1; leg <= 3; ++leg) {
    for (int r = 0; r < kRetainedPerLeg; ++r) {
      const Eigen::VectorXd row = sys.V.row(global_joint(leg, kRetainedJoints[r]));
      EXPECT_EQ(row.sum(), 1.0);
      EXPECT_EQ(row((leg - 1) * kRetainedPerLeg + r), 1.0);
    }
  }
}

TEST(SystemMatrices, LoopClosure) {
  const ManipulatorParameters p;
  for (const Pose& pose : random_poses(p, 100, 5)) {
    const SystemMatrices sys = assemble_system(pose, p);
    EXPECT_LT(loop_closure_residual(sys), 1e-9);
    // B theta'' = A theta' holds by construction of V.
    Eigen::MatrixXd passive(12, 24);
    for (int leg = 1; leg <= 3; ++leg) {
      for (int q = 0; q < kPassivePerLeg; ++q) {
        passive.row(kPassivePerLeg * (leg - 1) + q) = sys.V.row(global_joint(leg, kPassiveJoints[q]));
      }
    }
    EXPECT_LT((sys.B * passive - sys.A).norm() / sys.A.norm(), 1e-12);
  }
}

TEST(SystemMatrices, SingularPassiveBlock) {
  const ManipulatorParameters p;
  const auto cfgs = inverse_kinematics(Pose{}, p);
  std::array<LegJacobian, 3> legs = {leg_jacobian(cfgs[0], p), leg_jacobian(cfgs[1], p), leg_jacobian(cfgs[2], p)};
  legs[0].columns.col(index_of(LegJoint::DecouplingRevolute)).setZero();
  EXPECT_EQ(kind_of([&] { eliminate_passive_joints(legs); }), ErrorKind::SerialSingularity);
}

TEST(Compliance, IsotropicPoseIsDiagonal) {
  const ManipulatorParameters p;
  const Matrix6 kappa = compliance_matrix(Pose{}, p).kappa;
  const IsotropicStiffness k = isotropic_closed_form(p);
  const double scale = kappa.diagonal().maxCoeff();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j) EXPECT_LT(std::abs(kappa(i, j)), 1e-9 * scale);
    }
  }
  // Rotation: the closed form exactly. Translation: plus the foot axial
  // spring seen through cos(lambda).
  const double k6 = p.youngs_modulus * p.foot_height * p.foot_width / p.foot_length;
  const double c2 = std::pow(std::cos(p.foot_angle), 2);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(kappa(i, i) * k.torsional, 1.0, 1e-9);
    EXPECT_NEAR(kappa(i + 3, i + 3) / (1.0 / k.translational + c2 / k6), 1.0, 1e-9);
    EXPECT_NEAR(kappa(i + 3, i + 3) * k.translational, 1.0, 0.02);
  }
  const IsotropicStiffness pipe = isotropic_from_pipeline(p);
  EXPECT_NEAR(pipe.torsional / k.torsional, 1.0, 1e-9);
  EXPECT_NEAR(pipe.translational / k.translational, 1.0, 0.02);
}

TEST(Compliance, MatchesEnergyOracle) {
  const ManipulatorParameters p;
  for (const Pose& pose : random_poses(p, 40, 17)) {
    const Matrix6 kappa = compliance_matrix(pose, p).kappa;
    const Matrix6 oracle = energy_compliance(pose, p);
    EXPECT_LT((kappa - oracle).norm() / kappa.norm(), 1e-8) << pose.position.transpose();
  }
}

TEST(Compliance, Properties) {
  const ManipulatorParameters p;
  for (const Pose& pose : random_poses(p, 300, 23)) {
    const ComplianceMatrix kappa = compliance_matrix(pose, p);
    const Matrix6 K = cartesian_stiffness(kappa);
    const ComplianceChecks c = check_compliance(kappa.kappa, K);
    EXPECT_LT(c.asymmetry, 1e-12);
    EXPECT_GT(c.min_eigen_over_trace, -1e-12);
    EXPECT_LT(c.inverse_residual, 1e-9);
  }
}

TEST(Compliance, ScalesInverselyWithModulus) {
  ManipulatorParameters p;
  p.actuator_stiffness = std::numeric_limits<double>::max();  // effectively rigid drive
  const Pose pose{Vector3(-30, 60, 15)};
  const Matrix6 a = compliance_matrix(pose, p).kappa;
  p.youngs_modulus *= 2;
  const Matrix6 b = compliance_matrix(pose, p).kappa;
  EXPECT_LT((a - 2 * b).norm() / a.norm(), 1e-9);
}

TEST(Compliance, SingularMatrixRejected) {
  EXPECT_EQ(kind_of([] { cartesian_stiffness(ComplianceMatrix{}); }), ErrorKind::SingularCompliance);
  ComplianceMatrix c;
  c.kappa = Matrix6::Identity();
  c.kappa(5, 5) = 1e-14;
  EXPECT_EQ(kind_of([&] { cartesian_stiffness(c); }), ErrorKind::SingularCompliance);
}
