#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthostiff/leg_kinematics.hpp"
#include "orthostiff/parameters.hpp"
#include "orthostiff/stiffness.hpp"

namespace orthostiff {

/// Uniform poses inside the workspace cube, reproducible from `seed`.
std::vector<Pose> random_poses(const ManipulatorParameters& params, int count, std::uint64_t seed);

/// Largest |FK(IK(p)) - p| over the three legs [mm], also checking that the
/// platform orientation is preserved.
double ik_roundtrip_error(const Pose& pose, const ManipulatorParameters& params);

/// Largest column error of the analytic leg Jacobian against central
/// differences of place_leg, relative to the column norm.
double jacobian_fd_error(const LegConfiguration& cfg, const ManipulatorParameters& params, double step = 1e-6);

/// max_i |J_i V_i - J_1 V_1| / |J V|: all legs must deliver the same twist.
double loop_closure_residual(const SystemMatrices& sys);

struct ComplianceChecks {
  double asymmetry = 0.0;          // |kappa - kappa^T| / |kappa|
  double min_eigen_over_trace = 0.0;
  double inverse_residual = 0.0;   // |K kappa - I|
};

ComplianceChecks check_compliance(const Matrix6& kappa, const Matrix6& K);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Built-in invariant suite behind the `validate` command.
std::vector<CheckResult> run_validation(const ManipulatorParameters& params, int pose_count = 200,
                                        std::uint64_t seed = 20051);

}  // namespace orthostiff
