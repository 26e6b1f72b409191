#include "orthostiff/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "orthostiff/error.hpp"
#include "orthostiff/machining.hpp"
#include "orthostiff/param_file.hpp"
#include "orthostiff/parametric.hpp"
#include "orthostiff/report.hpp"
#include "orthostiff/virtual_joints.hpp"

namespace orthostiff {

namespace {

Vector3 vee(const Matrix3& w) { return {w(2, 1), w(0, 2), w(1, 0)}; }

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

}  // namespace

std::vector<Pose> random_poses(const ManipulatorParameters& params, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Pose> poses(count);
  for (Pose& pose : poses) {
    for (int a = 0; a < 3; ++a) {
      std::uniform_real_distribution<double> u(params.workspace_lo[a], params.workspace_hi[a]);
      pose.position[a] = u(rng);
    }
  }
  return poses;
}

double ik_roundtrip_error(const Pose& pose, const ManipulatorParameters& params) {
  double worst = 0.0;
  for (const LegConfiguration& cfg : inverse_kinematics(pose, params)) {
    const LegPlacement placed = place_leg(cfg, params);
    worst = std::max(worst, (placed.platform_point - pose.position).norm());
    worst = std::max(worst, (placed.orientation - Matrix3::Identity()).norm());
  }
  return worst;
}

double jacobian_fd_error(const LegConfiguration& cfg, const ManipulatorParameters& params, double step) {
  const LegJacobian jac = leg_jacobian(cfg, params);
  double worst = 0.0;
  for (int k = 0; k < kLegJointCount; ++k) {
    LegConfiguration plus = cfg, minus = cfg;
    plus.theta[k] += step;
    minus.theta[k] -= step;
    const LegPlacement a = place_leg(plus, params);
    const LegPlacement b = place_leg(minus, params);
    Vector6 fd;
    // R(+h) R(-h)^T ~ I + 2h [w]x
    fd << vee(a.orientation * b.orientation.transpose()) / (2.0 * step),
        (a.platform_point - b.platform_point) / (2.0 * step);
    const Vector6 col = jac.columns.col(k);
    worst = std::max(worst, (fd - col).norm() / std::max(col.norm(), 1.0));
  }
  return worst;
}

double loop_closure_residual(const SystemMatrices& sys) {
  const Eigen::MatrixXd JV = sys.J * sys.V;
  const double scale = JV.norm();
  double worst = 0.0;
  for (int leg = 1; leg < 3; ++leg) {
    worst = std::max(worst, (JV.middleRows(6 * leg, 6) - JV.topRows(6)).norm() / scale);
  }
  return worst;
}

ComplianceChecks check_compliance(const Matrix6& kappa, const Matrix6& K) {
  ComplianceChecks c;
  c.asymmetry = (kappa - kappa.transpose()).norm() / kappa.norm();
  Eigen::SelfAdjointEigenSolver<Matrix6> eig(kappa, Eigen::EigenvaluesOnly);
  c.min_eigen_over_trace = eig.eigenvalues()(0) / kappa.trace();
  c.inverse_residual = (K * kappa - Matrix6::Identity()).norm();
  return c;
}

std::vector<CheckResult> run_validation(const ManipulatorParameters& params, int pose_count, std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto check = [&](const std::string& name, const std::function<std::string(bool&)>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.passed = true;
      r.detail = body(r.passed);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    out.push_back(r);
  };

  check("section_properties", [&](bool& ok) {
    const SectionProperties s = section_properties(params);
    const double ratio = s.bending_inertia_1 / s.bending_inertia_2;
    const double expected = std::pow(params.foot_height / params.foot_width, 2);
    const double polar = s.polar_moment - (s.bending_inertia_1 + s.bending_inertia_2);
    ok = std::abs(ratio - expected) <= 1e-12 * expected && std::abs(polar) <= 1e-9 * s.polar_moment &&
         s.bending_inertia_1 > 0 && s.bending_inertia_2 > 0 && s.shear_modulus > 0;
    return "I_f1/I_f2 = " + format_number(ratio);
  });

  check("isotropic_beta_zero", [&](bool& ok) {
    double worst = 0.0;
    for (const auto& cfg : inverse_kinematics(Pose{}, params)) worst = std::max(worst, std::abs(cfg.beta));
    ok = worst <= 1e-12;
    return "max |beta| = " + sci(worst);
  });

  const std::vector<Pose> poses = random_poses(params, pose_count, seed);
  double ik = 0, fd = 0, loop = 0, asym = 0, psd = 1, inv = 0;
  check("pose_properties", [&](bool& ok) {
    for (const Pose& pose : poses) {
      ik = std::max(ik, ik_roundtrip_error(pose, params));
      for (const auto& cfg : inverse_kinematics(pose, params)) fd = std::max(fd, jacobian_fd_error(cfg, params));
      const SystemMatrices sys = assemble_system(pose, params);
      loop = std::max(loop, loop_closure_residual(sys));
      const ComplianceMatrix kappa = compliance_from_system(sys);
      const ComplianceChecks c = check_compliance(kappa.kappa, cartesian_stiffness(kappa));
      asym = std::max(asym, c.asymmetry);
      psd = std::min(psd, c.min_eigen_over_trace);
      inv = std::max(inv, c.inverse_residual);
    }
    ok = true;
    return std::to_string(poses.size()) + " poses evaluated";
  });
  check("ik_roundtrip", [&](bool& ok) {
    ok = ik <= 1e-9;
    return "max error " + sci(ik) + " mm";
  });
  check("jacobian_finite_difference", [&](bool& ok) {
    ok = fd <= 1e-6;
    return "max relative error " + sci(fd);
  });
  check("loop_closure", [&](bool& ok) {
    ok = loop <= 1e-9;
    return "max residual " + sci(loop);
  });
  check("compliance_symmetric", [&](bool& ok) {
    ok = asym <= 1e-12;
    return "max asymmetry " + sci(asym);
  });
  check("compliance_psd", [&](bool& ok) {
    ok = psd >= -1e-12;
    return "min eigenvalue / trace " + sci(psd);
  });
  check("stiffness_inverse", [&](bool& ok) {
    ok = inv <= 1e-9;
    return "max |K kappa - I| " + sci(inv);
  });

  check("isotropic_pipeline_matches_closed_form", [&](bool& ok) {
    const Matrix6 kappa = compliance_matrix(Pose{}, params).kappa;
    const IsotropicStiffness k = isotropic_closed_form(params);
    const double scale = kappa.diagonal().cwiseAbs().maxCoeff();
    const Matrix6 off = kappa - Matrix6(kappa.diagonal().asDiagonal());
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
      const double expected = i < 3 ? 1.0 / k.torsional : 1.0 / k.translational;
      worst = std::max(worst, std::abs(kappa(i, i) / expected - 1.0));
    }
    const double off_max = off.cwiseAbs().maxCoeff() / scale;
    ok = off_max < 1e-9 && worst <= 0.02;
    return "off-diagonal " + sci(off_max) + ", diagonal deviation " + sci(worst);
  });

  check("virtual_joint_limits", [&](bool& ok) {
    const VirtualStiffness k = virtual_joint_stiffnesses(params, 0.0);
    ok = std::all_of(k.values.begin(), k.values.end(), [](double v) { return v > 0.0; });
    try {
      virtual_joint_stiffnesses(params, kPi / 2.0);
      ok = false;
    } catch (const Error& e) {
      ok = ok && e.kind() == ErrorKind::DegenerateStiffness;
    }
    return "k10 at beta = 0: " + format_number(k.bar_differential());
  });

  check("sweep_ratio_properties", [&](bool& ok) {
    for (DesignParameter p : kDesignParameters) {
      for (StiffnessTarget t : {StiffnessTarget::Torsional, StiffnessTarget::Translational}) {
        SweepSpec spec;
        spec.parameter = p;
        spec.target = t;
        const SweepResult r = ratio_curve(spec, params);
        const auto zero = std::find(r.t.begin(), r.t.end(), 0.0) - r.t.begin();
        ok = ok && r.ratio[zero] == 1.0;
        ok = ok && std::all_of(r.ratio.begin(), r.ratio.end(), [](double v) { return v >= 0.0; });
      }
    }
    return "ratio(0) = 1 and ratio >= 0 on all sweeps";
  });

  check("sweep_limits", [&](bool& ok) {
    using D = DesignParameter;
    for (D p : {D::BarSpacing, D::BarSection, D::FootHeight, D::FootWidth}) {
      ok = ok && stiffness_ratio(params, p, -1.0, StiffnessTarget::Torsional) == 0.0;
    }
    for (D p : {D::BarSection, D::FootHeight, D::FootWidth}) {
      ok = ok && stiffness_ratio(params, p, -1.0, StiffnessTarget::Translational) == 0.0;
    }
    return "zero sections give zero stiffness";
  });

  check("lambda_extremum", [&](bool& ok) {
    SweepSpec spec;
    spec.parameter = DesignParameter::FootAngle;
    spec.t_max = 1.0;
    spec.samples = 201;
    const SweepResult ka = ratio_curve(spec, params);
    spec.target = StiffnessTarget::Translational;
    const SweepResult kb = ratio_curve(spec, params);
    const auto amax = std::max_element(ka.ratio.begin(), ka.ratio.end()) - ka.ratio.begin();
    const auto bmin = std::min_element(kb.ratio.begin(), kb.ratio.end()) - kb.ratio.begin();
    ok = ka.t[amax] == 1.0 && kb.t[bmin] == 1.0;
    return "K_a maximal and K_b minimal at t = " + format_number(ka.t[amax]) + ", " + format_number(kb.t[bmin]);
  });

  check("surface_slice_matches_sweep", [&](bool& ok) {
    SurfaceSpec ss;
    ss.t1_min = -1.0;
    ss.t1_max = 2.0;
    ss.samples1 = 31;
    ss.t2_min = 0.0;
    ss.samples2 = 3;
    const SurfaceResult s = surface(ss, params);
    SweepSpec sw;
    sw.parameter = ss.first;
    sw.samples = 31;
    const SweepResult r = ratio_curve(sw, params);
    for (int i = 0; i < 31; ++i) ok = ok && s.ratio(i, 0) == r.ratio[i];
    return "h_f slice at t(L_f) = 0";
  });

  check("compensation_self_consistent", [&](bool& ok) {
    double worst = 0.0;
    for (StiffnessTarget t : {StiffnessTarget::Torsional, StiffnessTarget::Translational}) {
      for (DesignParameter c : {DesignParameter::FootHeight, DesignParameter::FootWidth}) {
        CompensationSpec spec;
        spec.varied = DesignParameter::FootLength;
        spec.varied_t = 0.5;
        spec.compensator = c;
        spec.target = t;
        worst = std::max(worst, std::abs(compensation_solve(spec, params).ratio - 1.0));
      }
    }
    ok = worst <= 1e-6;
    return "max |ratio - 1| " + sci(worst);
  });

  check("cutting_wrench", [&](bool& ok) {
    const Vector3 F(215.0, -10.0, -25.0);
    const CuttingWrench w = cutting_wrench(F, params.tool_length);
    ok = w.torque.z() == 0.0 && (w.torque - (params.tool_length * Vector3::UnitZ()).cross(F)).norm() <= 1e-12;
    return "T = " + format_number(w.torque.x()) + "," + format_number(w.torque.y()) + "," +
           format_number(w.torque.z());
  });

  check("tracking_error_properties", [&](bool& ok) {
    const Vector3 F(215.0, -10.0, -25.0);
    double worst = 0.0;
    for (int k = 0; k < std::min<int>(20, poses.size()); ++k) {
      const ToolDisplacement d1 = compliant_displacement(poses[k], cutting_wrench(F, params.tool_length), params);
      const ToolDisplacement d2 = compliant_displacement(poses[k], cutting_wrench(2.0 * F, params.tool_length), params);
      const double e1 = tracking_error(d1);
      worst = std::max(worst, std::abs(tracking_error(d2) - 2.0 * e1) / e1);
      ToolDisplacement shifted = d1;
      shifted.tool_translation += 3.7 * Vector3::UnitY();
      worst = std::max(worst, std::abs(tracking_error(shifted) - e1) / e1);
      ok = ok && std::abs(d1.tool_translation.z() - d1.platform_translation.z()) == 0.0;
    }
    ok = ok && worst <= 1e-12;
    return "linearity and feed invariance " + sci(worst);
  });

  check("zero_force_map", [&](bool& ok) {
    GrooveMapSpec spec;
    spec.force = Vector3::Zero();
    spec.grid = 5;
    spec.path_samples = 5;
    const TrackingErrorMap map = tracking_error_map(spec, params);
    for (const GrooveCell& c : map.cells) ok = ok && c.valid && c.delta_max == 0.0;
    return std::to_string(map.cells.size()) + " cells";
  });

  check("parameter_file_roundtrip", [&](bool& ok) {
    std::istringstream in(format_parameters(params));
    const LoadedParameters loaded = parse_parameters(in, "<roundtrip>");
    const IsotropicStiffness a = isotropic_closed_form(params);
    const IsotropicStiffness b = isotropic_closed_form(loaded.params);
    const double dev = std::max(std::abs(a.torsional / b.torsional - 1.0), std::abs(a.translational / b.translational - 1.0));
    ok = loaded.notices.empty() && dev <= 1e-10;
    return "relative deviation " + sci(dev);
  });

  return out;
}

}  // namespace orthostiff
