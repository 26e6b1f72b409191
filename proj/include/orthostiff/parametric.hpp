#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthostiff/parameters.hpp"
#include "orthostiff/stiffness.hpp"

namespace orthostiff {

/// Geometric design parameters that can be varied. E and k_act stay fixed.
enum class DesignParameter { FootLength, FootHeight, FootWidth, FootAngle, BarSpacing, BarLength, BarSection };

inline constexpr std::array<DesignParameter, 7> kDesignParameters = {
    DesignParameter::FootLength, DesignParameter::FootHeight, DesignParameter::FootWidth,
    DesignParameter::FootAngle,  DesignParameter::BarSpacing, DesignParameter::BarLength,
    DesignParameter::BarSection};

enum class StiffnessTarget { Torsional, Translational };  // K_a, K_b

enum class Evaluation { ClosedForm, Pipeline };

/// Symbol used in files and on the command line: L_f, h_f, b_f, lambda, d, L_B, S_B.
std::string_view symbol(DesignParameter p);
std::optional<DesignParameter> parse_design_parameter(std::string_view text);
std::string_view symbol(StiffnessTarget t);
std::optional<StiffnessTarget> parse_target(std::string_view text);

double get(const ManipulatorParameters& params, DesignParameter p);
void set(ManipulatorParameters& params, DesignParameter p, double value);

double target_value(const IsotropicStiffness& k, StiffnessTarget t);

/// Stiffness of `params` for the chosen evaluation route. Closed-form
/// evaluation accepts zeroed parameters (limit values).
double evaluate_stiffness(const ManipulatorParameters& params, StiffnessTarget t, Evaluation how);

struct SweepSpec {
  DesignParameter parameter = DesignParameter::FootLength;
  double t_min = -1.0;  // relative variation, -1 zeroes the parameter
  double t_max = 2.0;
  int samples = 301;
  StiffnessTarget target = StiffnessTarget::Torsional;
  Evaluation evaluation = Evaluation::ClosedForm;
  bool strict_range = false;  // lambda outside [0, pi/2]: OutOfRange instead of clamping

  void validate() const;
};

struct SweepResult {
  DesignParameter parameter = DesignParameter::FootLength;
  StiffnessTarget target = StiffnessTarget::Torsional;
  std::vector<double> t;
  std::vector<double> ratio;
  std::vector<bool> clamped;  // lambda limited to [0, pi/2]
  std::vector<bool> valid;    // false where the pipeline could not evaluate
  double initial = 0.0;  // K_initial
};

/// Evenly spaced t values; t = 0 is hit exactly when it lies on the grid.
std::vector<double> variation_grid(double t_min, double t_max, int samples);

/// Stiffness ratio K(p (1 + t)) / K(p) for one varied parameter.
double stiffness_ratio(const ManipulatorParameters& base, DesignParameter p, double t, StiffnessTarget target,
                       Evaluation how = Evaluation::ClosedForm);

SweepResult ratio_curve(const SweepSpec& spec, const ManipulatorParameters& base);

struct SurfaceSpec {
  DesignParameter first = DesignParameter::FootHeight;
  DesignParameter second = DesignParameter::FootLength;
  double t1_min = 0.0, t1_max = 1.0;
  double t2_min = 0.0, t2_max = 1.0;
  int samples1 = 51, samples2 = 51;
  StiffnessTarget target = StiffnessTarget::Torsional;
  Evaluation evaluation = Evaluation::ClosedForm;

  void validate() const;
};

struct SurfaceResult {
  DesignParameter first = DesignParameter::FootHeight;
  DesignParameter second = DesignParameter::FootLength;
  StiffnessTarget target = StiffnessTarget::Torsional;
  std::vector<double> t1;
  std::vector<double> t2;
  Eigen::MatrixXd ratio;  // ratio(i, j) at (t1[i], t2[j])
  double initial = 0.0;
};

SurfaceResult surface(const SurfaceSpec& spec, const ManipulatorParameters& base);

struct CompensationSpec {
  std::optional<DesignParameter> varied;  // empty: nothing varied
  double varied_t = 0.0;
  DesignParameter compensator = DesignParameter::FootHeight;
  StiffnessTarget target = StiffnessTarget::Torsional;
  double t_lo = -1.0;
  double t_hi = 4.0;
  double tolerance = 1e-10;
  int max_iterations = 200;
};

struct CompensationResult {
  double t = 0.0;            // required compensator variation
  double ratio = 1.0;        // K / K_initial at the solution
  int iterations = 0;
};

/// Bisection for the compensator variation that restores K_initial after
/// `varied` changed by `varied_t`. Throws NotCompensable when [t_lo, t_hi]
/// does not bracket the target.
CompensationResult compensation_solve(const CompensationSpec& spec, const ManipulatorParameters& base);

}  // namespace orthostiff
