#include "orthostiff/parametric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orthostiff/error.hpp"

namespace orthostiff {

namespace {

struct Perturbed {
  double value;
  bool clamped;
};

Perturbed perturb(const ManipulatorParameters& base, DesignParameter p, double t, bool strict) {
  double value = get(base, p) * (1.0 + t);
  if (p == DesignParameter::FootAngle && (value < 0.0 || value > kPi / 2.0)) {
    if (strict) {
      throw Error(ErrorKind::OutOfRange, "lambda variation leaves [0, pi/2] at t = " + std::to_string(t));
    }
    return {std::clamp(value, 0.0, kPi / 2.0), true};
  }
  return {value, false};
}

void check_range(double lo, double hi, int samples, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < -1.0 || !(lo < hi) || samples < 2) {
    throw Error(ErrorKind::InvalidSpec,
                std::string(what) + ": need -1 <= t_min < t_max and at least 2 samples");
  }
}

}  // namespace

std::string_view symbol(DesignParameter p) {
  switch (p) {
    case DesignParameter::FootLength: return "L_f";
    case DesignParameter::FootHeight: return "h_f";
    case DesignParameter::FootWidth: return "b_f";
    case DesignParameter::FootAngle: return "lambda";
    case DesignParameter::BarSpacing: return "d";
    case DesignParameter::BarLength: return "L_B";
    case DesignParameter::BarSection: return "S_B";
  }
  return "?";
}

std::optional<DesignParameter> parse_design_parameter(std::string_view text) {
  for (DesignParameter p : kDesignParameters) {
    if (symbol(p) == text) return p;
  }
  return std::nullopt;
}

std::string_view symbol(StiffnessTarget t) { return t == StiffnessTarget::Torsional ? "Ka" : "Kb"; }

std::optional<StiffnessTarget> parse_target(std::string_view text) {
  if (text == "Ka" || text == "K_a") return StiffnessTarget::Torsional;
  if (text == "Kb" || text == "K_b") return StiffnessTarget::Translational;
  return std::nullopt;
}

double get(const ManipulatorParameters& params, DesignParameter p) {
  switch (p) {
    case DesignParameter::FootLength: return params.foot_length;
    case DesignParameter::FootHeight: return params.foot_height;
    case DesignParameter::FootWidth: return params.foot_width;
    case DesignParameter::FootAngle: return params.foot_angle;
    case DesignParameter::BarSpacing: return params.bar_spacing;
    case DesignParameter::BarLength: return params.bar_length;
    case DesignParameter::BarSection: return params.bar_section;
  }
  return 0.0;
}

void set(ManipulatorParameters& params, DesignParameter p, double value) {
  switch (p) {
    case DesignParameter::FootLength: params.foot_length = value; break;
    case DesignParameter::FootHeight: params.foot_height = value; break;
    case DesignParameter::FootWidth: params.foot_width = value; break;
    case DesignParameter::FootAngle: params.foot_angle = value; break;
    case DesignParameter::BarSpacing: params.bar_spacing = value; break;
    case DesignParameter::BarLength: params.bar_length = value; break;
    case DesignParameter::BarSection: params.bar_section = value; break;
  }
}

double target_value(const IsotropicStiffness& k, StiffnessTarget t) {
  return t == StiffnessTarget::Torsional ? k.torsional : k.translational;
}

double evaluate_stiffness(const ManipulatorParameters& params, StiffnessTarget t, Evaluation how) {
  if (how == Evaluation::ClosedForm) return target_value(isotropic_closed_form_unchecked(params), t);
  return target_value(isotropic_from_pipeline(params), t);
}

void SweepSpec::validate() const { check_range(t_min, t_max, samples, "sweep"); }

void SurfaceSpec::validate() const {
  check_range(t1_min, t1_max, samples1, "surface axis 1");
  check_range(t2_min, t2_max, samples2, "surface axis 2");
  if (first == second) throw Error(ErrorKind::InvalidSpec, "surface needs two distinct parameters");
}

std::vector<double> variation_grid(double t_min, double t_max, int samples) {
  std::vector<double> t(samples);
  const int last = samples - 1;
  for (int k = 0; k < samples; ++k) t[k] = (t_min * (last - k) + t_max * k) / last;
  return t;
}

double stiffness_ratio(const ManipulatorParameters& base, DesignParameter p, double t, StiffnessTarget target,
                       Evaluation how) {
  ManipulatorParameters varied = base;
  set(varied, p, perturb(base, p, t, false).value);
  return evaluate_stiffness(varied, target, how) / evaluate_stiffness(base, target, how);
}

SweepResult ratio_curve(const SweepSpec& spec, const ManipulatorParameters& base) {
  spec.validate();
  base.validate();
  SweepResult out;
  out.parameter = spec.parameter;
  out.target = spec.target;
  out.initial = evaluate_stiffness(base, spec.target, spec.evaluation);
  out.t = variation_grid(spec.t_min, spec.t_max, spec.samples);
  for (double t : out.t) {
    const Perturbed v = perturb(base, spec.parameter, t, spec.strict_range);
    ManipulatorParameters varied = base;
    set(varied, spec.parameter, v.value);
    double ratio = std::numeric_limits<double>::quiet_NaN();
    bool ok = true;
    try {
      ratio = evaluate_stiffness(varied, spec.target, spec.evaluation) / out.initial;
    } catch (const Error& e) {
      // Only the numeric pipeline throws; zeroed sections have no springs.
      if (e.kind() == ErrorKind::InvalidSpec) throw;
      ok = false;
    }
    out.ratio.push_back(ratio);
    out.clamped.push_back(v.clamped);
    out.valid.push_back(ok);
  }
  return out;
}

SurfaceResult surface(const SurfaceSpec& spec, const ManipulatorParameters& base) {
  spec.validate();
  base.validate();
  SurfaceResult out;
  out.first = spec.first;
  out.second = spec.second;
  out.target = spec.target;
  out.initial = evaluate_stiffness(base, spec.target, spec.evaluation);
  out.t1 = variation_grid(spec.t1_min, spec.t1_max, spec.samples1);
  out.t2 = variation_grid(spec.t2_min, spec.t2_max, spec.samples2);
  out.ratio.resize(spec.samples1, spec.samples2);
  for (int i = 0; i < spec.samples1; ++i) {
    for (int j = 0; j < spec.samples2; ++j) {
      ManipulatorParameters varied = base;
      set(varied, spec.first, perturb(base, spec.first, out.t1[i], false).value);
      set(varied, spec.second, perturb(base, spec.second, out.t2[j], false).value);
      double ratio = std::numeric_limits<double>::quiet_NaN();
      try {
        ratio = evaluate_stiffness(varied, spec.target, spec.evaluation) / out.initial;
      } catch (const Error&) {
      }
      out.ratio(i, j) = ratio;
    }
  }
  return out;
}

CompensationResult compensation_solve(const CompensationSpec& spec, const ManipulatorParameters& base) {
  base.validate();
  if (spec.varied && *spec.varied == spec.compensator) {
    throw Error(ErrorKind::InvalidSpec, "compensator must differ from the varied parameter");
  }
  if (!(spec.t_lo >= -1.0) || !(spec.t_lo < spec.t_hi) || !(spec.tolerance > 0.0)) {
    throw Error(ErrorKind::InvalidSpec, "compensation bracket must satisfy -1 <= t_lo < t_hi");
  }

  const double initial = target_value(isotropic_closed_form_unchecked(base), spec.target);
  ManipulatorParameters varied = base;
  if (spec.varied) set(varied, *spec.varied, perturb(base, *spec.varied, spec.varied_t, true).value);

  auto residual = [&](double t) {
    ManipulatorParameters p = varied;
    set(p, spec.compensator, perturb(base, spec.compensator, t, false).value);
    return target_value(isotropic_closed_form_unchecked(p), spec.target) / initial - 1.0;
  };

  double lo = spec.t_lo;
  double hi = spec.t_hi;
  double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo * f_hi > 0.0) {
    throw Error(ErrorKind::NotCompensable,
                std::string(symbol(spec.compensator)) + " cannot restore " + std::string(symbol(spec.target)) +
                    " within t in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  CompensationResult out;
  while (hi - lo > spec.tolerance && out.iterations < spec.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    ++out.iterations;
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  out.t = 0.5 * (lo + hi);
  out.ratio = residual(out.t) + 1.0;
  return out;
}

}  // namespace orthostiff
