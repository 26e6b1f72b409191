#pragma once

#include <ostream>
#include <string>

#include "orthostiff/machining.hpp"
#include "orthostiff/parameters.hpp"
#include "orthostiff/parametric.hpp"
#include "orthostiff/stiffness.hpp"

namespace orthostiff {

/// Every number leaves the program with 12 significant digits.
std::string format_number(double value);
double round_to_output(double value);

void write_sweep_csv(std::ostream& out, const SweepResult& r);
void write_surface_csv(std::ostream& out, const SurfaceResult& r);
void write_map_csv(std::ostream& out, const TrackingErrorMap& map);

std::string axis_name(int axis);  // "x", "y", "z"

/// JSON documents; the map summary carries the argmin cell and stiffest zone.
std::string sweep_json(const SweepResult& r);
std::string surface_json(const SurfaceResult& r);
std::string map_json(const TrackingErrorMap& map, const ManipulatorParameters& params);
std::string compensation_json(const CompensationSpec& spec, const CompensationResult& r);
std::string stiffness_json(const Vector3& position, const Matrix6& kappa, const Matrix6& K);
std::string isotropic_json(const IsotropicStiffness& closed, const Matrix6& kappa, const Matrix6& K);

void write_matrix(std::ostream& out, const std::string& name, const Matrix6& m);

/// gnuplot scripts reading the CSV written next to them.
std::string sweep_plot_script(const SweepResult& r, const std::string& csv);
std::string surface_plot_script(const SurfaceResult& r, const std::string& csv);
std::string map_plot_script(const TrackingErrorMap& map, const std::string& csv);

}  // namespace orthostiff
