#pragma once

#include <string_view>
#include <vector>

#include "orthostiff/leg_kinematics.hpp"
#include "orthostiff/parameters.hpp"
#include "orthostiff/types.hpp"

namespace orthostiff {

/// Cutting force F applied at the tool tip, h_z along z from the platform
/// point, reduced to the platform: T = (h_z z) x F.
struct CuttingWrench {
  Vector3 force = Vector3::Zero();
  Vector3 torque = Vector3::Zero();

  Wrench wrench() const;  // [T; F]
};

CuttingWrench cutting_wrench(const Vector3& force, double tool_length);

struct ToolDisplacement {
  Vector3 rotation = Vector3::Zero();              // Omega [rad]
  Vector3 platform_translation = Vector3::Zero();  // V [mm]
  Vector3 tool_translation = Vector3::Zero();      // V + Omega x h_z z [mm]
};

/// [Omega; V] = kappa(pose) w, then moved to the tool tip.
ToolDisplacement compliant_displacement(const Pose& pose, const CuttingWrench& w, const ManipulatorParameters& params);

enum class FeedDirection { PlusX, MinusX, PlusY, MinusY, PlusZ, MinusZ };

std::string_view symbol(FeedDirection feed);  // "+x", "-y", ...
FeedDirection parse_feed_direction(std::string_view text);
Vector3 feed_vector(FeedDirection feed);
int feed_axis(FeedDirection feed);

/// Norm of the tool-tip deflection projected on the plane normal to the feed.
/// For a +y feed this is sqrt(v_x^2 + v_z^2).
double tracking_error(const ToolDisplacement& disp, FeedDirection feed = FeedDirection::PlusY);

struct GrooveMapSpec {
  Vector3 force = Vector3(215.0, -10.0, -25.0);
  FeedDirection feed = FeedDirection::PlusY;
  int grid = 41;          // cells per transverse axis
  int path_samples = 41;  // samples along each groove
  double zone_factor = 1.25;
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct GrooveCell {
  double a = 0.0;  // first transverse coordinate (x_t for a y feed)
  double b = 0.0;  // second transverse coordinate (z_t for a y feed)
  double delta_max = 0.0;
  double feed_at_max = 0.0;  // coordinate along the feed where delta_max occurs
  bool at_endpoint = false;
  bool valid = false;
};

struct ZoneBox {
  double a_lo = 0.0, a_hi = 0.0;
  double b_lo = 0.0, b_hi = 0.0;
  int cells = 0;
};

/// Transverse axes (a, b) in increasing axis order, feed axis excluded.
struct TrackingErrorMap {
  GrooveMapSpec spec;
  int axis_a = 0;
  int axis_b = 2;
  std::vector<double> a_values;
  std::vector<double> b_values;
  std::vector<GrooveCell> cells;  // index i * grid + j for (a_values[i], b_values[j])
  int argmin = -1;                // -1 when no cell is valid
  ZoneBox zone;                   // valid cells with delta_max <= zone_factor * min
  int valid_cells = 0;
  int endpoint_cells = 0;

  const GrooveCell& cell(int i, int j) const { return cells[i * spec.grid + j]; }
  double endpoint_fraction() const { return valid_cells ? double(endpoint_cells) / valid_cells : 0.0; }
};

/// Maximum tracking error along every groove of the grid. The grid and the
/// grooves span the workspace cube; unreachable samples invalidate their cell.
TrackingErrorMap tracking_error_map(const GrooveMapSpec& spec, const ManipulatorParameters& params);

}  // namespace orthostiff
