#include "orthostiff/machining.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "orthostiff/error.hpp"
#include "orthostiff/parametric.hpp"
#include "orthostiff/stiffness.hpp"

namespace orthostiff {

Wrench CuttingWrench::wrench() const {
  Wrench w;
  w << torque, force;
  return w;
}

CuttingWrench cutting_wrench(const Vector3& force, double tool_length) {
  CuttingWrench w;
  w.force = force;
  w.torque = Vector3(-force.y() * tool_length, force.x() * tool_length, 0.0);
  return w;
}

ToolDisplacement compliant_displacement(const Pose& pose, const CuttingWrench& w, const ManipulatorParameters& params) {
  const Vector6 d = compliance_matrix(pose, params).kappa * w.wrench();
  ToolDisplacement out;
  out.rotation = d.head<3>();
  out.platform_translation = d.tail<3>();
  out.tool_translation = out.platform_translation + out.rotation.cross(params.tool_length * Vector3::UnitZ());
  return out;
}

std::string_view symbol(FeedDirection feed) {
  switch (feed) {
    case FeedDirection::PlusX: return "+x";
    case FeedDirection::MinusX: return "-x";
    case FeedDirection::PlusY: return "+y";
    case FeedDirection::MinusY: return "-y";
    case FeedDirection::PlusZ: return "+z";
    case FeedDirection::MinusZ: return "-z";
  }
  return "?";
}

FeedDirection parse_feed_direction(std::string_view text) {
  for (FeedDirection f : {FeedDirection::PlusX, FeedDirection::MinusX, FeedDirection::PlusY, FeedDirection::MinusY,
                          FeedDirection::PlusZ, FeedDirection::MinusZ}) {
    if (symbol(f) == text || symbol(f).substr(1) == text) return f;
  }
  throw Error(ErrorKind::InvalidSpec, "feed direction must be one of +x, -x, +y, -y, +z, -z (got '" +
                                          std::string(text) + "')");
}

int feed_axis(FeedDirection feed) { return static_cast<int>(feed) / 2; }

Vector3 feed_vector(FeedDirection feed) {
  const double sign = static_cast<int>(feed) % 2 == 0 ? 1.0 : -1.0;
  return sign * Vector3::Unit(feed_axis(feed));
}

double tracking_error(const ToolDisplacement& disp, FeedDirection feed) {
  const Vector3 n = feed_vector(feed);
  const Vector3& v = disp.tool_translation;
  return (v - v.dot(n) * n).norm();
}

void GrooveMapSpec::validate() const {
  if (grid < 2 || path_samples < 2) throw Error(ErrorKind::InvalidSpec, "groove map needs at least 2 cells and 2 samples");
  if (!force.allFinite()) throw Error(ErrorKind::InvalidSpec, "cutting force must be finite");
  if (!(zone_factor >= 1.0)) throw Error(ErrorKind::InvalidSpec, "zone factor must be >= 1");
  if (threads < 0) throw Error(ErrorKind::InvalidSpec, "thread count must be >= 0");
}

namespace {

bool is_pose_failure(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnreachablePose:
    case ErrorKind::FoldedParallelogram:
    case ErrorKind::InconsistentConfiguration:
    case ErrorKind::DegenerateStiffness:
    case ErrorKind::SerialSingularity:
    case ErrorKind::SingularCompliance:
      return true;
    default:
      return false;
  }
}

}  // namespace

TrackingErrorMap tracking_error_map(const GrooveMapSpec& spec, const ManipulatorParameters& params) {
  spec.validate();
  params.validate();

  TrackingErrorMap map;
  map.spec = spec;
  const int axis = feed_axis(spec.feed);
  map.axis_a = axis == 0 ? 1 : 0;
  map.axis_b = axis == 2 ? 1 : 2;
  const Vector3& lo = params.workspace_lo;
  const Vector3& hi = params.workspace_hi;
  map.a_values = variation_grid(lo[map.axis_a], hi[map.axis_a], spec.grid);
  map.b_values = variation_grid(lo[map.axis_b], hi[map.axis_b], spec.grid);
  const std::vector<double> path = variation_grid(lo[axis], hi[axis], spec.path_samples);
  const CuttingWrench w = cutting_wrench(spec.force, params.tool_length);

  const int n = spec.grid * spec.grid;
  map.cells.assign(n, GrooveCell{});

  auto evaluate = [&](int index) {
    GrooveCell& c = map.cells[index];
    c.a = map.a_values[index / spec.grid];
    c.b = map.b_values[index % spec.grid];
    Vector3 p;
    p[map.axis_a] = c.a;
    p[map.axis_b] = c.b;
    int best = -1;
    for (int k = 0; k < spec.path_samples; ++k) {
      p[axis] = path[k];
      double delta;
      try {
        delta = tracking_error(compliant_displacement(Pose{p}, w, params), spec.feed);
      } catch (const Error& e) {
        if (!is_pose_failure(e.kind())) throw;
        return;  // cell stays invalid
      }
      if (best < 0 || delta > c.delta_max) {
        c.delta_max = delta;
        best = k;
      }
    }
    c.feed_at_max = path[best];
    c.at_endpoint = best == 0 || best == spec.path_samples - 1;
    c.valid = true;
  };

  int workers = spec.threads > 0 ? spec.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int index = 0; index < n; ++index) evaluate(index);
  } else {
    // Strided partition; every cell is written by exactly one thread.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int index = t; index < n; index += workers) evaluate(index);
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (int index = 0; index < n; ++index) {
    const GrooveCell& c = map.cells[index];
    if (!c.valid) continue;
    ++map.valid_cells;
    if (c.at_endpoint) ++map.endpoint_cells;
    if (c.delta_max < best) {
      best = c.delta_max;
      map.argmin = index;
    }
  }
  if (map.argmin < 0) return map;

  ZoneBox& z = map.zone;
  z.a_lo = z.b_lo = std::numeric_limits<double>::infinity();
  z.a_hi = z.b_hi = -std::numeric_limits<double>::infinity();
  const double limit = spec.zone_factor * best;
  for (const GrooveCell& c : map.cells) {
    if (!c.valid || c.delta_max > limit) continue;
    z.a_lo = std::min(z.a_lo, c.a);
    z.a_hi = std::max(z.a_hi, c.a);
    z.b_lo = std::min(z.b_lo, c.b);
    z.b_hi = std::max(z.b_hi, c.b);
    ++z.cells;
  }
  return map;
}

}  // namespace orthostiff
