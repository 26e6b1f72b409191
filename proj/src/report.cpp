#include "orthostiff/report.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace orthostiff {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_to_output(v);
}

ordered_json matrix_json(const Matrix6& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 6; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < 6; ++j) row.push_back(number(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

ordered_json vector_json(const Vector3& v) { return {number(v.x()), number(v.y()), number(v.z())}; }

std::string optional_field(double v) { return std::isfinite(v) ? format_number(v) : std::string(); }

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double round_to_output(double value) { return std::stod(format_number(value)); }

std::string axis_name(int axis) { return std::string(1, "xyz"[axis]); }

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  out << "parameter,t,ratio,K_initial,target\n";
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    out << symbol(r.parameter) << ',' << format_number(r.t[k]) << ','
        << (r.valid[k] ? optional_field(r.ratio[k]) : std::string()) << ',' << format_number(r.initial) << ','
        << symbol(r.target) << '\n';
  }
}

void write_surface_csv(std::ostream& out, const SurfaceResult& r) {
  out << "t1,t2,ratio\n";
  for (std::size_t i = 0; i < r.t1.size(); ++i) {
    for (std::size_t j = 0; j < r.t2.size(); ++j) {
      out << format_number(r.t1[i]) << ',' << format_number(r.t2[j]) << ',' << optional_field(r.ratio(i, j)) << '\n';
    }
  }
}

void write_map_csv(std::ostream& out, const TrackingErrorMap& map) {
  const std::string a = axis_name(map.axis_a);
  const std::string b = axis_name(map.axis_b);
  const std::string f = axis_name(feed_axis(map.spec.feed));
  out << a << "_t," << b << "_t,delta_max_mm," << f << "_at_max_mm,valid\n";
  for (const GrooveCell& c : map.cells) {
    out << format_number(c.a) << ',' << format_number(c.b) << ',';
    if (c.valid) {
      out << format_number(c.delta_max) << ',' << format_number(c.feed_at_max) << ",1\n";
    } else {
      out << ",,0\n";
    }
  }
}

std::string sweep_json(const SweepResult& r) {
  ordered_json j;
  j["parameter"] = symbol(r.parameter);
  j["target"] = symbol(r.target);
  j["K_initial"] = number(r.initial);
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    rows.push_back({{"t", number(r.t[k])},
                    {"ratio", r.valid[k] ? number(r.ratio[k]) : ordered_json(nullptr)},
                    {"clamped", static_cast<bool>(r.clamped[k])}});
  }
  j["samples"] = rows;
  return j.dump(2) + "\n";
}

std::string surface_json(const SurfaceResult& r) {
  ordered_json j;
  j["parameters"] = {symbol(r.first), symbol(r.second)};
  j["target"] = symbol(r.target);
  j["K_initial"] = number(r.initial);
  ordered_json t1 = ordered_json::array(), t2 = ordered_json::array(), ratio = ordered_json::array();
  for (double v : r.t1) t1.push_back(number(v));
  for (double v : r.t2) t2.push_back(number(v));
  for (std::size_t i = 0; i < r.t1.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < r.t2.size(); ++k) row.push_back(number(r.ratio(i, k)));
    ratio.push_back(row);
  }
  j["t1"] = t1;
  j["t2"] = t2;
  j["ratio"] = ratio;
  return j.dump(2) + "\n";
}

std::string map_json(const TrackingErrorMap& map, const ManipulatorParameters& params) {
  const std::string a = axis_name(map.axis_a);
  const std::string b = axis_name(map.axis_b);
  ordered_json j;
  j["feed_direction"] = symbol(map.spec.feed);
  j["feed_direction_extrapolated"] = map.spec.feed != FeedDirection::PlusY;
  j["force_N"] = vector_json(map.spec.force);
  j["tool_length_mm"] = number(params.tool_length);
  j["grid"] = map.spec.grid;
  j["path_samples"] = map.spec.path_samples;
  j["valid_cells"] = map.valid_cells;
  j["endpoint_fraction"] = number(map.endpoint_fraction());
  if (map.argmin >= 0) {
    const GrooveCell& c = map.cells[map.argmin];
    j["argmin"] = {{a + "_t", number(c.a)},
                   {b + "_t", number(c.b)},
                   {"delta_max_mm", number(c.delta_max)},
                   {axis_name(feed_axis(map.spec.feed)) + "_at_max_mm", number(c.feed_at_max)}};
    j["stiffest_zone"] = {{"factor", number(map.spec.zone_factor)},
                          {a + "_range", {number(map.zone.a_lo), number(map.zone.a_hi)}},
                          {b + "_range", {number(map.zone.b_lo), number(map.zone.b_hi)}},
                          {"cells", map.zone.cells}};
  } else {
    j["argmin"] = nullptr;
    j["stiffest_zone"] = nullptr;
  }
  j["machining_conditions"] = "forces are inputs; cutting conditions not modelled";
  return j.dump(2) + "\n";
}

std::string compensation_json(const CompensationSpec& spec, const CompensationResult& r) {
  ordered_json j;
  j["target"] = symbol(spec.target);
  j["varied"] = spec.varied ? ordered_json(symbol(*spec.varied)) : ordered_json(nullptr);
  j["varied_t"] = number(spec.varied_t);
  j["compensator"] = symbol(spec.compensator);
  j["t"] = number(r.t);
  j["ratio"] = number(r.ratio);
  j["iterations"] = r.iterations;
  return j.dump(2) + "\n";
}

std::string stiffness_json(const Vector3& position, const Matrix6& kappa, const Matrix6& K) {
  ordered_json j;
  j["position_mm"] = vector_json(position);
  j["compliance"] = matrix_json(kappa);
  j["stiffness"] = matrix_json(K);
  return j.dump(2) + "\n";
}

std::string isotropic_json(const IsotropicStiffness& closed, const Matrix6& kappa, const Matrix6& K) {
  ordered_json j;
  j["K_a"] = number(closed.torsional);
  j["K_b"] = number(closed.translational);
  ordered_json kd = ordered_json::array(), cd = ordered_json::array();
  for (int i = 0; i < 6; ++i) {
    cd.push_back(number(kappa(i, i)));
    kd.push_back(number(K(i, i)));
  }
  j["compliance_diagonal"] = cd;
  j["stiffness_diagonal"] = kd;
  return j.dump(2) + "\n";
}

void write_matrix(std::ostream& out, const std::string& name, const Matrix6& m) {
  out << name << '\n';
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) out << (j ? "," : "") << format_number(m(i, j));
    out << '\n';
  }
}

std::string sweep_plot_script(const SweepResult& r, const std::string& csv) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set xlabel 't (" + std::string(symbol(r.parameter)) + ")'\n";
  s += "set ylabel '" + std::string(symbol(r.target)) + " / initial'\n";
  s += "set grid\n";
  s += "plot '" + csv + "' using 2:3 skip 1 with lines title '" + std::string(symbol(r.parameter)) + "'\n";
  return s;
}

std::string surface_plot_script(const SurfaceResult& r, const std::string& csv) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set xlabel 't (" + std::string(symbol(r.first)) + ")'\n";
  s += "set ylabel 't (" + std::string(symbol(r.second)) + ")'\n";
  s += "set zlabel '" + std::string(symbol(r.target)) + " / initial'\n";
  s += "set dgrid3d " + std::to_string(r.t1.size()) + "," + std::to_string(r.t2.size()) + "\n";
  s += "set contour base\n";
  s += "splot '" + csv + "' using 1:2:3 skip 1 with lines title ''\n";
  return s;
}

std::string map_plot_script(const TrackingErrorMap& map, const std::string& csv) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set xlabel '" + axis_name(map.axis_a) + "_t [mm]'\n";
  s += "set ylabel '" + axis_name(map.axis_b) + "_t [mm]'\n";
  s += "set cblabel 'max tracking error [mm]'\n";
  s += "set view map\n";
  s += "set dgrid3d " + std::to_string(map.spec.grid) + "," + std::to_string(map.spec.grid) + "\n";
  s += "splot '" + csv + "' using 1:2:3 skip 1 with pm3d title ''\n";
  return s;
}

}  // namespace orthostiff
