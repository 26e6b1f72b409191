#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "orthostiff/cli.hpp"
#include "orthostiff/error.hpp"
#include "orthostiff/param_file.hpp"
#include "orthostiff/report.hpp"
#include "orthostiff/stiffness.hpp"

using namespace orthostiff;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "orthostiff");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("orthostiff_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name) << text;
  return dir / name;
}

LoadedParameters parse(const std::string& text) {
  std::istringstream in(text);
  return parse_parameters(in, "test.params");
}

ErrorKind parse_kind(const std::string& text, std::string* message = nullptr) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  return ErrorKind::InvalidParameters;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST(ParamFile, EmptyFileGivesDefaults) {
  const LoadedParameters l = parse("");
  EXPECT_EQ(l.params.foot_length, 150.0);
  EXPECT_EQ(l.params.foot_height, 26.0);
  EXPECT_EQ(l.params.foot_width, 16.0);
  EXPECT_EQ(l.params.foot_angle, kPi / 4);
  EXPECT_EQ(l.params.bar_spacing, 80.0);
  EXPECT_EQ(l.params.bar_length, 310.0);
  EXPECT_EQ(l.params.bar_section, 144.0);
  EXPECT_EQ(l.notices.size(), 13u);
}

TEST(ParamFile, OverridesAndComments) {
  const LoadedParameters l = parse("# prototype\n h_f = 26   # same as default\nlambda_deg = 30\nworkspace_lo = -50,-60,-70\n");
  EXPECT_EQ(l.params.foot_height, 26.0);
  EXPECT_NEAR(l.params.foot_angle, kPi / 6, 1e-15);
  EXPECT_EQ(l.params.workspace_lo, Vector3(-50, -60, -70));
  EXPECT_EQ(l.notices.size(), 10u);
  const IsotropicStiffness a = isotropic_closed_form(parse("h_f = 26\n").params);
  const IsotropicStiffness b = isotropic_closed_form(ManipulatorParameters{});
  EXPECT_EQ(a.torsional, b.torsional);
  EXPECT_EQ(a.translational, b.translational);
}

TEST(ParamFile, Errors) {
  std::string msg;
  EXPECT_EQ(parse_kind("lambda_deg = 95\n", &msg), ErrorKind::ValidationError);
  EXPECT_NE(msg.find("lambda"), std::string::npos);
  EXPECT_EQ(parse_kind("L_f = 150\n  h_g = 3\n", &msg), ErrorKind::ParseError);
  EXPECT_NE(msg.find("test.params:2:3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("h_g"), std::string::npos);
  EXPECT_EQ(parse_kind("d = 8O\n", &msg), ErrorKind::ParseError);
  EXPECT_NE(msg.find(":1:5"), std::string::npos) << msg;
  EXPECT_EQ(parse_kind("d 80\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind("lambda = 0.5\nlambda_deg = 20\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind("workspace_hi = 1,2\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind("S_B =\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_kind("S_B = -1\n"), ErrorKind::ValidationError);
}

TEST(ParamFile, FormatRoundTrip) {
  ManipulatorParameters p;
  p.foot_length = 123.25;
  p.workspace_hi = Vector3(100, 110, 120);
  const LoadedParameters l = parse(format_parameters(p));
  EXPECT_TRUE(l.notices.empty());
  EXPECT_EQ(l.params.foot_length, 123.25);
  EXPECT_EQ(l.params.workspace_hi, p.workspace_hi);
}

TEST(ParamFile, ShippedPrototypeFile) {
  const LoadedParameters l = load_parameters(ORTHOSTIFF_SOURCE_DIR "/data/prototype.params");
  EXPECT_TRUE(l.notices.empty());
  EXPECT_NEAR(isotropic_closed_form(l.params).translational, 2715.357888, 1e-5);
  EXPECT_THROW(load_parameters("/nonexistent/file.params"), Error);
}

TEST(Report, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(2715.35788812345), "2715.35788812");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-1e-20), "-1e-20");
}

TEST(Cli, Isotropic) {
  const Outcome o = invoke({"isotropic"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("K_b,2715.35788"), std::string::npos) << o.out;
  const auto rows = read_csv(o.out);
  EXPECT_EQ(rows.front(), (std::vector<std::string>{"quantity", "value"}));
  EXPECT_EQ(rows.size(), 15u);
  EXPECT_NE(invoke({"--format", "json", "isotropic"}).out.find("\"K_b\": 2715.35788"), std::string::npos);
}

TEST(Cli, StiffnessAtPose) {
  const Outcome o = invoke({"stiffness", "--at", "10,-20,30"});
  EXPECT_EQ(o.code, 0);
  const auto rows = read_csv(o.out);
  ASSERT_EQ(rows.size(), 14u);
  EXPECT_EQ(rows[0][0], "kappa");
  EXPECT_EQ(rows[7][0], "K");
  EXPECT_EQ(rows[1].size(), 6u);
}

TEST(Cli, ExitCodes) {
  Outcome o = invoke({"stiffness", "--at", "500,0,0"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("UnreachablePose"), std::string::npos);
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(invoke({"isotropic", "--bogus"}).code, 1);
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"sweep", "--param", "E"}).code, 1);
  EXPECT_EQ(invoke({"sweep", "--range", "-150:200"}).code, 1);
  EXPECT_EQ(invoke({"sweep", "--param", "lambda", "--strict"}).code, 1);
  EXPECT_EQ(invoke({"compensate", "--vary", "L_f:50", "--compensator", "b_f", "--target", "Kb", "--bracket",
                    "-100:200"})
                .code,
            2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, SweepLambda) {
  const Outcome o = invoke({"sweep", "--param", "lambda", "--target", "Kb", "--range=-100:200", "--samples", "301"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = read_csv(o.out);
  ASSERT_EQ(rows.size(), 302u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"parameter", "t", "ratio", "K_initial", "target"}));
  const auto& plus100 = rows[201];
  EXPECT_EQ(plus100[1], "1");
  EXPECT_NEAR(std::stod(plus100[2]), 0.52, 0.01);
  EXPECT_NE(o.err.find("clamped"), std::string::npos);
}

TEST(Cli, SweepFilesAreDeterministic) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  ASSERT_EQ(invoke({"--out", a.string(), "--plot-script", "sweep", "--param", "h_f"}).code, 0);
  ASSERT_EQ(invoke({"--out", b.string(), "--plot-script", "sweep", "--param", "h_f"}).code, 0);
  const std::string first = slurp(a / "sweep_h_f_Ka.csv");
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(b / "sweep_h_f_Ka.csv"));
  EXPECT_NE(slurp(a / "sweep_h_f_Ka.gp").find("sweep_h_f_Ka.csv"), std::string::npos);
  EXPECT_EQ(invoke({"--plot-script", "sweep"}).code, 1);
}

TEST(Cli, Surface) {
  const Outcome o = invoke({"surface", "--params", "h_f,L_f", "--range1", "0:100", "--range2", "0:50", "--samples", "11,3"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = read_csv(o.out);
  ASSERT_EQ(rows.size(), 34u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t1", "t2", "ratio"}));
  EXPECT_EQ(rows[1][2], "1");
  EXPECT_EQ(invoke({"surface", "--params", "h_f,h_f"}).code, 1);
}

TEST(Cli, GrooveMapFiles) {
  const fs::path dir = scratch("groove");
  const Outcome o = invoke({"--out", dir.string(), "groove-map", "--fx", "215", "--fy", "-10", "--fz", "-25", "--grid",
                            "5", "--path-samples", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = read_csv(slurp(dir / "groove_map.csv"));
  ASSERT_EQ(rows.size(), 26u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x_t", "z_t", "delta_max_mm", "y_at_max_mm", "valid"}));
  const std::string json = slurp(dir / "groove_map.json");
  EXPECT_NE(json.find("\"argmin\""), std::string::npos);
  EXPECT_NE(json.find("\"stiffest_zone\""), std::string::npos);
  EXPECT_NE(json.find("\"feed_direction_extrapolated\": false"), std::string::npos);
}

TEST(Cli, Compensate) {
  const Outcome o = invoke({"compensate", "--vary", "L_f:50", "--compensator", "h_f", "--target", "Kb"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = read_csv(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][4]), 0.5, 1e-8);
}

TEST(Cli, ParameterFileAndEnvironment) {
  const fs::path dir = scratch("params");
  const fs::path file = write_file(dir, "soft.params", "E = 35000\n");
  ManipulatorParameters soft;
  soft.youngs_modulus = 35000;
  const std::string expected = "K_b," + format_number(isotropic_closed_form(soft).translational) + "\n";
  Outcome o = invoke({"--param-file", file.string(), "isotropic"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find(expected), std::string::npos) << o.out;
  EXPECT_NE(o.err.find("notice:"), std::string::npos);

  setenv("ORTHOSTIFF_PARAMS", file.string().c_str(), 1);
  o = invoke({"isotropic"});
  unsetenv("ORTHOSTIFF_PARAMS");
  EXPECT_NE(o.out.find(expected), std::string::npos);

  const fs::path bad = write_file(dir, "bad.params", "lambda_deg = 95\n");
  EXPECT_EQ(invoke({"--param-file", bad.string(), "isotropic"}).code, 1);
}

TEST(Cli, Validate) {
  const Outcome o = invoke({"validate", "--poses", "20"});
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos);
  EXPECT_NE(o.out.find("PASS loop_closure"), std::string::npos);
}
