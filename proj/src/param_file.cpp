#include "orthostiff/param_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string_view>

#include "orthostiff/error.hpp"
#include "orthostiff/report.hpp"

namespace orthostiff {

namespace {

constexpr std::string_view kWhitespace = " \t\r";

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

Token trim(std::string_view line, int offset) {
  const auto first = line.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {{}, offset + 1};
  const auto last = line.find_last_not_of(kWhitespace);
  return {line.substr(first, last - first + 1), offset + static_cast<int>(first) + 1};
}

[[noreturn]] void fail(const std::string& source, int line, int column, const std::string& what) {
  throw Error(ErrorKind::ParseError, source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what);
}

double parse_number(const Token& tok, const std::string& source, int line) {
  double value = 0.0;
  const char* end = tok.text.data() + tok.text.size();
  const auto [ptr, ec] = std::from_chars(tok.text.data(), end, value);
  if (ec != std::errc() || ptr != end || tok.text.empty()) {
    fail(source, line, tok.column, "expected a number, got '" + std::string(tok.text) + "'");
  }
  return value;
}

Vector3 parse_bound(const Token& tok, const std::string& source, int line) {
  std::vector<Token> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = tok.text.find(',', start);
    const auto piece = tok.text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    parts.push_back(trim(piece, tok.column - 1 + static_cast<int>(start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() == 1) return Vector3::Constant(parse_number(parts[0], source, line));
  if (parts.size() != 3) fail(source, line, tok.column, "workspace bound needs 1 or 3 values");
  return {parse_number(parts[0], source, line), parse_number(parts[1], source, line),
          parse_number(parts[2], source, line)};
}

using Setter = std::function<void(ManipulatorParameters&, const Token&, const std::string&, int)>;
using Shower = std::function<std::string(const ManipulatorParameters&)>;

struct Field {
  Setter set;
  Shower show;
};

std::string show_vector(const Vector3& v) {
  return format_number(v.x()) + "," + format_number(v.y()) + "," + format_number(v.z());
}

Field scalar(double ManipulatorParameters::*member, double scale = 1.0) {
  return {[member, scale](ManipulatorParameters& p, const Token& tok, const std::string& src, int line) {
            p.*member = scale * parse_number(tok, src, line);
          },
          [member, scale](const ManipulatorParameters& p) { return format_number(p.*member / scale); }};
}

Field bound(Vector3 ManipulatorParameters::*member) {
  return {[member](ManipulatorParameters& p, const Token& tok, const std::string& src, int line) {
            p.*member = parse_bound(tok, src, line);
          },
          [member](const ManipulatorParameters& p) { return show_vector(p.*member); }};
}

const std::map<std::string, Field, std::less<>>& fields() {
  using P = ManipulatorParameters;
  static const std::map<std::string, Field, std::less<>> table = {
      {"L_f", scalar(&P::foot_length)},
      {"h_f", scalar(&P::foot_height)},
      {"b_f", scalar(&P::foot_width)},
      {"lambda", scalar(&P::foot_angle)},
      {"lambda_deg", scalar(&P::foot_angle, kPi / 180.0)},
      {"d", scalar(&P::bar_spacing)},
      {"L_B", scalar(&P::bar_length)},
      {"S_B", scalar(&P::bar_section)},
      {"E", scalar(&P::youngs_modulus)},
      {"nu", scalar(&P::poisson_ratio)},
      {"k_act", scalar(&P::actuator_stiffness)},
      {"h_z", scalar(&P::tool_length)},
      {"workspace_lo", bound(&P::workspace_lo)},
      {"workspace_hi", bound(&P::workspace_hi)},
  };
  return table;
}

// Written order of format_parameters.
constexpr std::string_view kKeyOrder[] = {"L_f", "h_f", "b_f", "lambda", "d",   "L_B",          "S_B",
                                          "E",   "nu",  "k_act", "h_z",  "workspace_lo", "workspace_hi"};

// lambda and lambda_deg set the same quantity.
std::string canonical(std::string_view key) { return key == "lambda_deg" ? "lambda" : std::string(key); }

}  // namespace

LoadedParameters parse_parameters(std::istream& in, const std::string& source) {
  LoadedParameters out;
  std::set<std::string> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(kWhitespace) == std::string_view::npos) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(source, line_no, trim(line, 0).column, "expected 'key = value'");
    }
    const Token key = trim(line.substr(0, eq), 0);
    const Token value = trim(line.substr(eq + 1), static_cast<int>(eq) + 1);
    if (key.text.empty()) fail(source, line_no, key.column, "missing key before '='");
    if (value.text.empty()) fail(source, line_no, value.column, "missing value for '" + std::string(key.text) + "'");

    const auto it = fields().find(key.text);
    if (it == fields().end()) fail(source, line_no, key.column, "unknown key '" + std::string(key.text) + "'");
    if (!seen.insert(canonical(key.text)).second) {
      fail(source, line_no, key.column, "'" + std::string(key.text) + "' set twice");
    }
    it->second.set(out.params, value, source, line_no);
  }
  if (in.bad()) throw Error(ErrorKind::ParseError, source + ": read error");

  const ManipulatorParameters defaults;
  for (std::string_view key : kKeyOrder) {
    if (seen.count(std::string(key))) continue;
    out.notices.push_back(source + ": " + std::string(key) + " not set, using default " +
                          fields().find(key)->second.show(defaults));
  }

  out.params.validate();
  return out;
}

LoadedParameters load_parameters(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open parameter file");
  return parse_parameters(in, path);
}

std::string format_parameters(const ManipulatorParameters& p) {
  std::string out;
  for (std::string_view key : kKeyOrder) out += std::string(key) + " = " + fields().find(key)->second.show(p) + "\n";
  return out;
}

}  // namespace orthostiff
