#include "homogflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "homogflow/errors.hpp"

namespace homogflow {

using json = nlohmann::json;

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k))
      throw ConfigError((where.empty() ? "" : where + ".") + k + ": unknown key");
}

std::string field(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + ": not finite");
  return d;
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

Point point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(where + ": expected [x, y]");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

Expression expression(const json& v, const std::string& where, char prefix) {
  if (v.is_number()) return Expression::constant(number(v, where));
  try {
    return Expression::parse(text(v, where), prefix);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

BlockShape parse_block(const json& b, const std::string& where) {
  if (!b.is_object()) throw ConfigError(where + ": expected an object");
  const std::string shape = b.contains("shape") ? text(b["shape"], field(where, "shape")) : "disk";
  const Point c = b.contains("center") ? point(b["center"], field(where, "center")) : Point{0.5, 0.5};
  if (shape == "disk") {
    only_keys(b, where, {"shape", "center", "radius"});
    return Disk{c, b.contains("radius") ? number(b["radius"], field(where, "radius")) : 0.25};
  }
  if (shape == "square") {
    only_keys(b, where, {"shape", "center", "half_width"});
    return Square{c, b.contains("half_width") ? number(b["half_width"], field(where, "half_width"))
                                              : 0.25};
  }
  if (shape == "none") {
    only_keys(b, where, {"shape"});
    return NoBlock{};
  }
  throw ConfigError(field(where, "shape") + ": unknown shape '" + shape + "'");
}

Mat2 matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_array() || !v[1].is_array() || v[0].size() != 2 ||
      v[1].size() != 2)
    throw ConfigError(where + ": expected [[a11, a12], [a21, a22]]");
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.a[i][j] = number(v[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  return m;
}

CoefficientField coefficient(const json& v, const std::string& where, bool scalar_only) {
  if (v.is_number()) {
    const double d = number(v, where);
    if (!(d > 0.0)) throw ConfigError(where + ": must be positive");
    return CoefficientField::scalar(d);
  }
  if (v.is_string()) return CoefficientField::scalar(expression(v, where, 'y'));
  if (!v.is_object()) throw ConfigError(where + ": expected a number, string or object");
  if (!v.contains("kind")) throw ConfigError(field(where, "kind") + ": missing");
  const std::string kind = text(v["kind"], field(where, "kind"));
  if (kind == "scalar_times_identity") {
    only_keys(v, where, {"kind", "value"});
    if (!v.contains("value")) throw ConfigError(field(where, "value") + ": missing");
    const auto e = expression(v["value"], field(where, "value"), 'y');
    if (e.is_constant() && !(e({0, 0}) > 0.0))
      throw ConfigError(field(where, "value") + ": must be positive");
    return CoefficientField::scalar(e);
  }
  if (kind == "constant_matrix") {
    only_keys(v, where, {"kind", "value"});
    if (!v.contains("value")) throw ConfigError(field(where, "value") + ": missing");
    const Mat2 m = matrix(v["value"], field(where, "value"));
    if (m(0, 1) != m(1, 0)) throw ConfigError(field(where, "value") + ": not symmetric");
    if (!(m.sym_eigenvalues()[0] > 0.0))
      throw ConfigError(field(where, "value") + ": not positive definite");
    if (scalar_only && (m(0, 1) != 0.0 || m(0, 0) != m(1, 1)))
      throw ConfigError(where + ": interface permeability must be scalar");
    return CoefficientField::constant(m);
  }
  if (kind == "piecewise_layered") {
    only_keys(v, where, {"kind", "values", "direction"});
    const auto& vals = v.contains("values") ? v["values"] : json();
    if (!vals.is_array() || vals.empty())
      throw ConfigError(field(where, "values") + ": expected a non-empty array");
    std::vector<double> layers;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      layers.push_back(number(vals[k], field(where, "values") + "[" + std::to_string(k) + "]"));
      if (!(layers.back() > 0.0))
        throw ConfigError(field(where, "values") + ": must be positive");
    }
    const int dir = v.contains("direction") ? integer(v["direction"], field(where, "direction")) : 1;
    if (dir != 1 && dir != 2) throw ConfigError(field(where, "direction") + ": must be 1 or 2");
    return CoefficientField::layered(std::move(layers), dir);
  }
  throw ConfigError(field(where, "kind") + ": unknown kind '" + kind + "'");
}

int eps_entry(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_eps(v.get<std::string>());
    if (v.is_number()) return parse_eps(v.dump());
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": expected a number or \"1/m\"");
}

double tolerance(const json& v, const std::string& where) {
  const double t = number(v, where);
  if (!(t > 0.0 && t <= 1e-4)) throw ConfigError(where + ": must lie in (0, 1e-4]");
  return t;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

int parse_eps(std::string_view s) {
  const std::string str(s);
  if (auto slash = str.find('/'); slash != std::string::npos) {
    const std::string num = str.substr(0, slash), den = str.substr(slash + 1);
    int m = 0;
    auto [p, ec] = std::from_chars(den.data(), den.data() + den.size(), m);
    if (num != "1" || ec != std::errc() || p != den.data() + den.size() || m < 2)
      throw ConfigError("eps '" + str + "' is not 1/m with an integer m >= 2");
    return m;
  }
  double eps = 0.0;
  try {
    std::size_t used = 0;
    eps = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument(str);
  } catch (const std::exception&) {
    throw ConfigError("eps '" + str + "' is not a number");
  }
  try {
    return cells_per_side_from_eps(eps);
  } catch (const ArgumentError&) {
    throw ConfigError("eps " + str + " is not the reciprocal of an integer >= 2");
  }
}

StudyConfig RunConfig::study() const {
  StudyConfig s;
  s.geometry = geometry;
  s.coefficients = coefficients;
  s.f1 = f1;
  s.f2 = f2;
  s.macro_resolution = macro_resolution;
  s.cells_per_side = cells_per_side;
  s.cell_solver = {cell_tol, 0};
  s.macro_solver = {macro_tol, 0};
  s.micro_solver = {micro_tol, 0};
  return s;
}

RunConfig parse_config_text(std::string_view src) {
  json doc;
  try {
    doc = json::parse(src.begin(), src.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("syntax error at line " + std::to_string(line_of(src, e.byte)) + ": " +
                      e.what());
  }
  only_keys(doc, "", {"geometry", "cell_resolution", "macro_resolution", "coefficients", "sources",
                      "eps_list", "output_dir", "solver"});
  if (!doc.contains("geometry")) throw ConfigError("geometry: missing");

  RunConfig cfg;
  const auto& g = doc["geometry"];
  only_keys(g, "geometry", {"block"});
  if (g.contains("block")) cfg.geometry.block = parse_block(g["block"], "geometry.block");

  if (doc.contains("cell_resolution"))
    cfg.geometry.resolution = integer(doc["cell_resolution"], "cell_resolution");
  if (cfg.geometry.resolution < 8) throw ConfigError("cell_resolution: must be >= 8");
  if (doc.contains("macro_resolution"))
    cfg.macro_resolution = integer(doc["macro_resolution"], "macro_resolution");
  if (cfg.macro_resolution < 8) throw ConfigError("macro_resolution: must be >= 8");
  try {
    validate(cfg.geometry);
  } catch (const GeometryError& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }

  if (doc.contains("coefficients")) {
    const auto& c = doc["coefficients"];
    only_keys(c, "coefficients", {"A", "B", "h"});
    if (c.contains("A")) cfg.coefficients.A = coefficient(c["A"], "coefficients.A", false);
    if (c.contains("B")) cfg.coefficients.B = coefficient(c["B"], "coefficients.B", false);
    if (c.contains("h")) cfg.coefficients.h = coefficient(c["h"], "coefficients.h", true);
  }
  if (doc.contains("sources")) {
    const auto& s = doc["sources"];
    only_keys(s, "sources", {"f1", "f2"});
    if (s.contains("f1")) cfg.f1 = expression(s["f1"], "sources.f1", 'x');
    if (s.contains("f2")) cfg.f2 = expression(s["f2"], "sources.f2", 'x');
  }
  if (doc.contains("eps_list")) {
    const auto& l = doc["eps_list"];
    if (!l.is_array() || l.empty()) throw ConfigError("eps_list: expected a non-empty array");
    cfg.cells_per_side.clear();
    for (std::size_t k = 0; k < l.size(); ++k)
      cfg.cells_per_side.push_back(eps_entry(l[k], "eps_list[" + std::to_string(k) + "]"));
  }
  for (int m : cfg.cells_per_side)
    if (cfg.macro_resolution % m != 0)
      throw ConfigError("macro_resolution: must be a multiple of 1/eps for every eps (" +
                        std::to_string(m) + ")");
  if (doc.contains("output_dir")) cfg.output_dir = text(doc["output_dir"], "output_dir");
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    only_keys(s, "solver", {"cell_tol", "macro_tol", "micro_tol"});
    if (s.contains("cell_tol")) cfg.cell_tol = tolerance(s["cell_tol"], "solver.cell_tol");
    if (s.contains("macro_tol")) cfg.macro_tol = tolerance(s["macro_tol"], "solver.macro_tol");
    if (s.contains("micro_tol")) cfg.micro_tol = tolerance(s["micro_tol"], "solver.micro_tol");
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read config file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace homogflow
