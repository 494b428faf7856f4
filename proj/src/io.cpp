#include "homogflow/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "homogflow/errors.hpp"
#include "homogflow/fingerprint.hpp"

namespace homogflow {

using json = nlohmann::json;

namespace {

constexpr const char* kFormat = "homogflow.homogenized.v1";

std::string csv_line(const std::vector<std::string>& cells, char sep) {
  std::string s;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) s += sep;
    s += cells[k];
  }
  return s + "\n";
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string to_json(const HomogenizedData& d) {
  json j;
  j["format"] = kFormat;
  j["A_h"] = {{d.A_h(0, 0), d.A_h(0, 1)}, {d.A_h(1, 0), d.A_h(1, 1)}};
  j["alpha_hat"] = d.alpha_hat;
  j["alpha_bulk"] = d.alpha_bulk;
  j["y1_volume"] = d.y1_volume;
  j["fingerprint"] = d.fingerprint;
  j["geometry"] = d.geometry;
  j["coefficients"] = d.coefficients;
  j["resolution"] = d.resolution;
  return j.dump(2) + "\n";
}

HomogenizedData homogenized_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("homogenized data: ") + e.what());
  }
  auto need = [&](const char* key) -> const json& {
    if (!j.is_object() || !j.contains(key))
      throw ConfigError(std::string("homogenized data: missing field ") + key);
    return j[key];
  };
  auto num = [&](const json& v, const std::string& what) {
    if (!v.is_number() || !std::isfinite(v.get<double>()))
      throw ConfigError("homogenized data: " + what + " is not a finite number");
    return v.get<double>();
  };
  auto str = [&](const char* key) {
    const json& v = need(key);
    if (!v.is_string()) throw ConfigError(std::string("homogenized data: ") + key + " is not a string");
    return v.get<std::string>();
  };
  for (const auto& [k, _] : j.items())
    if (k != "format" && k != "A_h" && k != "alpha_hat" && k != "alpha_bulk" && k != "y1_volume" &&
        k != "fingerprint" && k != "geometry" && k != "coefficients" && k != "resolution")
      throw ConfigError("homogenized data: unknown field " + k);
  if (str("format") != kFormat) throw ConfigError("homogenized data: unsupported format");

  HomogenizedData d;
  const json& a = need("A_h");
  if (!a.is_array() || a.size() != 2 || !a[0].is_array() || !a[1].is_array() || a[0].size() != 2 ||
      a[1].size() != 2)
    throw ConfigError("homogenized data: A_h must be a 2x2 array");
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) d.A_h.a[r][c] = num(a[r][c], "A_h entry");
  const double scale = d.A_h.max_abs();
  if (std::abs(d.A_h(0, 1) - d.A_h(1, 0)) > 1e-10 * scale || !(d.A_h.sym_eigenvalues()[0] > 0.0))
    throw ConfigError("homogenized data: A_h is not symmetric positive definite");
  d.alpha_hat = num(need("alpha_hat"), "alpha_hat");
  d.alpha_bulk = num(need("alpha_bulk"), "alpha_bulk");
  d.y1_volume = num(need("y1_volume"), "y1_volume");
  if (d.alpha_hat < 0.0 || d.alpha_bulk < 0.0)
    throw ConfigError("homogenized data: alpha functionals must be non-negative");
  if (!(d.y1_volume > 0.0 && d.y1_volume <= 1.0))
    throw ConfigError("homogenized data: y1_volume must lie in (0, 1]");
  d.fingerprint = str("fingerprint");
  d.geometry = str("geometry");
  d.coefficients = str("coefficients");
  const json& res = need("resolution");
  if (!res.is_number_integer() || res.get<int>() < 2)
    throw ConfigError("homogenized data: resolution must be an integer >= 2");
  d.resolution = res.get<int>();
  const std::string suffix = ";n=" + std::to_string(d.resolution);
  if (d.geometry.size() < suffix.size() ||
      d.geometry.compare(d.geometry.size() - suffix.size(), suffix.size(), suffix) != 0)
    throw ConfigError("homogenized data: resolution does not match the geometry");
  if (fingerprint(d.geometry + "|" + d.coefficients) != d.fingerprint)
    throw ConfigError("homogenized data: fingerprint does not match geometry and coefficients");
  return d;
}

void write_text(const std::filesystem::path& file, std::string_view content) {
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  const auto tmp = std::filesystem::path(file.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + file.string());
}

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_homogenized(const std::filesystem::path& file, const HomogenizedData& data) {
  write_text(file, to_json(data));
}

HomogenizedData read_homogenized(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file))
    throw DependencyError("missing " + file.string() + " (run the cell command first)");
  return homogenized_from_json(read_text(file));
}

std::string vtk_text(const Mesh& mesh, const std::vector<PointArray>& arrays,
                     std::string_view title) {
  std::string s;
  char buf[128];
  s += "# vtk DataFile Version 3.0\n";
  s += std::string(title) + "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  s += "POINTS " + std::to_string(mesh.num_nodes()) + " double\n";
  for (const Point& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", p.x, p.y);
    s += buf;
  }
  const std::size_t nt = mesh.triangles.size();
  s += "CELLS " + std::to_string(nt) + " " + std::to_string(4 * nt) + "\n";
  for (const auto& t : mesh.triangles)
    s += "3 " + std::to_string(t.v[0]) + " " + std::to_string(t.v[1]) + " " +
         std::to_string(t.v[2]) + "\n";
  s += "CELL_TYPES " + std::to_string(nt) + "\n";
  for (std::size_t k = 0; k < nt; ++k) s += "5\n";
  s += "CELL_DATA " + std::to_string(nt) + "\nSCALARS subdomain int 1\nLOOKUP_TABLE default\n";
  for (const auto& t : mesh.triangles) s += std::to_string(static_cast<int>(t.tag)) + "\n";
  if (!arrays.empty()) {
    s += "POINT_DATA " + std::to_string(mesh.num_nodes()) + "\n";
    for (const auto& [name, values] : arrays) {
      if (values.size() != mesh.num_nodes())
        throw ArgumentError("point array " + name + " does not match the mesh");
      s += "SCALARS " + name + " double 1\nLOOKUP_TABLE default\n";
      for (double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        s += buf;
      }
    }
  }
  return s;
}

void write_vtk(const std::filesystem::path& file, const Mesh& mesh,
               const std::vector<PointArray>& arrays, std::string_view title) {
  write_text(file, vtk_text(mesh, arrays, title));
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{
      "eps",          "m",              "weak_metric",   "weak_metric_u",     "corrector_metric",
      "functional_1", "functional_sin", "functional_bubble", "H_eps_norm",    "grad_u_sq",
      "eps2_grad_v_sq", "jump_sq",      "rate_weak",     "rate_corrector",    "fingerprint"};
  return cols;
}

namespace {

std::vector<std::string> report_cells(const StudyRow& r, const char* missing) {
  auto opt = [&](const std::optional<double>& v) { return v ? format_number(*v) : missing; };
  return {format_number(r.eps),
          std::to_string(r.cells_per_side),
          format_number(r.weak_metric),
          format_number(r.weak_metric_u),
          format_number(r.corrector_metric),
          format_number(r.functionals[0]),
          format_number(r.functionals[1]),
          format_number(r.functionals[2]),
          format_number(r.energy.H_eps_norm),
          format_number(r.energy.grad_u_sq),
          format_number(r.energy.eps2_grad_v_sq),
          format_number(r.energy.jump_sq),
          opt(r.rate_weak),
          opt(r.rate_corrector),
          r.fingerprint};
}

}  // namespace

std::string report_csv(const ConvergenceReport& report) {
  std::string s = csv_line(report_columns(), ',');
  for (const auto& r : report.rows) s += csv_line(report_cells(r, ""), ',');
  return s;
}

std::string report_dat(const ConvergenceReport& report) {
  std::string s = "# " + csv_line(report_columns(), ' ');
  for (const auto& r : report.rows) s += csv_line(report_cells(r, "nan"), ' ');
  return s;
}

const std::vector<std::string>& micro_energy_columns() {
  static const std::vector<std::string> cols{"eps", "m", "grad_u_sq", "eps2_grad_v_sq", "jump_sq",
                                             "H_eps_norm"};
  return cols;
}

std::vector<std::string> micro_energy_row(int m, const EnergyReport& e) {
  return {format_number(1.0 / m), std::to_string(m),        format_number(e.grad_u_sq),
          format_number(e.eps2_grad_v_sq), format_number(e.jump_sq), format_number(e.H_eps_norm)};
}

void upsert_micro_energy(const std::filesystem::path& file, int m, const EnergyReport& energy) {
  std::map<int, std::string> rows;  // keyed by m, so iteration is by decreasing eps
  if (std::filesystem::exists(file)) {
    std::istringstream in(read_text(file));
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (header) {
        header = false;
        if (line + "\n" != csv_line(micro_energy_columns(), ','))
          throw IoError(file.string() + " has unexpected columns");
        continue;
      }
      if (line.empty()) continue;
      const auto cells = split(line, ',');
      if (cells.size() != micro_energy_columns().size())
        throw IoError(file.string() + " has a malformed row");
      int key = 0;
      const auto [end, ec] = std::from_chars(cells[1].data(), cells[1].data() + cells[1].size(), key);
      if (ec != std::errc() || end != cells[1].data() + cells[1].size())
        throw IoError(file.string() + " has a malformed row");
      rows[key] = line + "\n";
    }
  }
  rows[m] = csv_line(micro_energy_row(m, energy), ',');
  std::string s = csv_line(micro_energy_columns(), ',');
  for (const auto& [_, line] : rows) s += line;
  write_text(file, s);
}

const std::vector<std::string>& macro_summary_columns() {
  static const std::vector<std::string> cols{"field", "min", "max", "mean", "energy"};
  return cols;
}

}  // namespace homogflow
