#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homogflow/cell_problems.hpp"
#include "homogflow/convergence.hpp"

namespace homogflow {

std::string to_json(const HomogenizedData& data);
/// Throws ConfigError on malformed or inconsistent content (missing fields,
/// non-SPD tensor, fingerprint not matching geometry + coefficients).
HomogenizedData homogenized_from_json(std::string_view text);

void write_homogenized(const std::filesystem::path& file, const HomogenizedData& data);
/// Throws DependencyError if the file does not exist.
HomogenizedData read_homogenized(const std::filesystem::path& file);

/// Legacy ASCII VTK unstructured grid: triangles, cell data "subdomain"
/// (1 matrix, 2 block), one scalar point array per entry of `arrays`.
using PointArray = std::pair<std::string, std::vector<double>>;
std::string vtk_text(const Mesh& mesh, const std::vector<PointArray>& arrays,
                     std::string_view title = "homogflow");
void write_vtk(const std::filesystem::path& file, const Mesh& mesh,
               const std::vector<PointArray>& arrays, std::string_view title = "homogflow");

/// Fixed-format number used in every CSV and .dat file.
std::string format_number(double v);

/// Frozen report columns.
const std::vector<std::string>& report_columns();
std::string report_csv(const ConvergenceReport& report);
/// Whitespace-separated version for plotting; missing rates are "nan".
std::string report_dat(const ConvergenceReport& report);

const std::vector<std::string>& micro_energy_columns();
/// Row for micro_energy.csv.
std::vector<std::string> micro_energy_row(int cells_per_side, const EnergyReport& energy);
/// Inserts or replaces the row with the same eps (first column), keeping rows
/// sorted by decreasing eps.
void upsert_micro_energy(const std::filesystem::path& file, int cells_per_side,
                         const EnergyReport& energy);

const std::vector<std::string>& macro_summary_columns();

/// Writes through a temporary file and renames; throws IoError on failure.
void write_text(const std::filesystem::path& file, std::string_view content);
std::string read_text(const std::filesystem::path& file);

}  // namespace homogflow
