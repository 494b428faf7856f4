#include "homogflow/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "homogflow/errors.hpp"
#include "homogflow/fingerprint.hpp"
#include "homogflow/integrate.hpp"
#include "homogflow/parallel.hpp"
#include "homogflow/quadrature.hpp"

namespace homogflow {

CellAverages cell_average(const Mesh& mesh, std::span<const double> nodal, int m) {
  if (m < 1) throw ArgumentError("cell_average needs at least one cell per side");
  if (nodal.size() != mesh.num_nodes()) throw ArgumentError("nodal field does not match the mesh");
  CellAverages out{m, std::vector<double>(static_cast<std::size_t>(m) * m, 0.0)};
  const double tol = 1e-9 / m;
  for (const auto& t : mesh.triangles) {
    const Point c = mesh.centroid(t);
    const int i = std::clamp(static_cast<int>(std::floor(c.x * m)), 0, m - 1);
    const int j = std::clamp(static_cast<int>(std::floor(c.y * m)), 0, m - 1);
    for (Index v : t.v) {
      const Point p = mesh.nodes[v];
      if (p.x < static_cast<double>(i) / m - tol || p.x > static_cast<double>(i + 1) / m + tol ||
          p.y < static_cast<double>(j) / m - tol || p.y > static_cast<double>(j + 1) / m + tol)
        throw ArgumentError("mesh triangle straddles an averaging cell boundary (m = " +
                            std::to_string(m) + ")");
    }
    const double mean = (nodal[t.v[0]] + nodal[t.v[1]] + nodal[t.v[2]]) / 3.0;
    out.values[static_cast<std::size_t>(j) * m + i] += mesh.triangle_area(t) * mean;
  }
  for (double& v : out.values) v *= static_cast<double>(m) * m;
  return out;
}

CellAverages cell_average(const FieldSolution& field, int m) {
  return cell_average(*field.mesh, field.values, m);
}

CellAverages cell_average(const ScalarFunction& f, int m) {
  if (m < 1) throw ArgumentError("cell_average needs at least one cell per side");
  constexpr int kSub = 4;
  CellAverages out{m, std::vector<double>(static_cast<std::size_t>(m) * m, 0.0)};
  const double h = 1.0 / (static_cast<double>(m) * kSub);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      double sum = 0.0;
      for (int b = 0; b < kSub; ++b)
        for (int a = 0; a < kSub; ++a) {
          const Point p0{(i * kSub + a) * h, (j * kSub + b) * h};
          const std::array<std::array<Point, 3>, 2> tris{{
              {p0, p0 + Point{h, 0.0}, p0 + Point{h, h}},
              {p0, p0 + Point{h, h}, p0 + Point{0.0, h}},
          }};
          for (const auto& tri : tris)
            for (const auto& q : kTriangle7)
              sum += 0.5 * h * h * q.w *
                     f(q.bary[0] * tri[0] + q.bary[1] * tri[1] + q.bary[2] * tri[2]);
        }
      out.values[static_cast<std::size_t>(j) * m + i] = sum * m * m;
    }
  return out;
}

double l2_distance(const CellAverages& a, const CellAverages& b) {
  if (a.cells_per_side != b.cells_per_side) throw ArgumentError("cell grids differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    const double d = a.values[k] - b.values[k];
    s += d * d;
  }
  return std::sqrt(s) / a.cells_per_side;
}

const std::array<ScalarFunction, 3>& test_functions() {
  static const std::array<ScalarFunction, 3> fns{
      [](Point) { return 1.0; },
      [](Point x) { return std::sin(std::numbers::pi * x.x) * std::sin(std::numbers::pi * x.y); },
      [](Point x) { return x.x * x.y * (1.0 - x.x) * (1.0 - x.y); },
  };
  return fns;
}

std::vector<double> corrector_predictor(const Mesh& micro, const FieldSolution& alpha,
                                        const PointLocator& locator, const FieldSolution& u,
                                        const ScalarFunction& f2) {
  std::vector<double> p(micro.num_nodes(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (micro.node_side[i] != Subdomain::block) continue;
    const Point x = micro.nodes[i];
    p[i] = locator.evaluate(u, x) + alpha.values[micro.source_node[i]] * f2(x);
  }
  return p;
}

namespace {

void check_alpha_source(const Mesh& micro, const CellSolution& cell) {
  if (!cell.alpha) throw ArgumentError("cell solution has no block potential");
  const Mesh& cm = *cell.alpha->mesh;
  if (micro.geometry_fingerprint() != cm.geometry_fingerprint())
    throw ArgumentError("micro mesh and cell mesh have different geometry fingerprints");
  for (Index s : micro.source_node)
    if (s < 0 || static_cast<std::size_t>(s) >= cm.num_nodes())
      throw ArgumentError("micro mesh provenance does not match the cell mesh");
}

}  // namespace

double corrector_error(const MicroSolution& micro, const CellSolution& cell,
                       const FieldSolution& u, const ScalarFunction& f2,
                       const PointLocator* locator) {
  check_alpha_source(*micro.mesh, cell);
  std::optional<PointLocator> own;
  if (!locator) locator = &own.emplace(u.mesh);
  const auto p = corrector_predictor(*micro.mesh, *cell.alpha, *locator, u, f2);
  std::vector<double> diff(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) diff[i] = micro.values[i] - p[i];
  const double den = l2_norm(*micro.mesh, micro.values, Subdomain::block);
  const double num = l2_norm(*micro.mesh, diff, Subdomain::block);
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

std::vector<std::string> ConvergenceReport::violations() const {
  std::vector<std::string> out;
  static const char* names[] = {"functional_1", "functional_sin", "functional_bubble"};
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& a = rows[r - 1];
    const auto& b = rows[r];
    auto tag = [&](const std::string& what) {
      return what + " does not decrease from m = " + std::to_string(a.cells_per_side) +
             " to m = " + std::to_string(b.cells_per_side);
    };
    if (!(b.weak_metric < a.weak_metric) && a.weak_metric > 0.0) out.push_back(tag("weak_metric"));
    for (int k = 0; k < 3; ++k)
      if (!(b.functionals[k] < a.functionals[k]) && a.functionals[k] > 0.0)
        out.push_back(tag(names[k]));
  }
  return out;
}

std::optional<double> empirical_rate(double eps_prev, double metric_prev, double eps_cur,
                                     double metric_cur) {
  if (!(metric_prev > 0.0) || !(metric_cur > 0.0) || eps_prev == eps_cur) return std::nullopt;
  return std::log(metric_prev / metric_cur) / std::log(eps_prev / eps_cur);
}

ConvergenceReport finalize_report(std::vector<StudyRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const StudyRow& a, const StudyRow& b) { return a.eps > b.eps; });
  ConvergenceReport report;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto& row = rows[r];
    row.rate_weak.reset();
    row.rate_corrector.reset();
    if (r == 0) continue;
    const auto& prev = rows[r - 1];
    row.rate_weak = empirical_rate(prev.eps, prev.weak_metric, row.eps, row.weak_metric);
    row.rate_corrector =
        empirical_rate(prev.eps, prev.corrector_metric, row.eps, row.corrector_metric);
    // A metric that is already exactly zero cannot decrease further.
    if (!(row.weak_metric < prev.weak_metric) && prev.weak_metric > 0.0)
      report.weak_metric_decreasing = false;
    for (int k = 0; k < 3; ++k)
      if (!(row.functionals[k] < prev.functionals[k]) && prev.functionals[k] > 0.0)
        report.functionals_decreasing = false;
  }
  report.rows = std::move(rows);
  return report;
}

namespace {

template <class F>
auto staged(const std::string& stage, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), stage + ": " + e.what());
  }
}

std::string eps_label(int m) { return "eps = 1/" + std::to_string(m); }

}  // namespace

StudyRow evaluate_instance(const StudyConfig& config, const CellResult& cell,
                           const FieldSolution& u, const FieldSolution& U, int m,
                           MicroSolution* solution_out) {
  const ScalarFunction f1 = [e = config.f1](Point x) { return e(x); };
  const ScalarFunction f2 = [e = config.f2](Point x) { return e(x); };
  const std::string where = eps_label(m);

  auto problem = staged("micro mesh (" + where + ")", [&] {
    return make_micro_problem(config.geometry, m, config.coefficients, f1, f2);
  });
  auto sol = staged("micro solve (" + where + ")",
                    [&] { return solve_micro(problem, config.micro_solver); });

  return staged("metrics (" + where + ")", [&] {
    StudyRow row;
    row.cells_per_side = m;
    row.eps = 1.0 / m;
    row.fingerprint = fingerprint(cell.data.fingerprint + ";macro=" +
                                  std::to_string(config.macro_resolution));
    const auto pw = cell_average(*sol.mesh, sol.values, m);
    row.weak_metric = l2_distance(pw, cell_average(U, m));
    row.weak_metric_u = l2_distance(pw, cell_average(u, m));
    const PointLocator locator(u.mesh);
    row.corrector_metric =
        cell.solution.alpha ? corrector_error(sol, cell.solution, u, f2, &locator) : 0.0;
    const auto& phis = test_functions();
    for (int k = 0; k < 3; ++k)
      row.functionals[k] = std::abs(integrate_product(*sol.mesh, sol.values, phis[k]) -
                                    integrate_product(*U.mesh, U.values, phis[k]));
    row.energy = energy_report(sol);
    if (solution_out) *solution_out = std::move(sol);
    return row;
  });
}

StudyResult run_study(const StudyConfig& config) {
  if (config.cells_per_side.empty()) throw ArgumentError("study needs at least one eps");
  for (int m : config.cells_per_side)
    if (m < 2) throw ArgumentError("eps must be 1/m with m >= 2");

  StudyResult result;
  result.cell = staged("cell problems", [&] {
    return solve_cell_problems(config.geometry, config.coefficients, config.cell_solver);
  });
  const ScalarFunction f1 = [e = config.f1](Point x) { return e(x); };
  const ScalarFunction f2 = [e = config.f2](Point x) { return e(x); };
  result.macro = MacroProblem::from(result.cell.data, f1, f2);
  result.u = staged("macro solve", [&] {
    auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(config.macro_resolution));
    return solve_macro(result.macro, mesh, config.macro_solver);
  });
  result.U = compose_limit_pressure(result.u, result.macro);

  std::vector<StudyRow> rows(config.cells_per_side.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    rows[k] = evaluate_instance(config, result.cell, result.u, result.U, config.cells_per_side[k]);
  });
  result.report = finalize_report(std::move(rows));
  return result;
}

}  // namespace homogflow
