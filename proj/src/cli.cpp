#include "homogflow/cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "homogflow/errors.hpp"
#include "homogflow/integrate.hpp"
#include "homogflow/io.hpp"

namespace homogflow {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config:
    case ErrorKind::argument:
    case ErrorKind::geometry:
    case ErrorKind::io: return kExitConfig;
    case ErrorKind::dependency: return kExitDependency;
    default: return kExitNumeric;
  }
}

CellResult command_cell(const RunConfig& cfg, const fs::path& out) {
  auto cell = solve_cell_problems(cfg.geometry, cfg.coefficients, {cfg.cell_tol, 0});
  write_homogenized(out / "homogenized.json", cell.data);
  std::vector<PointArray> arrays{{"omega_1", cell.solution.omega[0].values},
                                 {"omega_2", cell.solution.omega[1].values}};
  if (cell.solution.alpha) arrays.emplace_back("alpha", cell.solution.alpha->values);
  write_vtk(out / "cell.vtk", *cell.mesh, arrays, "homogflow cell");
  return cell;
}

FieldSolution command_macro(const RunConfig& cfg, const fs::path& out) {
  const auto data = read_homogenized(out / "homogenized.json");
  const auto expected = cell_fingerprint(cfg.geometry, cfg.coefficients);
  if (data.fingerprint != expected)
    throw DependencyError((out / "homogenized.json").string() +
                          " was computed for a different cell (rerun the cell command)");
  const auto problem = MacroProblem::from(
      data, [e = cfg.f1](Point x) { return e(x); }, [e = cfg.f2](Point x) { return e(x); });
  auto mesh = std::make_shared<const Mesh>(build_uniform_mesh(cfg.macro_resolution));
  const auto u = solve_macro(problem, mesh, {cfg.macro_tol, 0});
  const auto U = compose_limit_pressure(u, problem);
  std::vector<double> G(U.values.size());
  for (std::size_t i = 0; i < G.size(); ++i) G[i] = U.values[i] - u.values[i];
  write_vtk(out / "macro.vtk", *mesh, {{"u", u.values}, {"G", G}, {"U", U.values}},
            "homogflow macro");

  std::string csv;
  for (std::size_t k = 0; k < macro_summary_columns().size(); ++k)
    csv += (k ? "," : "") + macro_summary_columns()[k];
  csv += "\n";
  for (const auto& [name, values] : std::vector<PointArray>{{"u", u.values}, {"G", G}, {"U", U.values}}) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    csv += name + "," + format_number(*lo) + "," + format_number(*hi) + "," +
           format_number(integrate(*mesh, values)) + "," +
           format_number(gradient_energy(*mesh, values)) + "\n";
  }
  write_text(out / "macro_summary.csv", csv);
  return U;
}

EnergyReport command_micro(const RunConfig& cfg, const fs::path& out, int m) {
  auto problem = make_micro_problem(
      cfg.geometry, m, cfg.coefficients, [e = cfg.f1](Point x) { return e(x); },
      [e = cfg.f2](Point x) { return e(x); });
  const auto sol = solve_micro(problem, {cfg.micro_tol, 0});
  write_vtk(out / ("micro_m" + std::to_string(m) + ".vtk"), *sol.mesh,
            {{"u", sol.u().values}, {"v", sol.v().values}, {"w", sol.values}},
            "homogflow micro eps=1/" + std::to_string(m));
  const auto energy = energy_report(sol);
  upsert_micro_energy(out / "micro_energy.csv", m, energy);
  return energy;
}

ConvergenceReport command_study(const RunConfig& cfg, const fs::path& out) {
  auto result = run_study(cfg.study());
  write_text(out / "report.csv", report_csv(result.report));
  write_text(out / "report.dat", report_dat(result.report));
  return std::move(result.report);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homogenization of Darcy flow in a periodic fissured medium"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir;
  std::string eps_text;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
  };
  auto* cell = app.add_subcommand("cell", "solve the cell problems");
  auto* macro = app.add_subcommand("macro", "solve the homogenized problem");
  auto* micro = app.add_subcommand("micro", "solve the eps-resolved problem");
  auto* study = app.add_subcommand("study", "run the convergence study");
  for (auto* s : {cell, macro, micro, study}) add_common(s);
  micro->add_option("--eps", eps_text, "period 1/m")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error[" << to_string(ErrorKind::argument) << "]: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const RunConfig cfg = parse_config(config_path);
    const fs::path dir = out_dir.empty() ? cfg.output_dir : fs::path(out_dir);
    if (*cell) {
      const auto r = command_cell(cfg, dir);
      out << "A_h = [[" << r.data.A_h(0, 0) << ", " << r.data.A_h(0, 1) << "], ["
          << r.data.A_h(1, 0) << ", " << r.data.A_h(1, 1) << "]]  alpha_hat = " << r.data.alpha_hat
          << "  alpha_bulk = " << r.data.alpha_bulk << "\n";
    } else if (*macro) {
      command_macro(cfg, dir);
      out << "wrote " << (dir / "macro.vtk").string() << "\n";
    } else if (*micro) {
      const auto e = command_micro(cfg, dir, parse_eps(eps_text));
      out << "H_eps_norm = " << e.H_eps_norm << "\n";
    } else {
      const auto report = command_study(cfg, dir);
      for (const auto& r : report.rows)
        out << "eps = 1/" << r.cells_per_side << "  weak_metric = " << r.weak_metric
            << "  corrector_metric = " << r.corrector_metric << "\n";
      if (!report.passed()) {
        for (const auto& v : report.violations())
          err << "error[check]: " << v << "\n";
        return kExitCheckFailed;
      }
    }
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

}  // namespace homogflow
