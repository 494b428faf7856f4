#include "homogflow/constraints.hpp"

#include <cmath>

#include "homogflow/errors.hpp"

namespace homogflow {

Constraints Constraints::on_subdomain(const Mesh& mesh, Subdomain side) {
  Constraints c;
  c.active.resize(mesh.num_nodes());
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) c.active[i] = mesh.node_side[i] == side;
  return c;
}

ReducedSystem apply_constraints(const SparseSystem& system, const Constraints& constraints) {
  const std::size_t n = system.size();
  ReducedSystem out;
  out.active = constraints.active.empty() ? std::vector<char>(n, 1) : constraints.active;
  if (out.active.size() != n) throw ArgumentError("active mask size does not match the system");
  if (constraints.mean_zero && constraints.mean_weights.size() != n)
    throw ArgumentError("mean-zero weights size does not match the system");

  enum class Role : char { free, fixed, slave, inactive };
  std::vector<Role> role(n, Role::free);
  std::vector<Index> master(n, -1);
  out.fixed_value.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (!out.active[i]) role[i] = Role::inactive;

  for (const auto& [dof, value] : constraints.dirichlet) {
    if (dof < 0 || static_cast<std::size_t>(dof) >= n) throw ArgumentError("Dirichlet DOF out of range");
    if (role[dof] == Role::inactive)
      throw ConstraintError("Dirichlet condition on inactive DOF " + std::to_string(dof));
    if (role[dof] == Role::fixed && out.fixed_value[dof] != value)
      throw ConstraintError("conflicting Dirichlet values on DOF " + std::to_string(dof));
    role[dof] = Role::fixed;
    out.fixed_value[dof] = value;
  }

  if (constraints.periodic) {
    auto link = [&](Index slave, Index to) {
      if (role[slave] == Role::fixed || role[to] == Role::fixed)
        throw ConstraintError("DOF " + std::to_string(slave) + " is both periodic and Dirichlet");
      if (role[slave] == Role::inactive || role[to] == Role::inactive)
        throw ConstraintError("periodic pair on inactive DOF " + std::to_string(slave));
      if (role[slave] == Role::slave && master[slave] != to)
        throw ConstraintError("DOF " + std::to_string(slave) + " has two periodic masters");
      role[slave] = Role::slave;
      master[slave] = to;
    };
    const auto& pm = *constraints.periodic;
    for (const auto& p : pm.pairs) link(p.slave, p.master);
    for (int k = 1; k < 4; ++k) link(pm.corner_group[k], pm.corner_group[0]);
    for (std::size_t i = 0; i < n; ++i)
      if (role[i] == Role::slave && role[master[i]] == Role::slave)
        throw ConstraintError("periodic master " + std::to_string(master[i]) + " is itself a slave");
  }

  if (constraints.mean_zero) {
    std::size_t pin = n;
    for (std::size_t i = 0; i < n && pin == n; ++i)
      if (role[i] == Role::free) pin = i;
    if (pin == n) throw ConstraintError("no free DOF left to pin for the mean-zero condition");
    role[pin] = Role::fixed;
    out.fixed_value[pin] = 0.0;
    out.mean_zero = true;
    out.mean_weights = constraints.mean_weights;
  }

  out.reduced_index.assign(n, -1);
  Index count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (role[i] == Role::free) out.reduced_index[i] = count++;
  for (std::size_t i = 0; i < n; ++i)
    if (role[i] == Role::slave) out.reduced_index[i] = out.reduced_index[master[i]];

  std::vector<CsrMatrix::Entry> entries;
  entries.reserve(system.entries().size());
  out.rhs.assign(static_cast<std::size_t>(count), 0.0);
  for (const auto& e : system.entries()) {
    const Index ri = out.reduced_index[e.row];
    if (ri < 0) continue;
    const Index rj = out.reduced_index[e.col];
    if (rj >= 0)
      entries.push_back({ri, rj, e.value});
    else if (role[e.col] == Role::fixed)
      out.rhs[ri] -= e.value * out.fixed_value[e.col];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (out.reduced_index[i] >= 0) out.rhs[out.reduced_index[i]] += system.rhs()[i];
  out.matrix = CsrMatrix::from_entries(static_cast<std::size_t>(count), std::move(entries));
  return out;
}

std::vector<double> ReducedSystem::expand(std::span<const double> reduced) const {
  const std::size_t n = reduced_index.size();
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    x[i] = reduced_index[i] >= 0 ? reduced[reduced_index[i]] : fixed_value[i];
  }
  if (mean_zero) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      num += mean_weights[i] * x[i];
      den += mean_weights[i];
    }
    const double shift = num / den;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i]) x[i] -= shift;
  }
  return x;
}

std::vector<double> solve(const ReducedSystem& system, const SolverOptions& options,
                          SolveStats* stats) {
  return system.expand(solve_spd(system.matrix, system.rhs, options, stats));
}

}  // namespace homogflow
