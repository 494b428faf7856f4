#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "homogflow/cell_problems.hpp"
#include "homogflow/errors.hpp"
#include "homogflow/integrate.hpp"
#include "test_support.hpp"

using namespace homogflow;
using namespace homogflow::testing;

namespace {

const double kPi = std::numbers::pi;
// Disk R = 0.25, A = I: Richardson extrapolation of n = 128 and n = 256 solves.
constexpr double kDiskReference = 0.671628;

CellResult solve_disk(int n, CellCoefficients c = {}) { return solve_cell_problems(disk(n), c); }

double max_alpha_error(const FieldSolution& alpha, double h) {
  const Mesh& m = *alpha.mesh;
  double err = 0.0;
  for (std::size_t i = 0; i < m.num_nodes(); ++i)
    if (m.node_side[i] == Subdomain::block)
      err = std::max(err, std::abs(alpha.values[i] - radial_alpha(norm(m.nodes[i] - Point{0.5, 0.5}), h)));
  return err;
}

}  // namespace

TEST(Corrector, VanishesWithoutBlockForConstantA) {
  const auto r = solve_cell_problems(no_block(16), {});
  for (const auto& w : r.solution.omega)
    for (double v : w.values) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_FALSE(r.solution.alpha.has_value());
  EXPECT_LT((Mat2{{{{r.data.A_h(0, 0) - 1.0, r.data.A_h(0, 1)}, {r.data.A_h(1, 0), r.data.A_h(1, 1) - 1.0}}}}).max_abs(), 1e-8);
  EXPECT_EQ(r.data.alpha_hat, 0.0);
  EXPECT_EQ(r.data.alpha_bulk, 0.0);
  EXPECT_DOUBLE_EQ(r.data.y1_volume, 1.0);
}

TEST(Corrector, LayeredMediumMatchesOneDimensionalClosedForm) {
  CellCoefficients c;
  c.A = CoefficientField::layered({1.0, 4.0}, 1);
  const auto r = solve_cell_problems(no_block(16), c);
  // (a (w' + 1))' = 0 with flux 1.6: slope 0.6 on the soft layer, -0.6 on the stiff one.
  auto tent = [](double y) { return (y <= 0.5 ? 0.6 * y : 0.3 - 0.6 * (y - 0.5)) - 0.15; };
  const Mesh& m = *r.mesh;
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    EXPECT_NEAR(r.solution.omega[0].values[i], tent(m.nodes[i].x), 1e-9);
    EXPECT_NEAR(r.solution.omega[1].values[i], 0.0, 1e-9);
  }
  EXPECT_NEAR(r.data.A_h(0, 0), 1.6, 1e-9);
  EXPECT_NEAR(r.data.A_h(1, 1), 2.5, 1e-9);
  EXPECT_NEAR(r.data.A_h(0, 1), 0.0, 1e-9);
}

TEST(Corrector, OddSymmetryAboutTheMidplane) {
  const auto r = solve_disk(32);
  const Mesh& m = *r.mesh;
  std::map<std::pair<long, long>, Index> matrix_nodes;
  auto key = [](Point p) { return std::make_pair(std::lround(p.x * 1e9), std::lround(p.y * 1e9)); };
  for (std::size_t i = 0; i < m.num_nodes(); ++i)
    if (m.node_side[i] == Subdomain::matrix) matrix_nodes[key(m.nodes[i])] = static_cast<Index>(i);
  int checked = 0;
  const auto& w = r.solution.omega[0].values;
  for (const auto& [k, i] : matrix_nodes) {
    const Point p = m.nodes[i];
    if (p.x == 0.0 || p.x == 1.0) continue;  // periodic faces hold the slave copy
    const auto it = matrix_nodes.find(key({1.0 - p.x, p.y}));
    ASSERT_NE(it, matrix_nodes.end());
    EXPECT_NEAR(w[i], -w[it->second], 1e-8);
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(Corrector, ZeroMeanAndPeriodic) {
  const auto r = solve_disk(16);
  const PeriodicMap& p = r.periodic;
  for (const auto& w : r.solution.omega) {
    EXPECT_NEAR(integrate(w, Subdomain::matrix), 0.0, 1e-10);
    for (const auto& pr : p.pairs) EXPECT_EQ(w.values[pr.slave], w.values[pr.master]);
    EXPECT_EQ(w.support, Subdomain::matrix);
  }
}

TEST(HomogenizedTensor, DiskIsIsotropicAndPinnedByFineReference) {
  const auto r64 = solve_disk(64);
  const Mat2 a = r64.data.A_h;
  EXPECT_LT(std::abs(a(0, 0) - a(1, 1)), 1e-6);
  EXPECT_LT(std::abs(a(0, 1)), 1e-6);
  EXPECT_LE(std::abs(a(0, 1) - a(1, 0)), 1e-10 * a.max_abs());
  EXPECT_GT(a(0, 0), 0.0);
  EXPECT_LT(a(0, 0), 1.0 - kPi / 16.0);
  EXPECT_NEAR(a(0, 0), kDiskReference, 1e-3);
  const auto r32 = solve_disk(32);
  EXPECT_LT(std::abs(r32.data.A_h(0, 0) - a(0, 0)) / a(0, 0), 1e-2);
}

TEST(HomogenizedTensor, EnergyAndFluxFormsAgree) {
  CellCoefficients c;
  c.A = CoefficientField::scalar(Expression::parse("1 + 0.5*sin(2*pi*y1)*cos(2*pi*y2)", 'y'));
  const auto r = solve_cell_problems(CellGeometry{Square{{0.45, 0.5}, 0.2}, 32}, c);
  const Mat2 f = flux_form_tensor(r.solution.omega[0], r.solution.omega[1], c.A);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(r.data.A_h(i, j), f(i, j), 1e-8);
}

TEST(HomogenizedTensor, VoigtBound) {
  CellCoefficients c;
  c.A = CoefficientField::constant(Mat2{{{{2.0, 0.3}, {0.3, 1.0}}}});
  const auto r = solve_disk(32, c);
  const double y1 = r.data.y1_volume;
  for (Vec2 xi : {Vec2{1, 0}, Vec2{0, 1}, Vec2{1, 1}}) {
    const double eff = dot(xi, r.data.A_h * xi);
    const double voigt = y1 * dot(xi, Mat2{{{{2.0, 0.3}, {0.3, 1.0}}}} * xi);
    EXPECT_GT(eff, 0.0);
    EXPECT_LE(eff, voigt + 1e-12);
  }
}

TEST(HomogenizedTensor, MismatchedCorrectorsAreRejected) {
  const auto a = solve_disk(16);
  const auto b = solve_disk(32);
  EXPECT_THROW(homogenized_tensor(a.solution.omega[0], b.solution.omega[1], CoefficientField::scalar(1.0)),
               ArgumentError);
}

TEST(Alpha, RadialClosedForm) {
  const auto r = solve_disk(32);
  const auto& alpha = *r.solution.alpha;
  EXPECT_LT(max_alpha_error(alpha, 1.0), 5e-3);
  double boundary = 0.0;
  int count = 0;
  for (const auto& e : r.mesh->interface_edges) {
    boundary += alpha.values[e.block_nodes[0]];
    ++count;
  }
  EXPECT_NEAR(boundary / count, 0.125, 5e-3);
  double centre = -1.0;
  for (std::size_t i = 0; i < r.mesh->num_nodes(); ++i)
    if (r.mesh->nodes[i] == Point{0.5, 0.5}) centre = alpha.values[i];
  EXPECT_NEAR(centre, 0.140625, 5e-3);
  for (std::size_t i = 0; i < r.mesh->num_nodes(); ++i) EXPECT_GE(alpha.values[i], -1e-12);
}

TEST(Alpha, NodalErrorIsSecondOrder) {
  double prev = -1.0;
  for (int n : {16, 32, 64}) {
    const auto r = solve_disk(n);
    const double err = max_alpha_error(*r.solution.alpha, 1.0);
    if (prev > 0.0) EXPECT_GE(std::log2(prev / err), 1.5) << "n = " << n;
    prev = err;
  }
}

TEST(Alpha, Functionals) {
  const auto r = solve_disk(32);
  EXPECT_NEAR(r.data.alpha_hat, 0.196350, 2e-3);
  EXPECT_NEAR(r.data.alpha_bulk, 0.0260777, 3e-4);
  EXPECT_NEAR(r.data.y1_volume, 0.80365, 5e-3);
  EXPECT_NEAR(radial_alpha_hat(), 0.196350, 1e-6);
  EXPECT_NEAR(radial_alpha_bulk(), 0.0260777, 1e-7);

  CellCoefficients c;
  c.h = CoefficientField::scalar(2.0);
  const auto r2 = solve_disk(32, c);
  EXPECT_NEAR(r2.data.alpha_hat, 0.098175, 2e-3);
  EXPECT_NEAR(r2.data.alpha_bulk, radial_alpha_bulk(2.0), 3e-4);
  EXPECT_LT(max_alpha_error(*r2.solution.alpha, 2.0), 5e-3);

  FieldSolution zero = *r.solution.alpha;
  std::fill(zero.values.begin(), zero.values.end(), 0.0);
  const auto f = alpha_functionals(zero);
  EXPECT_EQ(f.alpha_hat, 0.0);
  EXPECT_EQ(f.alpha_bulk, 0.0);
  EXPECT_DOUBLE_EQ(f.y1_volume, r.data.y1_volume);
}

TEST(Alpha, AlphaHatConvergesAtOrderAtLeastOneAndAHalf) {
  std::vector<double> err;
  for (int n : {16, 32, 64}) err.push_back(std::abs(solve_disk(n).data.alpha_hat - radial_alpha_hat()));
  for (std::size_t k = 1; k < err.size(); ++k) EXPECT_GE(std::log2(err[k - 1] / err[k]), 1.5);
}

TEST(Alpha, StiffInterfaceApproachesDirichlet) {
  CellCoefficients c;
  c.h = CoefficientField::scalar(1e6);
  const auto r = solve_disk(32, c);
  for (const auto& e : r.mesh->interface_edges) EXPECT_LT(r.solution.alpha->values[e.block_nodes[0]], 1e-5);
}

TEST(Alpha, ScalingBAndHTogetherHalvesAlpha) {
  CellCoefficients c;
  c.B = CoefficientField::scalar(2.0);
  c.h = CoefficientField::scalar(2.0);
  const auto a = solve_disk(16);
  const auto b = solve_disk(16, c);
  for (std::size_t i = 0; i < a.mesh->num_nodes(); ++i)
    EXPECT_NEAR(b.solution.alpha->values[i], 0.5 * a.solution.alpha->values[i], 1e-12);
}

TEST(Alpha, EmptyBlockIsAGeometryError) {
  auto m = share(build_uniform_mesh(8));
  EXPECT_THROW(solve_alpha(m, CoefficientField::scalar(1.0), CoefficientField::scalar(1.0)), GeometryError);
}

TEST(CellProblems, FingerprintTracksGeometryAndCoefficients) {
  CellCoefficients c;
  const auto base = cell_fingerprint(disk(32), c);
  EXPECT_EQ(base, cell_fingerprint(disk(32), c));
  EXPECT_NE(base, cell_fingerprint(disk(16), c));
  EXPECT_NE(base, cell_fingerprint(disk(32, 0.2), c));
  c.h = CoefficientField::scalar(2.0);
  EXPECT_NE(base, cell_fingerprint(disk(32), c));
  const auto r = solve_disk(16);
  EXPECT_EQ(r.data.fingerprint, cell_fingerprint(disk(16), {}));
  EXPECT_EQ(r.data.resolution, 16);
}
