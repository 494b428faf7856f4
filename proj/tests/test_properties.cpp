#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "homogflow/convergence.hpp"
#include "homogflow/fingerprint.hpp"
#include "homogflow/integrate.hpp"
#include "homogflow/io.hpp"
#include "test_support.hpp"

using namespace homogflow;
using namespace homogflow::testing;

namespace {

struct Random {
  std::mt19937_64 gen;
  explicit Random(std::uint64_t seed) : gen(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); }

  CellGeometry geometry() {
    const int n = 2 * integer(5, 16);
    const double margin = 2.0 / n + 0.02;
    if (integer(0, 1) == 0) {
      const double r = uniform(0.1, 0.5 - margin - 0.03);
      const double room = 0.5 - margin - r;
      return {Disk{{0.5 + uniform(-room, room), 0.5 + uniform(-room, room)}, r}, n};
    }
    const double w = uniform(0.1, 0.5 - margin - 0.03);
    const double room = 0.5 - margin - w;
    return {Square{{0.5 + uniform(-room, room), 0.5 + uniform(-room, room)}, w}, n};
  }

  Mat2 spd() {
    const double a = uniform(0.5, 3.0), b = uniform(0.5, 3.0);
    const double c = uniform(-0.4, 0.4) * std::sqrt(a * b);
    return Mat2{{{{a, c}, {c, b}}}};
  }

  CellCoefficients coefficients() {
    CellCoefficients c;
    c.A = CoefficientField::constant(spd());
    c.B = CoefficientField::scalar(uniform(0.2, 5.0));
    c.h = CoefficientField::scalar(uniform(0.2, 5.0));
    return c;
  }
};

constexpr int kCases = 12;

}  // namespace

TEST(MeshProperties, RandomGeometries) {
  Random rnd(11);
  for (int k = 0; k < kCases; ++k) {
    const CellGeometry g = rnd.geometry();
    SCOPED_TRACE(describe(g));
    const Mesh m = build_unit_cell_mesh(g);
    for (const auto& t : m.triangles) ASSERT_GT(m.triangle_area(t), 0.0);
    EXPECT_NEAR(m.area(Subdomain::matrix) + m.area(Subdomain::block), 1.0, 1e-12);
    EXPECT_NEAR(m.area(Subdomain::block), exact_block_area(g.block), 4.0 / (g.resolution * g.resolution));
    const Point c = block_center(g.block);
    std::map<Index, int> degree;
    for (const auto& e : m.interface_edges) {
      ++degree[e.matrix_nodes[0]];
      ++degree[e.matrix_nodes[1]];
      const Point mid = 0.5 * (m.nodes[e.matrix_nodes[0]] + m.nodes[e.matrix_nodes[1]]);
      EXPECT_GT(dot(e.normal, c - mid), 0.0);
    }
    for (const auto& [node, d] : degree) EXPECT_EQ(d, 2);
    const auto pairs = extract_interface_pairing(m);
    EXPECT_EQ(pairs.size(), degree.size());

    const PeriodicMap p = build_periodic_map(m);
    std::set<Index> boundary;
    for (const auto& e : m.boundary_edges) boundary.insert({e[0], e[1]});
    EXPECT_EQ(2 * p.pairs.size() + 4, boundary.size());

    const int tiles = rnd.integer(2, 4);
    const Mesh eps = build_epsilon_mesh(g, tiles);
    EXPECT_EQ(eps.triangles.size(), static_cast<std::size_t>(tiles * tiles) * m.triangles.size());
    EXPECT_EQ(extract_interface_pairing(eps).size(), static_cast<std::size_t>(tiles * tiles) * pairs.size());
  }
}

TEST(AssemblyProperties, StiffnessSymmetricPsdAndScaleInvariant) {
  Random rnd(23);
  for (int k = 0; k < kCases; ++k) {
    const Mesh m = build_unit_cell_mesh(rnd.geometry());
    const auto coeff = CoefficientField::constant(rnd.spd());
    const double s = rnd.uniform(0.01, 10.0);
    for (Subdomain tag : {Subdomain::matrix, Subdomain::block}) {
      SparseSystem a(m.num_nodes()), b(m.num_nodes());
      assemble_stiffness(m, coeff, tag, 1.0, a);
      assemble_stiffness(m, coeff, tag, s, b);
      const auto ka = a.matrix(), kb = b.matrix();
      EXPECT_EQ(ka.max_asymmetry(), 0.0);
      for (Index r = 0; r < static_cast<Index>(ka.size()); ++r) {
        const auto va = ka.row_values(r), vb = kb.row_values(r);
        for (std::size_t j = 0; j < va.size(); ++j) EXPECT_NEAR(vb[j], s * va[j], 1e-14 * std::abs(s * va[j]));
      }
      std::vector<double> x(m.num_nodes());
      for (int trial = 0; trial < 100; ++trial) {
        for (double& v : x) v = rnd.uniform(-1.0, 1.0);
        EXPECT_GE(dot(x, ka * x), -1e-12 * ka.max_abs());
      }
    }
  }
}

TEST(CellProperties, HomogenizedDataInvariants) {
  Random rnd(37);
  for (int k = 0; k < kCases; ++k) {
    const CellGeometry g = rnd.geometry();
    const CellCoefficients c = rnd.coefficients();
    SCOPED_TRACE(describe(g) + " " + c.describe());
    const auto r = solve_cell_problems(g, c);
    const Mat2& a = r.data.A_h;
    EXPECT_LE(std::abs(a(0, 1) - a(1, 0)), 1e-10 * a.max_abs());
    EXPECT_GT(a.sym_eigenvalues()[0], 0.0);
    const Mat2 mean_a = r.data.y1_volume * c.A.matrix({0, 0});
    for (Vec2 xi : {Vec2{1, 0}, Vec2{0, 1}, Vec2{1, 1}}) EXPECT_LE(dot(xi, a * xi), dot(xi, mean_a * xi) + 1e-12);
    const Mat2 f = flux_form_tensor(r.solution.omega[0], r.solution.omega[1], c.A);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(a(i, j), f(i, j), 1e-8);
    EXPECT_GT(r.data.alpha_hat, 0.0);
    EXPECT_GT(r.data.alpha_bulk, 0.0);
    for (double v : r.solution.alpha->values) EXPECT_GE(v, -1e-12);
    for (const auto& w : r.solution.omega) EXPECT_NEAR(integrate(w, Subdomain::matrix), 0.0, 1e-10);
    // Integrating the alpha problem: int_Gamma h alpha = |Y2|.
    EXPECT_NEAR(r.data.alpha_hat * c.h.scalar_value({0, 0}), 1.0 - r.data.y1_volume, 1e-8);
  }
}

TEST(MacroProperties, LinearityInSources) {
  Random rnd(41);
  const auto mesh = share(build_uniform_mesh(16));
  for (int k = 0; k < 5; ++k) {
    MacroProblem p;
    p.A_h = rnd.spd();
    p.y1_volume = rnd.uniform(0.3, 1.0);
    p.alpha_hat = rnd.uniform(0.0, 0.5);
    p.alpha_bulk = rnd.uniform(0.0, 0.1);
    const double a = rnd.uniform(-2, 2), b = rnd.uniform(-2, 2), s = rnd.uniform(0.5, 3.0);
    p.f1 = [=](Point x) { return a + x.x * x.y; };
    p.f2 = [=](Point x) { return b * std::cos(x.x); };
    MacroProblem q = p;
    q.f1 = [=](Point x) { return s * (a + x.x * x.y); };
    q.f2 = [=](Point x) { return s * b * std::cos(x.x); };
    const auto U = compose_limit_pressure(solve_macro(p, mesh, {1e-12, 0}), p);
    const auto V = compose_limit_pressure(solve_macro(q, mesh, {1e-12, 0}), q);
    double scale = 0.0;
    for (double v : U.values) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < U.values.size(); ++i) EXPECT_NEAR(V.values[i], s * U.values[i], 1e-9 * s * scale);
  }
}

TEST(MicroProperties, EnergyIdentityAndNonNegativeComponents) {
  Random rnd(53);
  for (int k = 0; k < 6; ++k) {
    const CellGeometry g = rnd.geometry();
    CellCoefficients c = rnd.coefficients();
    const double a = rnd.uniform(0.0, 2.0), b = rnd.uniform(0.0, 2.0);
    auto p = make_micro_problem(g, rnd.integer(2, 4), c, [=](Point x) { return a + x.y; },
                                [=](Point x) { return b * (1.0 + x.x); });
    const auto s = solve_micro(p);
    EXPECT_LT(energy_balance(p, s).relative_gap(), 1e-8);
    const auto e = energy_report(s);
    EXPECT_GE(e.grad_u_sq, 0.0);
    EXPECT_GE(e.eps2_grad_v_sq, 0.0);
    EXPECT_GE(e.jump_sq, 0.0);
  }
}

TEST(ConvergenceProperties, CellAverageTowerAndCauchySchwarz) {
  Random rnd(61);
  for (int k = 0; k < kCases; ++k) {
    const int m = rnd.integer(2, 6);
    const Mesh mesh = build_epsilon_mesh(disk(8), m);
    std::vector<double> a(mesh.num_nodes()), b(mesh.num_nodes());
    for (double& v : a) v = rnd.uniform(-1, 1);
    for (double& v : b) v = rnd.uniform(-1, 1);
    const auto pa = cell_average(mesh, a, m), pb = cell_average(mesh, b, m);
    double mean = 0.0;
    for (double v : pa.values) mean += v / (m * m);
    EXPECT_NEAR(mean, integrate(mesh, a), 1e-13);
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
    EXPECT_LE(std::abs(integrate(mesh, d)), l2_distance(pa, pb) * (1.0 + 1e-12));
  }
}

TEST(IoProperties, HomogenizedRoundTrip) {
  Random rnd(71);
  for (int k = 0; k < 50; ++k) {
    HomogenizedData d;
    d.A_h = rnd.spd();
    d.alpha_hat = rnd.uniform(0.0, 1.0);
    d.alpha_bulk = rnd.uniform(0.0, 1.0);
    d.y1_volume = rnd.uniform(0.01, 1.0);
    d.resolution = rnd.integer(8, 512);
    d.geometry = describe(CellGeometry{Disk{{0.5, 0.5}, rnd.uniform(0.05, 0.3)}, d.resolution});
    d.coefficients = rnd.coefficients().describe();
    d.fingerprint = fingerprint(d.geometry + "|" + d.coefficients);
    EXPECT_EQ(homogenized_from_json(to_json(d)), d);
  }
}
