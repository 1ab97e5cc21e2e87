#include <gtest/gtest.h>

#include <cmath>

#include "anchorvote/density.hpp"
#include "anchorvote/geometry.hpp"
#include "support.hpp"

namespace anchorvote {
namespace {

// Frozen from tests/oracles/geometry_oracle.py (shapely).
constexpr double kAnchoredE1Alpha02[] = {0.5208333333333334, 0.23958333333333331, 0.23958333333333331};
constexpr double kAnchoredE1Alpha005 = 0.3693444136657444;
constexpr double kAnchoredE1Alpha01 = 0.4115226337448583;
constexpr double kAnchoredW532Alpha03[] = {0.4081292517006807, 0.31506802721088156, 0.2768027210884376};
constexpr double kOrdinalW532Alpha02[] = {0.20104166, 0.17510417, 0.19604167, 0.12760417, 0.17260417, 0.12760417};

// Frozen from tests/oracles/density_oracle.py (sympy): Dirichlet(2,1,1) plurality cells.
constexpr double kDirichlet211CellA = 11.0 / 18.0;
constexpr double kDirichlet211CellB = 7.0 / 36.0;

TEST(Geometry, ClipAndArea) {
  const auto tri = geometry::simplex_triangle();
  EXPECT_DOUBLE_EQ(geometry::area(tri), 0.5);
  const auto half = geometry::clip(tri, {1.0, 0.0, 0.5});  // x <= 1/2
  EXPECT_NEAR(geometry::area(half), 0.375, 1e-15);
  EXPECT_TRUE(geometry::clip(tri, {1.0, 0.0, -1.0}).empty());
  EXPECT_TRUE(geometry::contains(tri, half));
  EXPECT_FALSE(geometry::contains(half, tri));
}

TEST(Geometry, PlanarEmbeddingIsIsometric) {
  const auto e1 = geometry::to_planar({1, 0});
  const auto e2 = geometry::to_planar({0, 1});
  const auto e3 = geometry::to_planar({0, 0});
  auto d = [](auto a, auto b) { return std::hypot(a.x - b.x, a.y - b.y); };
  EXPECT_NEAR(d(e1, e2), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(d(e1, e3), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(d(e2, e3), std::sqrt(2.0), 1e-15);
}

TEST(Geometry, RequiresThreeAlternatives) {
  EXPECT_THROW(geometry::level_set_cells(ReportMenu::plurality(4)), Unsupported);
  EXPECT_THROW(exact_measure_m3(ReportMenu::ordinal(4)), Unsupported);
}

TEST(ExactMeasure, SymmetricMenus) {
  for (double x : exact_measure_m3(ReportMenu::plurality(3)).probs) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);
  for (double x : exact_measure_m3(ReportMenu::ordinal(3)).probs) EXPECT_NEAR(x, 1.0 / 6.0, 1e-12);
  for (double x : exact_measure_m3(ReportMenu::veto(3)).probs) EXPECT_NEAR(x, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(exact_measure_m3(ReportMenu::plurality(3)).provenance, Provenance::exact_geometry);
}

TEST(ExactMeasure, MatchesShapelyOracle) {
  const auto plurality = ReportMenu::plurality(3);
  const auto e1 = SimplexPoint::vertex(3, 0);
  const auto q02 = exact_measure_m3(anchor_menu(plurality, AnchorParams(e1, 0.2)));
  for (int r = 0; r < 3; ++r) EXPECT_NEAR(q02[r], kAnchoredE1Alpha02[r], 1e-12);
  EXPECT_NEAR(q02[0], 25.0 / 48.0, 1e-12);
  EXPECT_NEAR(exact_measure_m3(anchor_menu(plurality, AnchorParams(e1, 0.05)))[0], kAnchoredE1Alpha005, 1e-12);
  EXPECT_NEAR(exact_measure_m3(anchor_menu(plurality, AnchorParams(e1, 0.1)))[0], kAnchoredE1Alpha01, 1e-12);

  const SimplexPoint w({0.5, 0.3, 0.2});
  const auto q03 = exact_measure_m3(anchor_menu(plurality, AnchorParams(w, 0.3)));
  for (int r = 0; r < 3; ++r) EXPECT_NEAR(q03[r], kAnchoredW532Alpha03[r], 1e-12);

  const auto ord = exact_measure_m3(anchor_menu(ReportMenu::ordinal(3), AnchorParams(w, 0.2)));
  for (int r = 0; r < 6; ++r) EXPECT_NEAR(ord[r], kOrdinalW532Alpha02[r], 1e-8);
}

TEST(ExactMeasure, AnchoredCellContainsStandardCell) {
  const auto plurality = ReportMenu::plurality(3);
  const auto before = geometry::level_set_cells(plurality);
  const auto after = geometry::level_set_cells(anchor_menu(plurality, AnchorParams(SimplexPoint::vertex(3, 0), 0.2)));
  EXPECT_TRUE(geometry::contains(after[0], before[0]));
  EXPECT_GT(geometry::area(after[0]), geometry::area(before[0]));
}

TEST(ExactMeasure, OrdinalAreaOrderCounterexample) {
  // <w, acb> > <w, bac>, yet the anchored acb cell is smaller.
  const SimplexPoint w({0.5, 0.3, 0.2});
  const auto menu = ReportMenu::ordinal(3);
  const auto q = exact_measure_m3(anchor_menu(menu, AnchorParams(w, 0.2)));
  EXPECT_GT(dot(w.coords(), menu.position(1)), dot(w.coords(), menu.position(2)));
  EXPECT_LT(q[1], q[2]);
}

TEST(Density, SamplesStayOnSimplexAndAreDeterministic) {
  const auto d = DensityModel::dirichlet({0.3, 2.0, 5.0});
  EXPECT_EQ(sample_profile(d, 50, 9), sample_profile(d, 50, 9));
  EXPECT_NE(sample_profile(d, 50, 9), sample_profile(d, 50, 10));
  for (const auto& u : sample_profile(d, 1000, 3)) EXPECT_EQ(u.dim(), 3u);
}

TEST(Density, Validation) {
  EXPECT_THROW(DensityModel::dirichlet({1.0, 0.0, 1.0}), InvalidInput);
  EXPECT_THROW(DensityModel::dirichlet({}), InvalidInput);
  EXPECT_THROW(DensityModel::mixture({{1.0, DensityModel::uniform(3)}, {1.0, DensityModel::uniform(4)}}),
               InvalidInput);
}

TEST(Density, UniformMeans) {
  const auto profile = sample_profile(DensityModel::uniform(3), 100'000, 77);
  // Var of a Dirichlet(1,1,1) coordinate is 1/18.
  const double sigma = std::sqrt(1.0 / 18.0 / 100'000.0);
  for (std::size_t k = 0; k < 3; ++k) {
    double s = 0.0;
    for (const auto& u : profile) s += u[k];
    EXPECT_NEAR(s / 100'000.0, 1.0 / 3.0, 3.0 * sigma);
  }
  EXPECT_TRUE(DensityModel::dirichlet({1, 1, 1}).is_uniform());
  EXPECT_DOUBLE_EQ(DensityModel::dirichlet({2, 1, 1}).mean()[0], 0.5);
}

TEST(Density, DirichletCoordinateMean) {
  const auto profile = sample_profile(DensityModel::dirichlet({2, 1, 1}), 100'000, 5);
  double s = 0.0;
  for (const auto& u : profile) s += u[0];
  // Var = a(a0 - a) / (a0^2 (a0 + 1)) = 2*2/(16*5) = 0.05.
  EXPECT_NEAR(s / 100'000.0, 0.5, 3.0 * std::sqrt(0.05 / 100'000.0));
}

TEST(LevelSetMeasure, UniformWithinThreeSigma) {
  for (const auto& menu : {ReportMenu::plurality(3), ReportMenu::ordinal(3)}) {
    const auto exact = exact_measure_m3(menu);
    const auto mc = level_set_measure(DensityModel::uniform(3), menu, 200'000, 13);
    EXPECT_EQ(mc.provenance, Provenance::monte_carlo);
    double total = 0.0;
    for (std::size_t r = 0; r < menu.size(); ++r) {
      total += mc[r];
      EXPECT_NEAR(mc[r], exact[r], 3.0 * std::sqrt(exact[r] * (1 - exact[r]) / 200'000.0));
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(LevelSetMeasure, AnchoredMatchesExactGeometry) {
  const auto menu = anchor_menu(ReportMenu::plurality(3), AnchorParams(SimplexPoint::vertex(3, 0), 0.2));
  const auto mc = level_set_measure(DensityModel::uniform(3), menu, 200'000, 21);
  for (int r = 0; r < 3; ++r) {
    const double p = kAnchoredE1Alpha02[r];
    EXPECT_NEAR(mc[r], p, 3.0 * std::sqrt(p * (1 - p) / 200'000.0));
  }
}

TEST(LevelSetMeasure, DirichletMatchesSympyOracle) {
  const auto mc = level_set_measure(DensityModel::dirichlet({2, 1, 1}), ReportMenu::plurality(3), 400'000, 4);
  const double sa = std::sqrt(kDirichlet211CellA * (1 - kDirichlet211CellA) / 400'000.0);
  const double sb = std::sqrt(kDirichlet211CellB * (1 - kDirichlet211CellB) / 400'000.0);
  EXPECT_NEAR(mc[0], kDirichlet211CellA, 3 * sa);
  EXPECT_NEAR(mc[1], kDirichlet211CellB, 3 * sb);
  EXPECT_NEAR(mc[2], kDirichlet211CellB, 3 * sb);
}

TEST(LevelSetMeasure, SeedDeterminism) {
  const auto d = DensityModel::dirichlet({1, 2, 3, 4});
  const auto menu = ReportMenu::ordinal(4);
  const auto a = level_set_measure(d, menu, 100'000, 99);
  const auto b = level_set_measure(d, menu, 100'000, 99);
  EXPECT_EQ(a.probs, b.probs);
  EXPECT_EQ(a.stderrs, b.stderrs);
}

TEST(ReportDistribution, PicksExactGeometryForUniformM3) {
  EXPECT_EQ(report_distribution(DensityModel::uniform(3), ReportMenu::ordinal(3), 10, 1).provenance,
            Provenance::exact_geometry);
  EXPECT_EQ(report_distribution(DensityModel::dirichlet({2, 1, 1}), ReportMenu::ordinal(3), 1000, 1).provenance,
            Provenance::monte_carlo);
}

TEST(TvDistance, UniformZeroAndDirichletOracle) {
  EXPECT_EQ(tv_distance_bound(DensityModel::uniform(3), ReportMenu::plurality(3), 1000, 1), 0.0);
  const double tv = tv_distance_bound(DensityModel::dirichlet({2, 1, 1}), ReportMenu::plurality(3), 400'000, 2);
  EXPECT_NEAR(tv, kDirichlet211CellA - 1.0 / 3.0, 3 * std::sqrt(kDirichlet211CellA / 400'000.0));
  const auto mixture = DensityModel::mixture(
      {{0.9, DensityModel::uniform(3)}, {0.1, DensityModel::dirichlet({5, 1, 1})}});
  EXPECT_DOUBLE_EQ(mixture.tv_upper_bound(), 0.1);
  EXPECT_LE(tv_distance_bound(mixture, ReportMenu::plurality(3), 200'000, 3), 0.1);
}

}  // namespace
}  // namespace anchorvote
