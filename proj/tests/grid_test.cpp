#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "test_util.hpp"
#include "torustop/grid.hpp"
#include "torustop/pgm.hpp"

using namespace torustop;
using testutil::Rng;

TEST(Complement, FullAndEmpty) {
  const GridResolution res(8);
  const TorusGridSet full = TorusGridSet::full(res, Adjacency::Eight);
  EXPECT_TRUE(complement(full).empty());
  const TorusGridSet empty(res, Adjacency::Four);
  EXPECT_EQ(complement(empty).size(), 64u);
}

TEST(Complement, SingleCellCardinality) {
  TorusGridSet s(GridResolution(8), Adjacency::Eight);
  s.set(0, 0);
  const TorusGridSet c = complement(s);
  EXPECT_EQ(c.size(), 63u);
  EXPECT_FALSE(c.contains(0, 0));
  EXPECT_EQ(c.adjacency(), Adjacency::Four);
}

TEST(Complement, InvolutionRestoresAdjacency) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const TorusGridSet s = testutil::random_sprinkle(16, Adjacency::Eight, rng, 0.4);
    const TorusGridSet back = complement(complement(s));
    EXPECT_TRUE(back == s);
  }
}

TEST(Components, CountsAndDeterminism) {
  TorusGridSet s(GridResolution(8), Adjacency::Eight);
  s.set(1, 1);
  s.set(5, 5);
  const ComponentLabeling lab = connected_components(s);
  EXPECT_EQ(lab.count, 2);
  // ids assigned in row-major order of representatives
  EXPECT_EQ(lab.representatives[0], (Vec2i{1, 1}));
  EXPECT_EQ(lab.representatives[1], (Vec2i{5, 5}));

  EXPECT_EQ(connected_components(TorusGridSet::full(GridResolution(8), Adjacency::Four)).count,
            1);
}

TEST(Components, AgreesWithUnionFindOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Adjacency adj = trial % 2 ? Adjacency::Four : Adjacency::Eight;
    TorusGridSet s = testutil::random_sprinkle(32, adj, rng, 0.2);
    // make it exactly 200 cells on some trials
    if (trial < 5) {
      s = TorusGridSet(GridResolution(32), adj);
      std::uniform_int_distribution<int> pick(0, 31);
      while (s.size() < 200) s.set(pick(rng), pick(rng));
    }
    if (s.empty()) continue;
    EXPECT_EQ(connected_components(s).count, testutil::component_count_oracle(s));
  }
}

TEST(Boundary, Examples) {
  EXPECT_TRUE(boundary(TorusGridSet::full(GridResolution(8), Adjacency::Eight)).empty());

  TorusGridSet cell(GridResolution(8), Adjacency::Eight);
  cell.set(3, 4);
  EXPECT_TRUE(boundary(cell) == cell);

  const TorusGridSet blk = testutil::block(16, Adjacency::Eight, 4, 4, 4, 4);
  const TorusGridSet b = boundary(blk);
  // enumerate the perimeter directly
  TorusGridSet expect(GridResolution(16), Adjacency::Eight);
  for (int d = 0; d < 4; ++d) {
    expect.set(4 + d, 4);
    expect.set(4 + d, 7);
    expect.set(4, 4 + d);
    expect.set(7, 4 + d);
  }
  EXPECT_EQ(expect.size(), 12u);
  EXPECT_TRUE(b == expect);
}

TEST(Hausdorff, ExamplesAndOracle) {
  TorusGridSet a(GridResolution(8), Adjacency::Eight);
  a.set(0, 0);
  TorusGridSet b(GridResolution(8), Adjacency::Eight);
  b.set(0, 4);
  EXPECT_NEAR(hausdorff_distance(a, b), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(hausdorff_distance(a, a), 0.0);

  EXPECT_THROW(hausdorff_distance(TorusGridSet(GridResolution(8), Adjacency::Eight), a),
               std::invalid_argument);

  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const TorusGridSet c = testutil::random_blob(16, Adjacency::Eight, rng, 30);
    const TorusGridSet d = testutil::random_blob(16, Adjacency::Eight, rng, 50);
    EXPECT_NEAR(hausdorff_distance(c, d), testutil::hausdorff_oracle(c, d), 1e-12);
  }
}

TEST(Hausdorff, NestedDirectedDominates) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    TorusGridSet d = testutil::random_blob(16, Adjacency::Eight, rng, 60);
    // c: strict subset of d
    TorusGridSet c(GridResolution(16), Adjacency::Eight);
    int kept = 0;
    d.for_each_cell([&](Vec2i cc) {
      if (kept++ % 3 == 0) c.set(cc);
    });
    if (c.empty() || c.same_cells(d)) continue;
    EXPECT_NEAR(hausdorff_distance(c, d), directed_hausdorff(d, c), 1e-15);
  }
}

TEST(Hausdorff, MetricOnRandomTriples) {
  Rng rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const TorusGridSet a = testutil::random_blob(16, Adjacency::Eight, rng, 25);
    const TorusGridSet b = testutil::random_blob(16, Adjacency::Eight, rng, 25);
    const TorusGridSet c = testutil::random_blob(16, Adjacency::Eight, rng, 25);
    const double ab = hausdorff_distance(a, b);
    const double ba = hausdorff_distance(b, a);
    const double bc = hausdorff_distance(b, c);
    const double ac = hausdorff_distance(a, c);
    EXPECT_DOUBLE_EQ(ab, ba);
    EXPECT_LE(ac, ab + bc + 1e-12);
    EXPECT_EQ(ab == 0.0, a.same_cells(b));
  }
}

TEST(Hausdorff, EpsilonBallCharacterisation) {
  Rng rng(23);
  const int n = 16;
  auto within_eps = [&](const TorusGridSet& c, const TorusGridSet& d, double eps) {
    // C inside the eps-ball of D, by distance transform
    const auto dt = squared_distance_transform(d);
    bool ok = true;
    c.for_each_cell([&](Vec2i cc) {
      const double dist = std::sqrt(double(dt[c.index(int(cc.x), int(cc.y))])) / n;
      if (dist >= eps) ok = false;
    });
    return ok;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const TorusGridSet c = testutil::random_blob(n, Adjacency::Eight, rng, 20);
    const TorusGridSet d = testutil::random_blob(n, Adjacency::Eight, rng, 30);
    const double h = hausdorff_distance(c, d);
    for (double eps = 0.05; eps < 0.8; eps += 0.05) {
      const bool lhs = h < eps;
      const bool rhs = within_eps(c, d, eps) && within_eps(d, c, eps);
      EXPECT_EQ(lhs, rhs) << "eps=" << eps << " h=" << h;
    }
  }
}

TEST(LiftWindow, Examples) {
  TorusGridSet s(GridResolution(8), Adjacency::Eight);
  s.set(2, 3);
  const CoverWindow w = lift_window(s, 2);
  int64_t lifted = 0;
  for (uint8_t v : w.lifted) lifted += v;
  EXPECT_EQ(lifted, 4);

  TorusGridSet band(GridResolution(8), Adjacency::Eight);
  for (int i = 0; i < 8; ++i) band.set(i, 0);
  const CoverWindow w3 = lift_window(band, 3);
  const ComponentLabeling lab = window_components(w3, Adjacency::Eight);
  EXPECT_EQ(lab.count, 3);
}

TEST(LiftWindow, TrivialComponentsStaySmall) {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 32;
    const TorusGridSet s = testutil::random_trivial_continuum(n, rng, 60);
    const CoverWindow w = lift_window(s, 4);
    const ComponentLabeling lab = window_components(w, s.adjacency());
    for (int32_t id = 0; id < lab.count; ++id)
      EXPECT_LE(lab.sizes[size_t(id)], int64_t(n) * int64_t(n));
  }
}

TEST(Pgm, RoundTripAndRejections) {
  Rng rng(31);
  const TorusGridSet s = testutil::random_sprinkle(16, Adjacency::Eight, rng, 0.3);
  const std::string path = "grid_test_roundtrip.pgm";
  save_pgm(s, path);
  const TorusGridSet back = load_pgm(path, Adjacency::Eight);
  EXPECT_TRUE(back == s);

  {
    std::ofstream bad("grid_test_bad.pgm", std::ios::binary);
    bad << "P5\n12 12\n255\n";
    std::vector<char> data(144, 0);
    bad.write(data.data(), std::streamsize(data.size()));
  }
  EXPECT_THROW(load_pgm("grid_test_bad.pgm", Adjacency::Eight), std::runtime_error);
  {
    std::ofstream bad("grid_test_rect.pgm", std::ios::binary);
    bad << "P5\n16 8\n255\n";
    std::vector<char> data(128, 0);
    bad.write(data.data(), std::streamsize(data.size()));
  }
  EXPECT_THROW(load_pgm("grid_test_rect.pgm", Adjacency::Eight), std::runtime_error);
  std::remove("grid_test_roundtrip.pgm");
  std::remove("grid_test_bad.pgm");
  std::remove("grid_test_rect.pgm");
}

TEST(Dilate, OneCellFattening) {
  TorusGridSet s(GridResolution(8), Adjacency::Eight);
  s.set(0, 0);
  const TorusGridSet d = dilate(s, 1);
  EXPECT_EQ(d.size(), 9u);
  EXPECT_TRUE(d.contains(7, 7));
  EXPECT_TRUE(d.contains(1, 0));
}
