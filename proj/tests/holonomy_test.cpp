#include <gtest/gtest.h>

#include "test_util.hpp"
#include "torustop/holonomy.hpp"

using namespace torustop;
using testutil::Rng;

TEST(Holonomy, SingleCellIsTrivial) {
  TorusGridSet s(GridResolution(16), Adjacency::Eight);
  s.set(5, 9);
  EXPECT_EQ(component_holonomy(s, 0).rank, 0);
}

TEST(Holonomy, HorizontalBandIsEssential10) {
  TorusGridSet s(GridResolution(16), Adjacency::Eight);
  for (int i = 0; i < 16; ++i) s.set(i, 3);
  const HolonomyGroup g = component_holonomy(s, 0);
  ASSERT_EQ(g.rank, 1);
  EXPECT_EQ(g.basis[0], (Vec2i{1, 0}));
  // brute-force confirmation on a k=4 window
  EXPECT_TRUE(g == testutil::window_holonomy_oracle(s, {0, 3}));
}

TEST(Holonomy, FullGridIsRankTwo) {
  const TorusGridSet s = TorusGridSet::full(GridResolution(16), Adjacency::Eight);
  const HolonomyGroup g = component_holonomy(s, 0);
  ASSERT_EQ(g.rank, 2);
  EXPECT_EQ(g.basis[0], (Vec2i{1, 0}));
  EXPECT_EQ(g.basis[1], (Vec2i{0, 1}));
}

TEST(ClassifyHomotopy, TagsAndNormalisation) {
  EXPECT_EQ(classify_homotopy(Hnf2{}).tag, HomotopyTag::Trivial);

  // raw periods (2,-2) reduce to the primitive direction
  const Hnf2 g = hnf_from_periods({{2, -2}});
  ASSERT_EQ(g.rank, 1);
  const HomotopyType t = classify_homotopy(g);
  EXPECT_EQ(t.tag, HomotopyTag::Essential);
  EXPECT_EQ(t.vector, (Vec2i{1, -1}));

  Hnf2 two;
  two.rank = 2;
  two.basis = {Vec2i{1, 0}, Vec2i{0, 1}};
  EXPECT_EQ(classify_homotopy(two).tag, HomotopyTag::DoublyEssential);

  // a hand-built value violating the primitivity invariant is rejected
  Hnf2 bad;
  bad.rank = 1;
  bad.basis[0] = {2, 0};
  EXPECT_THROW(classify_homotopy(bad), pipeline_error);
}

TEST(Census, BandComplement) {
  TorusGridSet band(GridResolution(16), Adjacency::Eight);
  for (int i = 0; i < 16; ++i)
    for (int j = 3; j <= 5; ++j) band.set(i, j);
  const auto census = set_homotopy_census(complement(band));
  ASSERT_EQ(census.size(), 1u);
  EXPECT_EQ(census[0].type.tag, HomotopyTag::Essential);
  EXPECT_EQ(census[0].type.vector, (Vec2i{1, 0}));
  EXPECT_FALSE(census[0].bounded);
}

TEST(Census, DiagonalLoopEnclosesDisk) {
  // diamond-shaped Eight-connected loop; its complement has a doubly
  // essential outside and one trivial inside
  TorusGridSet loop(GridResolution(16), Adjacency::Eight);
  const std::vector<std::pair<int, int>> cells{{2, 0}, {3, 1}, {4, 2}, {3, 3},
                                               {2, 4}, {1, 3}, {0, 2}, {1, 1}};
  for (const auto& [i, j] : cells) loop.set(i, j);
  ASSERT_EQ(connected_components(loop).count, 1);
  const auto census = set_homotopy_census(complement(loop));
  ASSERT_EQ(census.size(), 2u);
  int doubly = 0, trivial = 0;
  for (const auto& e : census) {
    if (e.type.tag == HomotopyTag::DoublyEssential) ++doubly;
    if (e.type.tag == HomotopyTag::Trivial) {
      ++trivial;
      EXPECT_TRUE(e.bounded);
    }
  }
  EXPECT_EQ(doubly, 1);
  EXPECT_EQ(trivial, 1);
}

TEST(Census, EmptySetIsEmptyCensus) {
  EXPECT_TRUE(set_homotopy_census(TorusGridSet(GridResolution(8), Adjacency::Eight)).empty());
}

TEST(Holonomy, InvariantUnderTranslation) {
  Rng rng(41);
  std::uniform_int_distribution<int> pick(0, 31);
  for (int trial = 0; trial < 20; ++trial) {
    const TorusGridSet s = testutil::random_blob(32, Adjacency::Eight, rng, 80);
    const Vec2i shift{pick(rng), pick(rng)};
    TorusGridSet t(s.resolution(), s.adjacency());
    s.for_each_cell([&](Vec2i c) { t.set_wrapped(c + shift); });
    const auto ls = connected_components(s);
    const auto lt = connected_components(t);
    ASSERT_EQ(ls.count, lt.count);
    for (int32_t id = 0; id < ls.count; ++id) {
      const Vec2i rep = ls.representatives[size_t(id)];
      const Vec2i moved = t.wrap(rep + shift);
      const int32_t tid = lt.labels[t.index(int(moved.x), int(moved.y))];
      EXPECT_TRUE(component_holonomy(s, ls, id) == component_holonomy(t, lt, tid));
    }
  }
}

TEST(Holonomy, EquivariantUnderUnimodularMaps) {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 64;
    const TorusGridSet s = testutil::random_blob(n, Adjacency::Eight, rng, 120);
    const Mat2i B = testutil::random_unimodular(rng);
    const TorusGridSet img = apply_index_map(s, B);
    const auto ls = connected_components(s);
    const auto li = connected_components_in_basis(img, B);
    ASSERT_EQ(ls.count, li.count);
    for (int32_t id = 0; id < ls.count; ++id) {
      const Vec2i rep = ls.representatives[size_t(id)];
      const Vec2i moved = img.wrap(B.apply(rep));
      const int32_t tid = li.labels[img.index(int(moved.x), int(moved.y))];
      const Hnf2 expected = transform(component_holonomy(s, ls, id), B);
      EXPECT_TRUE(component_holonomy(img, li, tid, B) == expected);
    }
  }
}

TEST(Holonomy, AgreesWithWindowOracleOnRandomSets) {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const Adjacency adj = trial % 2 ? Adjacency::Four : Adjacency::Eight;
    const TorusGridSet s = trial % 3 == 0
                               ? testutil::random_sprinkle(32, adj, rng, 0.45)
                               : testutil::random_blob(32, adj, rng, 200);
    const auto lab = connected_components(s);
    for (int32_t id = 0; id < lab.count; ++id) {
      const HolonomyGroup tree = component_holonomy(s, lab, id);
      const Hnf2 window = testutil::window_holonomy_oracle(s, lab.representatives[size_t(id)]);
      EXPECT_TRUE(tree == window) << "trial " << trial << " component " << id;
    }
  }
}

TEST(Holonomy, DifferentEssentialClassesIntersect) {
  // (p,q)- and (p',q')-bands with p*q' - q*p' != 0 cannot be disjoint;
  // thickness 2 so the rasterised bands cannot slip through each other
  // diagonally
  auto band = [&](Vec2i dir, int offset) {
    TorusGridSet s(GridResolution(32), Adjacency::Eight);
    for (int t = 0; t < 32; ++t)
      for (int th = 0; th < 2; ++th)
        s.set_wrapped({dir.x * t + (dir.y != 0 ? offset : 0),
                       dir.y * t + (dir.y == 0 ? offset : 0) + th});
    return s;
  };
  const std::vector<Vec2i> dirs{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (const Vec2i a : dirs)
    for (const Vec2i b : dirs) {
      if (a.x * b.y - a.y * b.x == 0) continue;
      for (int off = 0; off < 32; off += 7) {
        const TorusGridSet s1 = band(a, 0), s2 = band(b, off);
        EXPECT_FALSE(sets_disjoint(s1, s2));
      }
    }
}

TEST(IndexMap, BijectionAndComposition) {
  Rng rng(53);
  const TorusGridSet s = testutil::random_sprinkle(16, Adjacency::Eight, rng, 0.3);
  const Mat2i B = testutil::random_unimodular(rng);
  const TorusGridSet img = apply_index_map(s, B);
  EXPECT_EQ(img.size(), s.size());
  EXPECT_TRUE(apply_index_map(img, B.inverse()).same_cells(s));
}
