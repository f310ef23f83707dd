#include <gtest/gtest.h>

#include "mec/generators.hpp"
#include "mec/labeling.hpp"
#include "mec/rng.hpp"

using namespace mec;

TEST(Labeling, Examples) {
  auto p3 = sparse_labeling(path_graph(3), 1);
  EXPECT_TRUE(verify_labeling(path_graph(3), p3));
  EXPECT_LE(p3.m, 3);

  auto c5 = sparse_labeling(cycle_graph(5), 2);
  EXPECT_EQ(c5.m, 5);
  EXPECT_EQ(labeling_bound(2, 2), 5);
  EXPECT_TRUE(verify_labeling(cycle_graph(5), c5));

  auto e = sparse_labeling(Graph(6), 3);
  EXPECT_EQ(e.m, 1);
  for (int l : e.labels) EXPECT_EQ(l, 1);

  EXPECT_FALSE(verify_labeling(cycle_graph(4), labeling_from({1, 1, 2, 2}, 1)));
  EXPECT_FALSE(verify_labeling(cycle_graph(4), labeling_from({1, 2, 1, 2}, 2)));
  EXPECT_TRUE(verify_labeling(cycle_graph(4), labeling_from({1, 2, 1, 2}, 1)));
  EXPECT_THROW(sparse_labeling(cycle_graph(4), 0), GraphError);
}

TEST(Labeling, BoundFormula) {
  EXPECT_EQ(labeling_bound(3, 1), 4);
  EXPECT_EQ(labeling_bound(3, 2), 10);
  EXPECT_EQ(labeling_bound(3, 3), 22);
  EXPECT_EQ(labeling_bound(0, 5), 1);
}

TEST(Labeling, PropertyValidMonotoneDeterministic) {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    int n = 20 + static_cast<int>(seed * 15);
    Graph g = random_regular(n % 2 ? n + 1 : n, 3, seed % 2 == 0, seed).graph;
    for (int k = 1; k <= 4; ++k) {
      auto lab = sparse_labeling(g, k);
      EXPECT_TRUE(verify_labeling(g, lab)) << "seed " << seed << " k " << k;
      auto again = sparse_labeling(g, k);
      EXPECT_EQ(lab.labels, again.labels);
      // the classes stay sparse at the smaller radius; the label-count bound is radius-specific
      if (k > 1) {
        EXPECT_TRUE(classes_sparse(g, lab, k - 1));
      }
    }
  }
}
