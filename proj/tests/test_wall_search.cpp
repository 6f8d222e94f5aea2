#include <gtest/gtest.h>

#include "support.hpp"

using namespace wktest;

TEST(WallSearch, SquareReachesEveryThickness) {
  RealizedShape sq = unit_square();
  ContactTable table(sq, {});
  for (int t = 1; t <= 4; ++t) {
    auto r = find_wall(table, t, {4, 6.0});
    ASSERT_TRUE(r.certificate) << t;
    EXPECT_GE(r.certificate->thickness(), t);
    EXPECT_TRUE(verify_thickness(*r.certificate));
  }
}

TEST(WallSearch, UnitBudgetBelowThicknessFails) {
  RealizedShape sq = unit_square();
  ContactTable table(sq, {});
  auto r = find_wall(table, 3, {2, 6.0});
  EXPECT_FALSE(r.certificate);
  EXPECT_TRUE(r.stats.complete);
}

TEST(WallSearch, EveryCorpusShapeFormsThicknessOne) {
  for (const auto& name : corpus_names()) {
    RealizedShape s = realize(corpus(name));
    ContactTable table(s, {});
    auto r = find_wall(table, 1, {8, 6.0});
    ASSERT_TRUE(r.certificate) << name;
    EXPECT_TRUE(verify_thickness(*r.certificate)) << name;
  }
}

TEST(WallSearch, SquareSemicircleThicknessTwo) {
  RealizedShape s = realize(corpus("square_semicircle"));
  ContactTable table(s, {});
  auto r = find_wall(table, 2, {6, 6.0});
  ASSERT_TRUE(r.certificate);
  EXPECT_TRUE(verify_thickness(*r.certificate));
}

TEST(WallSearch, ResultDoesNotDependOnJobs) {
  RealizedShape s = realize(corpus("square_semicircle"));
  ContactTable t1(s, {}), t4(s, {});
  for (int t : {2, 3}) {
    auto a = find_wall(t1, t, {5, 6.0}, 1);
    auto b = find_wall(t4, t, {5, 6.0}, 4);
    ASSERT_EQ(a.certificate.has_value(), b.certificate.has_value());
    if (a.certificate) {
      EXPECT_EQ(a.certificate->classes, b.certificate->classes);
      EXPECT_EQ(a.certificate->config.period, b.certificate->config.period);
      for (std::size_t i = 0; i < a.certificate->config.units.size(); ++i)
        EXPECT_EQ(a.certificate->config.units[i].pose, b.certificate->config.units[i].pose);
    } else {
      EXPECT_EQ(a.stats.nodes, b.stats.nodes);
    }
  }
}

TEST(WallSearch, TranslationsOnlyRestrictsPoses) {
  CorpusParams p;
  p.variant = "sawtooth";
  RealizedShape s = realize(corpus("heesch_pentagon", p));
  ContactTable table(s, {false, 1});
  auto r = find_wall(table, 1, {4, 6.0});
  ASSERT_TRUE(r.certificate);
  for (const auto& u : r.certificate->config.units) EXPECT_TRUE(u.pose.is_translation());
}
