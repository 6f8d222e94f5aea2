#include <gtest/gtest.h>

#include "support.hpp"

using namespace wktest;

namespace {

StripConfig strip(const RealizedShape& s, std::vector<Isometry> poses, Vec2 period) {
  StripConfig c;
  c.period = period;
  for (auto& g : poses) c.units.push_back({&s, g});
  return c;
}

const Vec2 kRight{Scalar(1), Scalar(0)};

}  // namespace

TEST(Wall, SingleRowIsWall) {
  RealizedShape sq = unit_square();
  auto w = verify_wall(strip(sq, {at(0, 0)}, kRight));
  EXPECT_TRUE(w.report.connected);
  EXPECT_EQ(w.report.complement_count, 2);
  EXPECT_EQ(w.report.cavities, 0);
  EXPECT_TRUE(w.report.separated);
  EXPECT_TRUE(w.report.valid());
}

TEST(Wall, DiagonalChainIsNotConnected) {
  RealizedShape sq = unit_square();
  auto w = verify_wall(strip(sq, {at(0, 0)}, {Scalar(1), Scalar(1)}));
  EXPECT_FALSE(w.report.connected);
  EXPECT_FALSE(w.report.valid());
}

TEST(Wall, GapBreaksWall) {
  RealizedShape sq = unit_square();
  auto w = verify_wall(strip(sq, {at(0, 0)}, {Scalar(2), Scalar(0)}));
  EXPECT_FALSE(w.report.valid());
}

TEST(Wall, StaircaseIsWall) {
  // Two squares per step, each step one up and one right.
  RealizedShape sq = unit_square();
  auto w = verify_wall(strip(sq, {at(0, 0), at(1, 0)}, {Scalar(1), Scalar(1)}));
  EXPECT_TRUE(w.report.valid());
}

TEST(Wall, RingLeavesCavity) {
  // Two rows with a hole every period of three.
  RealizedShape sq = unit_square();
  auto w = verify_wall(strip(sq, {at(0, 0), at(1, 0), at(2, 0), at(0, 1), at(2, 1), at(0, 2), at(1, 2), at(2, 2)},
                             {Scalar(3), Scalar(0)}));
  EXPECT_EQ(w.report.cavities, 1);
  EXPECT_FALSE(w.report.valid());
}

TEST(Wall, OverlapAcrossPeriodThrows) {
  RealizedShape sq = unit_square();
  EXPECT_THROW(verify_wall(strip(sq, {at(0, 0)}, {Scalar::rational(1, 2), Scalar(0)})), WallError);
  EXPECT_THROW(verify_wall(strip(sq, {at(0, 0)}, {Scalar(0), Scalar(0)})), WallError);
}

TEST(Thickness, RowsGiveThickness) {
  RealizedShape sq = unit_square();
  for (int t = 1; t <= 4; ++t) {
    auto tc = square_rows(sq, t);
    EXPECT_TRUE(verify_thickness(tc)) << t;
    std::vector<int> best;
    EXPECT_EQ(max_decomposition(verify_wall(tc.config), 6, &best), t);
    EXPECT_EQ(best.size(), static_cast<std::size_t>(t));
  }
}

TEST(Thickness, OrderMatters) {
  RealizedShape sq = unit_square();
  auto tc = square_rows(sq, 3);
  tc.classes = {2, 1, 3};
  auto chk = check_thickness(tc);
  EXPECT_FALSE(chk.ok);
  EXPECT_NE(chk.reason.find("share boundary"), std::string::npos) << chk.reason;
}

TEST(Thickness, ClassesMustBeWalls) {
  // Checkerboard classes in a two-row strip are not walls on their own.
  RealizedShape sq = unit_square();
  ThicknessCertificate tc;
  tc.config = strip(sq, {at(0, 0), at(1, 0), at(0, 1), at(1, 1)}, {Scalar(2), Scalar(0)});
  tc.classes = {1, 2, 2, 1};
  EXPECT_FALSE(verify_thickness(tc));
  tc.classes = {1, 1, 2, 2};
  EXPECT_TRUE(verify_thickness(tc));
  tc.classes = {1, 1, 3, 3};
  EXPECT_FALSE(verify_thickness(tc));
}

TEST(Thickness, ShiftedRowsProperty) {
  // Rows shifted by arbitrary rationals stay thickness certificates.
  RealizedShape sq = unit_square();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    int rows = 1 + rng() % 4;
    std::vector<Scalar> shifts;
    for (int r = 0; r < rows; ++r) shifts.push_back(Scalar::rational(rng() % 7, 7));
    auto tc = square_rows(sq, rows, 1 + rng() % 2, shifts);
    ASSERT_TRUE(verify_thickness(tc));
    Isometry g{static_cast<int>(rng() % 12), rng() % 2 == 1, {random_scalar(rng, 4), random_scalar(rng, 4)}};
    ASSERT_TRUE(verify_thickness(moved(tc, g)));
  }
}

TEST(Thickness, RestrictClasses) {
  RealizedShape sq = unit_square();
  auto tc = restrict_classes(square_rows(sq, 5), 2, 4);
  EXPECT_EQ(tc.thickness(), 3);
  EXPECT_EQ(tc.config.units.size(), 3u);
  EXPECT_TRUE(verify_thickness(tc));
}
