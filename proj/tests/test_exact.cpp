#include <gtest/gtest.h>

#include "support.hpp"

using namespace wktest;

namespace {

bool close(const Dec& x, const Dec& y) {
  Dec scale = boost::multiprecision::max(Dec(1), boost::multiprecision::abs(y));
  return boost::multiprecision::abs(x - y) <= Dec("1e-40") * scale;
}

int dec_sign(const Dec& x) { return x > Dec("1e-45") ? 1 : (x < Dec("-1e-45") ? -1 : 0); }

}  // namespace

TEST(Scalar, CanonicalForm) {
  Scalar s(BigInt(4), BigInt(6), BigInt(-8));
  EXPECT_EQ(s.a(), -2);
  EXPECT_EQ(s.b(), -3);
  EXPECT_EQ(s.d(), 4);
  EXPECT_EQ(Scalar::rational(3, 6), Scalar(BigInt(1), BigInt(0), BigInt(2)));
  EXPECT_TRUE(Scalar(0).is_zero());
  EXPECT_THROW(Scalar(BigInt(1), BigInt(0), BigInt(0)), ArithmeticError);
}

TEST(Scalar, Sqrt3Squared) {
  EXPECT_EQ(Scalar::sqrt3() * Scalar::sqrt3(), Scalar(3));
  EXPECT_EQ(Scalar(1) / Scalar::sqrt3(), Scalar(BigInt(0), BigInt(1), BigInt(3)));
  EXPECT_THROW(Scalar(1) / Scalar(0), ArithmeticError);
}

TEST(Scalar, SignNearCancellation) {
  // 989/571 is a convergent of sqrt3 from below, 1351/780 from above.
  EXPECT_EQ((Scalar::sqrt3() - Scalar::rational(989, 571)).sign(), 1);
  EXPECT_EQ((Scalar::sqrt3() - Scalar::rational(1351, 780)).sign(), -1);
  EXPECT_EQ(compare(Scalar::sqrt3(), Scalar::rational(1351, 780)), -1);
}

TEST(Scalar, FloorAndOrdering) {
  EXPECT_EQ(Scalar::sqrt3().floor(), 1);
  EXPECT_EQ((-Scalar::sqrt3()).floor(), -2);
  EXPECT_EQ(Scalar(3).floor(), 3);
  EXPECT_LT(Scalar::rational(1, 3), Scalar::rational(1, 2));
}

TEST(Scalar, SpillsToBigAndBack) {
  Scalar big = Scalar(1LL << 40);
  Scalar x = big * big * big;  // 2^120
  EXPECT_EQ(x.a(), BigInt(1) << 120);
  Scalar y = x / (big * big);
  EXPECT_EQ(y, big);
  EXPECT_EQ(y.hash(), big.hash());
}

TEST(Scalar, OracleAgreementRandom) {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 2000; ++i) {
    int mag = i % 3 == 0 ? 1000000 : 50;
    Scalar x = random_scalar(rng, mag), y = random_scalar(rng, mag);
    Dec dx = to_dec(x), dy = to_dec(y);
    ASSERT_TRUE(close(to_dec(x + y), dx + dy)) << x << " + " << y;
    ASSERT_TRUE(close(to_dec(x - y), dx - dy)) << x << " - " << y;
    ASSERT_TRUE(close(to_dec(x * y), dx * dy)) << x << " * " << y;
    if (!y.is_zero()) ASSERT_TRUE(close(to_dec(x / y), dx / dy)) << x << " / " << y;
    ASSERT_EQ(compare(x, y), dec_sign(dx - dy)) << x << " vs " << y;
    ASSERT_EQ(x.sign(), dec_sign(dx));
  }
}

TEST(Scalar, FieldLaws) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Scalar x = random_scalar(rng, 40), y = random_scalar(rng, 40), z = random_scalar(rng, 40);
    ASSERT_EQ((x + y) * z, x * z + y * z);
    ASSERT_EQ(x - x, Scalar(0));
    if (!x.is_zero()) ASSERT_EQ(x / x, Scalar(1));
    ASSERT_EQ((x + y) + z, x + (y + z));
  }
}

TEST(Isometry, ComposeInvert) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Isometry g{static_cast<int>(rng() % 12), rng() % 2 == 1, {random_scalar(rng, 9), random_scalar(rng, 9)}};
    Isometry h{static_cast<int>(rng() % 12), rng() % 2 == 1, {random_scalar(rng, 9), random_scalar(rng, 9)}};
    Point p{random_scalar(rng, 9), random_scalar(rng, 9)};
    ASSERT_EQ(compose(g, h).apply(p), g.apply(h.apply(p)));
    ASSERT_EQ(invert(g).apply(g.apply(p)), p);
    ASSERT_EQ(compose(g, invert(g)), Isometry::identity());
  }
}

TEST(Isometry, RotationIsExact) {
  Point p{Scalar(1), Scalar(0)};
  Isometry r{1, false, {}};
  Point q = p;
  for (int k = 0; k < 12; ++k) q = r.apply(q);
  EXPECT_EQ(q, p);
  EXPECT_EQ(r.apply(p), (Point{Scalar(0, 1, 2), Scalar::rational(1, 2)}));
  // Reflection first: (x, y) -> (x, -y), then rotate.
  Isometry s{3, true, {}};
  EXPECT_EQ(s.apply(Point{Scalar(0), Scalar(1)}), (Point{Scalar(1), Scalar(0)}));
}
