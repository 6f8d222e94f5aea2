#pragma once

// Exact arithmetic in the quadratic field Q(sqrt 3), planar points and the
// finite isometry group (rotations by multiples of 30 degrees, optional
// reflection) used to place copies of a shape.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wallkit {

using BigInt = boost::multiprecision::cpp_int;

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A number (a + b*sqrt(3)) / d held in canonical form: d > 0 and
/// gcd(|a|, |b|, d) = 1. Values whose components fit comfortably in 64 bits
/// use an inline representation; larger ones spill to arbitrary precision.
/// The two representations never overlap, so equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n);  // NOLINT(google-explicit-constructor)
  Scalar(const BigInt& a, const BigInt& b, const BigInt& d);

  static Scalar rational(const BigInt& num, const BigInt& den);
  static Scalar sqrt3() { return Scalar(0, 1, 1); }

  BigInt a() const;
  BigInt b() const;
  BigInt d() const;

  int sign() const;
  bool is_zero() const { return small_ && sa_ == 0 && sb_ == 0; }
  bool is_rational() const;
  double to_double() const;
  std::string to_string() const;
  std::size_t hash() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  friend bool operator==(const Scalar& x, const Scalar& y);
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

  /// Largest integer n with n <= value.
  BigInt floor() const;

 private:
  struct Big {
    BigInt a, b, d;
  };

  static Scalar from_wide(__int128 a, __int128 b, __int128 d);
  static Scalar from_big(BigInt a, BigInt b, BigInt d);
  const Big& big() const { return *big_; }

  bool small_ = true;
  std::int64_t sa_ = 0, sb_ = 0, sd_ = 1;
  std::shared_ptr<const Big> big_;

  friend int compare(const Scalar& x, const Scalar& y);
};

/// Sign of x - y without building the canonical difference.
int compare(const Scalar& x, const Scalar& y);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

struct Vec2 {
  Scalar x, y;

  friend Vec2 operator+(const Vec2& p, const Vec2& q) { return {p.x + q.x, p.y + q.y}; }
  friend Vec2 operator-(const Vec2& p, const Vec2& q) { return {p.x - q.x, p.y - q.y}; }
  friend Vec2 operator*(const Scalar& s, const Vec2& p) { return {s * p.x, s * p.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  std::size_t hash() const { return x.hash() * 1000003u ^ y.hash(); }
};
using Point = Vec2;

inline Scalar dot(const Vec2& p, const Vec2& q) { return p.x * q.x + p.y * q.y; }
inline Scalar cross(const Vec2& p, const Vec2& q) { return p.x * q.y - p.y * q.x; }
/// Exact sign of cross(p, q).
int cross_sign(const Vec2& p, const Vec2& q);
/// Exact sign of dot(p, q).
int dot_sign(const Vec2& p, const Vec2& q);
/// Sign of the turn a -> b -> c (+1 counter-clockwise).
inline int orient(const Point& a, const Point& b, const Point& c) { return cross_sign(b - a, c - a); }
/// Lexicographic order on (x, y).
bool lex_less(const Point& p, const Point& q);
/// Same direction (positive multiple) test for non-zero vectors.
bool same_direction(const Vec2& p, const Vec2& q);

std::ostream& operator<<(std::ostream& os, const Vec2& p);

struct Vec2Hash {
  std::size_t operator()(const Vec2& p) const { return p.hash(); }
};

/// cos and sin of k * 30 degrees.
const Scalar& cos30k(int k);
const Scalar& sin30k(int k);

/// Rotation by rot * 30 degrees, preceded by reflection across the x-axis when
/// reflect is set, followed by translation by shift.
struct Isometry {
  int rot = 0;
  bool reflect = false;
  Vec2 shift;

  static Isometry identity() { return {}; }
  static Isometry translation(const Vec2& v) { return {0, false, v}; }

  Vec2 linear(const Vec2& v) const;
  Point apply(const Point& p) const { return linear(p) + shift; }
  bool is_translation() const { return rot == 0 && !reflect; }
  friend bool operator==(const Isometry&, const Isometry&) = default;
  std::size_t hash() const;
};

/// (g o h)(p) = g(h(p)).
Isometry compose(const Isometry& g, const Isometry& h);
Isometry invert(const Isometry& g);
/// Deterministic total order: rotation index, reflect flag, shift lexicographic.
bool canonical_less(const Isometry& g, const Isometry& h);

std::ostream& operator<<(std::ostream& os, const Isometry& g);

struct IsometryHash {
  std::size_t operator()(const Isometry& g) const { return g.hash(); }
};

}  // namespace wallkit
