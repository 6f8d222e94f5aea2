#include "wallkit/exact.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

namespace wallkit {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// Components below this bound keep every intermediate of add/mul inside 128 bits.
constexpr std::int64_t kSmallLimit = std::int64_t{1} << 62;

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 x, u128 y) {
  while (y != 0) {
    u128 t = x % y;
    x = y;
    y = t;
  }
  return x;
}

u128 gcd_small_first(u128 x, u128 y) {
  if (y == 0) return x;
  if ((x >> 64) == 0 && (y >> 64) == 0) return std::gcd(std::uint64_t(x), std::uint64_t(y));
  return gcd128(x, y);
}

bool fits_small(i128 v) { return v > -i128(kSmallLimit) && v < i128(kSmallLimit); }

BigInt to_big(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  BigInt r = BigInt(std::uint64_t(u >> 64));
  r <<= 64;
  r += BigInt(std::uint64_t(u));
  return neg ? BigInt(-r) : r;
}

bool big_fits_small(const BigInt& v) {
  static const BigInt lim = BigInt(kSmallLimit);
  return v < lim && v > -lim;
}

int big_sign_of(const BigInt& a, const BigInt& b) {
  // sign(a + b sqrt 3)
  int sa = a.sign();
  int sb = b.sign();
  if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  BigInt a2 = a * a;
  BigInt b2 = 3 * b * b;
  int c = a2.compare(b2);
  return sa > 0 ? (c > 0 ? 1 : -1) : (c > 0 ? -1 : 1);
}

int wide_sign_of(i128 a, i128 b) {
  if (a >= 0 && b >= 0) return (a > 0 || b > 0) ? 1 : 0;
  if (a <= 0 && b <= 0) return -1;
  long double la = static_cast<long double>(a);
  long double lb = static_cast<long double>(b);
  long double val = la + lb * 1.7320508075688772935274463415058723669L;
  long double mag = std::fabs(la) + std::fabs(lb) * 1.75L;
  if (std::fabs(val) > mag * 1e-15L) return val > 0 ? 1 : -1;
  return big_sign_of(to_big(a), to_big(b));
}

}  // namespace

Scalar::Scalar(long long n) {
  if (n > -kSmallLimit && n < kSmallLimit) {
    sa_ = n;
  } else {
    *this = from_big(BigInt(n), 0, 1);
  }
}

Scalar::Scalar(const BigInt& a, const BigInt& b, const BigInt& d) {
  if (d.is_zero()) throw ArithmeticError("zero denominator");
  *this = from_big(a, b, d);
}

Scalar Scalar::rational(const BigInt& num, const BigInt& den) { return Scalar(num, 0, den); }

Scalar Scalar::from_wide(i128 a, i128 b, i128 d) {
  if (d < 0) {
    a = -a;
    b = -b;
    d = -d;
  }
  // The denominator is usually tiny, so start from it and stop at 1.
  u128 g = u128(d);
  if (g != 1) g = gcd_small_first(g, uabs(a));
  if (g > 1) g = gcd_small_first(g, uabs(b));
  if (g > 1) {
    a /= i128(g);
    b /= i128(g);
    d /= i128(g);
  }
  if (a == 0 && b == 0) d = 1;
  if (fits_small(a) && fits_small(b) && fits_small(d)) {
    Scalar s;
    s.sa_ = std::int64_t(a);
    s.sb_ = std::int64_t(b);
    s.sd_ = std::int64_t(d);
    return s;
  }
  Scalar s;
  s.small_ = false;
  s.big_ = std::make_shared<const Big>(Big{to_big(a), to_big(b), to_big(d)});
  return s;
}

Scalar Scalar::from_big(BigInt a, BigInt b, BigInt d) {
  if (d.sign() < 0) {
    a = -a;
    b = -b;
    d = -d;
  }
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(a), abs(b)), d);
  if (g > 1) {
    a /= g;
    b /= g;
    d /= g;
  }
  if (a.is_zero() && b.is_zero()) d = 1;
  Scalar s;
  if (big_fits_small(a) && big_fits_small(b) && big_fits_small(d)) {
    s.sa_ = a.convert_to<std::int64_t>();
    s.sb_ = b.convert_to<std::int64_t>();
    s.sd_ = d.convert_to<std::int64_t>();
    return s;
  }
  s.small_ = false;
  s.big_ = std::make_shared<const Big>(Big{std::move(a), std::move(b), std::move(d)});
  return s;
}

BigInt Scalar::a() const { return small_ ? BigInt(sa_) : big().a; }
BigInt Scalar::b() const { return small_ ? BigInt(sb_) : big().b; }
BigInt Scalar::d() const { return small_ ? BigInt(sd_) : big().d; }

int Scalar::sign() const {
  if (small_) return wide_sign_of(sa_, sb_);
  return big_sign_of(big().a, big().b);
}

bool Scalar::is_rational() const { return small_ ? sb_ == 0 : big().b.is_zero(); }

double Scalar::to_double() const {
  constexpr double r3 = 1.7320508075688772935;
  if (small_) return (double(sa_) + double(sb_) * r3) / double(sd_);
  const Big& g = big();
  long double a = g.a.convert_to<long double>();
  long double b = g.b.convert_to<long double>();
  long double d = g.d.convert_to<long double>();
  return static_cast<double>((a + b * 1.7320508075688772935274463415058723669L) / d);
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  BigInt A = a(), B = b(), D = d();
  if (B.is_zero()) {
    os << A;
  } else if (A.is_zero()) {
    os << B << "*sqrt3";
  } else {
    os << "(" << A << (B.sign() < 0 ? "-" : "+") << abs(B) << "*sqrt3)";
  }
  if (D != 1) os << "/" << D;
  return os.str();
}

std::size_t Scalar::hash() const {
  if (small_) {
    std::size_t h = std::hash<std::int64_t>{}(sa_);
    h = h * 0x9E3779B97F4A7C15ull ^ std::hash<std::int64_t>{}(sb_);
    h = h * 0x9E3779B97F4A7C15ull ^ std::hash<std::int64_t>{}(sd_);
    return h;
  }
  std::size_t h = 0x51ED27ull;
  for (const BigInt* v : {&big().a, &big().b, &big().d}) {
    BigInt m = abs(*v) & BigInt(0xFFFFFFFFFFFFFFFFull);
    h = h * 0x9E3779B97F4A7C15ull ^ m.convert_to<std::uint64_t>() ^ std::size_t(v->sign() + 1);
  }
  return h;
}

Scalar Scalar::operator-() const {
  if (small_) {
    Scalar s = *this;
    s.sa_ = -sa_;
    s.sb_ = -sb_;
    return s;
  }
  return from_big(-big().a, -big().b, big().d);
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  if (x.small_ && y.small_) {
    if (x.sd_ == y.sd_) return Scalar::from_wide(i128(x.sa_) + y.sa_, i128(x.sb_) + y.sb_, x.sd_);
    return Scalar::from_wide(i128(x.sa_) * y.sd_ + i128(y.sa_) * x.sd_,
                             i128(x.sb_) * y.sd_ + i128(y.sb_) * x.sd_, i128(x.sd_) * y.sd_);
  }
  BigInt xa = x.a(), xb = x.b(), xd = x.d(), ya = y.a(), yb = y.b(), yd = y.d();
  return Scalar::from_big(xa * yd + ya * xd, xb * yd + yb * xd, xd * yd);
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  if (x.small_ && y.small_) {
    return Scalar::from_wide(i128(x.sa_) * y.sa_ + 3 * (i128(x.sb_) * y.sb_),
                             i128(x.sa_) * y.sb_ + i128(x.sb_) * y.sa_, i128(x.sd_) * y.sd_);
  }
  BigInt xa = x.a(), xb = x.b(), xd = x.d(), ya = y.a(), yb = y.b(), yd = y.d();
  return Scalar::from_big(xa * ya + 3 * xb * yb, xa * yb + xb * ya, xd * yd);
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_zero()) throw ArithmeticError("division by zero");
  // 1 / ((c + e sqrt3) / f) = f (c - e sqrt3) / (c^2 - 3 e^2)
  Scalar inv;
  if (y.small_) {
    i128 c = y.sa_, e = y.sb_, f = y.sd_;
    inv = Scalar::from_wide(f * c, -f * e, c * c - 3 * e * e);
  } else {
    const auto& g = y.big();
    inv = Scalar::from_big(g.d * g.a, -g.d * g.b, g.a * g.a - 3 * g.b * g.b);
  }
  return x * inv;
}

bool operator==(const Scalar& x, const Scalar& y) {
  if (x.small_ != y.small_) return false;
  if (x.small_) return x.sa_ == y.sa_ && x.sb_ == y.sb_ && x.sd_ == y.sd_;
  return x.big().a == y.big().a && x.big().b == y.big().b && x.big().d == y.big().d;
}

int compare(const Scalar& x, const Scalar& y) {
  if (x.small_ && y.small_) {
    if (x.sd_ == y.sd_) return wide_sign_of(i128(x.sa_) - y.sa_, i128(x.sb_) - y.sb_);
    return wide_sign_of(i128(x.sa_) * y.sd_ - i128(y.sa_) * x.sd_,
                        i128(x.sb_) * y.sd_ - i128(y.sb_) * x.sd_);
  }
  BigInt xa = x.a(), xb = x.b(), xd = x.d(), ya = y.a(), yb = y.b(), yd = y.d();
  return big_sign_of(xa * yd - ya * xd, xb * yd - yb * xd);
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
  int c = compare(x, y);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

BigInt Scalar::floor() const {
  long double approx = std::floor(static_cast<long double>(to_double()));
  BigInt n = BigInt(static_cast<long long>(approx));
  while (compare(Scalar(n, 0, 1), *this) > 0) --n;
  while (compare(Scalar(n + 1, 0, 1), *this) <= 0) ++n;
  return n;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

int cross_sign(const Vec2& p, const Vec2& q) { return compare(p.x * q.y, p.y * q.x); }
int dot_sign(const Vec2& p, const Vec2& q) { return compare(p.x * q.x, -(p.y * q.y)); }

bool lex_less(const Point& p, const Point& q) {
  int c = compare(p.x, q.x);
  if (c != 0) return c < 0;
  return compare(p.y, q.y) < 0;
}

bool same_direction(const Vec2& p, const Vec2& q) { return cross_sign(p, q) == 0 && dot_sign(p, q) > 0; }

std::ostream& operator<<(std::ostream& os, const Vec2& p) { return os << "(" << p.x << ", " << p.y << ")"; }

namespace {

struct TrigTable {
  std::array<Scalar, 12> cos, sin;
  TrigTable() {
    const Scalar half = Scalar::rational(1, 2);
    const Scalar r3h = Scalar(0, 1, 2);
    const std::array<Scalar, 4> quarter_cos = {Scalar(1), r3h, half, Scalar(0)};
    for (int k = 0; k < 12; ++k) {
      int q = k / 3, r = k % 3;
      // cos(k*30) via quadrant symmetry.
      Scalar c, s;
      switch (q) {
        case 0: c = quarter_cos[r]; s = quarter_cos[3 - r]; break;
        case 1: c = -quarter_cos[3 - r]; s = quarter_cos[r]; break;
        case 2: c = -quarter_cos[r]; s = -quarter_cos[3 - r]; break;
        default: c = quarter_cos[3 - r]; s = -quarter_cos[r]; break;
      }
      cos[k] = c;
      sin[k] = s;
    }
  }
};

const TrigTable& trig() {
  static const TrigTable t;
  return t;
}

int mod12(int k) { return ((k % 12) + 12) % 12; }

}  // namespace

const Scalar& cos30k(int k) { return trig().cos[mod12(k)]; }
const Scalar& sin30k(int k) { return trig().sin[mod12(k)]; }

Vec2 Isometry::linear(const Vec2& v) const {
  const Scalar& x = v.x;
  Scalar y = reflect ? -v.y : v.y;
  switch (mod12(rot)) {
    case 0: return {x, y};
    case 3: return {-y, x};
    case 6: return {-x, -y};
    case 9: return {y, -x};
    default: break;
  }
  const Scalar& c = cos30k(rot);
  const Scalar& s = sin30k(rot);
  return {c * x - s * y, s * x + c * y};
}

std::size_t Isometry::hash() const {
  return (shift.hash() * 31u + std::size_t(mod12(rot))) * 2u + (reflect ? 1u : 0u);
}

Isometry compose(const Isometry& g, const Isometry& h) {
  Isometry r;
  r.rot = mod12(g.rot + (g.reflect ? -h.rot : h.rot));
  r.reflect = g.reflect != h.reflect;
  r.shift = g.linear(h.shift) + g.shift;
  return r;
}

Isometry invert(const Isometry& g) {
  Isometry r;
  r.reflect = g.reflect;
  r.rot = g.reflect ? mod12(g.rot) : mod12(-g.rot);
  r.shift = -r.linear(g.shift);
  return r;
}

bool canonical_less(const Isometry& g, const Isometry& h) {
  if (mod12(g.rot) != mod12(h.rot)) return mod12(g.rot) < mod12(h.rot);
  if (g.reflect != h.reflect) return !g.reflect;
  int c = compare(g.shift.x, h.shift.x);
  if (c != 0) return c < 0;
  return compare(g.shift.y, h.shift.y) < 0;
}

std::ostream& operator<<(std::ostream& os, const Isometry& g) {
  return os << "{rot=" << g.rot << ", reflect=" << g.reflect << ", shift=" << g.shift << "}";
}

}  // namespace wallkit
