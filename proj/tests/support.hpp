#pragma once

// Shared fixtures and test-side oracles.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <array>
#include <random>

#include "wallkit/arrangement.hpp"
#include "wallkit/corona.hpp"
#include "wallkit/shape.hpp"

namespace wktest {

using namespace wallkit;
using Dec = boost::multiprecision::cpp_dec_float_50;

/// Decimal value of (a + b*sqrt 3)/d, computed independently of Scalar.
Dec to_dec(const Scalar& s);

Scalar random_scalar(std::mt19937_64& rng, int max_component);

Polygon square_polygon(const Scalar& x0, const Scalar& y0, const Scalar& side);
RealizedShape unit_square();
RealizedShape unit_hexagon();

Isometry at(long long x, long long y);

/// `rows` rows of unit squares, `per_row` per period, row r shifted by
/// shifts[r] (zero when absent); one class per row.
ThicknessCertificate square_rows(const RealizedShape& sq, int rows, int per_row = 1,
                                 const std::vector<Scalar>& shifts = {});

/// Random wall made of bands of square rows or hexagon zigzag rows, moved by
/// a random isometry. Thickness is odd when `odd` is set.
ThicknessCertificate random_tiling_wall(std::mt19937_64& rng, const RealizedShape& sq, const RealizedShape& hex,
                                        bool odd);

/// Applies g to every unit and to the period.
ThicknessCertificate moved(const ThicknessCertificate& tc, const Isometry& g);

}  // namespace wktest

namespace wktest {

struct RandomArrangement {
  std::vector<Region> regions;
  /// Integer rectangles [x0, x1) x [y0, y1) when every region is one, so
  /// the union area can be counted cell by cell.
  std::vector<std::array<int, 4>> rects;
};

RandomArrangement random_arrangement(std::mt19937_64& rng);

/// Cells covered by at least one rectangle.
long long grid_union_area(const std::vector<std::array<int, 4>>& rects);

/// Checks Euler's formula per component and area accounting; returns an
/// empty string on success.
std::string arrangement_invariants(const RandomArrangement& a);

}  // namespace wktest
