#pragma once

// JSON files for shapes, wall certificates, corona witnesses and exhaustion
// records. Every coordinate is an exact triple [a, b, d] meaning
// (a + b*sqrt(3)) / d with integer strings or numbers.

#include <memory>
#include <string>

#include "wallkit/corona.hpp"
#include "wallkit/shape.hpp"

namespace wallkit {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string version_string();

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(const std::string& bytes);

DecoratedShape parse_shape(const std::string& text);
/// Canonical form: fixed key order, reduced scalars, decorations by edge.
std::string shape_to_json(const DecoratedShape& d);

/// Certificate and witness files carry their shape, so they are self-contained.
/// The realized shape is owned here and referenced by every unit.
struct LoadedShape {
  DecoratedShape source;
  std::shared_ptr<const RealizedShape> shape;
};
LoadedShape load_shape(const DecoratedShape& d);

struct CertificateFile {
  LoadedShape shape;
  ThicknessCertificate certificate;
  std::optional<WallBounds> bounds;
};

std::string certificate_to_json(const DecoratedShape& shape, const ThicknessCertificate& tc,
                                const std::optional<WallBounds>& bounds);
CertificateFile parse_certificate(const std::string& text);

struct WitnessFile {
  LoadedShape shape;
  CoronaWitness witness;
};

std::string witness_to_json(const DecoratedShape& shape, const CoronaWitness& w);
WitnessFile parse_witness(const std::string& text);

std::string wall_exhaustion_to_json(const DecoratedShape& shape, const WallSearchResult& r,
                                    const SymmetryOptions& sym);
std::string corona_exhaustion_to_json(const DecoratedShape& shape, const SurroundResult& r,
                                      const SymmetryOptions& sym);

/// Reads a whole file; throws FormatError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace wallkit
