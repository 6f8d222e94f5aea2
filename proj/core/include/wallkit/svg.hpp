#pragma once

// SVG 1.1 drawings of strips and coronas. Coordinates are exact until they
// are written, with at most 1e-9 of the drawing's extent lost in rounding.

#include <string>

#include "wallkit/corona.hpp"

namespace wallkit {

struct SvgOptions {
  /// Number of consecutive periods drawn, starting at the fundamental units.
  int periods = 3;
  /// Pixels per shape unit for the width/height attributes.
  double scale = 40.0;
};

/// Units coloured by class; translates of the fundamental units are faded.
std::string render_strip(const ThicknessCertificate& tc, const SvgOptions& opts = {});

/// Centre highlighted, layers coloured by depth.
std::string render_corona(const CoronaWitness& w, const SvgOptions& opts = {});

}  // namespace wallkit
