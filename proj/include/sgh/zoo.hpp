#pragma once

#include <string>
#include <vector>

#include "sgh/mappings.hpp"

namespace sgh {

struct ZooEntry {
  std::string name;
  Mapping mapping;
  /// Known analytically to be firmly nonexpansive.
  bool firmly_nonexpansive = false;
  /// Bound on coordinates used when sampling whole-space domains.
  double sample_radius = 10.0;
};

/// Built-in mappings with known fixed points, used by the theorem suites.
///
/// Covers identity, constants, contractions, isometries, an affine map, a
/// rotation, Euclidean projections onto a box and a ball, and a nonspreading
/// table map that is not nonexpansive, over l^p spaces with p in {1.5, 2, 3, 4}.
std::vector<ZooEntry> standard_zoo();

/// T(x) = 2x on the real line; a member of none of the named classes.
ZooEntry doubling_control();

/// T(x) = x + 1 on the real line; no fixed point, unbounded orbits.
ZooEntry translation_control();

}  // namespace sgh
