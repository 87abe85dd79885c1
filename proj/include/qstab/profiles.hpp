#pragma once

// Built-in potential/control families and node-sample file loading.
// Potentials: zero, constant, gaussian, cosine, file.
// Controls:   x, x2, cosine, file.

#include <map>
#include <string>

#include "qstab/spectral.hpp"

namespace qstab {

struct Profile {
  Vec values;                // samples at the interior nodes
  bool has_boundary = false; // true when Q(a), Q(b) are known analytically
  double left = 0.0;         // value at x = a (when has_boundary)
  double right = 0.0;        // value at x = b
};

// params carries the family parameters (amplitude, center, width, value,
// cycles, path) as strings; entries a kind does not use are ignored, so a
// kind override does not invalidate leftover parameters.
//   zero:      0
//   constant:  value
//   gaussian:  amplitude * exp(-width * (x - center)^2)
//   cosine:    amplitude * cos(cycles * pi * (x - a)/(b - a))
//   x:         x
//   x2:        x^2
//   file:      one real per line, m_points lines (no boundary values)
Profile sample_profile(const std::string& kind,
                       const std::map<std::string, std::string>& params,
                       const Grid& grid);

}  // namespace qstab
