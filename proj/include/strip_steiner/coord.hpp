#pragma once

#include <cstdint>
#include <limits>

namespace strip_steiner {

// All geometry is exact. A Unit value counts fixed-point units of 1/scale,
// where scale is chosen at ingestion (default 10^6). Every quantity the
// solvers touch (coordinates, edge weights, lengths) is a Unit or a sum of
// Units, so comparisons are exact integer comparisons.
using Unit = std::int64_t;

inline constexpr Unit kUnitInfinity = std::numeric_limits<Unit>::max() / 4;

inline constexpr std::int64_t kDefaultScale = 1'000'000;

// Largest admissible |coordinate| in units for a given scale. Keeps length
// sums far away from int64 overflow.
constexpr Unit coord_limit(std::int64_t scale) {
  return (std::int64_t{1} << 62) / scale;
}

}  // namespace strip_steiner
