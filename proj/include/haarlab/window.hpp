// Finite truncation of the dyadic grid: all standard intervals inside an
// integer region [lo, hi) with scales in [jmin, jmax].
#pragma once

#include "haarlab/grid.hpp"

#include <cstdint>
#include <vector>

namespace haarlab {

struct WindowSpec {
  std::int64_t region_lo = 0;
  std::int64_t region_hi = 16;
  std::int64_t jmin = 0;
  std::int64_t jmax = 8;

  // Standard intervals I with I inside [region_lo, region_hi) and
  // jmin <= scale <= jmax, ordered by (scale, index).
  std::vector<GridInterval> enumerate() const;
  std::size_t count() const;
  bool holds(const GridInterval& I) const;
  RatSet region() const { return RatSet(Rat(static_cast<long>(region_lo)), Rat(static_cast<long>(region_hi))); }
  std::string str() const;
};

}  // namespace haarlab
