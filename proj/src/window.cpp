#include "haarlab/window.hpp"

#include <stdexcept>

namespace haarlab {

namespace {

// Index range [k_lo, k_hi) of scale-j standard intervals inside [lo, hi).
std::pair<std::int64_t, std::int64_t> index_range(std::int64_t lo, std::int64_t hi, std::int64_t j) {
  if (j >= 0) {
    return {lo << j, hi << j};
  }
  const std::int64_t len = std::int64_t(1) << (-j);
  // k*len >= lo and (k+1)*len <= hi
  std::int64_t klo = floor_div(lo + len - 1, len);
  std::int64_t khi = floor_div(hi, len);
  return {klo, khi};
}

}  // namespace

std::vector<GridInterval> WindowSpec::enumerate() const {
  if (region_lo >= region_hi) throw std::invalid_argument("WindowSpec: empty region");
  if (jmin > jmax) throw std::invalid_argument("WindowSpec: empty scale range");
  if (jmax > 40 || jmax - jmin > 40) throw std::invalid_argument("WindowSpec: scale range too large");
  std::vector<GridInterval> out;
  for (std::int64_t j = jmin; j <= jmax; ++j) {
    auto [klo, khi] = index_range(region_lo, region_hi, j);
    for (std::int64_t k = klo; k < khi; ++k) out.push_back(GridInterval{GridKind::Standard, j, k});
  }
  return out;
}

std::size_t WindowSpec::count() const {
  std::size_t n = 0;
  for (std::int64_t j = jmin; j <= jmax; ++j) {
    auto [klo, khi] = index_range(region_lo, region_hi, j);
    if (khi > klo) n += static_cast<std::size_t>(khi - klo);
  }
  return n;
}

bool WindowSpec::holds(const GridInterval& I) const {
  if (I.grid != GridKind::Standard || I.scale < jmin || I.scale > jmax) return false;
  auto [klo, khi] = index_range(region_lo, region_hi, I.scale);
  return klo <= I.index && I.index < khi;
}

std::string WindowSpec::str() const {
  return "[" + std::to_string(region_lo) + "," + std::to_string(region_hi) + ") scales " +
         std::to_string(jmin) + ".." + std::to_string(jmax);
}

}  // namespace haarlab
