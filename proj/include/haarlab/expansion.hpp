// Finite Haar expansions u = sum c_I h_I with exact rational coefficients.
// Keys may mix standard and shifted intervals. Zero coefficients are never
// stored.
#pragma once

#include "haarlab/grid.hpp"
#include "haarlab/stepfn.hpp"

#include <map>

namespace haarlab {

class HaarExpansion {
 public:
  using Table = std::map<GridInterval, Rat>;

  HaarExpansion() = default;

  static HaarExpansion unit(const GridInterval& I) {
    HaarExpansion u;
    u.set(I, Rat(1));
    return u;
  }

  void set(const GridInterval& I, Rat c);
  void add_to(const GridInterval& I, const Rat& c);
  const Rat* find(const GridInterval& I) const;

  const Table& table() const { return c_; }
  std::size_t size() const { return c_.size(); }
  bool empty() const { return c_.empty(); }

  HaarExpansion scale_by(const Rat& c) const;
  HaarExpansion add(const HaarExpansion& other) const;

  StepFunction synthesize() const;
  Rat l2_norm_sq() const;  // exact, via the synthesized step function

  bool operator==(const HaarExpansion&) const = default;

 private:
  Table c_;
};

// Coefficient-convention helper: a table of u_I values under the
// u = sum u_I h_I |I|^{-1} convention converts to plain coefficients
// c_I = u_I / |I|.
HaarExpansion from_weighted_coefficients(const std::map<GridInterval, Rat>& weighted);

// Scale-j slice as a step function: sum of c_I h_I over scale-j keys, and the
// companion with haar replaced by the plain indicator.
StepFunction level_slice(const HaarExpansion& u, std::int64_t j);
StepFunction indicator_slice(const HaarExpansion& u, std::int64_t j);

}  // namespace haarlab
