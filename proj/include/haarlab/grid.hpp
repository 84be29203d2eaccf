// Standard and one-third-shifted dyadic intervals, finite unions of half-open
// rational intervals, and the nested-family utilities built on them.
//
// Conventions: every interval is half-open [a,b); touching intervals are
// disjoint. Endpoints are derived from (grid, scale, index), never stored, so
// interval equality is integer-tuple equality.
#pragma once

#include "haarlab/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace haarlab {

enum class GridKind : std::uint8_t { Standard, Shifted };

// Interval of measure 2^{-scale}. Standard: [k 2^{-j}, (k+1) 2^{-j}).
// Shifted: the standard interval translated by s_j = (-1)^j 2^{-j} / 3,
// with (-1)^j taken via the Euclidean parity of j (valid for negative j).
struct GridInterval {
  GridKind grid = GridKind::Standard;
  std::int64_t scale = 0;  // j
  std::int64_t index = 0;  // k

  auto operator<=>(const GridInterval&) const = default;

  int shift_sign() const { return euclid_mod(scale, 2) == 0 ? 1 : -1; }
  Rat inf() const;
  Rat sup() const;
  Rat measure() const { return pow2(-scale); }
};

std::string interval_str(const GridInterval& I);

std::pair<Rat, Rat> endpoints(const GridInterval& I);

// Canonical finite union of disjoint, sorted, half-open rational intervals.
// Touching pieces are merged; degenerate pieces are dropped.
class RatSet {
 public:
  using Piece = std::pair<Rat, Rat>;

  RatSet() = default;
  RatSet(Rat lo, Rat hi);
  explicit RatSet(const GridInterval& I);
  static RatSet from_pieces(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  Rat measure() const;
  // inf/sup require a nonempty set.
  const Rat& inf() const;
  const Rat& sup() const;

  bool operator==(const RatSet&) const = default;

  friend RatSet set_union(const RatSet& a, const RatSet& b);
  friend RatSet set_intersect(const RatSet& a, const RatSet& b);
  friend RatSet set_difference(const RatSet& a, const RatSet& b);
  friend bool intersects(const RatSet& a, const RatSet& b);

  RatSet translate(const Rat& t) const;
  std::string str() const;

 private:
  std::vector<Piece> pieces_;
};

bool contains(const RatSet& outer, const RatSet& inner);
bool contains(const RatSet& outer, const GridInterval& inner);
bool contains(const GridInterval& outer, const RatSet& inner);
bool contains(const GridInterval& outer, const GridInterval& inner);

// inf { |a-b| : a in A, b in B }. Throws on an empty operand.
Rat distance(const RatSet& a, const RatSet& b);

// For A subset of I: distance from A to the complement of I,
// min(inf A - inf I, sup I - sup A).
Rat distance_to_complement(const RatSet& a, const RatSet& enclosing);

// Ancestor of I in its own grid, `levels` scales coarser. The shifted grid is
// handled by exact candidate search per level (at most three candidates).
GridInterval pred_in_grid(const GridInterval& I, std::int64_t levels);

// Thrown when a family assumed nested turns out not to be; carries one
// violating pair of member indices.
struct NotNestedError : std::runtime_error {
  std::size_t first;
  std::size_t second;
  NotNestedError(std::size_t a, std::size_t b);
};

struct NestedResult {
  bool nested = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // indices into the family
};

// True iff every pair of members is disjoint or comparable by inclusion.
NestedResult is_nested(std::span<const RatSet> family);

// Smallest member strictly containing K, or nullopt. Non-nestedness among the
// containing members is detected lazily and raises NotNestedError.
std::optional<RatSet> pred_in_collection(const RatSet& K, std::span<const RatSet> family);

// Cells of the finest partition of `region` generated by a nested family whose
// members all lie inside `region`: each member minus its strictly contained
// members, plus the leftover of the region. Throws NotNestedError /
// std::invalid_argument on bad input.
std::vector<RatSet> atoms_of_nested_family(std::span<const RatSet> family, const RatSet& region);

}  // namespace haarlab
