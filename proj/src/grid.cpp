#include "haarlab/grid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace haarlab {

Rat GridInterval::inf() const {
  Rat base = Rat(static_cast<long>(index)) * pow2(-scale);
  if (grid == GridKind::Shifted) {
    base += Rat(shift_sign()) * pow2(-scale) / 3;
  }
  return base;
}

Rat GridInterval::sup() const { return inf() + measure(); }

std::string interval_str(const GridInterval& I) {
  return std::string("(") + (I.grid == GridKind::Standard ? "standard" : "shifted") + "," +
         std::to_string(I.scale) + "," + std::to_string(I.index) + ")";
}

std::pair<Rat, Rat> endpoints(const GridInterval& I) { return {I.inf(), I.sup()}; }

RatSet::RatSet(Rat lo, Rat hi) {
  if (lo < hi) pieces_.emplace_back(std::move(lo), std::move(hi));
}

RatSet::RatSet(const GridInterval& I) : RatSet(I.inf(), I.sup()) {}

RatSet RatSet::from_pieces(std::vector<Piece> pieces) {
  std::erase_if(pieces, [](const Piece& p) { return p.first >= p.second; });
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.first < b.first; });
  RatSet out;
  for (auto& p : pieces) {
    if (!out.pieces_.empty() && p.first <= out.pieces_.back().second) {
      if (p.second > out.pieces_.back().second) out.pieces_.back().second = std::move(p.second);
    } else {
      out.pieces_.push_back(std::move(p));
    }
  }
  return out;
}

Rat RatSet::measure() const {
  Rat m = 0;
  for (const auto& p : pieces_) m += p.second - p.first;
  return m;
}

const Rat& RatSet::inf() const {
  if (empty()) throw std::invalid_argument("RatSet::inf on empty set");
  return pieces_.front().first;
}

const Rat& RatSet::sup() const {
  if (empty()) throw std::invalid_argument("RatSet::sup on empty set");
  return pieces_.back().second;
}

RatSet set_union(const RatSet& a, const RatSet& b) {
  std::vector<RatSet::Piece> all = a.pieces_;
  all.insert(all.end(), b.pieces_.begin(), b.pieces_.end());
  return RatSet::from_pieces(std::move(all));
}

RatSet set_intersect(const RatSet& a, const RatSet& b) {
  std::vector<RatSet::Piece> out;
  std::size_t i = 0, j = 0;
  while (i < a.pieces_.size() && j < b.pieces_.size()) {
    const auto& p = a.pieces_[i];
    const auto& q = b.pieces_[j];
    Rat lo = std::max(p.first, q.first);
    Rat hi = std::min(p.second, q.second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (p.second < q.second) {
      ++i;
    } else {
      ++j;
    }
  }
  return RatSet::from_pieces(std::move(out));
}

RatSet set_difference(const RatSet& a, const RatSet& b) {
  std::vector<RatSet::Piece> out;
  std::size_t j = 0;
  for (const auto& p : a.pieces_) {
    Rat lo = p.first;
    while (j < b.pieces_.size() && b.pieces_[j].second <= lo) ++j;
    std::size_t k = j;
    while (k < b.pieces_.size() && b.pieces_[k].first < p.second) {
      if (b.pieces_[k].first > lo) out.emplace_back(lo, b.pieces_[k].first);
      lo = std::max(lo, b.pieces_[k].second);
      if (lo >= p.second) break;
      ++k;
    }
    if (lo < p.second) out.emplace_back(lo, p.second);
  }
  return RatSet::from_pieces(std::move(out));
}

bool intersects(const RatSet& a, const RatSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.pieces_.size() && j < b.pieces_.size()) {
    const auto& p = a.pieces_[i];
    const auto& q = b.pieces_[j];
    if (std::max(p.first, q.first) < std::min(p.second, q.second)) return true;
    if (p.second < q.second) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

RatSet RatSet::translate(const Rat& t) const {
  RatSet out;
  out.pieces_.reserve(pieces_.size());
  for (const auto& p : pieces_) out.pieces_.emplace_back(p.first + t, p.second + t);
  return out;
}

std::string RatSet::str() const {
  if (empty()) return "{}";
  std::string s;
  for (const auto& p : pieces_) {
    if (!s.empty()) s += " u ";
    s += "[" + rat_str(p.first) + "," + rat_str(p.second) + ")";
  }
  return s;
}

bool contains(const RatSet& outer, const RatSet& inner) {
  // Each inner piece is connected, so it must fit inside a single outer piece.
  std::size_t j = 0;
  for (const auto& p : inner.pieces()) {
    while (j < outer.pieces().size() && outer.pieces()[j].second < p.second) ++j;
    if (j == outer.pieces().size()) return false;
    if (!(outer.pieces()[j].first <= p.first && p.second <= outer.pieces()[j].second)) return false;
  }
  return true;
}

bool contains(const RatSet& outer, const GridInterval& inner) { return contains(outer, RatSet(inner)); }
bool contains(const GridInterval& outer, const RatSet& inner) { return contains(RatSet(outer), inner); }
bool contains(const GridInterval& outer, const GridInterval& inner) {
  return contains(RatSet(outer), RatSet(inner));
}

Rat distance(const RatSet& a, const RatSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("distance: empty operand");
  if (intersects(a, b)) return Rat(0);
  std::optional<Rat> best;
  for (const auto& p : a.pieces()) {
    for (const auto& q : b.pieces()) {
      Rat gap = q.first >= p.second ? q.first - p.second
                                    : (p.first >= q.second ? p.first - q.second : Rat(0));
      if (!best || gap < *best) best = gap;
    }
  }
  return *best;
}

Rat distance_to_complement(const RatSet& a, const RatSet& enclosing) {
  if (a.empty() || enclosing.empty()) throw std::invalid_argument("distance_to_complement: empty operand");
  if (!contains(enclosing, a))
    throw std::invalid_argument("distance_to_complement: set not contained in enclosing interval");
  Rat left = a.inf() - enclosing.inf();
  Rat right = enclosing.sup() - a.sup();
  return std::min(left, right);
}

namespace {

// Containment of shifted (j,k) in shifted (j-1,k2), exact on the integer
// lattice with common denominator 3*2^j. The sign at scale j-1 is -sign(j).
bool shifted_parent_contains(std::int64_t k2, std::int64_t k, int sign_j) {
  std::int64_t lo_c = 3 * k + sign_j;
  std::int64_t lo_p = 6 * k2 - 2 * sign_j;
  return lo_p <= lo_c && lo_c + 3 <= lo_p + 6;
}

}  // namespace

GridInterval pred_in_grid(const GridInterval& I, std::int64_t levels) {
  if (levels < 1) throw std::invalid_argument("pred_in_grid: levels must be >= 1");
  GridInterval cur = I;
  for (std::int64_t step = 0; step < levels; ++step) {
    if (cur.grid == GridKind::Standard) {
      cur = GridInterval{GridKind::Standard, cur.scale - 1, floor_div(cur.index, 2)};
    } else {
      const int sign = cur.shift_sign();
      const std::int64_t half = floor_div(cur.index, 2);
      std::optional<std::int64_t> found;
      for (std::int64_t k2 = half - 1; k2 <= half + 1; ++k2) {
        if (shifted_parent_contains(k2, cur.index, sign)) {
          if (found) throw std::logic_error("pred_in_grid: non-unique shifted parent");
          found = k2;
        }
      }
      if (!found) throw std::logic_error("pred_in_grid: no shifted parent found");
      cur = GridInterval{GridKind::Shifted, cur.scale - 1, *found};
    }
  }
  return cur;
}

NotNestedError::NotNestedError(std::size_t a, std::size_t b)
    : std::runtime_error("family is not nested (members " + std::to_string(a) + ", " +
                         std::to_string(b) + ")"),
      first(a),
      second(b) {}

NestedResult is_nested(std::span<const RatSet> family) {
  struct Ev {
    const Rat* lo;
    const Rat* hi;
    std::size_t owner;
  };
  std::vector<Ev> pieces;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (const auto& p : family[i].pieces()) pieces.push_back({&p.first, &p.second, i});
  }
  std::sort(pieces.begin(), pieces.end(), [](const Ev& a, const Ev& b) {
    if (*a.lo != *b.lo) return *a.lo < *b.lo;
    return *a.hi > *b.hi;
  });

  // Sweep: pieces active at the current point all overlap an incoming piece,
  // so only owner pairs with simultaneously active pieces need an exact check.
  std::multimap<Rat, std::size_t> active;  // sup -> owner
  std::set<std::pair<std::size_t, std::size_t>> checked;
  for (const auto& ev : pieces) {
    while (!active.empty() && active.begin()->first <= *ev.lo) active.erase(active.begin());
    for (const auto& [hi, owner] : active) {
      if (owner == ev.owner) continue;
      auto key = std::minmax(owner, ev.owner);
      if (!checked.insert(key).second) continue;
      const RatSet& a = family[key.first];
      const RatSet& b = family[key.second];
      if (!contains(a, b) && !contains(b, a)) {
        return NestedResult{false, key};
      }
    }
    active.emplace(*ev.hi, ev.owner);
  }
  return NestedResult{};
}

std::optional<RatSet> pred_in_collection(const RatSet& K, std::span<const RatSet> family) {
  std::vector<std::size_t> holders;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i] != K && contains(family[i], K)) holders.push_back(i);
  }
  if (holders.empty()) return std::nullopt;
  std::vector<std::pair<Rat, std::size_t>> bySize;
  bySize.reserve(holders.size());
  for (std::size_t i : holders) bySize.emplace_back(family[i].measure(), i);
  std::sort(bySize.begin(), bySize.end());
  for (std::size_t t = 0; t + 1 < bySize.size(); ++t) {
    if (!contains(family[bySize[t + 1].second], family[bySize[t].second])) {
      throw NotNestedError(bySize[t].second, bySize[t + 1].second);
    }
  }
  return family[bySize.front().second];
}

std::vector<RatSet> atoms_of_nested_family(std::span<const RatSet> family, const RatSet& region) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!contains(region, family[i]))
      throw std::invalid_argument("atoms_of_nested_family: member " + std::to_string(i) +
                                  " escapes the region");
  }
  if (auto r = is_nested(family); !r.nested) throw NotNestedError(r.witness->first, r.witness->second);

  // Deduplicate and order parents before children.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!family[i].empty()) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const RatSet& A = family[a];
    const RatSet& B = family[b];
    if (A.inf() != B.inf()) return A.inf() < B.inf();
    if (A.sup() != B.sup()) return A.sup() > B.sup();
    Rat ma = A.measure(), mb = B.measure();
    if (ma != mb) return ma > mb;
    return a < b;
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) { return family[a] == family[b]; }),
              order.end());

  struct Node {
    const RatSet* s;
    RatSet child_union;
  };
  std::vector<Node> stack;
  RatSet root_union;
  std::vector<RatSet> cells;

  auto close_top = [&]() {
    Node n = std::move(stack.back());
    stack.pop_back();
    RatSet cell = set_difference(*n.s, n.child_union);
    if (!cell.empty()) cells.push_back(std::move(cell));
    if (stack.empty()) {
      root_union = set_union(root_union, *n.s);
    } else {
      stack.back().child_union = set_union(stack.back().child_union, *n.s);
    }
  };

  for (std::size_t idx : order) {
    const RatSet& S = family[idx];
    while (!stack.empty() && !contains(*stack.back().s, S)) close_top();
    stack.push_back(Node{&S, RatSet{}});
  }
  while (!stack.empty()) close_top();

  RatSet rest = set_difference(region, root_union);
  if (!rest.empty()) cells.push_back(std::move(rest));

  std::sort(cells.begin(), cells.end(),
            [](const RatSet& a, const RatSet& b) { return a.inf() < b.inf(); });
  return cells;
}

}  // namespace haarlab
