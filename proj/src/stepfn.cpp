#include "haarlab/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace haarlab {

StepFunction::StepFunction(std::vector<Rat> breakpoints, std::vector<Rat> values)
    : bps_(std::move(breakpoints)), vals_(std::move(values)) {
  if (!bps_.empty() && bps_.size() != vals_.size() + 1)
    throw std::invalid_argument("StepFunction: need one more breakpoint than values");
  normalize();
}

void StepFunction::normalize() {
  std::vector<Rat> bps, vals;
  bps.reserve(bps_.size());
  vals.reserve(vals_.size());
  for (std::size_t i = 0; i < vals_.size(); ++i) {
    if (bps_[i] > bps_[i + 1]) throw std::invalid_argument("StepFunction: breakpoints not sorted");
    if (bps_[i] == bps_[i + 1]) continue;  // zero-width cell
    if (!vals.empty() && vals.back() == vals_[i]) {
      bps.back() = bps_[i + 1];  // extend previous cell
      continue;
    }
    if (bps.empty()) bps.push_back(bps_[i]);
    bps.push_back(bps_[i + 1]);
    vals.push_back(vals_[i]);
  }
  // After merging, bps.back() tracks the running sup; fix bookkeeping.
  // (The loop above keeps bps = [b0, e1, e2, ...] with one end per cell.)
  while (!vals.empty() && vals.front() == 0) {
    vals.erase(vals.begin());
    bps.erase(bps.begin());
  }
  while (!vals.empty() && vals.back() == 0) {
    vals.pop_back();
    bps.pop_back();
  }
  if (vals.empty()) bps.clear();
  bps_ = std::move(bps);
  vals_ = std::move(vals);
}

StepFunction StepFunction::indicator(const RatSet& a) {
  std::vector<Rat> bps, vals;
  for (const auto& p : a.pieces()) {
    if (bps.empty()) {
      bps.push_back(p.first);
    } else {
      bps.push_back(p.first);  // close the gap cell
      vals.push_back(0);
    }
    bps.push_back(p.second);
    vals.push_back(1);
  }
  return StepFunction(std::move(bps), std::move(vals));
}

StepFunction StepFunction::haar(const GridInterval& I) {
  Rat lo = I.inf();
  Rat hi = I.sup();
  Rat mid = (lo + hi) / 2;
  return StepFunction({lo, mid, hi}, {Rat(1), Rat(-1)});
}

StepFunction StepFunction::sum(std::span<const StepFunction> fs) {
  std::vector<std::pair<Rat, Rat>> events;  // (x, delta)
  for (const auto& f : fs) {
    for (std::size_t i = 0; i < f.vals_.size(); ++i) {
      events.emplace_back(f.bps_[i], f.vals_[i]);
      events.emplace_back(f.bps_[i + 1], -f.vals_[i]);
    }
  }
  if (events.empty()) return {};
  std::sort(events.begin(), events.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Rat> bps, vals;
  Rat acc = 0;
  std::size_t i = 0;
  while (i < events.size()) {
    const Rat& x = events[i].first;
    if (!bps.empty()) vals.push_back(acc);
    bps.push_back(x);
    while (i < events.size() && events[i].first == x) {
      acc += events[i].second;
      ++i;
    }
  }
  return StepFunction(std::move(bps), std::move(vals));
}

namespace {

// Merge two step functions cellwise with a binary value operation.
template <typename Op>
StepFunction combine(const StepFunction& f, const StepFunction& g, Op op) {
  const auto& fb = f.breakpoints();
  const auto& gb = g.breakpoints();
  if (fb.empty() && gb.empty()) return {};
  std::vector<Rat> cuts;
  cuts.reserve(fb.size() + gb.size());
  std::merge(fb.begin(), fb.end(), gb.begin(), gb.end(), std::back_inserter(cuts));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rat> bps, vals;
  bps.reserve(cuts.size());
  vals.reserve(cuts.size());
  bps.push_back(cuts.front());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    vals.push_back(op(f.eval(cuts[i]), g.eval(cuts[i])));
    bps.push_back(cuts[i + 1]);
  }
  return StepFunction(std::move(bps), std::move(vals));
}

}  // namespace

StepFunction StepFunction::add(const StepFunction& g) const {
  return combine(*this, g, [](const Rat& a, const Rat& b) { return a + b; });
}

StepFunction StepFunction::subtract(const StepFunction& g) const {
  return combine(*this, g, [](const Rat& a, const Rat& b) { return a - b; });
}

StepFunction StepFunction::multiply(const StepFunction& g) const {
  return combine(*this, g, [](const Rat& a, const Rat& b) { return a * b; });
}

StepFunction StepFunction::scale_by(const Rat& c) const {
  if (c == 0 || is_zero()) return {};
  std::vector<Rat> vals = vals_;
  for (auto& v : vals) v *= c;
  return StepFunction(bps_, std::move(vals));
}

StepFunction StepFunction::reflect() const {
  std::vector<Rat> bps(bps_.rbegin(), bps_.rend());
  for (auto& b : bps) b = -b;
  std::vector<Rat> vals(vals_.rbegin(), vals_.rend());
  return StepFunction(std::move(bps), std::move(vals));
}

Rat StepFunction::eval(const Rat& x) const {
  if (bps_.empty() || x < bps_.front() || x >= bps_.back()) return Rat(0);
  auto it = std::upper_bound(bps_.begin(), bps_.end(), x);
  return vals_[static_cast<std::size_t>(it - bps_.begin()) - 1];
}

RatSet StepFunction::support() const {
  std::vector<RatSet::Piece> pieces;
  for (std::size_t i = 0; i < vals_.size(); ++i) {
    if (vals_[i] != 0) pieces.emplace_back(bps_[i], bps_[i + 1]);
  }
  return RatSet::from_pieces(std::move(pieces));
}

Rat integral(const StepFunction& f) {
  Rat s = 0;
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * (b[i + 1] - b[i]);
  return s;
}

namespace {

Rat integral_segment(const StepFunction& f, const Rat& lo, const Rat& hi) {
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  if (v.empty() || hi <= b.front() || lo >= b.back() || lo >= hi) return Rat(0);
  Rat s = 0;
  auto it = std::upper_bound(b.begin(), b.end(), lo);
  std::size_t i = it == b.begin() ? 0 : static_cast<std::size_t>(it - b.begin()) - 1;
  for (; i < v.size() && b[i] < hi; ++i) {
    Rat a = std::max(lo, b[i]);
    Rat z = std::min(hi, b[i + 1]);
    if (a < z) s += v[i] * (z - a);
  }
  return s;
}

}  // namespace

Rat integral(const StepFunction& f, const RatSet& over) {
  Rat s = 0;
  for (const auto& p : over.pieces()) s += integral_segment(f, p.first, p.second);
  return s;
}

Rat integral(const StepFunction& f, const Rat& lo, const Rat& hi) {
  return integral_segment(f, lo, hi);
}

Rat inner_product(const StepFunction& f, const StepFunction& g) {
  if (f.is_zero() || g.is_zero()) return Rat(0);
  if (f.breakpoints().back() <= g.breakpoints().front() ||
      g.breakpoints().back() <= f.breakpoints().front())
    return Rat(0);
  return integral(f.multiply(g));
}

Rat lp_pth_power_even(const StepFunction& f, long p) {
  if (p <= 0 || p % 2 != 0) throw std::invalid_argument("lp_pth_power_even: p must be a positive even integer");
  Rat s = 0;
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i)
    s += rat_pow(v[i], static_cast<unsigned long>(p)) * (b[i + 1] - b[i]);
  return s;
}

LpNorm lp_norm(const StepFunction& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  LpNorm out;
  double flp = std::floor(p);
  if (flp == p && flp > 0 && static_cast<long>(flp) % 2 == 0) {
    out.exact_pth_power = lp_pth_power_even(f, static_cast<long>(flp));
    out.value = std::pow(to_double(*out.exact_pth_power), 1.0 / p);
    return out;
  }
  double s = 0.0;
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i)
    s += std::pow(std::abs(to_double(v[i])), p) * to_double(b[i + 1] - b[i]);
  out.value = std::pow(s, 1.0 / p);
  return out;
}

StepFunction cond_exp(const StepFunction& f, std::span<const RatSet> cells) {
  RatSet covered;
  for (const auto& c : cells) covered = set_union(covered, c);
  if (!contains(covered, f.support()))
    throw std::invalid_argument("cond_exp: support escapes the given cells");
  std::vector<StepFunction> parts;
  for (const auto& c : cells) {
    if (c.empty()) continue;
    Rat avg = integral(f, c) / c.measure();
    if (avg != 0) parts.push_back(StepFunction::indicator(c).scale_by(avg));
  }
  return StepFunction::sum(parts);
}

MdsReport mds_check(std::span<const MdsMember> family) {
  MdsReport report;

  for (std::size_t i = 0; i < family.size(); ++i) {
    if (integral(family[i].f) != 0) {
      report.ok = false;
      report.violation = "member has nonzero integral";
      report.offending_member = i;
      return report;
    }
  }

  std::vector<std::size_t> order(family.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return family[a].generation < family[b].generation;
  });

  // Same-generation support overlaps (reported, not a failure: each
  // generation enters the martingale as a single aggregated difference).
  {
    std::size_t g0 = 0;
    while (g0 < order.size()) {
      std::size_t g1 = g0;
      while (g1 < order.size() &&
             family[order[g1]].generation == family[order[g0]].generation)
        ++g1;
      struct Piece {
        Rat lo, hi;
        std::size_t owner;
      };
      std::vector<Piece> pieces;
      for (std::size_t t = g0; t < g1; ++t) {
        const RatSet supp = family[order[t]].f.support();
        for (const auto& p : supp.pieces()) pieces.push_back({p.first, p.second, order[t]});
      }
      std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi > b.hi;
      });
      std::multimap<Rat, std::size_t> active;  // hi -> owner
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& pc : pieces) {
        while (!active.empty() && active.begin()->first <= pc.lo) active.erase(active.begin());
        for (const auto& [hi, owner] : active) {
          if (owner == pc.owner) continue;
          auto key = std::minmax(owner, pc.owner);
          if (seen.insert(key).second) report.same_gen_overlaps.push_back(key);
        }
        active.emplace(pc.hi, pc.owner);
      }
      g0 = g1;
    }
  }

  // Vanishing integral over every cell of the refinement generated by all
  // strictly coarser members.
  std::vector<Rat> coarser;  // sorted breakpoints of generations already seen
  std::size_t g0 = 0;
  while (g0 < order.size()) {
    std::size_t g1 = g0;
    while (g1 < order.size() && family[order[g1]].generation == family[order[g0]].generation) ++g1;
    if (!coarser.empty()) {
      for (std::size_t t = g0; t < g1; ++t) {
        const StepFunction& f = family[order[t]].f;
        if (f.is_zero()) continue;
        const Rat lo = f.breakpoints().front();
        const Rat hi = f.breakpoints().back();
        auto a = std::upper_bound(coarser.begin(), coarser.end(), lo);
        auto b = std::lower_bound(coarser.begin(), coarser.end(), hi);
        Rat cell_lo = lo;
        bool bad = false;
        for (auto it = a; it != b && !bad; ++it) {
          if (integral_segment(f, cell_lo, *it) != 0) bad = true;
          cell_lo = *it;
        }
        if (!bad && integral_segment(f, cell_lo, hi) != 0) bad = true;
        if (bad) {
          report.ok = false;
          report.violation = "nonzero integral on a cell of the coarser refinement";
          report.offending_member = order[t];
          return report;
        }
      }
    }
    std::vector<Rat> added;
    for (std::size_t t = g0; t < g1; ++t) {
      const auto& b = family[order[t]].f.breakpoints();
      added.insert(added.end(), b.begin(), b.end());
    }
    std::sort(added.begin(), added.end());
    std::vector<Rat> merged;
    merged.reserve(coarser.size() + added.size());
    std::merge(coarser.begin(), coarser.end(), added.begin(), added.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    coarser = std::move(merged);
    g0 = g1;
  }
  return report;
}

}  // namespace haarlab
