#include "haarlab/expansion.hpp"

namespace haarlab {

void HaarExpansion::set(const GridInterval& I, Rat c) {
  if (c == 0) {
    c_.erase(I);
  } else {
    c_[I] = std::move(c);
  }
}

void HaarExpansion::add_to(const GridInterval& I, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = c_.try_emplace(I, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

const Rat* HaarExpansion::find(const GridInterval& I) const {
  auto it = c_.find(I);
  return it == c_.end() ? nullptr : &it->second;
}

HaarExpansion HaarExpansion::scale_by(const Rat& c) const {
  HaarExpansion out;
  if (c == 0) return out;
  for (const auto& [I, v] : c_) out.c_.emplace(I, v * c);
  return out;
}

HaarExpansion HaarExpansion::add(const HaarExpansion& other) const {
  HaarExpansion out = *this;
  for (const auto& [I, v] : other.c_) out.add_to(I, v);
  return out;
}

StepFunction HaarExpansion::synthesize() const {
  std::vector<StepFunction> parts;
  parts.reserve(c_.size());
  for (const auto& [I, v] : c_) parts.push_back(StepFunction::haar(I).scale_by(v));
  return StepFunction::sum(parts);
}

Rat HaarExpansion::l2_norm_sq() const {
  StepFunction f = synthesize();
  return lp_pth_power_even(f, 2);
}

HaarExpansion from_weighted_coefficients(const std::map<GridInterval, Rat>& weighted) {
  HaarExpansion out;
  for (const auto& [I, u] : weighted) out.set(I, u / I.measure());
  return out;
}

StepFunction level_slice(const HaarExpansion& u, std::int64_t j) {
  std::vector<StepFunction> parts;
  for (const auto& [I, v] : u.table()) {
    if (I.scale == j) parts.push_back(StepFunction::haar(I).scale_by(v));
  }
  return StepFunction::sum(parts);
}

StepFunction indicator_slice(const HaarExpansion& u, std::int64_t j) {
  std::vector<StepFunction> parts;
  for (const auto& [I, v] : u.table()) {
    if (I.scale == j) parts.push_back(StepFunction::indicator(RatSet(I)).scale_by(v));
  }
  return StepFunction::sum(parts);
}

}  // namespace haarlab
