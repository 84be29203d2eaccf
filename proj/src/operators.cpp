#include "haarlab/operators.hpp"

#include <stdexcept>

namespace haarlab {

namespace {

template <typename MapFn>
HaarExpansion transport(const HaarExpansion& u, MapFn map) {
  HaarExpansion out;
  for (const auto& [I, c] : u.table()) out.set(map(I), c);
  return out;
}

}  // namespace

HaarExpansion apply_T(std::int64_t m, const HaarExpansion& u) {
  return transport(u, [m](const GridInterval& I) { return tau(m, I); });
}

HaarExpansion apply_S(const HaarExpansion& u) {
  return transport(u, [](const GridInterval& I) { return sigma(I); });
}

HaarExpansion apply_S_inv(const HaarExpansion& u) {
  return transport(u, [](const GridInterval& I) { return sigma_inv(I); });
}

HaarExpansion apply_unilateral_S(int eps, const HaarExpansion& u) {
  return transport(u, [eps](const GridInterval& I) { return unilateral_sigma(eps, I); });
}

StepFunction apply_U(std::int64_t m, const HaarExpansion& u) {
  std::vector<StepFunction> parts;
  parts.reserve(2 * u.size());
  for (const auto& [I, c] : u.table()) {
    parts.push_back(StepFunction::indicator(RatSet(tau(m, I))).scale_by(c));
    parts.push_back(StepFunction::indicator(RatSet(I)).scale_by(-c));
  }
  return StepFunction::sum(parts);
}

StepFunction a_fn(int eps, std::int64_t m, const GridInterval& I) {
  if (m < 1) throw std::invalid_argument("a_fn: m must be >= 1 (handle m < 0 by reflection)");
  if (eps != 0 && eps != 1) throw std::invalid_argument("a_fn: eps must be 0 or 1");
  const GridInterval a_src = unilateral_sigma(eps, I);
  const GridInterval a_dst = unilateral_sigma(eps, tau(m, I));
  return StepFunction::indicator(RatSet(a_dst)).subtract(StepFunction::indicator(RatSet(a_src)));
}

StepFunction b_fn(int eps, const GridInterval& I) {
  if (eps != 0 && eps != 1) throw std::invalid_argument("b_fn: eps must be 0 or 1");
  const SupportSets s = support_sets(I);
  if (eps == 0) {
    return StepFunction::indicator(s.beta0).subtract(StepFunction::indicator(s.beta1));
  }
  // The positive part lives on the overhang of alpha1 outside I, the negative
  // part on the portion of alpha0 inside I; both have measure |I| - |beta_eps|.
  const RatSet pos = set_difference(RatSet(s.alpha1), s.beta1);
  const RatSet neg = set_difference(RatSet(s.alpha0), s.beta0);
  return StepFunction::indicator(pos).subtract(StepFunction::indicator(neg));
}

StepFunction apply_Am(int eps, std::int64_t m, const HaarExpansion& u) {
  std::vector<StepFunction> parts;
  parts.reserve(u.size());
  for (const auto& [I, c] : u.table()) parts.push_back(a_fn(eps, m, I).scale_by(c));
  return StepFunction::sum(parts);
}

StepFunction apply_B(int eps, const HaarExpansion& u) {
  std::vector<StepFunction> parts;
  parts.reserve(u.size());
  for (const auto& [I, c] : u.table()) parts.push_back(b_fn(eps, I).scale_by(c));
  return StepFunction::sum(parts);
}

StepFunction apply_Bm(int eps, std::int64_t m, const HaarExpansion& u) {
  if (m < 1) throw std::invalid_argument("apply_Bm: m must be >= 1 (handle m < 0 by reflection)");
  std::vector<StepFunction> parts;
  parts.reserve(2 * u.size());
  for (const auto& [I, c] : u.table()) {
    parts.push_back(b_fn(eps, I).scale_by(c));
    parts.push_back(b_fn(eps, tau(m, I)).scale_by(-c));
  }
  return StepFunction::sum(parts);
}

HaarExpansion project(std::int64_t m, const PartitionLabel& label, const HaarExpansion& u) {
  HaarExpansion out;
  for (const auto& [I, c] : u.table()) {
    if (classify(m, I) == label) out.set(I, c);
  }
  return out;
}

HaarExpansion project_delta(std::int64_t m, int delta, std::optional<int> eps,
                            const HaarExpansion& u) {
  HaarExpansion out;
  for (const auto& [I, c] : u.table()) {
    PartitionLabel label = classify(m, I);
    if (label.delta != delta) continue;
    if (delta == 1 && eps && label.eps != *eps) continue;
    out.set(I, c);
  }
  return out;
}

bool identity_check(std::int64_t m, int eps, const GridInterval& I) {
  const StepFunction lhs = StepFunction::sum(std::vector<StepFunction>{
      a_fn(eps, m, I), b_fn(eps, I), b_fn(eps, tau(m, I)).scale_by(Rat(-1))});
  const StepFunction rhs = StepFunction::indicator(RatSet(tau(m, I)))
                               .subtract(StepFunction::indicator(RatSet(I)));
  return lhs == rhs;
}

bool commute_check(std::int64_t m, const GridInterval& I) {
  if (sigma(tau(m, I)) != tau(m, sigma(I))) return false;
  for (int eps = 0; eps <= 1; ++eps) {
    if (unilateral_sigma(eps, tau(m, I)) != tau(m, unilateral_sigma(eps, I))) return false;
  }
  return true;
}

std::vector<NamedFamily> mds_families(std::int64_t m, const PartitionLabel& label,
                                      const WindowSpec& window) {
  if (m < 1) throw std::invalid_argument("mds_families: m must be >= 1");
  std::vector<GridInterval> members = enumerate_collection(m, label, window, /*shifted=*/false);

  std::vector<NamedFamily> out;
  if (label.delta == 0) {
    NamedFamily fam{"U", {}};
    for (const GridInterval& I : members)
      fam.members.push_back({I.scale, apply_U(m, HaarExpansion::unit(I))});
    out.push_back(std::move(fam));
    return out;
  }

  const int eps = label.eps.value();
  NamedFamily fa{"A", {}};
  NamedFamily fb{"Bm", {}};
  NamedFamily fr{"remark-b", {}};
  for (const GridInterval& I : members) {
    fa.members.push_back({I.scale, a_fn(eps, m, I)});
    fb.members.push_back({I.scale, b_fn(eps, I).subtract(b_fn(eps, tau(m, I)))});
    fr.members.push_back({I.scale, b_fn(eps, I)});
    fr.members.push_back({I.scale, b_fn(eps, tau(m, I))});
  }
  out.push_back(std::move(fa));
  out.push_back(std::move(fb));
  out.push_back(std::move(fr));
  return out;
}

}  // namespace haarlab
