#include "haarlab/maps.hpp"

#include <optional>
#include <stdexcept>

namespace haarlab {

namespace {

void require_standard(const GridInterval& I, const char* who) {
  if (I.grid != GridKind::Standard)
    throw std::invalid_argument(std::string(who) + ": expected a standard-grid interval, got " +
                                interval_str(I));
}

}  // namespace

GridInterval sigma(const GridInterval& I) {
  require_standard(I, "sigma");
  return GridInterval{GridKind::Shifted, I.scale, I.index};
}

GridInterval sigma_inv(const GridInterval& J) {
  if (J.grid != GridKind::Shifted)
    throw std::invalid_argument("sigma_inv: expected a shifted-grid interval, got " + interval_str(J));
  return GridInterval{GridKind::Standard, J.scale, J.index};
}

GridInterval omega(const GridInterval& I) {
  require_standard(I, "omega");
  // Candidates at scale j+1 on the lattice with denominator 3*2^{j+1}:
  // I scales to [6k, 6k+6); shifted (j+1,k2) is [3k2+u, 3k2+u+3), u = sign(j+1).
  const std::int64_t k = I.index;
  const int u = -I.shift_sign();
  std::optional<std::int64_t> found;
  for (std::int64_t k2 = 2 * k - 1; k2 <= 2 * k + 1; ++k2) {
    std::int64_t lo = 3 * k2 + u;
    if (6 * k <= lo && lo + 3 <= 6 * k + 6) {
      if (found) throw std::logic_error("omega: non-unique candidate for " + interval_str(I));
      found = k2;
    }
  }
  if (!found) throw std::logic_error("omega: no candidate for " + interval_str(I));
  return GridInterval{GridKind::Shifted, I.scale + 1, *found};
}

GridInterval unilateral_sigma(int eps, const GridInterval& I) {
  require_standard(I, "unilateral_sigma");
  if (eps != 0 && eps != 1) throw std::invalid_argument("unilateral_sigma: eps must be 0 or 1");
  // Same-scale lattice with denominator 3*2^j: I = [3k, 3k+3),
  // shifted (j,k2) = [3k2+u, 3k2+u+3).
  const std::int64_t k = I.index;
  const int u = I.shift_sign();
  std::optional<std::int64_t> found;
  for (std::int64_t k2 = k - 1; k2 <= k + 1; ++k2) {
    std::int64_t probe = eps == 0 ? 3 * k2 + u + 3 : 3 * k2 + u;
    if (3 * k <= probe && probe < 3 * k + 3) {
      if (found) throw std::logic_error("unilateral_sigma: non-unique candidate for " + interval_str(I));
      found = k2;
    }
  }
  if (!found) throw std::logic_error("unilateral_sigma: no candidate for " + interval_str(I));
  return GridInterval{GridKind::Shifted, I.scale, *found};
}

GridInterval unilateral_omega(int eps, const GridInterval& I) {
  require_standard(I, "unilateral_omega");
  const GridInterval base = unilateral_sigma(eps, I);
  // Quarter-measure candidates at scale j+2; match sup (eps=0) resp. inf
  // (eps=1) on the lattice with denominator 3*2^{j+2}. Base endpoints scale
  // by a factor of 4; the shift sign at j+2 equals the sign at j.
  const int u = I.shift_sign();
  const std::int64_t target =
      eps == 0 ? 4 * (3 * base.index + u + 3) : 4 * (3 * base.index + u);
  std::optional<std::int64_t> found;
  for (std::int64_t k2 = 4 * base.index - 6; k2 <= 4 * base.index + 6; ++k2) {
    std::int64_t probe = eps == 0 ? 3 * k2 + u + 3 : 3 * k2 + u;
    if (probe == target) {
      if (found) throw std::logic_error("unilateral_omega: non-unique candidate for " + interval_str(I));
      found = k2;
    }
  }
  if (!found) throw std::logic_error("unilateral_omega: no candidate for " + interval_str(I));
  GridInterval J{GridKind::Shifted, I.scale + 2, *found};
  if (!contains(base, J))
    throw std::logic_error("unilateral_omega: candidate escapes unilateral_sigma for " + interval_str(I));
  return J;
}

GridInterval tau(std::int64_t m, const GridInterval& I) {
  return GridInterval{I.grid, I.scale, I.index + m};
}

GridInterval reflect(const GridInterval& I) {
  require_standard(I, "reflect");
  return GridInterval{GridKind::Standard, I.scale, -I.index - 1};
}

SupportSets support_sets(const GridInterval& I) {
  require_standard(I, "support_sets");
  SupportSets s{unilateral_sigma(0, I), unilateral_sigma(1, I), {}, {}, {}, {}, {}, {}};
  const RatSet Iset(I);
  s.beta0 = set_difference(RatSet(s.alpha0), Iset);
  s.beta1 = set_intersect(RatSet(s.alpha1), Iset);
  s.beta = set_union(s.beta0, s.beta1);
  s.gamma0 = RatSet(tau(-1, I));
  s.gamma1 = Iset;
  s.gamma = set_union(s.gamma0, s.gamma1);
  return s;
}

}  // namespace haarlab
