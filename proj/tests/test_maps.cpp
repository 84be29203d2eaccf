#include "haarlab/maps.hpp"

#include "doctest.h"

#include <map>
#include <random>

using namespace haarlab;

namespace {

GridInterval std_interval(std::int64_t j, std::int64_t k) {
  return GridInterval{GridKind::Standard, j, k};
}

Rat shifted_inf(std::int64_t j, std::int64_t k) {
  int sign = ((j % 2) + 2) % 2 == 0 ? 1 : -1;
  return Rat(static_cast<long>(k)) * pow2(-j) + Rat(sign) * pow2(-j) / 3;
}

// Oracle: wide brute-force search for the shifted interval with the stated
// defining property, entirely through rational endpoint arithmetic.
std::optional<GridInterval> brute_shifted(std::int64_t scale, std::int64_t k_center,
                                          auto&& predicate) {
  std::optional<GridInterval> found;
  for (std::int64_t k2 = k_center - 10; k2 <= k_center + 10; ++k2) {
    Rat lo = shifted_inf(scale, k2);
    Rat hi = lo + pow2(-scale);
    if (predicate(lo, hi)) {
      if (found) return std::nullopt;  // not unique: signal failure
      found = GridInterval{GridKind::Shifted, scale, k2};
    }
  }
  return found;
}

std::vector<GridInterval> small_window() {
  std::vector<GridInterval> out;
  for (std::int64_t j = -2; j <= 5; ++j) {
    for (std::int64_t k = -40; k <= 40; ++k) out.push_back(std_interval(j, k));
  }
  return out;
}

}  // namespace

TEST_CASE("sigma worked examples and inverse") {
  CHECK(RatSet(sigma(std_interval(0, 0))) == RatSet(rat(1, 3), rat(4, 3)));
  CHECK(RatSet(sigma(std_interval(1, 0))) == RatSet(rat(-1, 6), rat(1, 3)));
  CHECK(RatSet(sigma(std_interval(2, 1))) == RatSet(rat(1, 3), rat(7, 12)));
  CHECK_THROWS_AS(sigma(GridInterval{GridKind::Shifted, 0, 0}), std::invalid_argument);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> js(-3, 8), ks(-50, 50);
  for (int t = 0; t < 200; ++t) {
    GridInterval I = std_interval(js(rng), ks(rng));
    CHECK(sigma_inv(sigma(I)) == I);
    CHECK(RatSet(sigma(I)) == RatSet(I).translate(Rat(I.shift_sign()) * pow2(-I.scale) / 3));
  }
}

TEST_CASE("omega: worked examples, brute-force oracle, injectivity") {
  CHECK(RatSet(omega(std_interval(0, 0))) == RatSet(rat(1, 3), rat(5, 6)));
  CHECK(RatSet(omega(std_interval(1, 0))) == RatSet(rat(1, 12), rat(1, 3)));
  CHECK(distance_to_complement(RatSet(omega(std_interval(1, 0))), RatSet(std_interval(1, 0))) ==
        rat(1, 12));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> js(-3, 8), ks(-50, 50);
  for (int t = 0; t < 300; ++t) {
    GridInterval I = std_interval(js(rng), ks(rng));
    auto oracle = brute_shifted(I.scale + 1, 2 * I.index, [&](const Rat& lo, const Rat& hi) {
      return I.inf() <= lo && hi <= I.sup();
    });
    REQUIRE(oracle.has_value());
    CHECK(omega(I) == *oracle);
  }

  std::map<GridInterval, GridInterval> seen;
  for (const GridInterval& I : small_window()) {
    GridInterval w = omega(I);
    auto [it, inserted] = seen.emplace(w, I);
    CHECK(inserted);  // injective
  }
}

TEST_CASE("omega sits inside with boundary distance |I|/6") {
  for (const GridInterval& I : small_window()) {
    RatSet w(omega(I));
    CHECK(contains(RatSet(I), w));
    CHECK(distance_to_complement(w, RatSet(I)) == I.measure() / 6);
  }
}

TEST_CASE("sigma splits into the two halves of omega") {
  for (const GridInterval& I : small_window()) {
    RatSet w(omega(I));
    Rat step = Rat(I.shift_sign()) * w.measure();
    CHECK(RatSet(sigma(I)) == set_union(w, w.translate(step)));
  }
}

TEST_CASE("unilateral_sigma: worked examples, oracle, overlap bound") {
  CHECK(RatSet(unilateral_sigma(0, std_interval(0, 0))) == RatSet(rat(-2, 3), rat(1, 3)));
  CHECK(unilateral_sigma(1, std_interval(0, 0)) == sigma(std_interval(0, 0)));
  CHECK(unilateral_sigma(0, std_interval(1, 0)) == sigma(std_interval(1, 0)));

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> js(-3, 8), ks(-50, 50);
  for (int t = 0; t < 300; ++t) {
    GridInterval I = std_interval(js(rng), ks(rng));
    for (int eps = 0; eps <= 1; ++eps) {
      auto oracle = brute_shifted(I.scale, I.index, [&](const Rat& lo, const Rat& hi) {
        const Rat& probe = eps == 0 ? hi : lo;
        return I.inf() <= probe && probe < I.sup();
      });
      REQUIRE(oracle.has_value());
      CHECK(unilateral_sigma(eps, I) == *oracle);
    }
  }

  for (const GridInterval& I : small_window()) {
    int matches = 0;
    for (int eps = 0; eps <= 1; ++eps) {
      GridInterval J = unilateral_sigma(eps, I);
      if (J == sigma(I)) ++matches;
      Rat overlap = set_intersect(RatSet(I), RatSet(J)).measure();
      CHECK(overlap >= I.measure() / 3);
    }
    CHECK(matches == 1);
  }
}

TEST_CASE("unilateral_omega: worked examples and containment") {
  CHECK(RatSet(unilateral_omega(0, std_interval(0, 0))) == RatSet(rat(1, 12), rat(1, 3)));
  CHECK(RatSet(unilateral_omega(1, std_interval(0, 0))) == RatSet(rat(1, 3), rat(7, 12)));

  for (const GridInterval& I : small_window()) {
    for (int eps = 0; eps <= 1; ++eps) {
      GridInterval w = unilateral_omega(eps, I);
      GridInterval s = unilateral_sigma(eps, I);
      CHECK(w.measure() == I.measure() / 4);
      CHECK(contains(RatSet(s), RatSet(w)));
      if (eps == 0) {
        CHECK(w.sup() == s.sup());
      } else {
        CHECK(w.inf() == s.inf());
      }
    }
  }
}

TEST_CASE("tau") {
  CHECK(tau(5, std_interval(2, 3)) == std_interval(2, 8));
  CHECK(RatSet(tau(5, std_interval(2, 3))) == RatSet(rat(2), rat(9, 4)));
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<std::int64_t> js(-3, 8), ks(-50, 50), ms(-6, 6);
  for (int t = 0; t < 200; ++t) {
    GridInterval I{t % 2 ? GridKind::Shifted : GridKind::Standard, js(rng), ks(rng)};
    std::int64_t m = ms(rng);
    CHECK(tau(0, I) == I);
    CHECK(tau(-m, tau(m, I)) == I);
    CHECK(RatSet(tau(m, I)) == RatSet(I).translate(Rat(static_cast<long>(m)) * I.measure()));
  }
}

TEST_CASE("support_sets worked examples") {
  {
    SupportSets s = support_sets(std_interval(0, 0));
    CHECK(s.beta0 == RatSet(rat(-2, 3), rat(0)));
    CHECK(s.beta1 == RatSet(rat(1, 3), rat(1)));
    CHECK(s.beta0.measure() == rat(2, 3));
    CHECK(s.beta1.measure() == rat(2, 3));
    CHECK(s.gamma == RatSet(rat(-1), rat(1)));
  }
  {
    SupportSets s = support_sets(std_interval(1, 0));
    CHECK(s.beta0 == RatSet(rat(-1, 6), rat(0)));
    CHECK(s.beta1 == RatSet(rat(1, 3), rat(1, 2)));
    CHECK(s.beta0.measure() == rat(1, 6));
    CHECK(s.beta1.measure() == rat(1, 6));
  }
}

TEST_CASE("support sets: equal beta measures and gamma hull") {
  for (const GridInterval& I : small_window()) {
    SupportSets s = support_sets(I);
    CHECK(s.beta0.measure() == s.beta1.measure());
    CHECK(s.gamma == RatSet(I.inf() - I.measure(), I.sup()));
    CHECK(s.alpha0 == unilateral_sigma(0, I));
    CHECK(s.alpha1 == unilateral_sigma(1, I));
    // alpha0 ends and alpha1 begins at the unique shifted lattice point in I.
    CHECK(s.alpha0.sup() == s.alpha1.inf());
  }
}

TEST_CASE("reflect") {
  CHECK(reflect(std_interval(0, 0)) == std_interval(0, -1));
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::int64_t> js(-3, 8), ks(-50, 50);
  for (int t = 0; t < 100; ++t) {
    GridInterval I = std_interval(js(rng), ks(rng));
    CHECK(reflect(reflect(I)) == I);
    CHECK(reflect(I).inf() == -I.sup());
  }
}
