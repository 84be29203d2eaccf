// Interval-to-interval maps: the alternating one-third shift sigma and its
// half-measure associate omega, the unilateral variants, the dyadic shift
// tau_m, and the support sets (alpha/beta/gamma) feeding the rearrangement
// decomposition.
//
// omega and the unilateral maps are found by bounded exact candidate search
// (at most three candidates) against their defining properties rather than by
// closed-form index formulas; uniqueness is asserted.
#pragma once

#include "haarlab/grid.hpp"

namespace haarlab {

// Standard (j,k) -> shifted (j,k): translation by s_j = (-1)^j 2^{-j}/3.
GridInterval sigma(const GridInterval& I);
GridInterval sigma_inv(const GridInterval& J);

// The unique shifted interval of half the measure of I contained in I.
GridInterval omega(const GridInterval& I);

// eps = 0: the shifted interval of equal measure whose sup lies in I.
// eps = 1: likewise with inf. Exactly one of the two equals sigma(I).
GridInterval unilateral_sigma(int eps, const GridInterval& I);

// The shifted interval of measure |I|/4 sharing its sup (eps = 0) resp. inf
// (eps = 1) with unilateral_sigma(eps, I); always contained in the latter.
GridInterval unilateral_omega(int eps, const GridInterval& I);

// I + m|I| on either grid.
GridInterval tau(std::int64_t m, const GridInterval& I);

// x -> -x on the standard grid: (j,k) -> (j,-k-1).
GridInterval reflect(const GridInterval& I);

struct SupportSets {
  GridInterval alpha0;  // unilateral_sigma(0, I)
  GridInterval alpha1;  // unilateral_sigma(1, I)
  RatSet beta0;         // alpha0 \ I
  RatSet beta1;         // alpha1 /\ I
  RatSet beta;          // beta0 u beta1
  RatSet gamma0;        // tau_{-1}(I)
  RatSet gamma1;        // I
  RatSet gamma;         // gamma0 u gamma1
};

// All eight support sets at once; they share the candidate computations and
// callers always need several. |beta0| = |beta1| holds for every I.
SupportSets support_sets(const GridInterval& I);

}  // namespace haarlab
