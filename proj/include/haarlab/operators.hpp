// Operators on Haar expansions: the shift T_m, the one-third-shift operators
// S, S0, S1, the rearrangement U_m, its building blocks a/b with the linear
// extensions A_m, B, B_m, the partition projections, and the exact identity,
// commutation, and martingale-family constructions.
#pragma once

#include "haarlab/expansion.hpp"
#include "haarlab/maps.hpp"
#include "haarlab/partition.hpp"
#include "haarlab/stepfn.hpp"
#include "haarlab/window.hpp"

#include <optional>
#include <string>
#include <vector>

namespace haarlab {

// h_I -> h_{tau_m(I)} (both grids).
HaarExpansion apply_T(std::int64_t m, const HaarExpansion& u);

// h_I -> h_{sigma(I)}; keys must be standard (shifted for the inverse).
HaarExpansion apply_S(const HaarExpansion& u);
HaarExpansion apply_S_inv(const HaarExpansion& u);
HaarExpansion apply_unilateral_S(int eps, const HaarExpansion& u);

// h_I -> 1_{tau_m(I)} - 1_I, extended linearly; exact step function.
StepFunction apply_U(std::int64_t m, const HaarExpansion& u);

// Building blocks of the rearrangement decomposition, m >= 1:
//   a_I^(0) = 1_{alpha0(tau_m I)} - 1_{alpha0(I)}
//   a_I^(1) = 1_{alpha1(tau_m I)} - 1_{alpha1(I)}
//   b_I^(0) = 1_{beta0(I)} - 1_{beta1(I)}
//   b_I^(1) = 1_{alpha1(I) \ beta1(I)} - 1_{alpha0(I) \ beta0(I)}
// Both have integral zero, and for every eps and every I
//   a_I^(eps) + b_I^(eps) - b_{tau_m(I)}^(eps) = 1_{tau_m(I)} - 1_I.
StepFunction a_fn(int eps, std::int64_t m, const GridInterval& I);
StepFunction b_fn(int eps, const GridInterval& I);

StepFunction apply_Am(int eps, std::int64_t m, const HaarExpansion& u);
StepFunction apply_B(int eps, const HaarExpansion& u);
StepFunction apply_Bm(int eps, std::int64_t m, const HaarExpansion& u);

// Keeps exactly the coefficients whose key classifies to the label; in plain
// coefficients the orthogonal projection reduces to key filtering.
HaarExpansion project(std::int64_t m, const PartitionLabel& label, const HaarExpansion& u);
// Aggregate over i: delta = 0 keeps all delta = 0 keys; delta = 1 with eps
// keeps the matching eps classes.
HaarExpansion project_delta(std::int64_t m, int delta, std::optional<int> eps,
                            const HaarExpansion& u);

// Exact step-function identity a + b_I - b_{tau_m I} = 1_{tau_m I} - 1_I.
bool identity_check(std::int64_t m, int eps, const GridInterval& I);

// sigma o tau_m = tau_m o sigma and likewise for both unilateral maps.
bool commute_check(std::int64_t m, const GridInterval& I);

struct NamedFamily {
  std::string name;  // "U", "A", "Bm", "remark-b"
  std::vector<MdsMember> members;
};

// The martingale families attached to a label over a window. Delta = 0 labels
// produce the U family; delta = 1 labels produce the a family, the b
// difference family, and the two-sided b family (each member at the
// generation of its source scale).
std::vector<NamedFamily> mds_families(std::int64_t m, const PartitionLabel& label,
                                      const WindowSpec& window);

}  // namespace haarlab
