// Partition of the standard dyadic grid into the collections driving the
// shift operators: level classes modulo lambda, the delta split by whether
// the m-shift stays inside the lambda-fold ancestor, the even/odd split of
// index blocks, and the eps refinement of the delta = 1 collections.
#pragma once

#include "haarlab/grid.hpp"
#include "haarlab/report.hpp"
#include "haarlab/window.hpp"

#include <optional>
#include <string>
#include <vector>

namespace haarlab {

struct LambdaParams {
  std::int64_t m = 0;       // original shift width (may be negative)
  std::int64_t lambda = 0;  // >= 4; for |m| >= 2: 2^{lambda-3} <= |m| < 2^{lambda-2}
  std::int64_t L = 0;       // lambda - 1
  std::int64_t K = 0;       // 2L + 1
};

LambdaParams lambda_of(std::int64_t m);

struct PartitionLabel {
  int i = 0;                 // 0..K(m)
  int delta = 0;             // 0 or 1
  std::optional<int> eps;    // present iff delta == 1

  auto operator<=>(const PartitionLabel&) const = default;
  std::string str() const;  // "i:delta" or "i:delta:eps"
};

// Total on standard intervals; m < 0 classifies the reflection of I with
// shift width |m|. Throws on m = 0 or a shifted-grid input.
PartitionLabel classify(std::int64_t m, const GridInterval& I);

// All labels for the given m in deterministic order.
std::vector<PartitionLabel> all_labels(std::int64_t m);

// Window intervals whose label matches; with shifted = true and delta = 1
// each interval is mapped through sigma (delta = 0 collections are returned
// unchanged).
std::vector<GridInterval> enumerate_collection(std::int64_t m, const PartitionLabel& label,
                                               const WindowSpec& window, bool shifted);

struct VerifyOptions {
  // Deliberately flips the delta of one interval per label before checking;
  // a negative control that must produce violations.
  bool fault_inject = false;
};

// Per label: nestedness of {J, tau_m(J), J u tau_m(J)} over the (shifted)
// collection, emptiness of the overlap with its own tau_m image, and the
// strong containment J u tau_m(J) inside the lambda-fold ancestor of J.
VerificationReport verify_shift_lemma(std::int64_t m, const WindowSpec& window,
                                      const VerifyOptions& options = {});

// For I at scale congruent to i mod lambda: every window interval J at scale
// scale(I)+lambda with J inside I and tau_m(J) disjoint from I must satisfy
// sigma(J) and tau_m(sigma(J)) inside sigma(I).
VerificationReport check_shifted_inclusion(std::int64_t m, std::int64_t i, const GridInterval& I,
                                           const WindowSpec& window);

// Atoms generated by {J u tau_m(J) : J in the shifted collection, scale <= j}
// over the window region (extended to the hull of the members when they
// overhang it). Non-nestedness raises NotNestedError.
std::vector<RatSet> filtration_atoms(std::int64_t m, const PartitionLabel& label, std::int64_t j,
                                     const WindowSpec& window);

}  // namespace haarlab
