// Verification suites composing the module operations into reports: the
// one-third-shift geometry checks, the shift-partition checks, the exact
// decomposition and commutation identities, and the martingale family checks.
// Shared by the command-line front end and the acceptance harness.
#pragma once

#include "haarlab/partition.hpp"
#include "haarlab/report.hpp"
#include "haarlab/window.hpp"

#include <cstdint>
#include <vector>

namespace haarlab {

// Geometry of the shifted grid over the window: nestedness, disjointness from
// the standard grid, injectivity and placement of the half-measure associate,
// the exact boundary distance |I|/6, same-scale separation, and the two-half
// split of the full shift. Exact arithmetic throughout.
VerificationReport third_shift_suite(const WindowSpec& window);

// Shift-partition checks for one m: labels partition the window, the nested
// family of {J, tau_m(J), J u tau_m(J)}, collection/shift disjointness, the
// strong ancestor containment, the lambda-parameter bounds, and the shifted
// inclusion of the exiting class.
VerificationReport shift_partition_suite(std::int64_t m, const WindowSpec& window,
                                         const VerifyOptions& options = {});

// a + b_I - b_{tau_m I} = 1_{tau_m I} - 1_I for both eps, every window
// interval, plus the commutation of tau_m with all three shift maps.
VerificationReport identity_suite(std::int64_t m, const WindowSpec& window);

// Martingale checks for every label of m: the family checker plus the exact
// cross-generation orthogonality and Pythagoras identities.
VerificationReport mds_suite(std::int64_t m, const WindowSpec& window);

}  // namespace haarlab
