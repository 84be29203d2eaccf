// Finite-window numerical probes of operator norms: exact Gram matrices,
// L2 norms by power iteration on the exact Gram, Lp lower bounds by a
// nonlinear power method with exactly certified witness ratios, sweeps over
// shift widths, and the exact Pythagoras checks for the martingale families.
//
// Inputs are truncated to the window; operator images are exact global step
// functions, so reported ratios are true lower bounds with no boundary error.
#pragma once

#include "haarlab/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace haarlab {

enum class OperatorId { T, U, S, S0, S1, A, B, Bm };

OperatorId operator_id_from_string(const std::string& s);
std::string operator_id_str(OperatorId id);

struct OpSpec {
  OperatorId id = OperatorId::T;
  std::int64_t m = 1;
  int eps = 0;  // block index for A, B, Bm
};

// Image of the plain Haar function h_I.
StepFunction op_image(const OpSpec& op, const GridInterval& I);

// q * sqrt(2)^half with half in {0,1}.
struct GramValue {
  Rat q = Rat(0);
  int half = 0;
  double to_double() const;
};

// Entry (I,J) = <op e_I, op e_J> for the L2-normalized basis e_I = h_I/|I|^{1/2},
// exact: rational when scale(I)+scale(J) is even, rational times sqrt(2) otherwise.
std::vector<std::vector<GramValue>> gram_matrix(const OpSpec& op,
                                                const std::vector<GridInterval>& basis);

struct PowerConfig {
  long max_iter = 200;
  double tol = 1e-9;
  unsigned long seed = 0;  // 0 = no extra random restart
};

struct NormReport {
  std::string op;
  std::int64_t m = 0;
  double p = 2.0;
  std::string label = "full";
  std::string window;
  double lower_bound = 0.0;  // certified witness ratio ||Op u*||_p / ||u*||_p
  long iterations = 0;
  bool converged = false;
  double residual = 0.0;
  // Witness expansion (plain Haar coefficients); empty entries omitted.
  std::vector<std::pair<GridInterval, Rat>> witness;
  // ratio^p as an exact rational, present when p is a positive even integer.
  std::optional<Rat> ratio_pth_power;
};

// Largest-eigenvalue estimate of the exact Gram by power iteration
// (deterministic all-ones start, Rayleigh tolerance 1e-10, cap 1e4), then a
// certified exact Rayleigh quotient at the final iterate.
NormReport norm_l2(const OpSpec& op, const WindowSpec& window,
                   const std::optional<PartitionLabel>& restricted = {});

// Lower bound on the p -> p operator norm by alternating duality maps;
// deterministic all-ones start plus one restart from the coordinate
// maximizing the first iterate (a basis-vector witness), plus an optional
// seeded random restart. The best exact witness ratio is reported.
NormReport norm_lp_lower(const OpSpec& op, const WindowSpec& window, double p,
                         const std::optional<PartitionLabel>& restricted = {},
                         const PowerConfig& config = {});

enum class RestrictedMode { Full, PerLabel, Both };

struct SweepRow {
  std::string op;
  std::int64_t m = 0;
  double p = 0.0;
  std::string label;
  double lower_bound = 0.0;
  double ref_curve = 0.0;  // (log2(2+m))^exponent
  long iterations = 0;
  bool converged = false;
};

std::vector<SweepRow> sweep(OperatorId op, const std::vector<std::int64_t>& m_values, double p,
                            const WindowSpec& window, RestrictedMode mode,
                            const PowerConfig& config, std::optional<double> ref_exponent = {},
                            int eps = 0);

// CSV with schema: op,m,p,label,lower_bound,ref_curve,iterations,converged
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json_lines(const std::vector<SweepRow>& rows);

struct PythagorasRecord {
  std::string family;
  bool orthogonal = true;   // all cross-generation inner products vanish
  bool pythagoras = true;   // ||sum||_2^2 equals the sum over generations
  std::string detail;
};

// Exact rational orthogonality and Pythagoras identities for the per-
// generation sums of every martingale family attached to the label.
std::vector<PythagorasRecord> pythagoras_check(std::int64_t m, const PartitionLabel& label,
                                               const WindowSpec& window);

}  // namespace haarlab
