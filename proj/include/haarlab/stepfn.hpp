// Exact scalar step functions: Haar functions, indicators, arithmetic,
// integration, Lp norms, conditional expectation, and the martingale
// difference checker. Everything in this module is exact; no tolerances.
#pragma once

#include "haarlab/grid.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace haarlab {

// Piecewise constant, compactly supported, canonical form: strictly
// increasing breakpoints, no zero-width pieces, no adjacent equal values,
// leading/trailing zero pieces trimmed. The zero function has no pieces.
// Equality is structural equality of canonical forms.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<Rat> breakpoints, std::vector<Rat> values);

  static StepFunction zero() { return {}; }
  static StepFunction indicator(const RatSet& a);
  // +1 on the left half of I, -1 on the right half, 0 outside.
  static StepFunction haar(const GridInterval& I);
  // Exact n-ary sum (event sweep; cheaper than folding add).
  static StepFunction sum(std::span<const StepFunction> fs);

  const std::vector<Rat>& breakpoints() const { return bps_; }
  const std::vector<Rat>& values() const { return vals_; }
  bool is_zero() const { return vals_.empty(); }

  StepFunction add(const StepFunction& g) const;
  StepFunction subtract(const StepFunction& g) const;
  StepFunction scale_by(const Rat& c) const;
  StepFunction multiply(const StepFunction& g) const;
  StepFunction reflect() const;  // f(-x)

  Rat eval(const Rat& x) const;
  RatSet support() const;

  bool operator==(const StepFunction&) const = default;

 private:
  void normalize();
  std::vector<Rat> bps_;
  std::vector<Rat> vals_;
};

Rat integral(const StepFunction& f);
Rat integral(const StepFunction& f, const RatSet& over);
Rat integral(const StepFunction& f, const Rat& lo, const Rat& hi);
Rat inner_product(const StepFunction& f, const StepFunction& g);

struct LpNorm {
  std::optional<Rat> exact_pth_power;  // present iff p is a positive even integer
  double value = 0.0;                  // the norm itself
};

// p >= 1. Exact p-th power for positive even integer p; floating otherwise.
LpNorm lp_norm(const StepFunction& f, double p);
Rat lp_pth_power_even(const StepFunction& f, long p);

// Averages f over each cell. Cells must be pairwise disjoint and cover the
// support of f (support escaping the cells is an error).
StepFunction cond_exp(const StepFunction& f, std::span<const RatSet> cells);

struct MdsMember {
  std::int64_t generation = 0;  // smaller = coarser
  StepFunction f;
};

// Martingale-difference check for a family of step functions graded by
// generation. A family passes iff (a) every member has integral zero and
// (c) every member integrates to zero over each cell of the common refinement
// of the breakpoints of all strictly coarser members, i.e. the per-generation
// sums form a martingale difference sequence for every choice of
// coefficients. Same-generation support overlaps do not break that structure
// (the generation sum is a single difference) and are reported separately.
struct MdsReport {
  bool ok = true;
  std::string violation;                                            // empty when ok
  std::optional<std::size_t> offending_member;                      // index into the family
  std::vector<std::pair<std::size_t, std::size_t>> same_gen_overlaps;
};

MdsReport mds_check(std::span<const MdsMember> family);

}  // namespace haarlab
