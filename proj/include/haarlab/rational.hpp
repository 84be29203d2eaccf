// Exact rational arithmetic (GMP-backed) plus small integer helpers used
// throughout the grid and step-function layers.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace haarlab {

using Rat = mpq_class;

// Canonicalized rational num/den, den > 0.
Rat rat(std::int64_t num, std::int64_t den = 1);

// 2^e for any integer e (negative exponents give exact fractions).
Rat pow2(std::int64_t e);

// q^e for e >= 0.
Rat rat_pow(const Rat& q, unsigned long e);

// Exact binary value of a double (finite inputs only).
Rat rat_from_double(double x);

double to_double(const Rat& q);

// "n" or "n/d", lowest terms.
std::string rat_str(const Rat& q);

// Parses "n", "n/d" or a plain integer string. Throws std::invalid_argument.
Rat rat_parse(const std::string& text);

// Floor division / Euclidean remainder for int64 with positive divisor.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t euclid_mod(std::int64_t a, std::int64_t b);

}  // namespace haarlab
