#include "haarlab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace haarlab {

Rat rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

Rat pow2(std::int64_t e) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e >= 0 ? e : -e));
  if (e >= 0) return Rat(p);
  Rat q(mpz_class(1), p);
  q.canonicalize();
  return q;
}

Rat rat_pow(const Rat& q, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite");
  return Rat(x);  // exact binary expansion
}

double to_double(const Rat& q) { return q.get_d(); }

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_parse(const std::string& text) {
  Rat q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("rat_parse: bad rational '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator '" + text + "'");
  q.canonicalize();
  return q;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  std::int64_t r = a % b;
  return (r != 0 && r < 0) ? q - 1 : q;
}

std::int64_t euclid_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace haarlab
