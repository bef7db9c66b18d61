#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace qp {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative input");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// A rational is a square iff numerator and denominator are both squares.
inline bool is_square(const Rat& q) {
  if (q < 0) return false;
  return is_perfect_square(q.get_num()) && is_perfect_square(q.get_den());
}

inline std::optional<Rat> sqrt_exact(const Rat& q) {
  if (!is_square(q)) return std::nullopt;
  return make_rat(isqrt(q.get_num()), isqrt(q.get_den()));
}

inline double to_double(const Rat& q) { return mpq_get_d(q.get_mpq_t()); }

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  return make_rat(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace qp
