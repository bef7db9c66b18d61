#include "qp/squarefree.hpp"

#include <map>
#include <stdexcept>

namespace qp {

namespace {

bool probably_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

/// Deterministic Pollard rho (Brent's cycle variant with fixed increments).
Int rho_factor(const Int& n) {
  if (n % 2 == 0) return 2;
  for (long c = 1; c < 64; ++c) {
    Int x = 2, y = 2, d = 1;
    Int saved = 1;
    for (long iter = 0; d == 1 && iter < 2'000'000; ++iter) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      saved = (saved * diff) % n;
      if (iter % 128 == 127) {
        d = gcd(saved, n);
        saved = 1;
      }
    }
    if (d == 1) d = gcd(saved, n);
    if (d != 1 && d != n) return d;
  }
  throw std::runtime_error("squarefree_part: factorization failed");
}

void factor_into(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    out[n] += 1;
    return;
  }
  if (is_perfect_square(n)) {
    Int r = isqrt(n);
    std::map<Int, int> inner;
    factor_into(r, inner);
    for (auto& [p, e] : inner) out[p] += 2 * e;
    return;
  }
  Int d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::pair<SquarefreeInt, Int> squarefree_part(const Int& n, unsigned long trial_bound) {
  if (n == 0) throw std::invalid_argument("squarefree_part: zero input");
  Int m = abs(n);
  Int s = 1, f = 1;
  for (Int p = 2; p * p <= m && p <= trial_bound; p == 2 ? p = 3 : p += 2) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) f *= p;
    if (e % 2 == 1) s *= p;
  }
  if (m > 1) {
    std::map<Int, int> fac;
    factor_into(m, fac);
    for (const auto& [p, e] : fac) {
      for (int i = 0; i < e / 2; ++i) f *= p;
      if (e % 2 == 1) s *= p;
    }
  }
  if (n < 0) s = -s;
  return {SquarefreeInt{s}, f};
}

SquarefreeInt squarefree_kernel(const Rat& q) {
  if (q == 0) throw std::invalid_argument("squarefree_kernel: zero input");
  return squarefree_part(q.get_num() * q.get_den()).first;
}

bool is_squarefree(const Int& n, unsigned long trial_bound) {
  if (n == 0) return false;
  return squarefree_part(n, trial_bound).second == 1;
}

Int field_discriminant(const SquarefreeInt& d) {
  if (d.value == 0) throw std::invalid_argument("field_discriminant: zero input");
  if (!is_squarefree(d.value)) throw std::invalid_argument("field_discriminant: input not squarefree");
  if (d.value == 1) return 1;
  Int r = d.value % 4;
  if (r < 0) r += 4;
  return r == 1 ? d.value : 4 * d.value;
}

}  // namespace qp
