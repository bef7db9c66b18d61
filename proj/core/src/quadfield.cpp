#include "qp/quadfield.hpp"

#include <cmath>

namespace qp {

bool is_square_in_field(const QuadElem& v) { return sqrt_in_field(v).has_value(); }

std::optional<QuadElem> sqrt_in_field(const QuadElem& v) {
  const Int& d = v.d;
  if (v.is_zero()) return QuadElem(d, 0, 0);
  if (v.b == 0) {
    // v rational: square iff v = x^2 or v = d y^2.
    if (auto r = sqrt_exact(v.a)) return QuadElem(d, *r, 0);
    if (d != 1) {
      if (auto r = sqrt_exact(v.a / Rat(d))) return QuadElem(d, 0, *r);
    }
    return std::nullopt;
  }
  // (x + y sqrt d)^2 = v forces x^2 = (a +- n)/2 with n^2 = norm(v), y = b/(2x).
  Rat n2 = v.norm();
  auto n = sqrt_exact(n2);
  if (!n) return std::nullopt;
  for (int sign : {1, -1}) {
    Rat cand = (v.a + Rat(sign) * (*n)) / 2;
    if (cand == 0) continue;  // b != 0 rules out x = 0
    if (auto x = sqrt_exact(cand)) {
      if (*x == 0) continue;
      Rat y = v.b / (2 * (*x));
      QuadElem root(d, *x, y);
      if (root * root == v) return root;
    }
  }
  return std::nullopt;
}

bool field_is_real(const Int& d) { return d > 0; }

double embed_real(const QuadElem& x, bool positive_root) {
  double sd = std::sqrt(mpz_get_d(x.d.get_mpz_t()));
  double s = positive_root ? sd : -sd;
  return to_double(x.a) + to_double(x.b) * s;
}

double embed_abs(const QuadElem& x, bool positive_root) {
  if (x.d > 0) return std::abs(embed_real(x, positive_root));
  double sd = std::sqrt(-mpz_get_d(x.d.get_mpz_t()));
  double re = to_double(x.a);
  double im = to_double(x.b) * sd;
  return std::hypot(re, im);
}

QuadElem maximal_order_generator(const Int& d) {
  Int r = d % 4;
  if (r < 0) r += 4;
  if (r == 1) return QuadElem(d, make_rat(1, 2), make_rat(1, 2));
  return QuadElem(d, 0, 1);
}

}  // namespace qp
