#pragma once

#include <complex>
#include <optional>
#include <stdexcept>

#include "qp/rational.hpp"
#include "qp/squarefree.hpp"

namespace qp {

/// Element a + b*sqrt(d) of Q(sqrt(d)), d squarefree.  d = 1 encodes Q itself
/// (then b = 0 always).
struct QuadElem {
  Int d{1};
  Rat a{0};
  Rat b{0};

  QuadElem() = default;
  QuadElem(int v) : a(v) {}
  QuadElem(const Rat& v) : a(v) {}
  QuadElem(Int d_, Rat a_, Rat b_) : d(std::move(d_)), a(std::move(a_)), b(std::move(b_)) {
    if (d == 1 && b != 0) throw std::invalid_argument("QuadElem: d = 1 forces b = 0");
    if (d == 0) throw std::invalid_argument("QuadElem: d must be nonzero");
  }
  static QuadElem rational(const Rat& a, const Int& d = 1) { return QuadElem(d, a, 0); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  QuadElem conj() const { return QuadElem(d, a, -b); }
  Rat trace() const { return 2 * a; }
  Rat norm() const { return a * a - Rat(d) * b * b; }

  friend bool operator==(const QuadElem& x, const QuadElem& y) {
    return x.a == y.a && x.b == y.b && (x.b == 0 || x.d == y.d);
  }
};

inline void check_same_field(const QuadElem& x, const QuadElem& y) {
  if (x.d != y.d && !x.is_rational() && !y.is_rational())
    throw std::invalid_argument("QuadElem: mixed quadratic fields");
}

inline Int common_d(const QuadElem& x, const QuadElem& y) {
  if (!x.is_rational()) return x.d;
  if (!y.is_rational()) return y.d;
  return x.d != 1 ? x.d : y.d;
}

inline QuadElem operator+(const QuadElem& x, const QuadElem& y) {
  check_same_field(x, y);
  return QuadElem(common_d(x, y), x.a + y.a, x.b + y.b);
}

inline QuadElem operator-(const QuadElem& x, const QuadElem& y) {
  check_same_field(x, y);
  return QuadElem(common_d(x, y), x.a - y.a, x.b - y.b);
}

inline QuadElem operator-(const QuadElem& x) { return QuadElem(x.d, -x.a, -x.b); }

inline QuadElem operator*(const QuadElem& x, const QuadElem& y) {
  check_same_field(x, y);
  Int d = common_d(x, y);
  return QuadElem(d, x.a * y.a + Rat(d) * x.b * y.b, x.a * y.b + x.b * y.a);
}

inline QuadElem operator*(const Rat& c, const QuadElem& x) { return QuadElem(x.d, c * x.a, c * x.b); }

inline QuadElem inverse(const QuadElem& x) {
  Rat n = x.norm();
  if (n == 0) throw std::domain_error("QuadElem: inverse of zero (or zero-norm) element");
  return QuadElem(x.d, x.a / n, -x.b / n);
}

inline QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * inverse(y); }

/// Field norm a^2 - d b^2 (= x * conj(x)).
inline Rat qf_norm(const QuadElem& x) { return x.norm(); }

/// Exact square test in Q(sqrt(d)) via norm and trace conditions.
bool is_square_in_field(const QuadElem& v);

/// A square root in Q(sqrt(d)) when one exists.
std::optional<QuadElem> sqrt_in_field(const QuadElem& v);

/// Real or complex embeddings.  For d > 0 the two real images; for d < 0 the
/// modulus of the (single, weight-2) complex pair.
double embed_real(const QuadElem& x, bool positive_root);
double embed_abs(const QuadElem& x, bool positive_root);
bool field_is_real(const Int& d);

/// Integral generator of the maximal order: (1+sqrt(d))/2 if d = 1 mod 4, else sqrt(d).
QuadElem maximal_order_generator(const Int& d);

}  // namespace qp
