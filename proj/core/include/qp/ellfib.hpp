#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qp/poly.hpp"
#include "qp/quadfield.hpp"
#include "qp/squarefree.hpp"

namespace qp {

// -- field sqrt hooks --------------------------------------------------------

inline std::optional<Rat> field_sqrt(const Rat& v) { return sqrt_exact(v); }

inline std::optional<RatFunc> field_sqrt(const RatFunc& v) {
  auto n = poly_sqrt(v.num);
  auto d = poly_sqrt(v.den);
  if (!n || !d) return std::nullopt;
  return RatFunc(*n, *d);
}

// -- Weierstrass models and the group law ------------------------------------

template <class K>
struct ECPoint {
  bool infinity{true};
  K x{0}, y{0};

  static ECPoint identity() { return ECPoint{}; }
  static ECPoint affine(K x, K y) { return ECPoint{false, std::move(x), std::move(y)}; }

  friend bool operator==(const ECPoint& p, const ECPoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
};

template <class K>
struct WeierstrassModel {
  K a1{0}, a2{0}, a3{0}, a4{0}, a6{0};

  K discriminant() const {
    K b2 = a1 * a1 + K(4) * a2;
    K b4 = K(2) * a4 + a1 * a3;
    K b6 = a3 * a3 + K(4) * a6;
    K b8 = a1 * a1 * a6 + K(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - K(8) * b4 * b4 * b4 - K(27) * b6 * b6 + K(9) * b2 * b4 * b6;
  }

  bool on_curve(const ECPoint<K>& p) const {
    if (p.infinity) return true;
    K lhs = p.y * p.y + a1 * p.x * p.y + a3 * p.y;
    K rhs = p.x * p.x * p.x + a2 * p.x * p.x + a4 * p.x + a6;
    return lhs == rhs;
  }
};

template <class K>
ECPoint<K> ec_neg(const WeierstrassModel<K>& E, const ECPoint<K>& p) {
  if (p.infinity) return p;
  return ECPoint<K>::affine(p.x, -p.y - E.a1 * p.x - E.a3);
}

template <class K>
ECPoint<K> ec_add(const WeierstrassModel<K>& E, const ECPoint<K>& p, const ECPoint<K>& q) {
  if (!E.on_curve(p) || !E.on_curve(q)) throw std::invalid_argument("ec_add: point not on curve");
  if (p.infinity) return q;
  if (q.infinity) return p;
  K lambda, nu;
  if (p.x == q.x) {
    K neg_y = -p.y - E.a1 * p.x - E.a3;
    if (q.y == neg_y) return ECPoint<K>::identity();
    K den = K(2) * p.y + E.a1 * p.x + E.a3;
    lambda = (K(3) * p.x * p.x + K(2) * E.a2 * p.x + E.a4 - E.a1 * p.y) / den;
    nu = (-(p.x * p.x * p.x) + E.a4 * p.x + K(2) * E.a6 - E.a3 * p.y) / den;
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
    nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
  }
  K x3 = lambda * lambda + E.a1 * lambda - E.a2 - p.x - q.x;
  K y3 = -(lambda + E.a1) * x3 - nu - E.a3;
  return ECPoint<K>::affine(std::move(x3), std::move(y3));
}

template <class K>
ECPoint<K> ec_mul(const WeierstrassModel<K>& E, long n, ECPoint<K> p) {
  if (n < 0) {
    p = ec_neg(E, p);
    n = -n;
  }
  ECPoint<K> acc = ECPoint<K>::identity();
  for (; n; n >>= 1) {
    if (n & 1) acc = ec_add(E, acc, p);
    if (n > 1) p = ec_add(E, p, p);
  }
  return acc;
}

// -- quartic models -----------------------------------------------------------

/// v^2 = c4 u^4 + c3 u^3 + c2 u^2 + c1 u + c0 with a marked point.
template <class K>
struct QuarticModel {
  K c4{0}, c3{0}, c2{0}, c1{0}, c0{0};
  bool marked_at_infinity{true};
  K mu{0}, mv{0};  // marked affine point when not at infinity

  K eval(const K& u) const { return (((c4 * u + c3) * u + c2) * u + c1) * u + c0; }

  bool marked_on_curve() const {
    if (marked_at_infinity) return field_sqrt(c4).has_value();
    return mv * mv == eval(mu);
  }
};

/// Discriminant of the defining quartic (cubic formula when c4 = 0).
template <class K>
K quartic_disc(const QuarticModel<K>& m) {
  const K &a = m.c4, &b = m.c3, &c = m.c2, &d = m.c1, &e = m.c0;
  if (!(a == K(0))) {
    return K(256) * a * a * a * e * e * e - K(192) * a * a * b * d * e * e -
           K(128) * a * a * c * c * e * e + K(144) * a * a * c * d * d * e -
           K(27) * a * a * d * d * d * d + K(144) * a * b * b * c * e * e -
           K(6) * a * b * b * d * d * e - K(80) * a * b * c * c * d * e +
           K(18) * a * b * c * d * d * d + K(16) * a * c * c * c * c * e -
           K(4) * a * c * c * c * d * d - K(27) * b * b * b * b * e * e +
           K(18) * b * b * b * c * d * e - K(4) * b * b * b * d * d * d -
           K(4) * b * b * c * c * c * e + b * b * c * c * d * d;
  }
  if (!(b == K(0))) {
    // cubic b u^3 + c u^2 + d u + e
    return K(18) * b * c * d * e - K(4) * c * c * c * e + c * c * d * d - K(4) * b * d * d * d -
           K(27) * b * b * e * e;
  }
  throw std::invalid_argument("quartic_disc: degree < 3");
}

// -- quartic <-> Weierstrass transformation ----------------------------------

/// Birational transformation pipeline: optional shift u -> u + u0 (marked
/// affine point moved to u = 0), optional reversal (u, v) -> (1/u, v/u^2),
/// then the classical map based at (0, q).  When the marked point is a root
/// of the quartic, the reversed model is already a cubic and a linear scaling
/// finishes the job.
template <class K>
struct QuarticTransform {
  bool shift{false};
  K u0{0};
  bool reversed{false};
  bool cubic{false};
  // core quartic a u^4 + b u^3 + c u^2 + d u + q^2 (cubic case: lead = d)
  K a{0}, b{0}, c{0}, d{0}, q{0};
  WeierstrassModel<K> E;

  /// Core map based at (0, q) of a u^4 + b u^3 + c u^2 + d u + q^2 (or the
  /// linear scaling in the cubic case).  No pipeline, no zero guards.
  template <class T, class Lift>
  std::pair<T, T> core_xy(const T& u, const T& v, Lift lift) const {
    if (cubic) {
      T dd = lift(d);
      return {dd * u, dd * v};
    }
    T qq = lift(q), cc = lift(c), dd = lift(d);
    T u2 = u * u;
    T x = (T(2) * qq * (v + qq) + dd * u) / u2;
    T y = (T(4) * qq * qq * (v + qq) + T(2) * qq * (dd * u + cc * u2) - dd * dd * u2 / (T(2) * qq)) /
          (u2 * u);
    return {std::move(x), std::move(y)};
  }

  template <class T, class Lift>
  std::pair<T, T> core_uv(const T& x, const T& y, Lift lift) const {
    if (cubic) {
      T dd = lift(d);
      return {x / dd, y / dd};
    }
    T qq = lift(q), cc = lift(c), dd = lift(d);
    T u = (T(2) * qq * (x + cc) - dd * dd / (T(2) * qq)) / y;
    T v = -qq + u * (u * x - dd) / (T(2) * qq);
    return {std::move(u), std::move(v)};
  }

  /// Full forward on coordinates, in any field-like type T; Lift maps K
  /// constants into T.  Assumes all intermediate denominators are invertible.
  template <class T, class Lift>
  std::pair<T, T> forward_uv(T u, T v, Lift lift) const {
    if (shift) u = u - lift(u0);
    if (reversed) {
      T ui = T(1) / u;
      v = v * ui * ui;
      u = ui;
    }
    return core_xy(u, v, lift);
  }

  template <class T, class Lift>
  std::pair<T, T> inverse_xy(const T& x, const T& y, Lift lift) const {
    auto [u, v] = core_uv(x, y, lift);
    if (reversed) {
      T ui = T(1) / u;
      v = v * ui * ui;
      u = ui;
    }
    if (shift) u = u + lift(u0);
    return {std::move(u), std::move(v)};
  }

  /// Concrete forward: quartic point -> point of E, with explicit handling of
  /// the points the coordinate formulas miss.
  ECPoint<K> apply(K u, K v) const {
    auto id = [](const K& k) { return k; };
    if (shift) u = u - u0;
    if (reversed) {
      if (u == K(0)) {
        if (cubic && v == K(0)) return ECPoint<K>::identity();  // the marked root
        throw std::domain_error("transform: point over the reversal pole");
      }
      K ui = K(1) / u;
      v = v * ui * ui;
      u = ui;
    }
    if (!cubic && u == K(0)) {
      if (v == q) return ECPoint<K>::identity();
      throw std::domain_error("transform: exceptional point over u = 0");
    }
    auto [x, y] = core_xy<K>(u, v, id);
    return ECPoint<K>::affine(x, y);
  }

  /// Concrete inverse: affine point of E -> quartic point.  The identity has
  /// no affine preimage (it is the marked point).
  std::pair<K, K> unapply(const ECPoint<K>& p) const {
    if (p.infinity) throw std::domain_error("transform: identity corresponds to the marked point");
    if (!cubic && p.y == K(0))
      throw std::domain_error("transform: 2-torsion maps to a ramification point of the quartic");
    auto id = [](const K& k) { return k; };
    auto [u, v] = core_uv<K>(p.x, p.y, id);
    if (reversed) {
      if (u == K(0))
        throw std::domain_error("transform: preimage lies at infinity of the quartic");
      K ui = K(1) / u;
      v = v * ui * ui;
      u = ui;
    }
    if (shift) u = u + u0;
    return {std::move(u), std::move(v)};
  }
};

template <class K>
QuarticTransform<K> quartic_to_weierstrass(const QuarticModel<K>& m) {
  if (m.c4 == K(0) && m.c3 == K(0))
    throw std::invalid_argument("quartic_to_weierstrass: degree < 3");
  if (quartic_disc(m) == K(0)) throw std::invalid_argument("quartic_to_weierstrass: singular quartic");
  if (!m.marked_on_curve()) throw std::invalid_argument("quartic_to_weierstrass: marked point not on curve");

  QuarticTransform<K> tr;
  K s4 = m.c4, s3 = m.c3, s2 = m.c2, s1 = m.c1, s0 = m.c0;
  if (!m.marked_at_infinity) {
    // shift the marked point to u = 0
    tr.shift = true;
    tr.u0 = m.mu;
    const K& t = m.mu;
    // Taylor coefficients of f(u + t)
    K ns0 = (((s4 * t + s3) * t + s2) * t + s1) * t + s0;
    K ns1 = (K(4) * s4 * t + K(3) * s3) * t * t + K(2) * s2 * t + s1;
    K ns2 = K(6) * s4 * t * t + K(3) * s3 * t + s2;
    K ns3 = K(4) * s4 * t + s3;
    s0 = ns0;
    s1 = ns1;
    s2 = ns2;
    s3 = ns3;
  }
  if (m.marked_at_infinity || m.mv == K(0)) {
    tr.reversed = true;
    std::swap(s0, s4);
    std::swap(s1, s3);
  }
  if (!m.marked_at_infinity && m.mv == K(0)) {
    // reversed model is a cubic s1' u^3 + ... (s4 after the swap is 0)
    if (s4 == K(0) && s3 == K(0))
      throw std::invalid_argument("quartic_to_weierstrass: marked point is a singular root");
    tr.cubic = true;
    tr.a = s0;
    tr.b = s1;
    tr.c = s2;
    tr.d = s3;
    tr.E.a2 = s2;
    tr.E.a4 = s1 * s3;
    tr.E.a6 = s0 * s3 * s3;
    return tr;
  }
  // core map based at (0, q)
  K q2 = s0;
  std::optional<K> qr;
  if (m.marked_at_infinity) {
    qr = field_sqrt(q2);
    if (!qr) throw std::invalid_argument("quartic_to_weierstrass: leading coefficient is not a square");
  } else {
    qr = m.mv;
  }
  tr.a = s4;
  tr.b = s3;
  tr.c = s2;
  tr.d = s1;
  tr.q = *qr;
  const K& q = tr.q;
  tr.E.a1 = tr.d / q;
  tr.E.a2 = tr.c - tr.d * tr.d / (K(4) * q * q);
  tr.E.a3 = K(2) * q * tr.b;
  tr.E.a4 = -K(4) * q * q * tr.a;
  tr.E.a6 = tr.E.a2 * tr.E.a4;
  return tr;
}

// -- symbolic function-field elements on a curve -------------------------------

/// Quadratic extension L = K(u)[v] / (v^2 - s0(u) - s1(u) v); elements a + b v
/// with a, b rational functions of u.  Used for exact round-trip identity
/// checks of birational maps.
template <class K>
struct CurveRing {
  RF<K> s0;
  RF<K> s1;
};

template <class K>
struct CurveElt {
  const CurveRing<K>* ring{nullptr};
  RF<K> a;
  RF<K> b;

  CurveElt() = default;
  CurveElt(int v) : a(v) {}  // ring-agnostic constant (required by T(int) in templates)
  CurveElt(const CurveRing<K>* r, RF<K> a_, RF<K> b_) : ring(r), a(std::move(a_)), b(std::move(b_)) {}

  static CurveElt coordinate(const CurveRing<K>* r) { return CurveElt(r, RF<K>::t(), RF<K>(0)); }
  static CurveElt generator(const CurveRing<K>* r) { return CurveElt(r, RF<K>(0), RF<K>(1)); }
  static CurveElt constant(const CurveRing<K>* r, const K& k) { return CurveElt(r, RF<K>(k), RF<K>(0)); }

  const CurveRing<K>* common_ring(const CurveElt& o) const { return ring ? ring : o.ring; }

  friend bool operator==(const CurveElt& x, const CurveElt& y) { return x.a == y.a && x.b == y.b; }

  friend CurveElt operator+(const CurveElt& x, const CurveElt& y) {
    return CurveElt(x.common_ring(y), x.a + y.a, x.b + y.b);
  }
  friend CurveElt operator-(const CurveElt& x, const CurveElt& y) {
    return CurveElt(x.common_ring(y), x.a - y.a, x.b - y.b);
  }
  friend CurveElt operator-(const CurveElt& x) { return CurveElt(x.ring, -x.a, -x.b); }
  friend CurveElt operator*(const CurveElt& x, const CurveElt& y) {
    const CurveRing<K>* r = x.common_ring(y);
    if (!r) return CurveElt(nullptr, x.a * y.a, RF<K>(0));
    // (a1 + b1 v)(a2 + b2 v) with v^2 = s0 + s1 v
    RF<K> a = x.a * y.a + x.b * y.b * r->s0;
    RF<K> b = x.a * y.b + x.b * y.a + x.b * y.b * r->s1;
    return CurveElt(r, std::move(a), std::move(b));
  }
  CurveElt inv() const {
    if (!ring || b.is_zero()) {
      if (a.is_zero()) throw std::domain_error("CurveElt: division by zero");
      return CurveElt(ring, RF<K>(1) / a, RF<K>(0));
    }
    // conjugate vbar = s1 - v; (a + b v)(a + b s1 - b v) = a^2 + a b s1 - b^2 s0
    RF<K> ca = a + b * ring->s1;
    RF<K> cb = -b;
    RF<K> norm = a * a + a * b * ring->s1 - b * b * ring->s0;
    if (norm.is_zero()) throw std::domain_error("CurveElt: zero-norm element");
    return CurveElt(ring, ca / norm, cb / norm);
  }
  friend CurveElt operator/(const CurveElt& x, const CurveElt& y) { return x * y.inv(); }
};

/// Checks forward then inverse is the identity on the quartic function field,
/// and inverse then forward is the identity on the Weierstrass function field.
template <class K>
bool verify_roundtrip(const QuarticModel<K>& m, const QuarticTransform<K>& tr) {
  using E = CurveElt<K>;
  // quartic side: v^2 = f(u)
  Poly<K> f({m.c0, m.c1, m.c2, m.c3, m.c4});
  CurveRing<K> qr{RF<K>(f), RF<K>(0)};
  E u = E::coordinate(&qr), v = E::generator(&qr);
  auto lift_q = [&](const K& k) { return E::constant(&qr, k); };
  auto [x, y] = tr.template forward_uv<E>(u, v, lift_q);
  // image lies on E, symbolically
  E lhs = y * y + lift_q(tr.E.a1) * x * y + lift_q(tr.E.a3) * y;
  E rhs = x * x * x + lift_q(tr.E.a2) * x * x + lift_q(tr.E.a4) * x + lift_q(tr.E.a6);
  if (!(lhs == rhs)) return false;
  auto [u2, v2] = tr.template inverse_xy<E>(x, y, lift_q);
  if (!(u2 == u && v2 == v)) return false;

  // Weierstrass side: y^2 = (x^3 + a2 x^2 + a4 x + a6) - a1 x y - a3 y
  Poly<K> s0({tr.E.a6, tr.E.a4, tr.E.a2, K(1)});
  Poly<K> s1({-tr.E.a3, -tr.E.a1});
  CurveRing<K> wr{RF<K>(s0), RF<K>(s1)};
  E xs = E::coordinate(&wr), ys = E::generator(&wr);
  auto lift_w = [&](const K& k) { return E::constant(&wr, k); };
  auto [uu, vv] = tr.template inverse_xy<E>(xs, ys, lift_w);
  // preimage lies on the quartic, symbolically
  E fv = lift_w(m.c0) + uu * (lift_w(m.c1) + uu * (lift_w(m.c2) + uu * (lift_w(m.c3) + uu * lift_w(m.c4))));
  if (!(vv * vv == fv)) return false;
  auto [x2, y2] = tr.template forward_uv<E>(uu, vv, lift_w);
  return x2 == xs && y2 == ys;
}

// -- torsion ------------------------------------------------------------------

struct TorsionResult {
  bool torsion{false};
  int order{0};  // 0 encodes infinite order
  bool lutz_nagell_nonintegral{false};
};

/// Torsion test over Q via the Mazur bound: P is torsion iff nP = O for some
/// n <= 12.  Also reports whether P becomes non-integral on the cleared
/// integral model (Lutz-Nagell evidence for infinite order).
TorsionResult is_torsion(const WeierstrassModel<Rat>& E, const ECPoint<Rat>& P);

// -- sections of the quartic fibration over Q(t) --------------------------------

struct SpecializationPole : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadReduction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using FnQuartic = QuarticModel<RatFunc>;
using FnPoint = std::pair<RatFunc, RatFunc>;

inline constexpr int kSectionCap = 5;

/// Multiples n * Q of a non-marked base point Q on the quartic, n = 1..count,
/// as rational-function points satisfying the quartic identically.
std::vector<FnPoint> generate_sections(const FnQuartic& q, const FnPoint& base, int count,
                                       int cap = kSectionCap);

/// Evaluation at t = t0.  Throws SpecializationPole on a coordinate pole and
/// BadReduction when the specialized quartic is singular.
std::pair<Rat, Rat> specialize_section(const FnQuartic& q, const FnPoint& s, const Rat& t0);

/// Specialized quartic model over Q.
QuarticModel<Rat> specialize_quartic(const FnQuartic& q, const Rat& t0);

/// Lifted closed point of the double cover w^2 = s(x,y,z) from a fiber point
/// (u0, v0) at t = t0: [x:y:z] = [t0 : 1 : sqrt(u0)], w = v0.
struct LiftedPoint {
  Rat t0;
  Rat u0, v0;
  Int field_d{1};      // squarefree field of the z-coordinate
  bool is_rational{true};
  QuadElem z;          // sqrt(u0) in Q(sqrt(field_d))
  bool verified{false};  // exact check of w^2 = s(x, y, z)
};

class MultiPoly;  // fwd (full type in multipoly.hpp, included by callers of lift)
struct CyclicCoverModel;

LiftedPoint lift_to_quadratic_point(const CyclicCoverModel& c, const Rat& t0,
                                    const std::pair<Rat, Rat>& base_pt);

// -- conics over Q(t) -----------------------------------------------------------

/// Rational parametrization of v^2 = u^2 + c(t) through a given point, based
/// so that lambda = 0 returns the point itself.
struct ConicParam {
  RF<RatFunc> u_of_lambda;
  RF<RatFunc> v_of_lambda;

  std::pair<RatFunc, RatFunc> at(const Rat& lambda) const;
};

ConicParam conic_parametrize(const RatFunc& c, const FnPoint& pt);

}  // namespace qp
