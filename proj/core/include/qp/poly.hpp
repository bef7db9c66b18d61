#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qp/rational.hpp"

namespace qp {

/// Dense univariate polynomial over a field K.  c[i] is the coefficient of
/// x^i; no trailing zeros are stored, the zero polynomial has empty c.
template <class K>
struct Poly {
  std::vector<K> c;

  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<K> coeffs) : c(coeffs) { trim(); }

  static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
  static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

  void trim() {
    while (!c.empty() && c.back() == K(0)) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const K& lead() const {
    if (is_zero()) throw std::domain_error("Poly: lead of zero");
    return c.back();
  }
  K coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : K(0); }

  template <class T>
  T eval(const T& x) const {
    T r(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + T(*it);
    return r;
  }

  Poly derivative() const {
    std::vector<K> r;
    for (size_t i = 1; i < c.size(); ++i) r.push_back(K(static_cast<long>(i)) * c[i]);
    return Poly(std::move(r));
  }

  friend bool operator==(const Poly& f, const Poly& g) { return f.c == g.c; }

  friend Poly operator+(const Poly& f, const Poly& g) {
    std::vector<K> r(std::max(f.c.size(), g.c.size()), K(0));
    for (size_t i = 0; i < f.c.size(); ++i) r[i] = r[i] + f.c[i];
    for (size_t i = 0; i < g.c.size(); ++i) r[i] = r[i] + g.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& f, const Poly& g) {
    std::vector<K> r(std::max(f.c.size(), g.c.size()), K(0));
    for (size_t i = 0; i < f.c.size(); ++i) r[i] = r[i] + f.c[i];
    for (size_t i = 0; i < g.c.size(); ++i) r[i] = r[i] - g.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& f) { return Poly{} - f; }
  friend Poly operator*(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly{};
    std::vector<K> r(f.c.size() + g.c.size() - 1, K(0));
    for (size_t i = 0; i < f.c.size(); ++i)
      for (size_t j = 0; j < g.c.size(); ++j) r[i + j] = r[i + j] + f.c[i] * g.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const K& a, const Poly& f) {
    std::vector<K> r = f.c;
    for (auto& x : r) x = a * x;
    return Poly(std::move(r));
  }

  /// Euclidean division: f = q*g + r with deg r < deg g.
  friend std::pair<Poly, Poly> divmod(Poly f, const Poly& g) {
    if (g.is_zero()) throw std::domain_error("Poly: division by zero");
    std::vector<K> q(f.degree() >= g.degree() ? f.degree() - g.degree() + 1 : 0, K(0));
    while (!f.is_zero() && f.degree() >= g.degree()) {
      K t = f.lead() / g.lead();
      int shift = f.degree() - g.degree();
      q[shift] = t;
      for (size_t i = 0; i < g.c.size(); ++i)
        f.c[i + shift] = f.c[i + shift] - t * g.c[i];
      f.trim();
    }
    return {Poly(std::move(q)), std::move(f)};
  }
  friend Poly operator/(const Poly& f, const Poly& g) { return divmod(f, g).first; }
  friend Poly operator%(const Poly& f, const Poly& g) { return divmod(f, g).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    K inv = K(1) / lead();
    return inv * (*this);
  }

  Poly pow(unsigned e) const {
    Poly r = constant(K(1));
    Poly b = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * b;
      b = b * b;
    }
    return r;
  }
};

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Exact square root of a polynomial of even degree, when it exists.
template <class K>
std::optional<Poly<K>> poly_sqrt(const Poly<K>& f) {
  if (f.is_zero()) return Poly<K>{};
  if (f.degree() % 2 != 0) return std::nullopt;
  // Solve g^2 = f coefficient by coefficient from the top.
  int dg = f.degree() / 2;
  // Leading coefficient must be a square; for generic K detect by dividing out.
  std::vector<K> g(dg + 1, K(0));
  K lead2 = f.lead();
  // Try to find sqrt of lead within K only for K = Rat; generic callers should
  // pre-normalize.  Here we require lead to be 1 or a perfect square via K-level hook.
  if constexpr (std::is_same_v<K, Rat>) {
    auto r = sqrt_exact(lead2);
    if (!r) return std::nullopt;
    g[dg] = *r;
  } else {
    if (!(lead2 == K(1))) return std::nullopt;
    g[dg] = K(1);
  }
  for (int i = dg - 1; i >= 0; --i) {
    // Coefficient of x^(i+dg) in g^2 is sum_{j+k=i+dg} g_j g_k; isolate 2 g_i g_dg.
    K acc(0);
    for (int j = i + 1; j <= dg; ++j) {
      int k = i + dg - j;
      if (k >= 0 && k <= dg && k > i) acc = acc + g[j] * g[k];
    }
    g[i] = (f.coeff(i + dg) - acc) / (K(2) * g[dg]);
  }
  Poly<K> cand{std::vector<K>(g)};
  if (cand * cand == f) return cand;
  return std::nullopt;
}

/// Reduced fraction of polynomials over K; denominator monic and coprime to
/// the numerator, so equality is componentwise.
template <class K>
struct RF {
  Poly<K> num;
  Poly<K> den = Poly<K>::constant(K(1));

  RF() : num{} {}
  RF(int v) : num(Poly<K>::constant(K(v))) {}
  explicit RF(K v) : num(Poly<K>::constant(std::move(v))) {}
  explicit RF(Poly<K> n) : num(std::move(n)) {}
  RF(Poly<K> n, Poly<K> d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  static RF t() { return RF(Poly<K>::x()); }

  void reduce() {
    if (den.is_zero()) throw std::domain_error("RF: zero denominator");
    if (num.is_zero()) {
      den = Poly<K>::constant(K(1));
      return;
    }
    Poly<K> g = poly_gcd(num, den);
    num = num / g;
    den = den / g;
    K inv = K(1) / den.lead();
    num = inv * num;
    den = inv * den;
  }

  bool is_zero() const { return num.is_zero(); }

  friend bool operator==(const RF& f, const RF& g) { return f.num == g.num && f.den == g.den; }

  friend RF operator+(const RF& f, const RF& g) { return RF(f.num * g.den + g.num * f.den, f.den * g.den); }
  friend RF operator-(const RF& f, const RF& g) { return RF(f.num * g.den - g.num * f.den, f.den * g.den); }
  friend RF operator-(const RF& f) { return RF(-f.num, f.den); }
  friend RF operator*(const RF& f, const RF& g) { return RF(f.num * g.num, f.den * g.den); }
  friend RF operator/(const RF& f, const RF& g) {
    if (g.is_zero()) throw std::domain_error("RF: division by zero function");
    return RF(f.num * g.den, f.den * g.num);
  }

  /// Evaluation at a point of K; nullopt at a pole.
  std::optional<K> eval(const K& x) const {
    K d = den.eval(x);
    if (d == K(0)) return std::nullopt;
    return num.eval(x) / d;
  }
};

using UPoly = Poly<Rat>;
using RatFunc = RF<Rat>;

std::string poly_str(const UPoly& f, const std::string& var = "t");
std::string ratfunc_str(const RatFunc& f, const std::string& var = "t");

}  // namespace qp
