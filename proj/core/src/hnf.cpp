#include "qp/hnf.hpp"

#include <stdexcept>

namespace qp {

namespace {

// Coordinates of g = a + b sqrt(d) in the integral basis (1, omega).
// omega = sqrt(d): (a, b).  omega = (1+sqrt(d))/2: sqrt(d) = 2 omega - 1,
// so g = (a - b) + 2b omega.
std::pair<Rat, Rat> basis_coords(const QuadElem& g) {
  Int r = g.d % 4;
  if (r < 0) r += 4;
  if (r == 1) return {g.a - g.b, 2 * g.b};
  return {g.a, g.b};
}

}  // namespace

Rat module_norm_hnf(const std::vector<QuadElem>& generators) {
  bool any_nonzero = false;
  for (const auto& g : generators) any_nonzero |= !g.is_zero();
  if (!any_nonzero) throw std::invalid_argument("module_norm_hnf: all generators zero");

  Int d = 1;
  for (const auto& g : generators)
    if (g.d != 1) d = g.d;

  if (d == 1) {
    // Rational field: the module is a cyclic Z-module; norm = positive generator.
    Int den_lcm = 1;
    for (const auto& g : generators)
      if (!g.is_zero()) den_lcm = lcm(den_lcm, g.a.get_den());
    Int num_gcd = 0;
    for (const auto& g : generators)
      if (!g.is_zero()) num_gcd = gcd(num_gcd, Int(g.a.get_num() * (den_lcm / g.a.get_den())));
    return make_rat(abs(num_gcd), den_lcm);
  }

  QuadElem omega = maximal_order_generator(d);

  // Columns of the Z-span, as rational coordinates in (1, omega).
  std::vector<std::pair<Rat, Rat>> cols;
  for (auto g : generators) {
    if (g.is_zero()) continue;
    if (g.is_rational()) g = QuadElem(d, g.a, g.b);
    cols.push_back(basis_coords(g));
    cols.push_back(basis_coords(g * omega));
  }

  // Clear denominators.
  Int den = 1;
  for (const auto& [x, y] : cols) {
    den = lcm(den, x.get_den());
    den = lcm(den, y.get_den());
  }
  std::vector<std::pair<Int, Int>> icols;
  for (const auto& [x, y] : cols)
    icols.push_back({Int(x.get_num() * (den / x.get_den())), Int(y.get_num() * (den / y.get_den()))});

  // HNF determinant of the rank-2 integer column span.
  // g2 = gcd of second coordinates with an explicit combination vector.
  Int g2 = 0;
  Int wx = 0;  // first coordinate of a vector whose second coordinate is g2
  for (const auto& [x, y] : icols) {
    if (y == 0) continue;
    if (g2 == 0) {
      g2 = abs(y);
      wx = (y > 0) ? x : -x;
    } else {
      Int s, t, g;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g2.get_mpz_t(), y.get_mpz_t());
      wx = s * wx + t * x;
      g2 = g;
    }
  }
  if (g2 == 0) throw std::runtime_error("module_norm_hnf: degenerate lattice (rank < 2)");
  Int g1 = 0;
  for (const auto& [x, y] : icols) {
    Int reduced = x - (y / g2) * wx;
    g1 = gcd(g1, reduced);
  }
  if (g1 == 0) throw std::runtime_error("module_norm_hnf: degenerate lattice (rank < 2)");

  return make_rat(abs(g1 * g2), den * den);
}

}  // namespace qp
