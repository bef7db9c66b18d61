#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qp/hnf.hpp"
#include "qp/poly.hpp"
#include "qp/quadfield.hpp"
#include "qp/squarefree.hpp"

using namespace qp;

TEST_CASE("squarefree_part on small inputs") {
  auto [s, f] = squarefree_part(Int(12));
  CHECK(s.value == 3);
  CHECK(f == 2);

  auto [s1, f1] = squarefree_part(Int(1));
  CHECK(s1.value == 1);
  CHECK(f1 == 1);

  auto [s2, f2] = squarefree_part(Int(-8));
  CHECK(s2.value == -2);
  CHECK(f2 == 2);

  CHECK_THROWS_AS(squarefree_part(Int(0)), std::invalid_argument);
}

TEST_CASE("squarefree_part recomposes its input") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  for (int i = 0; i < 200; ++i) {
    long n = dist(rng);
    if (n == 0) continue;
    auto [s, f] = squarefree_part(Int(n));
    CHECK(s.value * f * f == n);
    CHECK(f > 0);
    CHECK(is_squarefree(s.value));
  }
}

TEST_CASE("squarefree_part handles cofactors past the trial bound") {
  // two primes above the trial-division bound
  Int p("1000003"), q("1000033");
  auto [s, f] = squarefree_part(p * q);
  CHECK(s.value == p * q);
  CHECK(f == 1);

  auto [s2, f2] = squarefree_part(7 * p * p * q * q);
  CHECK(s2.value == 7);
  CHECK(f2 == p * q);

  auto [s3, f3] = squarefree_part(p * p * q);
  CHECK(s3.value == q);
  CHECK(f3 == p);
}

TEST_CASE("field_discriminant") {
  CHECK(field_discriminant(SquarefreeInt{5}) == 5);
  CHECK(field_discriminant(SquarefreeInt{2}) == 8);
  CHECK(field_discriminant(SquarefreeInt{1}) == 1);
  CHECK(field_discriminant(SquarefreeInt{-1}) == -4);
  CHECK(field_discriminant(SquarefreeInt{-3}) == -3);
  CHECK_THROWS_AS(field_discriminant(SquarefreeInt{12}), std::invalid_argument);
}

TEST_CASE("field_discriminant matches (omega - conj omega)^2") {
  for (long d : {-10, -7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 11, 13, 17, 21}) {
    QuadElem w = maximal_order_generator(Int(d));
    QuadElem diff = w - w.conj();
    QuadElem sq = diff * diff;
    CHECK(sq.b == 0);
    CHECK(sq.a == Rat(field_discriminant(SquarefreeInt{Int(d)})));
  }
}

TEST_CASE("qf_norm examples") {
  CHECK(qf_norm(QuadElem(Int(2), Rat(1), Rat(1))) == -1);
  CHECK(qf_norm(QuadElem(Int(2), Rat(3), Rat(0))) == 9);
  CHECK(qf_norm(QuadElem(Int(5), make_rat(1, 2), make_rat(1, 2))) == -1);
}

TEST_CASE("qf_norm is multiplicative") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> dist(-9, 9);
  for (int i = 0; i < 100; ++i) {
    QuadElem x(Int(3), make_rat(dist(rng), 1 + std::abs(dist(rng))), make_rat(dist(rng), 2));
    QuadElem y(Int(3), make_rat(dist(rng), 3), make_rat(dist(rng), 1 + std::abs(dist(rng))));
    CHECK(qf_norm(x * y) == qf_norm(x) * qf_norm(y));
  }
}

TEST_CASE("quadratic field axioms") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-6, 6);
  auto rnd = [&] { return QuadElem(Int(2), make_rat(dist(rng), 1 + std::abs(dist(rng))), make_rat(dist(rng), 2)); };
  for (int i = 0; i < 100; ++i) {
    QuadElem x = rnd(), y = rnd(), z = rnd();
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * y == y * x);
    CHECK(x * (y + z) == x * y + x * z);
    if (!x.is_zero()) CHECK(x * inverse(x) == QuadElem(1));
  }
}

TEST_CASE("square detection in a quadratic field") {
  // 9 has the rational root 3 inside Q(sqrt 2)
  CHECK(is_square_in_field(QuadElem(Int(2), Rat(9), Rat(0))));
  // 28 = (2 sqrt 7)^2 is not a square in Q(sqrt 3)
  CHECK(!is_square_in_field(QuadElem(Int(3), Rat(28), Rat(0))));
  CHECK(is_square_in_field(QuadElem(Int(3), Rat(0), Rat(0))));

  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> dist(-8, 8);
  for (int i = 0; i < 300; ++i) {
    long d = (i % 2 == 0) ? 2 : 5;
    QuadElem x(Int(d), make_rat(dist(rng), 1 + std::abs(dist(rng))), make_rat(dist(rng), 2));
    QuadElem v = x * x;
    CHECK(is_square_in_field(v));
    auto r = sqrt_in_field(v);
    REQUIRE(r.has_value());
    CHECK(*r * *r == v);
    // the two square tests agree on arbitrary elements too
    QuadElem w(Int(d), make_rat(dist(rng), 2), make_rat(dist(rng), 3));
    CHECK(is_square_in_field(w) == sqrt_in_field(w).has_value());
  }
}

TEST_CASE("module norms from the HNF") {
  Int d(2);
  CHECK(module_norm_hnf({QuadElem(d, Rat(1), Rat(0))}) == 1);
  CHECK(module_norm_hnf({QuadElem(d, Rat(2), Rat(0))}) == 4);
  CHECK(module_norm_hnf({QuadElem(d, Rat(0), Rat(1))}) == 2);
}

TEST_CASE("module norm scales by the element norm") {
  std::mt19937 rng(55);
  std::uniform_int_distribution<long> dist(-5, 5);
  Int d(3);
  for (int i = 0; i < 60; ++i) {
    std::vector<QuadElem> gens;
    for (int k = 0; k < 2; ++k)
      gens.emplace_back(d, make_rat(dist(rng), 1 + std::abs(dist(rng))), make_rat(dist(rng), 2));
    bool allzero = true;
    for (const auto& g : gens) allzero &= g.is_zero();
    if (allzero) continue;
    QuadElem lam(d, make_rat(1 + std::abs(dist(rng)), 2), make_rat(dist(rng), 3));
    if (lam.is_zero()) continue;
    std::vector<QuadElem> scaled;
    for (const auto& g : gens) scaled.push_back(lam * g);
    CHECK(module_norm_hnf(scaled) == abs(qf_norm(lam)) * module_norm_hnf(gens));
  }
}

TEST_CASE("rational function field arithmetic") {
  RatFunc t = RatFunc::t();
  RatFunc one(1);
  CHECK(t / (t + one) + one / (t + one) == one);

  RatFunc t4 = t * t * t * t;
  RatFunc t8 = t4 * t4;
  CHECK((t8 - one) / (t4 - one) == t4 + one);

  CHECK((t * RatFunc(0)).is_zero());
  // cross-multiplied equality of unreduced representations
  CHECK(RatFunc(UPoly{Rat(0), Rat(2)}, UPoly{Rat(2)}) == t);
  CHECK_THROWS_AS(one / RatFunc(0), std::domain_error);
}

TEST_CASE("polynomial gcd and square root") {
  UPoly f{Rat(-1), Rat(0), Rat(1)};  // t^2 - 1
  UPoly g{Rat(-1), Rat(1)};          // t - 1
  CHECK(poly_gcd(f, g) == g);

  UPoly h{Rat(1), Rat(0), Rat(1)};  // t^2 + 1
  auto r = poly_sqrt(h * h);
  REQUIRE(r.has_value());
  CHECK(*r * *r == h * h);
  CHECK(!poly_sqrt(UPoly{Rat(0), Rat(1)}).has_value());          // odd degree
  CHECK(!poly_sqrt(UPoly{Rat(1), Rat(1), Rat(1)}).has_value());  // not a square
}

TEST_CASE("polynomial ring sanity") {
  UPoly f{Rat(1), Rat(2), Rat(3)};
  UPoly g{Rat(-1), Rat(1)};
  auto [q, r] = divmod(f, g);
  CHECK(q * g + r == f);
  CHECK(r.degree() < g.degree());
  CHECK(f.eval(Rat(2)) == Rat(17));
  CHECK(f.derivative() == UPoly{Rat(2), Rat(6)});
}
