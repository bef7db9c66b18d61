#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qp/census.hpp"
#include "qp/covers.hpp"
#include "qp/ellfib.hpp"

using namespace qp;

namespace {

WeierstrassModel<Rat> curve_6912() {
  // y^2 = x^3 + 1
  WeierstrassModel<Rat> E;
  E.a6 = 1;
  return E;
}

FnQuartic builtin_fn_quartic() {
  auto fiber = generic_fiber(descend_involution(builtin_cover(4)));
  FnQuartic fq;
  fq.c4 = fiber.coeff(4);
  fq.c3 = fiber.coeff(3);
  fq.c2 = fiber.coeff(2);
  fq.c1 = fiber.coeff(1);
  fq.c0 = fiber.coeff(0);
  return fq;
}

RatFunc rf_tpow(int n) {
  RatFunc t = RatFunc::t();
  RatFunc r(1);
  for (int i = 0; i < n; ++i) r = r * t;
  return r;
}

}  // namespace

TEST_CASE("chord-and-tangent addition") {
  auto E = curve_6912();
  auto P = ECPoint<Rat>::affine(Rat(2), Rat(3));
  auto Q = ECPoint<Rat>::affine(Rat(0), Rat(1));
  auto R = ec_add(E, P, Q);
  CHECK(R == ECPoint<Rat>::affine(Rat(-1), Rat(0)));
  CHECK(E.on_curve(R));
  CHECK(ec_add(E, R, R) == ECPoint<Rat>::identity());
  CHECK(ec_add(E, P, ECPoint<Rat>::identity()) == P);
  CHECK(ec_add(E, P, ec_neg(E, P)) == ECPoint<Rat>::identity());
  CHECK_THROWS_AS(ec_add(E, ECPoint<Rat>::affine(Rat(5), Rat(5)), Q), std::invalid_argument);
}

TEST_CASE("group law on random multiples") {
  // y^2 = x^3 - 1020 x with the infinite-order point (34, 68)
  WeierstrassModel<Rat> E;
  E.a4 = -1020;
  auto G = ECPoint<Rat>::affine(Rat(34), Rat(68));
  REQUIRE(E.on_curve(G));

  std::mt19937 rng(314159);
  std::uniform_int_distribution<long> dist(-8, 8);
  for (int i = 0; i < 200; ++i) {
    auto P = ec_mul(E, dist(rng), G);
    auto Q = ec_mul(E, dist(rng), G);
    auto R = ec_mul(E, dist(rng), G);
    CHECK(E.on_curve(ec_add(E, P, Q)));
    CHECK(ec_add(E, P, Q) == ec_add(E, Q, P));
    CHECK(ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R)));
  }
}

TEST_CASE("torsion detection") {
  auto E = curve_6912();
  auto t2 = is_torsion(E, ECPoint<Rat>::affine(Rat(-1), Rat(0)));
  CHECK(t2.torsion);
  CHECK(t2.order == 2);
  auto t3 = is_torsion(E, ECPoint<Rat>::affine(Rat(0), Rat(1)));
  CHECK(t3.torsion);
  CHECK(t3.order == 3);
  auto t1 = is_torsion(E, ECPoint<Rat>::identity());
  CHECK(t1.order == 1);

  WeierstrassModel<Rat> E2;
  E2.a4 = -1020;
  auto inf = is_torsion(E2, ECPoint<Rat>::affine(Rat(34), Rat(68)));
  CHECK(!inf.torsion);
  CHECK(inf.order == 0);
  CHECK(!inf.lutz_nagell_nonintegral);  // the point is integral, so no extra evidence

  CHECK_THROWS_AS(is_torsion(E, ECPoint<Rat>::affine(Rat(7), Rat(7))), std::invalid_argument);
}

TEST_CASE("quartic to Weierstrass, marked at infinity") {
  QuarticModel<Rat> m;
  m.c4 = 1;
  m.c0 = 255;  // v^2 = u^4 + 255
  auto tr = quartic_to_weierstrass(m);
  CHECK(verify_roundtrip(m, tr));

  // the fiber point (1, 16) maps to a curve point and back
  auto P = tr.apply(Rat(1), Rat(16));
  CHECK(tr.E.on_curve(P));
  auto [u, v] = tr.unapply(P);
  CHECK(u == 1);
  CHECK(v == 16);
}

TEST_CASE("quartic to Weierstrass, affine marked point") {
  QuarticModel<Rat> m;
  m.c4 = 1;
  m.c0 = 3;
  m.marked_at_infinity = false;
  m.mu = 1;
  m.mv = 2;  // (1, 2) on v^2 = u^4 + 3
  REQUIRE(m.marked_on_curve());
  auto tr = quartic_to_weierstrass(m);
  CHECK(verify_roundtrip(m, tr));

  auto P = tr.apply(Rat(-1), Rat(2));
  CHECK(tr.E.on_curve(P));
  auto [u, v] = tr.unapply(P);
  CHECK(u == -1);
  CHECK(v == 2);
}

TEST_CASE("quartic to Weierstrass, marked at a root") {
  // v^2 = (u - 1)(u^3 + 2), marked point (1, 0)
  QuarticModel<Rat> m;
  m.c4 = 1;
  m.c3 = -1;
  m.c1 = 2;
  m.c0 = -2;
  m.marked_at_infinity = false;
  m.mu = 1;
  m.mv = 0;
  REQUIRE(m.marked_on_curve());
  auto tr = quartic_to_weierstrass(m);
  CHECK(tr.cubic);
  CHECK(verify_roundtrip(m, tr));

  // the marked root maps to the identity
  CHECK(tr.apply(Rat(1), Rat(0)) == ECPoint<Rat>::identity());
}

TEST_CASE("singular quartics are rejected") {
  QuarticModel<Rat> m;  // v^2 = (u^2 + 1)^2
  m.c4 = 1;
  m.c2 = 2;
  m.c0 = 1;
  CHECK_THROWS_AS(quartic_to_weierstrass(m), std::invalid_argument);

  QuarticModel<Rat> off;
  off.c4 = 1;
  off.c0 = 3;
  off.marked_at_infinity = false;
  off.mu = 0;
  off.mv = 1;  // 1 != 3
  CHECK_THROWS_AS(quartic_to_weierstrass(off), std::invalid_argument);
}

TEST_CASE("sections of the quartic bundle") {
  FnQuartic fq = builtin_fn_quartic();
  FnPoint base{RatFunc(1), rf_tpow(4)};

  auto secs = generate_sections(fq, base, 2);
  REQUIRE(secs.size() == 2);
  CHECK(secs[0].first == base.first);
  CHECK(secs[0].second == base.second);
  CHECK(!(secs[1].first == secs[0].first && secs[1].second == secs[0].second));
  for (const auto& s : secs) CHECK(s.second * s.second == fq.eval(s.first));

  auto five = generate_sections(fq, base, 5);
  CHECK(five.size() == 5);
  for (size_t i = 0; i < five.size(); ++i)
    for (size_t j = i + 1; j < five.size(); ++j)
      CHECK(!(five[i].first == five[j].first && five[i].second == five[j].second));

  CHECK(generate_sections(fq, base, 0).empty());
  CHECK_THROWS_AS(generate_sections(fq, base, 6), std::invalid_argument);
  CHECK_THROWS_AS(generate_sections(fq, FnPoint{RatFunc(1), RatFunc(1)}, 1), std::invalid_argument);
}

TEST_CASE("specialization of sections") {
  FnQuartic fq = builtin_fn_quartic();
  FnPoint base{RatFunc(1), rf_tpow(4)};

  auto [u, v] = specialize_section(fq, base, Rat(2));
  CHECK(u == 1);
  CHECK(v == 16);

  // t = 1 kills the constant term: v^2 = u^4 is singular
  CHECK_THROWS_AS(specialize_quartic(fq, Rat(1)), BadReduction);

  FnQuartic pole = fq;
  pole.c0 = RatFunc(UPoly{Rat(1)}, UPoly{Rat(-2), Rat(1)});  // 1/(t - 2)
  CHECK_THROWS_AS(specialize_quartic(pole, Rat(2)), SpecializationPole);
}

TEST_CASE("specialization commutes with addition") {
  FnQuartic fq = builtin_fn_quartic();
  FnPoint base{RatFunc(1), rf_tpow(4)};
  auto secs = generate_sections(fq, base, 5);

  std::vector<Rat> good = {Rat(2), Rat(3), Rat(5), Rat(7), Rat(10), Rat(-2), Rat(-3),
                           make_rat(3, 2), make_rat(5, 2), make_rat(7, 3)};
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> ndist(1, 2), tdist(0, static_cast<int>(good.size()) - 1);
  for (int i = 0; i < 100; ++i) {
    int n = ndist(rng), m = ndist(rng);  // n + m <= 5 stays within the generated list
    Rat t0 = good[tdist(rng)];
    QuarticModel<Rat> sq = specialize_quartic(fq, t0);
    auto tr = quartic_to_weierstrass(sq);
    auto pn = specialize_section(fq, secs[n - 1], t0);
    auto pm = specialize_section(fq, secs[m - 1], t0);
    auto pnm = specialize_section(fq, secs[n + m - 1], t0);
    auto sum = ec_add(tr.E, tr.apply(pn.first, pn.second), tr.apply(pm.first, pm.second));
    CHECK(sum == tr.apply(pnm.first, pnm.second));
  }
}

TEST_CASE("lifting fiber points to the cover") {
  // quartic bundle at t = 2: (1, 16) lifts to the rational point [2 : 1 : 1], w = 16
  CyclicCoverModel c4 = builtin_cover(4);
  LiftedPoint lp = lift_to_quadratic_point(c4, Rat(2), {Rat(1), Rat(16)});
  CHECK(lp.is_rational);
  CHECK(lp.field_d == 1);
  CHECK(lp.verified);
  CHECK(lp.z.b == 0);

  // conic bundle at t = 2: (7, 8) on v^2 = u^2 + 15 lifts to z = sqrt(7)
  CyclicCoverModel c2 = builtin_cover(2);
  LiftedPoint lq = lift_to_quadratic_point(c2, Rat(2), {Rat(7), Rat(8)});
  CHECK(!lq.is_rational);
  CHECK(lq.field_d == 7);
  CHECK(lq.verified);

  LiftedPoint lr = lift_to_quadratic_point(c2, Rat(2), {Rat(1), Rat(4)});
  CHECK(lr.is_rational);
  CHECK(lr.verified);

  // a pair that does not satisfy the fiber equation is flagged, not accepted
  LiftedPoint bad = lift_to_quadratic_point(c2, Rat(2), {Rat(1), Rat(5)});
  CHECK(!bad.verified);

  CHECK_THROWS_AS(lift_to_quadratic_point(c2, Rat(2), {Rat(0), Rat(1)}), std::invalid_argument);
  MultiPoly s2(std::vector<std::string>{"x", "y"});
  s2.add_term({2, 0}, Rat(1));
  s2.add_term({0, 2}, Rat(1));
  CHECK_THROWS_AS(lift_to_quadratic_point(CyclicCoverModel(1, 2, 1, s2), Rat(2), {Rat(1), Rat(1)}),
                  std::invalid_argument);
}

TEST_CASE("conic parametrization") {
  RatFunc t = RatFunc::t();
  RatFunc c = rf_tpow(4) - RatFunc(1);
  FnPoint pt{RatFunc(1), t * t};  // (t^2)^2 - 1 = t^4 - 1
  ConicParam cp = conic_parametrize(c, pt);

  auto p0 = cp.at(Rat(0));
  CHECK(p0.first == pt.first);
  CHECK(p0.second == pt.second);

  CHECK(cp.v_of_lambda * cp.v_of_lambda - cp.u_of_lambda * cp.u_of_lambda == RF<RatFunc>(c));

  for (long l : {1, 2, 5}) {
    auto p = cp.at(Rat(l));
    CHECK(p.second * p.second - p.first * p.first == c);
  }

  CHECK_THROWS_AS(conic_parametrize(RatFunc(0), pt), std::invalid_argument);
  CHECK_THROWS_AS(conic_parametrize(c, FnPoint{RatFunc(0), RatFunc(0)}), std::invalid_argument);
  // vertical tangent: v coordinate of the base point vanishes
  CHECK_THROWS_AS(conic_parametrize(RatFunc(-1), FnPoint{RatFunc(1), RatFunc(0)}),
                  std::invalid_argument);
}

TEST_CASE("square roots in the rational function field") {
  RatFunc t = RatFunc::t();
  RatFunc f = (t * t + RatFunc(1)) * (t * t + RatFunc(1));
  auto r = field_sqrt(f);
  REQUIRE(r.has_value());
  CHECK(*r * *r == f);
  CHECK(!field_sqrt(t).has_value());
  CHECK(!field_sqrt(t * t + RatFunc(1)).has_value());
}
