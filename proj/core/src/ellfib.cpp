#include "qp/ellfib.hpp"

#include <stdexcept>

#include "qp/covers.hpp"
#include "qp/multipoly.hpp"

namespace qp {

TorsionResult is_torsion(const WeierstrassModel<Rat>& E, const ECPoint<Rat>& P) {
  if (!E.on_curve(P)) throw std::invalid_argument("is_torsion: point not on curve");
  TorsionResult res;
  if (P.infinity) {
    res.torsion = true;
    res.order = 1;
    return res;
  }
  // integral model: a_i -> w^i a_i with w killing every denominator
  Int w = 1;
  for (const Rat* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6}) w = lcm(w, a->get_den());
  Rat xi = P.x * Rat(w * w), yi = P.y * Rat(w * w * w);
  res.lutz_nagell_nonintegral = xi.get_den() != 1 || yi.get_den() != 1;

  ECPoint<Rat> acc = P;
  for (int n = 1; n <= 12; ++n) {
    if (acc.infinity) {
      res.torsion = true;
      res.order = n;
      return res;
    }
    acc = ec_add(E, acc, P);
  }
  res.torsion = false;
  res.order = 0;
  return res;
}

std::vector<FnPoint> generate_sections(const FnQuartic& q, const FnPoint& base, int count,
                                       int cap) {
  if (count < 0) throw std::invalid_argument("generate_sections: negative count");
  if (count == 0) return {};
  if (count > cap) throw std::invalid_argument("generate_sections: count exceeds cap");
  if (!(base.second * base.second == q.eval(base.first)))
    throw std::invalid_argument("generate_sections: base point not on the quartic");

  auto tr = quartic_to_weierstrass(q);
  ECPoint<RatFunc> Q = tr.apply(base.first, base.second);
  std::vector<FnPoint> out;
  ECPoint<RatFunc> acc = ECPoint<RatFunc>::identity();
  for (int n = 1; n <= count; ++n) {
    acc = ec_add(tr.E, acc, Q);
    if (acc.infinity)
      throw std::invalid_argument("generate_sections: base point has order <= count");
    auto [u, v] = tr.unapply(acc);
    if (!(v * v == q.eval(u)))
      throw std::logic_error("generate_sections: section fails the quartic identity");
    out.push_back({std::move(u), std::move(v)});
  }
  return out;
}

QuarticModel<Rat> specialize_quartic(const FnQuartic& q, const Rat& t0) {
  auto ev = [&](const RatFunc& f, const char* what) {
    auto v = f.eval(t0);
    if (!v) throw SpecializationPole(std::string("specialize: pole of ") + what);
    return *v;
  };
  QuarticModel<Rat> s;
  s.c4 = ev(q.c4, "c4");
  s.c3 = ev(q.c3, "c3");
  s.c2 = ev(q.c2, "c2");
  s.c1 = ev(q.c1, "c1");
  s.c0 = ev(q.c0, "c0");
  s.marked_at_infinity = q.marked_at_infinity;
  if (!q.marked_at_infinity) {
    s.mu = ev(q.mu, "marked point");
    s.mv = ev(q.mv, "marked point");
  }
  if (s.c4 == 0 && s.c3 == 0)
    throw BadReduction("specialize: fiber degenerates (degree drop)");
  if (quartic_disc(s) == 0) throw BadReduction("specialize: singular fiber");
  return s;
}

std::pair<Rat, Rat> specialize_section(const FnQuartic& q, const FnPoint& s, const Rat& t0) {
  QuarticModel<Rat> fq = specialize_quartic(q, t0);
  auto u = s.first.eval(t0);
  auto v = s.second.eval(t0);
  if (!u || !v) throw SpecializationPole("specialize: pole of the section");
  if (!(*v * *v == fq.eval(*u)))
    throw std::logic_error("specialize: section leaves the fiber");
  return {*u, *v};
}

LiftedPoint lift_to_quadratic_point(const CyclicCoverModel& c, const Rat& t0,
                                    const std::pair<Rat, Rat>& base_pt) {
  if (c.r != 2 || c.e != 2)
    throw std::invalid_argument("lift: expected a double cover of P^2");
  const Rat& u0 = base_pt.first;
  const Rat& v0 = base_pt.second;
  if (u0 == 0) throw std::invalid_argument("lift: u = 0 lies on the descent locus");

  LiftedPoint lp;
  lp.t0 = t0;
  lp.u0 = u0;
  lp.v0 = v0;
  // sqrt(p / s) = sqrt(p s) / s = f sqrt(d) / s with p s = d f^2
  Int p = u0.get_num(), s = u0.get_den();
  auto [sf, f] = squarefree_part(p * s);
  lp.field_d = sf.value;
  lp.is_rational = sf.value == 1;
  if (lp.is_rational)
    lp.z = QuadElem(Int(1), Rat(f, s), Rat(0));
  else
    lp.z = QuadElem(sf.value, Rat(0), Rat(f, s));
  // exact check of w^2 = s(x, y, z) at [x:y:z] = [t0 : 1 : z]
  std::vector<QuadElem> pt{QuadElem(lp.field_d, t0, Rat(0)), QuadElem(lp.field_d, Rat(1), Rat(0)),
                           lp.z};
  QuadElem sv = c.s.eval_quad(pt);
  lp.verified = sv == QuadElem(lp.field_d, v0 * v0, Rat(0));
  return lp;
}

std::pair<RatFunc, RatFunc> ConicParam::at(const Rat& lambda) const {
  RatFunc l{lambda};
  auto u = u_of_lambda.eval(l);
  auto v = v_of_lambda.eval(l);
  if (!u || !v) throw std::domain_error("ConicParam: parameter value is a pole");
  return {*u, *v};
}

ConicParam conic_parametrize(const RatFunc& c, const FnPoint& pt) {
  if (c.is_zero()) throw std::invalid_argument("conic_parametrize: degenerate conic");
  const RatFunc& u1 = pt.first;
  const RatFunc& v1 = pt.second;
  if (!(v1 * v1 - u1 * u1 == c))
    throw std::invalid_argument("conic_parametrize: point not on the conic");
  if (v1.is_zero()) throw std::invalid_argument("conic_parametrize: vertical tangent at base point");

  using L = RF<RatFunc>;
  // secant of slope mu = u1/v1 + lambda; lambda = 0 is the tangent line, whose
  // second intersection is the base point itself
  L mu = L::t() + L(u1 / v1);
  L s = (L(2) * (L(u1) - mu * L(v1))) / (mu * mu - L(1));
  ConicParam cp;
  cp.u_of_lambda = L(u1) + s;
  cp.v_of_lambda = L(v1) + mu * s;
  return cp;
}

}  // namespace qp
