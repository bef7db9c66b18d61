#include "qp/surfgeom.hpp"

#include <stdexcept>

namespace qp {

SurfaceLattice lattice_p2() {
  SurfaceLattice s;
  s.kind = SurfaceLattice::Kind::P2;
  s.name = "P2";
  s.basis = {"H"};
  s.gram = {{Rat(1)}};
  s.canonical = {Rat(-3)};
  return s;
}

SurfaceLattice lattice_hirzebruch(int n) {
  if (n < 0) throw std::invalid_argument("lattice_hirzebruch: n must be nonnegative");
  SurfaceLattice s;
  s.kind = SurfaceLattice::Kind::Hirzebruch;
  s.n = n;
  s.name = "F" + std::to_string(n);
  s.basis = {"S0", "F"};
  s.gram = {{Rat(-n), Rat(1)}, {Rat(1), Rat(0)}};
  s.canonical = {Rat(-2), Rat(-(n + 2))};
  return s;
}

SurfaceLattice lattice_p112() {
  SurfaceLattice s = lattice_hirzebruch(2);
  s.name = "P(1,1,2) via F2";
  s.a1_datum = true;
  return s;
}

SurfaceLattice lattice_p2xp2() {
  SurfaceLattice s;
  s.kind = SurfaceLattice::Kind::P2xP2;
  s.name = "P2xP2";
  s.basis = {"H1", "H2"};
  // ambient class bookkeeping only; the form depends on the cut surface
  s.gram = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
  s.canonical = {Rat(-3), Rat(-3)};
  return s;
}

DivisorClass divisor(const SurfaceLattice& S, std::vector<Rat> coeffs) {
  if (static_cast<int>(coeffs.size()) != S.rank())
    throw std::invalid_argument("divisor: coefficient count does not match lattice rank");
  return DivisorClass{&S, std::move(coeffs)};
}

DivisorClass hirzebruch_s_inf(const SurfaceLattice& S) {
  if (S.kind != SurfaceLattice::Kind::Hirzebruch)
    throw std::invalid_argument("hirzebruch_s_inf: not a Hirzebruch lattice");
  return divisor(S, {Rat(1), Rat(S.n)});
}

Rat intersect(const DivisorClass& a, const DivisorClass& b) {
  if (a.lat != b.lat) throw std::invalid_argument("intersect: lattice mismatch");
  const auto& g = a.lat->gram;
  Rat acc(0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) acc += a.c[i] * g[i][j] * b.c[j];
  return acc;
}

DivisorClass canonical_class(const SurfaceLattice& S) { return DivisorClass{&S, S.canonical}; }

Rat adjunction_genus(const DivisorClass& D) {
  DivisorClass K = canonical_class(*D.lat);
  DivisorClass KD{D.lat, K.c};
  for (size_t i = 0; i < D.c.size(); ++i) KD.c[i] += D.c[i];
  return intersect(D, KD) / 2 + 1;
}

DoubleCoverCanonical double_cover_canonical(const SurfaceLattice& S, const DivisorClass& L) {
  if (L.lat != &S) throw std::invalid_argument("double_cover_canonical: lattice mismatch");
  DivisorClass half{&S, S.canonical};
  for (size_t i = 0; i < L.c.size(); ++i) half.c[i] += L.c[i];
  Rat vol = 2 * intersect(half, half);
  return DoubleCoverCanonical{std::move(half), std::move(vol)};
}

bool is_ample(const DivisorClass& D) {
  const SurfaceLattice& S = *D.lat;
  switch (S.kind) {
    case SurfaceLattice::Kind::P2:
      return D.c[0] > 0;
    case SurfaceLattice::Kind::Hirzebruch:
      // a S0 + b F with a > 0 and b > a n
      return D.c[0] > 0 && D.c[1] > D.c[0] * S.n;
    default:
      throw std::invalid_argument("is_ample: no cone description for this lattice");
  }
}

DivisorClass quotient_pullback(const SurfaceLattice& f2n, const SurfaceLattice& fn,
                               const DivisorClass& D) {
  if (f2n.kind != SurfaceLattice::Kind::Hirzebruch || fn.kind != SurfaceLattice::Kind::Hirzebruch)
    throw std::invalid_argument("quotient_pullback: Hirzebruch lattices required");
  if (f2n.n != 2 * fn.n) throw std::invalid_argument("quotient_pullback: parameters must be (2n, n)");
  if (D.lat != &f2n) throw std::invalid_argument("quotient_pullback: class lives elsewhere");
  // S_inf -> 2 S_inf and F -> F; in (S0, F) coordinates (a, b) -> (2a, b)
  return divisor(fn, {2 * D.c[0], D.c[1]});
}

Blowup blowup(const SurfaceLattice& S, int k, std::vector<std::vector<int>> incidence) {
  if (k < 0) throw std::invalid_argument("blowup: negative point count");
  if (static_cast<int>(incidence.size()) != k)
    throw std::invalid_argument("blowup: one incidence row per point required");
  for (const auto& row : incidence) {
    if (static_cast<int>(row.size()) != S.rank())
      throw std::invalid_argument("blowup: incidence row length mismatch");
    for (int m : row)
      if (m < 0) throw std::invalid_argument("blowup: negative multiplicity");
  }
  Blowup b;
  b.base = &S;
  b.incidence = std::move(incidence);
  SurfaceLattice& L = b.lattice;
  L.kind = SurfaceLattice::Kind::Blowup;
  L.n = S.n;
  L.name = S.name + " blown up at " + std::to_string(k) + " point(s)";
  L.basis = S.basis;
  for (int i = 0; i < k; ++i) L.basis.push_back("E" + std::to_string(i + 1));
  int r = S.rank();
  L.gram.assign(r + k, std::vector<Rat>(r + k, Rat(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) L.gram[i][j] = S.gram[i][j];
  for (int i = 0; i < k; ++i) L.gram[r + i][r + i] = Rat(-1);
  L.canonical = S.canonical;
  for (int i = 0; i < k; ++i) L.canonical.push_back(Rat(1));
  return b;
}

DivisorClass Blowup::total_transform(const DivisorClass& D) const {
  if (D.lat != base) throw std::invalid_argument("total_transform: class lives elsewhere");
  std::vector<Rat> c = D.c;
  c.resize(lattice.rank(), Rat(0));
  return DivisorClass{&lattice, std::move(c)};
}

DivisorClass Blowup::proper_transform(const DivisorClass& D) const {
  DivisorClass t = total_transform(D);
  int r = base->rank();
  for (size_t i = 0; i < incidence.size(); ++i) {
    Rat mult(0);
    for (int j = 0; j < r; ++j) mult += Rat(incidence[i][j]) * D.c[j];
    t.c[r + i] -= mult;
  }
  return t;
}

DivisorClass Blowup::exceptional(int i) const {
  std::vector<Rat> c(lattice.rank(), Rat(0));
  c[base->rank() + i] = Rat(1);
  return DivisorClass{&lattice, std::move(c)};
}

ContractionResult contract_and_push(const std::vector<DivisorClass>& contracted,
                                    const DivisorClass& D) {
  for (size_t i = 0; i < contracted.size(); ++i) {
    if (contracted[i].lat != D.lat)
      throw std::invalid_argument("contract_and_push: lattice mismatch");
    if (intersect(contracted[i], contracted[i]) != Rat(-1))
      throw std::invalid_argument("contract_and_push: class is not a (-1)-class");
    for (size_t j = i + 1; j < contracted.size(); ++j)
      if (intersect(contracted[i], contracted[j]) != Rat(0))
        throw std::invalid_argument("contract_and_push: contracted classes must be disjoint");
  }
  ContractionResult res;
  res.pushed = D;
  for (const auto& C : contracted) {
    Rat m = intersect(D, C);
    res.multiplicities.push_back(m);
    for (size_t i = 0; i < C.c.size(); ++i) res.pushed.c[i] += m * C.c[i];
  }
  return res;
}

DivisorClass ci_canonical(const SurfaceLattice& p2xp2,
                          const std::vector<std::pair<int, int>>& multidegrees) {
  if (p2xp2.kind != SurfaceLattice::Kind::P2xP2)
    throw std::invalid_argument("ci_canonical: ambient lattice required");
  Rat a(-3), b(-3);
  for (const auto& [da, db] : multidegrees) {
    a += da;
    b += db;
  }
  return DivisorClass{&p2xp2, {a, b}};
}

SingularityFlag canonical_singularity_flag(int branch_multiplicity) {
  if (branch_multiplicity < 0)
    throw std::invalid_argument("canonical_singularity_flag: negative multiplicity");
  return branch_multiplicity >= 4 ? SingularityFlag::NotCanonical
                                  : SingularityFlag::PossiblyCanonical;
}

FnFamilyReport fn_family_report(int n) {
  if (n < 2) throw std::invalid_argument("fn_family_report: n >= 2 required");
  FnFamilyReport rep;
  rep.n = n;

  SurfaceLattice f2n = lattice_hirzebruch(2 * n);
  SurfaceLattice fn = lattice_hirzebruch(n);
  // branch class: 4 S_inf upstairs pulls back to 8 S_inf
  DivisorClass branch = quotient_pullback(f2n, fn, divisor(f2n, {Rat(4), Rat(8 * n)}));
  DivisorClass halfL = divisor(fn, {Rat(4), Rat(4 * n)});  // 4 S_inf on F_n
  auto dc = double_cover_canonical(fn, halfL);
  rep.cover_volume = dc.volume;
  rep.branch_genus = adjunction_genus(branch);
  rep.halfclass_ample = is_ample(dc.half_class);

  // blow up n-1 points in distinct fibers, off S0 and off the branch curve
  int k = n - 1;
  std::vector<std::vector<int>> inc(k, {0, 1});
  Blowup bl = blowup(fn, k, inc);
  // proper transforms of the fibers through the individual points: F - E_i
  std::vector<DivisorClass> fibers;
  for (int i = 0; i < k; ++i) {
    std::vector<Rat> c(bl.lattice.rank(), Rat(0));
    c[1] = Rat(1);
    c[fn.rank() + i] = Rat(-1);
    fibers.push_back(DivisorClass{&bl.lattice, std::move(c)});
  }

  DivisorClass s0 = bl.total_transform(divisor(fn, {Rat(1), Rat(0)}));
  DivisorClass ct = bl.total_transform(branch);
  auto first = contract_and_push(fibers, ct);
  auto s0img = contract_and_push(fibers, s0);
  // the pushed S0 is the (-1)-class contracted to reach the plane
  auto second = contract_and_push({s0img.pushed}, first.pushed);
  // line class of the plane, pulled all the way back
  DivisorClass h = s0img.pushed;
  h.c[1] += Rat(1);  // + F
  rep.plane_degree = intersect(second.pushed, h);
  rep.plane_multiplicity = second.multiplicities[0];
  long mult = rep.plane_multiplicity.get_num().get_si();
  rep.flag = canonical_singularity_flag(static_cast<int>(mult));
  return rep;
}

}  // namespace qp
