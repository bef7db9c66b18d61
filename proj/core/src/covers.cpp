#include "qp/covers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qp {

CyclicCoverModel::CyclicCoverModel(int r_, int e_, int m_, MultiPoly s_)
    : r(r_), e(e_), m(m_), s(std::move(s_)) {
  if (r < 1) throw std::invalid_argument("CyclicCoverModel: r >= 1 required");
  if (e < 2) throw std::invalid_argument("CyclicCoverModel: e >= 2 required");
  if (m < 1) throw std::invalid_argument("CyclicCoverModel: m >= 1 required");
  if (s.is_zero()) throw std::invalid_argument("CyclicCoverModel: zero branch section");
  if (static_cast<int>(s.nvars()) != r + 1)
    throw std::invalid_argument("CyclicCoverModel: section must have r+1 variables");
  int deg = 0;
  if (!s.is_homogeneous(&deg) || deg != e * m)
    throw std::invalid_argument("CyclicCoverModel: section must be homogeneous of degree e*m");
}

std::string CyclicCoverModel::str() const {
  std::ostringstream os;
  os << "w^" << e << " = " << s.str();
  return os.str();
}

int canonical_multiplier(const CyclicCoverModel& c) { return (c.e - 1) * c.m - c.r - 1; }

int vojta_threshold(int r, int d, int e) {
  if (e < 2 || d < 1 || r < 1) throw std::invalid_argument("vojta_threshold: bad arguments");
  // least m with m(e-1) > r + 2d - 1
  int num = r + 2 * d - 1;
  int den = e - 1;
  return num / den + 1;
}

std::set<int> residue_degree_options(int d, int e) {
  int g = std::gcd(d, e);
  std::set<int> opts;
  for (int k = 1; k <= g; ++k)
    if (g % k == 0) opts.insert(k);
  return opts;
}

FiberClass classify_fiber(const CyclicCoverModel& c, const ProjectivePoint& P) {
  if (!P.effectively_rational())
    throw std::invalid_argument("classify_fiber: rational base point required");
  auto ints = P.coprime_integer_coords();
  std::vector<Rat> pt;
  for (const auto& v : ints) pt.emplace_back(v);
  Rat v = c.s.eval_rat(pt);
  FiberClass fc;
  fc.base_point = P.canonical();
  if (v == 0) {
    fc.kind = FiberKind::Ramified;
    fc.residue_degree = 1;
    return fc;
  }
  if (c.e == 2) {
    if (is_square(v)) {
      fc.kind = FiberKind::Split;
      fc.residue_degree = 1;
    } else {
      fc.kind = FiberKind::Inert;
      fc.residue_d = squarefree_kernel(v).value;
      fc.residue_degree = 2;
    }
    return fc;
  }
  // e >= 3: only detect exact e-th powers.
  bool epow = false;
  if (v > 0 || c.e % 2 == 1) {
    Int n = v.get_num(), d2 = v.get_den();
    Int rn, rd;
    if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), c.e) != 0 &&
        mpz_root(rd.get_mpz_t(), d2.get_mpz_t(), c.e) != 0)
      epow = true;
  }
  fc.kind = epow ? FiberKind::EPower : FiberKind::Other;
  fc.residue_degree = epow ? 1 : 0;
  return fc;
}

FiberClass classify_fiber_quadratic(const CyclicCoverModel& c, const ProjectivePoint& P) {
  if (c.e != 2) throw std::invalid_argument("classify_fiber_quadratic: e = 2 required");
  if (P.effectively_rational())
    throw std::invalid_argument("classify_fiber_quadratic: quadratic base point required");
  ProjectivePoint Q = P.canonical();
  QuadElem v = c.s.eval_quad(Q.coords);
  FiberClass fc;
  fc.base_point = Q;
  if (v.is_zero()) {
    fc.kind = FiberKind::Ramified;
    fc.residue_degree = 2;
    return fc;
  }
  if (is_square_in_field(v)) {
    fc.kind = FiberKind::Split;
    fc.residue_d = Q.effective_d();
    fc.residue_degree = 2;  // two non-contracted quadratic points upstairs
  } else {
    fc.kind = FiberKind::Irreducible;
    fc.residue_degree = 4;
  }
  return fc;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

long coord_bound(double height_bound) {
  return static_cast<long>(std::floor(std::exp(height_bound) + kHeightTol));
}

std::vector<ProjectivePoint> enumerate_rational_p1(double B) {
  long N = coord_bound(B);
  std::vector<ProjectivePoint> out;
  for (long x = 0; x <= N; ++x)
    for (long y = -N; y <= N; ++y) {
      if (x == 0 && y != 1) continue;
      if (x > 0 && std::gcd(x, std::abs(y)) != 1) continue;
      out.push_back(ProjectivePoint::from_rational({make_rat(x), make_rat(y)}));
    }
  return out;
}

std::vector<ProjectivePoint> enumerate_rational_p2(double B) {
  long N = coord_bound(B);
  std::vector<ProjectivePoint> out;
  for (long x = 0; x <= N; ++x)
    for (long y = (x == 0 ? 0 : -N); y <= N; ++y)
      for (long z = -N; z <= N; ++z) {
        // canonical: first nonzero coordinate positive, gcd 1
        if (x == 0 && y == 0 && z != 1) continue;
        if (x == 0 && y > 0) {
          if (std::gcd(y, std::abs(z)) != 1) continue;
        } else if (x == 0 && y <= 0 && !(y == 0 && z == 1)) {
          continue;
        }
        if (x > 0 && std::gcd(std::gcd(x, std::abs(y)), std::abs(z)) != 1) continue;
        out.push_back(ProjectivePoint::from_rational({make_rat(x), make_rat(y), make_rat(z)}));
      }
  return out;
}

double mahler_of_triple(long a, long b, long c) {
  double D = static_cast<double>(b) * b - 4.0 * static_cast<double>(a) * c;
  double ad = std::abs(static_cast<double>(a));
  if (D < 0) return std::max(ad, std::abs(static_cast<double>(c)));
  double sq = std::sqrt(D);
  double r1 = (-b + sq) / (2.0 * a);
  double r2 = (-b - sq) / (2.0 * a);
  return ad * std::max(1.0, std::abs(r1)) * std::max(1.0, std::abs(r2));
}

std::vector<ProjectivePoint> enumerate_quadratic_p1(double B) {
  // Multiplicative bound: M(f) <= e^{2B}.  Coefficient superset: |a| <= M,
  // |b| <= 2M, |c| <= M for f = a x^2 + b x + c with root of height <= B.
  double M = std::exp(2 * B);
  long Ma = static_cast<long>(std::floor(M + kHeightTol));
  std::vector<ProjectivePoint> out;
  for (long a = 1; a <= Ma; ++a)
    for (long b = -2 * Ma; b <= 2 * Ma; ++b)
      for (long c = -Ma; c <= Ma; ++c) {
        if (std::gcd(std::gcd(a, std::abs(b)), std::abs(c)) != 1) continue;
        Int D = Int(b) * Int(b) - 4 * Int(a) * Int(c);
        if (is_perfect_square(D)) continue;  // reducible
        if (mahler_of_triple(a, b, c) > M + kHeightTol) continue;
        out.push_back(point_from_minimal_data(QuadMinimalData{a, b, c}));
      }
  return out;
}

std::vector<ProjectivePoint> enumerate_quadratic_p2(double B) {
  // Every degree-2 closed point of P^2 normalizes to [1:alpha:beta],
  // [0:1:gamma] or [0:0:1] with coordinates of height <= h(P).
  std::vector<ProjectivePoint> out;
  auto quad_p1 = enumerate_quadratic_p1(B);
  // coordinate candidates per field d: quadratic elements (both conjugates) and rationals
  std::map<Int, std::vector<QuadElem>> irr;
  for (const auto& P : quad_p1) {
    QuadElem alpha = P.canonical().coords[1];
    Int d = P.effective_d();
    alpha.d = d;
    irr[d].push_back(alpha);
    irr[d].push_back(alpha.conj());
  }
  std::vector<Rat> rats;
  {
    long N = coord_bound(B);
    for (long num = -N; num <= N; ++num)
      for (long den = 1; den <= N; ++den) {
        if (std::gcd(std::abs(num), den) != 1) continue;
        rats.push_back(make_rat(num, den));
      }
  }
  auto lex_before_conj = [](const ProjectivePoint& P) {
    // pick the conjugate representative whose coordinate (a,b)-sequence is smaller
    ProjectivePoint Q = P;
    std::vector<QuadElem> cc;
    for (const auto& x : P.coords) cc.push_back(x.conj());
    for (size_t i = 0; i < P.coords.size(); ++i) {
      if (P.coords[i].b < cc[i].b) return P;
      if (cc[i].b < P.coords[i].b) return ProjectivePoint(P.d, cc);
    }
    return P;
  };
  for (auto& [d, elems] : irr) {
    std::vector<QuadElem> coords_pool = elems;
    for (const auto& r : rats) coords_pool.push_back(QuadElem(d, r, 0));
    // [1 : alpha : beta] with at least one irrational coordinate
    for (const auto& alpha : coords_pool)
      for (const auto& beta : coords_pool) {
        if (alpha.is_rational() && beta.is_rational()) continue;
        ProjectivePoint P(d, {QuadElem(d, 1, 0), alpha, beta});
        if (weil_height(P).value > B + kHeightTol) continue;
        out.push_back(lex_before_conj(P));
      }
    // [0 : 1 : gamma]
    for (const auto& gamma : elems) {
      ProjectivePoint P(d, {QuadElem(d, 0, 0), QuadElem(d, 1, 0), gamma});
      if (weil_height(P).value > B + kHeightTol) continue;
      out.push_back(lex_before_conj(P));
    }
  }
  // dedupe conjugate representatives that coincide projectively
  std::vector<ProjectivePoint> uniq;
  for (const auto& P : out) {
    bool dup = false;
    for (const auto& Q : uniq) {
      if (P.d != Q.d) continue;
      ProjectivePoint Pc(P.d, [&] {
        std::vector<QuadElem> cc;
        for (const auto& x : P.coords) cc.push_back(x.conj());
        return cc;
      }());
      if (Q.projectively_equal(P) || Q.projectively_equal(Pc)) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(P);
  }
  return uniq;
}

}  // namespace

QuadMinimalData minimal_data(const ProjectivePoint& P) {
  if (P.dim() != 1 || P.effectively_rational())
    throw std::invalid_argument("minimal_data: quadratic point of P^1 required");
  QuadElem alpha = P.canonical().coords[1];  // [1 : alpha]
  // minpoly x^2 - tr x + nm, cleared to primitive integer form with positive lead
  Rat tr = alpha.trace(), nm = alpha.norm();
  Int den = lcm(tr.get_den(), nm.get_den());
  Int A = den;
  Int Bc = -tr.get_num() * (den / tr.get_den());
  Int Cc = nm.get_num() * (den / nm.get_den());
  Int g = gcd(gcd(A, Bc), Cc);
  A /= g;
  Bc /= g;
  Cc /= g;
  return QuadMinimalData{A, Bc, Cc};
}

ProjectivePoint point_from_minimal_data(const QuadMinimalData& q) {
  Int D = q.b * q.b - 4 * q.a * q.c;
  auto [sf, f] = squarefree_part(D);
  // alpha = (-b + f sqrt(d)) / (2a), representative with positive sqrt coefficient
  Rat a_part = make_rat(-q.b, 2 * q.a);
  Rat b_part = make_rat(f, 2 * q.a);
  if (q.a < 0) b_part = -b_part;
  QuadElem alpha(sf.value, a_part, abs(b_part));
  return ProjectivePoint(sf.value, {QuadElem(sf.value, 1, 0), alpha});
}

std::vector<ProjectivePoint> enumerate_points(int r, double height_bound, PointField field) {
  if (height_bound < 0) throw std::invalid_argument("enumerate_points: negative height bound");
  if (r == 1 && field == PointField::Rational) return enumerate_rational_p1(height_bound);
  if (r == 2 && field == PointField::Rational) return enumerate_rational_p2(height_bound);
  if (r == 1 && field == PointField::Quadratic) return enumerate_quadratic_p1(height_bound);
  if (r == 2 && field == PointField::Quadratic) return enumerate_quadratic_p2(height_bound);
  throw std::invalid_argument("enumerate_points: r must be 1 or 2");
}

std::optional<AuditRow> audit_point(const CyclicCoverModel& c, const ProjectivePoint& P,
                                    double epsilon) {
  if (c.e != 2) throw std::invalid_argument("audit_point: e = 2 required");
  Int upstairs_d = 1;
  bool contracted = false;
  if (P.effectively_rational()) {
    FiberClass fc = classify_fiber(c, P);
    if (fc.kind != FiberKind::Inert) return std::nullopt;
    upstairs_d = fc.residue_d;
    contracted = true;
  } else {
    FiberClass fc = classify_fiber_quadratic(c, P);
    if (fc.kind != FiberKind::Split) return std::nullopt;
    upstairs_d = fc.residue_d;
    contracted = false;
  }
  int mult = canonical_multiplier(c);
  AuditRow row;
  row.point_id = P.canonical().str();
  row.field_d = upstairs_d;
  row.base_height = weil_height(P).value;
  row.canonical_height = mult * row.base_height;
  row.disc = upstairs_d == 1
                 ? 0.0
                 : std::log(std::abs(
                       mpz_get_d(field_discriminant(SquarefreeInt{upstairs_d}).get_mpz_t()))) /
                       2.0;
  row.contracted = contracted;
  // slack in h_K <= d + eps h_K + O(1), with A = K_X
  row.slack = row.disc + epsilon * row.canonical_height - row.canonical_height;
  row.marginal = std::abs(row.slack) < kMarginalBand;
  return row;
}

bool audit_row_before(const AuditRow& x, const AuditRow& y) {
  if (x.base_height != y.base_height) return x.base_height < y.base_height;
  return x.point_id < y.point_id;
}

std::vector<AuditRow> vojta_audit(const CyclicCoverModel& c, double height_bound, double epsilon) {
  if (c.e != 2) throw std::invalid_argument("vojta_audit: e = 2 required");
  if (height_bound <= 0) throw std::invalid_argument("vojta_audit: nonpositive height bound");
  if (epsilon < 0 || epsilon >= 1) throw std::invalid_argument("vojta_audit: epsilon in [0,1) required");
  std::vector<AuditRow> rows;
  for (const auto& P : enumerate_points(c.r, height_bound, PointField::Rational))
    if (auto row = audit_point(c, P, epsilon)) rows.push_back(std::move(*row));
  for (const auto& P : enumerate_points(c.r, height_bound, PointField::Quadratic))
    if (auto row = audit_point(c, P, epsilon)) rows.push_back(std::move(*row));
  std::stable_sort(rows.begin(), rows.end(), audit_row_before);
  return rows;
}

CyclicCoverModel project_from_point(const MultiPoly& quadric, const std::vector<Rat>& p) {
  if (quadric.nvars() != 4) throw std::invalid_argument("project_from_point: quadric in 4 variables required");
  int deg = 0;
  if (!quadric.is_homogeneous(&deg) || deg != 2)
    throw std::invalid_argument("project_from_point: homogeneous degree 2 required");
  if (p.size() != 4) throw std::invalid_argument("project_from_point: point of P^3 required");
  if (quadric.eval_rat(p) == 0) throw std::invalid_argument("project_from_point: point lies on the quadric");

  // Linear change A with A e_3 = p and standard vectors elsewhere.
  int j = -1;
  for (int i = 3; i >= 0; --i)
    if (p[i] != 0) {
      j = i;
      break;
    }
  std::vector<std::vector<Rat>> A(4, std::vector<Rat>(4, Rat(0)));
  int col = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == j) continue;
    A[i][col++] = 1;
  }
  for (int i = 0; i < 4; ++i) A[i][3] = p[i];
  MultiPoly q2 = quadric.substitute_linear(A);

  // Write q2 = a w^2 + b w + c with a constant, b linear, c quadratic in (x,y,z).
  std::vector<std::string> v3 = {"x", "y", "z"};
  MultiPoly a3(v3), b3(v3), c3(v3);
  Rat a_coeff = 0;
  for (const auto& [exps, coeff] : q2.terms()) {
    std::vector<int> e3(exps.begin(), exps.begin() + 3);
    if (exps[3] == 2) {
      a_coeff = coeff;
    } else if (exps[3] == 1) {
      b3.add_term(e3, coeff);
    } else {
      c3.add_term(e3, coeff);
    }
  }
  if (a_coeff == 0) throw std::invalid_argument("project_from_point: degenerate projection direction");
  MultiPoly branch = b3 * b3 - (4 * a_coeff) * c3;
  int bd = 0;
  if (branch.is_zero() || !branch.is_homogeneous(&bd) || bd != 2)
    throw std::invalid_argument("project_from_point: branch locus is not a conic");
  // Smoothness of the conic: 3x3 Gram determinant nonzero.
  auto coeff_of = [&](int i, int k) {
    std::vector<int> e(3, 0);
    e[i] += 1;
    e[k] += 1;
    auto it = branch.terms().find(e);
    return it == branch.terms().end() ? Rat(0) : it->second;
  };
  std::vector<std::vector<Rat>> G(3, std::vector<Rat>(3));
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) G[i][k] = (i == k) ? coeff_of(i, i) : coeff_of(i, k) / 2;
  Rat det = G[0][0] * (G[1][1] * G[2][2] - G[1][2] * G[2][1]) -
            G[0][1] * (G[1][0] * G[2][2] - G[1][2] * G[2][0]) +
            G[0][2] * (G[1][0] * G[2][1] - G[1][1] * G[2][0]);
  if (det == 0) throw std::invalid_argument("project_from_point: branch conic is singular");
  return CyclicCoverModel(2, 2, 1, branch);
}

MultiPoly descend_involution(const CyclicCoverModel& c) {
  if (c.r != 2) throw std::invalid_argument("descend_involution: cover of P^2 required");
  for (const auto& [exps, _] : c.s.terms())
    if (exps[2] % 2 != 0)
      throw std::invalid_argument("descend_involution: section has an odd power of z");
  MultiPoly out(std::vector<std::string>{"x", "y", "u"});
  for (const auto& [exps, coeff] : c.s.terms())
    out.add_term({exps[0], exps[1], exps[2] / 2}, coeff);
  return out;
}

Poly<RatFunc> generic_fiber(const MultiPoly& descended) {
  if (descended.nvars() != 3)
    throw std::invalid_argument("generic_fiber: descended model in (x, y, u) required");
  int wd = 0;
  if (!descended.is_weighted_homogeneous({1, 1, 2}, &wd))
    throw std::invalid_argument("generic_fiber: not weighted homogeneous of type (1,1,2)");
  bool depends_on_base = false;
  for (const auto& [exps, _] : descended.terms())
    depends_on_base |= (exps[0] > 0 || exps[1] > 0);
  if (!depends_on_base) throw std::invalid_argument("generic_fiber: model not fibered over [x:y]");
  // t = x/y, dehomogenize by y.
  RatFunc t = RatFunc::t();
  std::vector<RatFunc> coeffs;
  for (const auto& [exps, coeff] : descended.terms()) {
    int du = exps[2];
    if (static_cast<int>(coeffs.size()) <= du) coeffs.resize(du + 1, RatFunc(0));
    RatFunc term(coeff);
    for (int i = 0; i < exps[0]; ++i) term = term * t;
    coeffs[du] = coeffs[du] + term;
  }
  return Poly<RatFunc>(std::move(coeffs));
}

CyclicCoverModel load_cover_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  int r = j.at("r").get<int>();
  int e = j.at("e").get<int>();
  int m = j.at("m").get<int>();
  std::vector<std::string> names = {"x", "y", "z", "w"};
  if (r + 1 > 4)
    for (int i = 4; i <= r; ++i) names.push_back("x" + std::to_string(i));
  std::vector<std::string> vars(names.begin(), names.begin() + (r + 1));
  MultiPoly s(vars);
  for (const auto& term : j.at("s")) {
    Int num(static_cast<long>(term.at("num").get<long long>()));
    Int den(static_cast<long>(term.at("den").get<long long>()));
    auto exps = term.at("exps").get<std::vector<int>>();
    if (static_cast<int>(exps.size()) != r + 1)
      throw std::invalid_argument("cover file: exponent arity mismatch");
    s.add_term(exps, make_rat(num, den));
  }
  return CyclicCoverModel(r, e, m, std::move(s));  // validates homogeneity and degree
}

std::string cover_to_json(const CyclicCoverModel& c) {
  nlohmann::json j;
  j["r"] = c.r;
  j["e"] = c.e;
  j["m"] = c.m;
  j["s"] = nlohmann::json::array();
  for (const auto& [exps, coeff] : c.s.terms()) {
    nlohmann::json term;
    term["num"] = coeff.get_num().get_si();
    term["den"] = coeff.get_den().get_si();
    term["exps"] = exps;
    j["s"].push_back(term);
  }
  return j.dump(2);
}

}  // namespace qp
