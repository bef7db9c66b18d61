#include "qp/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qp/ellfib.hpp"
#include "qp/heights.hpp"
#include "qp/surfgeom.hpp"

namespace qp {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

/// Index-sharded parallel map; output order is the input order, so the result
/// is identical for any worker count.
template <class In, class Fn>
auto sharded_map(const std::vector<In>& items, int workers, Fn fn) {
  using Out = decltype(fn(items[0]));
  std::vector<Out> out(items.size());
  int w = std::max<size_t>(1, std::min<size_t>(workers, items.size()));
  if (w == 1) {
    for (size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::vector<std::thread> pool;
  for (int k = 0; k < w; ++k)
    pool.emplace_back([&, k] {
      for (size_t i = k; i < items.size(); i += w) out[i] = fn(items[i]);
    });
  for (auto& t : pool) t.join();
  return out;
}

const char* kind_str(FiberKind k) {
  switch (k) {
    case FiberKind::Split: return "split";
    case FiberKind::Ramified: return "ramified";
    case FiberKind::Inert: return "inert";
    case FiberKind::Irreducible: return "irreducible";
    case FiberKind::EPower: return "e-power";
    default: return "other";
  }
}

}  // namespace

void RunConfig::validate() const {
  if (height_bound <= 0) throw std::invalid_argument("config: height bound must be positive");
  if (epsilon < 0 || epsilon >= 1) throw std::invalid_argument("config: epsilon must be in [0,1)");
  if (workers < 1) throw std::invalid_argument("config: worker count must be positive");
  if (sections < 1) throw std::invalid_argument("config: section count must be positive");
  if (format != "csv" && format != "json") throw std::invalid_argument("config: unknown format");
  if (n_range.first < 2 || n_range.second < n_range.first)
    throw std::invalid_argument("config: bad n range");
}

CyclicCoverModel builtin_cover(int m) {
  if (m != 2 && m != 4) throw std::invalid_argument("builtin_cover: m must be 2 or 4");
  MultiPoly s(std::vector<std::string>{"x", "y", "z"});
  s.add_term({2 * m, 0, 0}, Rat(1));
  s.add_term({0, 2 * m, 0}, Rat(-1));
  s.add_term({0, 0, 2 * m}, Rat(1));
  return CyclicCoverModel(2, 2, m, std::move(s));
}

MultiPoly builtin_quadric() {
  MultiPoly q(std::vector<std::string>{"x", "y", "z", "w"});
  q.add_term({2, 0, 0, 0}, Rat(1));
  q.add_term({0, 2, 0, 0}, Rat(1));
  q.add_term({0, 0, 2, 0}, Rat(1));
  q.add_term({0, 0, 0, 2}, Rat(-1));
  return q;
}

CyclicCoverModel load_cover_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open cover file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_cover_json(ss.str());
}

Report cmd_audit(const CyclicCoverModel& cover, const RunConfig& cfg) {
  cfg.validate();
  std::vector<ProjectivePoint> points = enumerate_points(cover.r, cfg.height_bound, PointField::Rational);
  for (auto& P : enumerate_points(cover.r, cfg.height_bound, PointField::Quadratic))
    points.push_back(std::move(P));

  auto maybe_rows = sharded_map(points, cfg.workers, [&](const ProjectivePoint& P) {
    return audit_point(cover, P, cfg.epsilon);
  });
  std::vector<AuditRow> rows;
  for (auto& r : maybe_rows)
    if (r) rows.push_back(std::move(*r));
  std::stable_sort(rows.begin(), rows.end(), audit_row_before);

  double max_slack = 0;
  int marginal = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    max_slack = i == 0 ? rows[i].slack : std::max(max_slack, rows[i].slack);
    marginal += rows[i].marginal ? 1 : 0;
  }

  Report rep;
  rep.row_count = static_cast<int>(rows.size());
  if (cfg.format == "json") {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json o;
      o["point_id"] = r.point_id;
      o["field_d"] = r.field_d.get_str();
      o["base_height"] = fmt_double(r.base_height);
      o["canonical_height"] = fmt_double(r.canonical_height);
      o["disc"] = fmt_double(r.disc);
      o["contracted"] = r.contracted;
      o["slack"] = fmt_double(r.slack);
      o["marginal"] = r.marginal;
      j["rows"].push_back(o);
    }
    j["summary"] = {{"rows", rows.size()}, {"max_slack", fmt_double(max_slack)}, {"marginal", marginal}};
    rep.body = j.dump(2) + "\n";
    return rep;
  }
  std::ostringstream os;
  os << "point_id,field_d,base_height,canonical_height,disc,contracted,slack,marginal\n";
  for (const auto& r : rows) {
    os << r.point_id << ',' << r.field_d.get_str() << ',' << fmt_double(r.base_height) << ','
       << fmt_double(r.canonical_height) << ',' << fmt_double(r.disc) << ','
       << fmt_bool(r.contracted) << ',' << fmt_double(r.slack) << ',' << fmt_bool(r.marginal)
       << '\n';
  }
  os << "# summary rows=" << rows.size() << " max_slack=" << fmt_double(max_slack)
     << " marginal=" << marginal << "\n";
  rep.body = os.str();
  return rep;
}

// ---------------------------------------------------------------------------
// verify-examples
// ---------------------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  std::string source;
  bool pass{false};
};

RatFunc tpow(int n) {
  RatFunc t = RatFunc::t();
  RatFunc r(1);
  for (int i = 0; i < n; ++i) r = r * t;
  return r;
}

}  // namespace

Report cmd_verify_examples(const RunConfig& cfg) {
  if (cfg.n_range.first < 2 || cfg.n_range.second < cfg.n_range.first)
    throw std::invalid_argument("config: bad n range");
  std::vector<Check> checks;

  // 1. projection of a smooth quadric from an off-quadric point
  {
    Check c{"projection-branch-degree", "conic (degree 2, m = 1)", "", "quadric projection", false};
    try {
      CyclicCoverModel model = project_from_point(builtin_quadric(), {Rat(0), Rat(0), Rat(0), Rat(1)});
      int deg = model.s.total_degree();
      c.actual = "degree " + std::to_string(deg) + ", m = " + std::to_string(model.m);
      c.pass = deg == 2 && model.m == 1;
    } catch (const std::exception& e) {
      c.actual = std::string("error: ") + e.what();
    }
    checks.push_back(std::move(c));
  }

  // 2. complete intersection of bidegrees (1,1), (2,2): trivial canonical class
  {
    Check c{"ci-canonical-class", "(0, 0)", "", "adjunction in the product of planes", false};
    SurfaceLattice amb = lattice_p2xp2();
    DivisorClass K = ci_canonical(amb, {{1, 1}, {2, 2}});
    c.actual = "(" + rat_str(K.c[0]) + ", " + rat_str(K.c[1]) + ")";
    c.pass = K.c[0] == 0 && K.c[1] == 0;
    checks.push_back(std::move(c));
  }

  // 3. conic bundle: generic fiber of the descended m = 2 model
  Poly<RatFunc> conic_fiber;
  {
    Check c{"conic-generic-fiber", "v^2 = u^2 + t^4 - 1", "", "descent along z -> -z", false};
    conic_fiber = generic_fiber(descend_involution(builtin_cover(2)));
    bool ok = conic_fiber.degree() == 2 && conic_fiber.coeff(2) == RatFunc(1) &&
              conic_fiber.coeff(1) == RatFunc(0) && conic_fiber.coeff(0) == tpow(4) - RatFunc(1);
    c.actual = ok ? "v^2 = u^2 + t^4 - 1" : "unexpected fiber polynomial";
    c.pass = ok;
    checks.push_back(std::move(c));
  }

  // 4. conic parametrization through a rational point, exact identity
  {
    Check c{"conic-parametrization", "v(l)^2 - u(l)^2 = t^4 - 1 identically", "",
            "secant-line parametrization", false};
    try {
      RatFunc cc = tpow(4) - RatFunc(1);
      FnPoint base{(cc - RatFunc(1)) / RatFunc(2), (cc + RatFunc(1)) / RatFunc(2)};
      ConicParam cp = conic_parametrize(cc, base);
      auto lhs = cp.v_of_lambda * cp.v_of_lambda - cp.u_of_lambda * cp.u_of_lambda;
      bool ok = lhs == RF<RatFunc>(cc);
      // lambda = 0 returns the base point
      auto p0 = cp.at(Rat(0));
      ok = ok && p0.first == base.first && p0.second == base.second;
      c.actual = ok ? "identity holds; l = 0 is the base point" : "identity fails";
      c.pass = ok;
    } catch (const std::exception& e) {
      c.actual = std::string("error: ") + e.what();
    }
    checks.push_back(std::move(c));
  }

  // 5. quartic bundle: generic fiber of the descended m = 4 model
  Poly<RatFunc> quartic_fiber;
  {
    Check c{"quartic-generic-fiber", "v^2 = u^4 + t^8 - 1", "", "descent along z -> -z", false};
    quartic_fiber = generic_fiber(descend_involution(builtin_cover(4)));
    bool ok = quartic_fiber.degree() == 4 && quartic_fiber.coeff(4) == RatFunc(1) &&
              quartic_fiber.coeff(3) == RatFunc(0) && quartic_fiber.coeff(2) == RatFunc(0) &&
              quartic_fiber.coeff(1) == RatFunc(0) &&
              quartic_fiber.coeff(0) == tpow(8) - RatFunc(1);
    c.actual = ok ? "v^2 = u^4 + t^8 - 1" : "unexpected fiber polynomial";
    c.pass = ok;
    checks.push_back(std::move(c));
  }

  // 6. the section (1, t^4) lies on the quartic fiber
  {
    Check c{"quartic-base-point", "1 + t^8 - 1 = (t^4)^2", "", "on-curve identity", false};
    RatFunc val = quartic_fiber.eval(RatFunc(1));
    bool ok = val == tpow(8);
    c.actual = ok ? "holds" : "fails";
    c.pass = ok;
    checks.push_back(std::move(c));
  }

  // 7. specialization at t = 2: (1, 16) on v^2 = u^4 + 255 has infinite order
  {
    Check c{"specialized-point-infinite-order", "no multiple up to 12 is the identity", "",
            "torsion bound over Q", false};
    try {
      FnQuartic fq;
      fq.c4 = quartic_fiber.coeff(4);
      fq.c3 = quartic_fiber.coeff(3);
      fq.c2 = quartic_fiber.coeff(2);
      fq.c1 = quartic_fiber.coeff(1);
      fq.c0 = quartic_fiber.coeff(0);
      QuarticModel<Rat> sq = specialize_quartic(fq, Rat(2));
      bool on = sq.eval(Rat(1)) == Rat(256);
      auto tr = quartic_to_weierstrass(sq);
      ECPoint<Rat> P = tr.apply(Rat(1), Rat(16));
      TorsionResult t = is_torsion(tr.E, P);
      bool ok = on && !t.torsion;
      c.actual = ok ? "infinite order (with non-integrality evidence: " +
                          std::string(fmt_bool(t.lutz_nagell_nonintegral)) + ")"
                    : "unexpected torsion result";
      c.pass = ok;
    } catch (const std::exception& e) {
      c.actual = std::string("error: ") + e.what();
    }
    checks.push_back(std::move(c));
  }

  // 8. Hirzebruch family, one check per n
  for (int n = cfg.n_range.first; n <= cfg.n_range.second; ++n) {
    Check c{"family-n=" + std::to_string(n),
            "volume 16(n-1), genus 28n-7, ample iff n>2, degree 8n, multiplicity 8(n-1), "
            "not-canonical",
            "", "ruled-surface pipeline", false};
    try {
      FnFamilyReport rep = fn_family_report(n);
      bool ok = rep.cover_volume == Rat(16 * (n - 1)) && rep.branch_genus == Rat(28 * n - 7) &&
                rep.halfclass_ample == (n > 2) && rep.plane_degree == Rat(8 * n) &&
                rep.plane_multiplicity == Rat(8 * (n - 1)) &&
                rep.flag == SingularityFlag::NotCanonical;
      std::ostringstream os;
      os << "volume " << rat_str(rep.cover_volume) << ", genus " << rat_str(rep.branch_genus)
         << ", ample " << fmt_bool(rep.halfclass_ample) << ", degree "
         << rat_str(rep.plane_degree) << ", multiplicity " << rat_str(rep.plane_multiplicity)
         << ", flag "
         << (rep.flag == SingularityFlag::NotCanonical ? "not-canonical" : "possibly-canonical");
      c.actual = os.str();
      c.pass = ok;
    } catch (const std::exception& e) {
      c.actual = std::string("error: ") + e.what();
    }
    checks.push_back(std::move(c));
  }

  if (cfg.corrupt_check >= 0 && cfg.corrupt_check < static_cast<int>(checks.size())) {
    checks[cfg.corrupt_check].pass = false;
    checks[cfg.corrupt_check].actual += " [corrupted by test hook]";
  }

  int passed = 0;
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name},
                           {"expected", c.expected},
                           {"actual", c.actual},
                           {"source", c.source},
                           {"pass", c.pass}});
    passed += c.pass ? 1 : 0;
  }
  j["seed"] = cfg.seed;
  j["summary"] = {{"total", checks.size()},
                  {"passed", passed},
                  {"failed", checks.size() - passed}};
  Report rep;
  rep.body = j.dump(2) + "\n";
  rep.row_count = static_cast<int>(checks.size());
  rep.all_checks_pass = passed == static_cast<int>(checks.size());
  return rep;
}

// ---------------------------------------------------------------------------
// generate-points
// ---------------------------------------------------------------------------

namespace {

struct GenTask {
  Rat t0;
  int section_index;  // multiple n for the quartic, lambda for the conic
  int sign;           // +1 / -1 choice of w
};

struct GenOutcome {
  bool excluded{false};
  std::string exclusion;
  Rat t0;
  int section_index{0};
  Rat u0, v0;
  Int field_d{1};
  bool is_rational{true};
  bool verified{false};
};

}  // namespace

Report cmd_generate_points(const CyclicCoverModel& cover, const RunConfig& cfg) {
  cfg.validate();
  MultiPoly descended = descend_involution(cover);
  Poly<RatFunc> fiber = generic_fiber(descended);
  std::vector<Rat> tvals = cfg.t_values;
  if (tvals.empty()) tvals = {Rat(2), Rat(3), Rat(5), Rat(7), Rat(10)};

  // sections of the fiber bundle, as rational-function points
  std::vector<FnPoint> secs;
  std::vector<int> sec_index;
  FnQuartic fq;
  if (fiber.degree() == 4) {
    fq.c4 = fiber.coeff(4);
    fq.c3 = fiber.coeff(3);
    fq.c2 = fiber.coeff(2);
    fq.c1 = fiber.coeff(1);
    fq.c0 = fiber.coeff(0);
    auto v1 = field_sqrt(fiber.eval(RatFunc(1)));
    if (!v1) throw std::invalid_argument("generate-points: no section over u = 1");
    secs = generate_sections(fq, FnPoint{RatFunc(1), *v1}, cfg.sections, std::max(cfg.sections, kSectionCap));
    for (int n = 1; n <= cfg.sections; ++n) sec_index.push_back(n);
  } else if (fiber.degree() == 2) {
    if (!(fiber.coeff(2) == RatFunc(1)) || !(fiber.coeff(1) == RatFunc(0)))
      throw std::invalid_argument("generate-points: conic fiber must be v^2 = u^2 + c(t)");
    RatFunc c = fiber.coeff(0);
    FnPoint base{(c - RatFunc(1)) / RatFunc(2), (c + RatFunc(1)) / RatFunc(2)};
    ConicParam cp = conic_parametrize(c, base);
    for (int l = 0; l < cfg.sections; ++l) {
      secs.push_back(cp.at(Rat(l)));
      sec_index.push_back(l);
    }
    fq.c4 = RatFunc(0);
    fq.c3 = RatFunc(0);
    fq.c2 = fiber.coeff(2);
    fq.c1 = fiber.coeff(1);
    fq.c0 = fiber.coeff(0);
  } else {
    throw std::invalid_argument("generate-points: fiber degree must be 2 or 4");
  }

  std::vector<GenTask> tasks;
  for (const auto& t0 : tvals)
    for (size_t i = 0; i < secs.size(); ++i)
      for (int sign : {+1, -1}) tasks.push_back(GenTask{t0, static_cast<int>(i), sign});

  auto outcomes = sharded_map(tasks, cfg.workers, [&](const GenTask& task) {
    GenOutcome out;
    out.t0 = task.t0;
    out.section_index = sec_index[task.section_index];
    try {
      const FnPoint& s = secs[task.section_index];
      auto u = s.first.eval(task.t0);
      auto v = s.second.eval(task.t0);
      if (!u || !v) throw SpecializationPole("pole of the section");
      // bad-reduction screen for the quartic bundle
      if (fiber.degree() == 4) (void)specialize_quartic(fq, task.t0);
      Rat v0 = task.sign > 0 ? *v : Rat(-*v);
      LiftedPoint lp = lift_to_quadratic_point(cover, task.t0, {*u, v0});
      out.u0 = lp.u0;
      out.v0 = v0;
      out.field_d = lp.field_d;
      out.is_rational = lp.is_rational;
      out.verified = lp.verified;
    } catch (const std::exception& e) {
      out.excluded = true;
      out.exclusion = e.what();
    }
    return out;
  });

  int rows = 0, excluded = 0, verified = 0;
  std::ostringstream os;
  os << "t0,section_index,u0,v0,field_d,is_rational,is_contracted_by_pi,verified\n";
  for (const auto& o : outcomes) {
    if (o.excluded) {
      ++excluded;
      continue;
    }
    ++rows;
    verified += o.verified ? 1 : 0;
    os << rat_str(o.t0) << ',' << o.section_index << ',' << rat_str(o.u0) << ',' << rat_str(o.v0)
       << ',' << o.field_d.get_str() << ',' << fmt_bool(o.is_rational) << ','
       << fmt_bool(o.field_d != 1) << ',' << fmt_bool(o.verified) << '\n';
  }
  for (const auto& o : outcomes)
    if (o.excluded)
      os << "# excluded t0=" << rat_str(o.t0) << " section=" << o.section_index
         << " reason=" << o.exclusion << "\n";
  os << "# summary rows=" << rows << " excluded=" << excluded << " verified=" << verified << "\n";

  Report rep;
  rep.body = os.str();
  rep.row_count = rows;
  rep.all_checks_pass = rows > 0 && verified == rows;
  return rep;
}

Report cmd_thresholds(const RunConfig&) {
  std::ostringstream os;
  os << "r,d,e,threshold,residue_degrees\n";
  int rows = 0;
  for (int r = 1; r <= 2; ++r)
    for (int d = 1; d <= 3; ++d)
      for (int e = 2; e <= 3; ++e) {
        os << r << ',' << d << ',' << e << ',' << vojta_threshold(r, d, e) << ',';
        bool first = true;
        for (int k : residue_degree_options(d, e)) {
          if (!first) os << '|';
          os << k;
          first = false;
        }
        os << '\n';
        ++rows;
      }
  Report rep;
  rep.body = os.str();
  rep.row_count = rows;
  return rep;
}

Report cmd_enumerate(const CyclicCoverModel& cover, const RunConfig& cfg) {
  cfg.validate();
  std::vector<ProjectivePoint> points = enumerate_points(cover.r, cfg.height_bound, PointField::Rational);
  if (cover.e == 2)
    for (auto& P : enumerate_points(cover.r, cfg.height_bound, PointField::Quadratic))
      points.push_back(std::move(P));

  struct Row {
    std::string id;
    std::string field_d;
    double height;
    std::string kind;
  };
  auto rows = sharded_map(points, cfg.workers, [&](const ProjectivePoint& P) {
    FiberClass fc = P.effectively_rational() ? classify_fiber(cover, P)
                                             : classify_fiber_quadratic(cover, P);
    return Row{P.canonical().str(), P.effective_d().get_str(), weil_height(P).value,
               kind_str(fc.kind)};
  });
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.id < b.id;
  });
  std::ostringstream os;
  os << "point_id,field_d,height,kind\n";
  for (const auto& r : rows)
    os << r.id << ',' << r.field_d << ',' << fmt_double(r.height) << ',' << r.kind << '\n';
  os << "# summary rows=" << rows.size() << "\n";
  Report rep;
  rep.body = os.str();
  rep.row_count = static_cast<int>(rows.size());
  return rep;
}

}  // namespace qp
