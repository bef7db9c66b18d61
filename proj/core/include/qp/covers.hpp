#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qp/heights.hpp"
#include "qp/multipoly.hpp"
#include "qp/poly.hpp"

namespace qp {

/// Cyclic cover w^e = s(x_0..x_r) of P^r, branch divisor of degree e*m.
struct CyclicCoverModel {
  int r{1};
  int e{2};
  int m{1};
  MultiPoly s;

  CyclicCoverModel() = default;
  CyclicCoverModel(int r_, int e_, int m_, MultiPoly s_);

  std::string str() const;
};

enum class FiberKind { Split, Ramified, Inert, Irreducible, EPower, Other };

struct FiberClass {
  ProjectivePoint base_point;
  FiberKind kind{FiberKind::Other};
  Int residue_d{1};       // squarefree d of the residue field for Inert fibers
  int residue_degree{1};  // degree over Q of the upstairs closed point(s)
};

struct AuditRow {
  std::string point_id;
  Int field_d{1};
  double base_height{0};
  double canonical_height{0};
  double disc{0};
  bool contracted{false};
  double slack{0};
  bool marginal{false};
};

/// K_X = pi^* O((e-1)m - r - 1): the multiplier of the base height.
int canonical_multiplier(const CyclicCoverModel& c);

/// Least integer m strictly greater than (r + 2d - 1)/(e - 1).
int vojta_threshold(int r, int d, int e);

/// Divisors of gcd(d, e): the possible relative residue degrees in a fiber.
std::set<int> residue_degree_options(int d, int e);

/// Fiber over a rational base point (e = 2: Split / Ramified / Inert;
/// e >= 3: Ramified / EPower / Other only).
FiberClass classify_fiber(const CyclicCoverModel& c, const ProjectivePoint& P);

/// Fiber over a quadratic base point (e = 2): Split (non-contracted quadratic
/// points upstairs), Ramified, or Irreducible (a degree-4 point upstairs).
FiberClass classify_fiber_quadratic(const CyclicCoverModel& c, const ProjectivePoint& P);

enum class PointField { Rational, Quadratic };

/// All points of P^r (r = 1 or 2) of the given field type with Weil height
/// <= height_bound, one representative per conjugate pair, in a fixed
/// deterministic order.
std::vector<ProjectivePoint> enumerate_points(int r, double height_bound, PointField field);

/// Minimal data (a, b, c) of a quadratic point [alpha : 1] of P^1: the
/// primitive integer minimal polynomial of alpha with a > 0.
struct QuadMinimalData {
  Int a, b, c;
  auto operator<=>(const QuadMinimalData&) const = default;
};
QuadMinimalData minimal_data(const ProjectivePoint& P);
ProjectivePoint point_from_minimal_data(const QuadMinimalData& q);

/// Audit row for a single base point: rational points with inert fibers
/// (contracted upstairs) and quadratic points with split fibers contribute;
/// everything else yields nullopt.
std::optional<AuditRow> audit_point(const CyclicCoverModel& c, const ProjectivePoint& P,
                                    double epsilon);

/// Sort order of audit reports: base height, then point id.
bool audit_row_before(const AuditRow& x, const AuditRow& y);

/// Empirical slack data for the height-discriminant inequality; never asserts
/// the inequality itself.
std::vector<AuditRow> vojta_audit(const CyclicCoverModel& c, double height_bound, double epsilon);

/// Projection of a smooth quadric in P^3 from a rational point off it:
/// the induced double cover of P^2 branched over a smooth conic (m = 1).
CyclicCoverModel project_from_point(const MultiPoly& quadric, const std::vector<Rat>& p);

/// Model with branch section invariant under z -> -z, descended to P(1,1,2)
/// via z^2 = u.  Variables (x, y, u) with weights (1, 1, 2).
MultiPoly descend_involution(const CyclicCoverModel& c);

/// Generic fiber of the descended model over t = x/y: polynomial g(u) over
/// Q(t) with fiber equation v^2 = g(u).
Poly<RatFunc> generic_fiber(const MultiPoly& descended);

/// Cover definition file format.
CyclicCoverModel load_cover_json(const std::string& json_text);
std::string cover_to_json(const CyclicCoverModel& c);

}  // namespace qp
