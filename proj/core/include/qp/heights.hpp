#pragma once

#include <string>
#include <vector>

#include "qp/hnf.hpp"
#include "qp/poly.hpp"
#include "qp/quadfield.hpp"
#include "qp/squarefree.hpp"

namespace qp {

/// Global tolerance for height comparisons (heights of algebraic numbers are
/// irrational; floats are unavoidable).
inline constexpr double kHeightTol = 1e-9;
/// Checks landing within this distance of a boundary are flagged marginal.
inline constexpr double kMarginalBand = 1e-6;

/// Point of P^r with coordinates in Q or in Q(sqrt(d)).
struct ProjectivePoint {
  Int d{1};
  std::vector<QuadElem> coords;

  ProjectivePoint() = default;
  ProjectivePoint(Int d_, std::vector<QuadElem> coords_);

  static ProjectivePoint from_rational(const std::vector<Rat>& coords);

  size_t dim() const { return coords.size() - 1; }

  /// True when every coordinate ratio is rational (the point is defined over Q).
  bool effectively_rational() const;
  /// Squarefree d of the field the point actually generates (1 if rational).
  Int effective_d() const;

  /// Canonical form: first nonzero coordinate scaled to 1; effectively
  /// rational points get coprime integer coordinates with positive leading entry.
  ProjectivePoint canonical() const;
  /// Coprime integer coordinates; only valid for effectively rational points.
  std::vector<Int> coprime_integer_coords() const;

  bool projectively_equal(const ProjectivePoint& other) const;
  std::string str() const;
};

struct HeightValue {
  double value{0};
  double tolerance{kHeightTol};
};

struct DiscriminantValue {
  Int disc{1};
  double log_value{0};
};

struct SilvermanResult {
  bool holds{false};
  double slack{0};
  bool marginal{false};
};

/// Absolute logarithmic Weil height.
HeightValue weil_height(const ProjectivePoint& P);

/// (1/deg) log M(f) for an irreducible integer polynomial of degree <= 2,
/// content 1.  Independent oracle for weil_height on P^1.
HeightValue mahler_height(const Poly<Rat>& minpoly);

/// Logarithmic discriminant of the residue field of P over Q.
DiscriminantValue log_disc(const ProjectivePoint& P);

/// d(P) <= 2 h(P) + log 2 check for quadratic points (explicit Silverman
/// constant for k = Q, d = 2).
SilvermanResult silverman_check(const ProjectivePoint& P);

}  // namespace qp
