#pragma once

#include <utility>

#include "qp/rational.hpp"

namespace qp {

/// A nonzero squarefree integer; value 1 tags the rational field itself.
struct SquarefreeInt {
  Int value{1};

  bool is_rational_field() const { return value == 1; }
  friend bool operator==(const SquarefreeInt&, const SquarefreeInt&) = default;
};

/// Trial-division bound for squarefree factorization; cofactors past the
/// bound are handled by Pollard rho, or rejected when that also fails.
inline constexpr unsigned long kSquarefreeTrialBound = 1'000'000;

/// Writes n = s * f^2 with s squarefree, sign(s) = sign(n), f > 0.
std::pair<SquarefreeInt, Int> squarefree_part(const Int& n,
                                              unsigned long trial_bound = kSquarefreeTrialBound);

/// Squarefree kernel of a nonzero rational: squarefree_part(num * den).
SquarefreeInt squarefree_kernel(const Rat& q);

/// Absolute discriminant of Q(sqrt(d)): d if d = 1 (mod 4), else 4d; 1 for d = 1.
Int field_discriminant(const SquarefreeInt& d);

bool is_squarefree(const Int& n, unsigned long trial_bound = kSquarefreeTrialBound);

}  // namespace qp
