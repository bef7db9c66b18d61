#pragma once

#include <vector>

#include "qp/quadfield.hpp"

namespace qp {

/// Absolute norm of the fractional O_K-module generated by the given elements
/// of Q(sqrt(d)), computed from a Hermite normal form of the Z-span of
/// {g, g*omega} over all generators g, where omega is the standard integral
/// generator of the maximal order.
Rat module_norm_hnf(const std::vector<QuadElem>& generators);

}  // namespace qp
