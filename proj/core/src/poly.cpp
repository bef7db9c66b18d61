#include "qp/poly.hpp"

namespace qp {

std::string poly_str(const UPoly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    Rat c = f.coeff(i);
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    if (first && c < 0) os << "-";
    Rat ac = abs(c);
    if (ac != 1 || i == 0) os << ac.get_str();
    if (i > 0) {
      if (ac != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

std::string ratfunc_str(const RatFunc& f, const std::string& var) {
  if (f.den == UPoly::constant(Rat(1))) return poly_str(f.num, var);
  return "(" + poly_str(f.num, var) + ")/(" + poly_str(f.den, var) + ")";
}

}  // namespace qp
