#include "qp/heights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qp {

ProjectivePoint::ProjectivePoint(Int d_, std::vector<QuadElem> coords_)
    : d(std::move(d_)), coords(std::move(coords_)) {
  if (coords.empty()) throw std::invalid_argument("ProjectivePoint: no coordinates");
  bool any = false;
  for (auto& c : coords) {
    if (!c.is_rational() && c.d != d)
      throw std::invalid_argument("ProjectivePoint: coordinate field mismatch");
    c.d = d;
    any |= !c.is_zero();
  }
  if (!any) throw std::invalid_argument("ProjectivePoint: all coordinates zero");
}

ProjectivePoint ProjectivePoint::from_rational(const std::vector<Rat>& coords) {
  std::vector<QuadElem> qs;
  for (const auto& c : coords) qs.emplace_back(Int(1), c, Rat(0));
  return ProjectivePoint(1, std::move(qs));
}

bool ProjectivePoint::effectively_rational() const {
  const QuadElem* pivot = nullptr;
  for (const auto& c : coords)
    if (!c.is_zero()) {
      pivot = &c;
      break;
    }
  for (const auto& c : coords) {
    QuadElem ratio = c / *pivot;
    if (!ratio.is_rational()) return false;
  }
  return true;
}

Int ProjectivePoint::effective_d() const { return effectively_rational() ? Int(1) : d; }

std::vector<Int> ProjectivePoint::coprime_integer_coords() const {
  if (!effectively_rational())
    throw std::domain_error("coprime_integer_coords: point is not rational");
  const QuadElem* pivot = nullptr;
  for (const auto& c : coords)
    if (!c.is_zero()) {
      pivot = &c;
      break;
    }
  std::vector<Rat> ratios;
  for (const auto& c : coords) ratios.push_back((c / *pivot).a);
  Int den = 1;
  for (const auto& r : ratios) den = lcm(den, r.get_den());
  std::vector<Int> ints;
  for (const auto& r : ratios) ints.push_back(Int(r.get_num() * (den / r.get_den())));
  Int g = 0;
  for (const auto& v : ints) g = gcd(g, v);
  for (auto& v : ints) v /= g;
  for (const auto& v : ints) {
    if (v != 0) {
      if (v < 0)
        for (auto& w : ints) w = -w;
      break;
    }
  }
  return ints;
}

ProjectivePoint ProjectivePoint::canonical() const {
  if (effectively_rational()) {
    auto ints = coprime_integer_coords();
    std::vector<Rat> rs;
    for (const auto& v : ints) rs.emplace_back(v);
    return from_rational(rs);
  }
  const QuadElem* pivot = nullptr;
  for (const auto& c : coords)
    if (!c.is_zero()) {
      pivot = &c;
      break;
    }
  std::vector<QuadElem> scaled;
  for (const auto& c : coords) scaled.push_back(c / *pivot);
  return ProjectivePoint(d, std::move(scaled));
}

bool ProjectivePoint::projectively_equal(const ProjectivePoint& other) const {
  if (coords.size() != other.coords.size()) return false;
  // cross-ratio test x_i y_j = x_j y_i
  for (size_t i = 0; i < coords.size(); ++i)
    for (size_t j = i + 1; j < coords.size(); ++j)
      if (!(coords[i] * other.coords[j] == coords[j] * other.coords[i])) return false;
  return true;
}

std::string ProjectivePoint::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << " : ";
    const auto& c = coords[i];
    if (c.b == 0) {
      os << c.a.get_str();
    } else {
      os << c.a.get_str() << (c.b > 0 ? "+" : "") << c.b.get_str() << "*sqrt(" << d.get_str() << ")";
    }
  }
  os << "]";
  return os.str();
}

HeightValue weil_height(const ProjectivePoint& P) {
  if (P.effectively_rational()) {
    auto ints = P.coprime_integer_coords();
    double mx = 0;
    for (const auto& v : ints) mx = std::max(mx, std::abs(mpz_get_d(v.get_mpz_t())));
    return HeightValue{std::log(mx)};
  }
  // Quadratic point: (1/2)[ sum over archimedean embeddings of log max |sigma(x_i)|
  // (one complex pair with weight 2) - log N(module generated by coords) ].
  double arch = 0;
  if (field_is_real(P.d)) {
    for (bool root : {true, false}) {
      double mx = 0;
      for (const auto& c : P.coords) mx = std::max(mx, embed_abs(c, root));
      arch += std::log(mx);
    }
  } else {
    double mx = 0;
    for (const auto& c : P.coords) mx = std::max(mx, embed_abs(c, true));
    arch += 2 * std::log(mx);
  }
  Rat norm = module_norm_hnf(P.coords);
  double h = 0.5 * (arch - std::log(to_double(norm)));
  return HeightValue{h};
}

HeightValue mahler_height(const Poly<Rat>& minpoly) {
  if (minpoly.is_zero()) throw std::invalid_argument("mahler_height: zero polynomial");
  int deg = minpoly.degree();
  if (deg < 1 || deg > 2) throw std::invalid_argument("mahler_height: degree must be 1 or 2");
  for (const auto& c : minpoly.c)
    if (c.get_den() != 1) throw std::invalid_argument("mahler_height: integer coefficients required");
  Int content = 0;
  for (const auto& c : minpoly.c) content = gcd(content, c.get_num());
  if (content != 1) throw std::invalid_argument("mahler_height: content must be 1");

  double a = to_double(minpoly.coeff(deg));
  if (deg == 1) {
    // a x + b, root -b/a; M = |a| max(1, |b/a|) = max(|a|, |b|)
    double b = to_double(minpoly.coeff(0));
    double M = std::max(std::abs(a), std::abs(b));
    return HeightValue{std::log(M)};
  }
  double b = to_double(minpoly.coeff(1));
  double c = to_double(minpoly.coeff(0));
  Rat D = minpoly.coeff(1) * minpoly.coeff(1) - 4 * minpoly.coeff(2) * minpoly.coeff(0);
  if (is_square(D)) throw std::invalid_argument("mahler_height: polynomial is reducible over Q");
  double M;
  if (D < 0) {
    // complex pair: |r|^2 = c/a, M = |a| * max(1, |r|)^2 = max(|a|, |c|) (a, c same sign)
    M = std::abs(a) * std::max(1.0, std::abs(c / a));
  } else {
    double sq = std::sqrt(to_double(Rat(D)));
    double r1 = (-b + sq) / (2 * a);
    double r2 = (-b - sq) / (2 * a);
    M = std::abs(a) * std::max(1.0, std::abs(r1)) * std::max(1.0, std::abs(r2));
  }
  return HeightValue{0.5 * std::log(M)};
}

DiscriminantValue log_disc(const ProjectivePoint& P) {
  Int de = P.effective_d();
  if (de == 1) return DiscriminantValue{1, 0.0};
  Int disc = field_discriminant(SquarefreeInt{de});
  double lv = std::log(std::abs(mpz_get_d(disc.get_mpz_t()))) / 2.0;
  return DiscriminantValue{disc, lv};
}

SilvermanResult silverman_check(const ProjectivePoint& P) {
  if (P.effectively_rational())
    throw std::invalid_argument("silverman_check: rational point (inequality degenerate)");
  double h = weil_height(P).value;
  double dv = log_disc(P).log_value;
  double rhs = 2 * h + std::log(2.0);
  double slack = rhs - dv;
  SilvermanResult r;
  r.holds = slack >= -kHeightTol;
  r.slack = slack;
  r.marginal = std::abs(slack) < kMarginalBand;
  return r;
}

}  // namespace qp
