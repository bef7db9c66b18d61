#include "qp/multipoly.hpp"

#include <numeric>
#include <sstream>

namespace qp {

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, std::vector<int> exps, const Rat& coeff) {
  MultiPoly p(std::move(vars));
  p.add_term(exps, coeff);
  return p;
}

void MultiPoly::add_term(const std::vector<int>& exps, const Rat& coeff) {
  if (exps.size() != vars_.size()) throw std::invalid_argument("MultiPoly: exponent arity mismatch");
  for (int e : exps)
    if (e < 0) throw std::invalid_argument("MultiPoly: negative exponent");
  if (coeff == 0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [exps, _] : terms_)
    d = std::max(d, std::accumulate(exps.begin(), exps.end(), 0));
  return d;
}

int MultiPoly::weighted_degree(const std::vector<int>& weights) const {
  int d = -1;
  for (const auto& [exps, _] : terms_) {
    int w = 0;
    for (size_t i = 0; i < exps.size(); ++i) w += exps[i] * weights[i];
    d = std::max(d, w);
  }
  return d;
}

bool MultiPoly::is_homogeneous(int* degree_out) const {
  std::vector<int> w(vars_.size(), 1);
  return is_weighted_homogeneous(w, degree_out);
}

bool MultiPoly::is_weighted_homogeneous(const std::vector<int>& weights, int* degree_out) const {
  int d = -2;
  for (const auto& [exps, _] : terms_) {
    int w = 0;
    for (size_t i = 0; i < exps.size(); ++i) w += exps[i] * weights[i];
    if (d == -2) d = w;
    if (w != d) return false;
  }
  if (degree_out && d != -2) *degree_out = d;
  return true;
}

static void check_same_vars(const MultiPoly& f, const MultiPoly& g) {
  if (!f.vars().empty() && !g.vars().empty() && f.vars() != g.vars())
    throw std::invalid_argument("MultiPoly: variable list mismatch");
}

MultiPoly operator+(const MultiPoly& f, const MultiPoly& g) {
  check_same_vars(f, g);
  MultiPoly r = f.vars().empty() ? g : f;
  r.terms_.clear();
  for (const auto& [e, c] : f.terms()) r.add_term(e, c);
  for (const auto& [e, c] : g.terms()) r.add_term(e, c);
  return r;
}

MultiPoly operator-(const MultiPoly& f, const MultiPoly& g) {
  check_same_vars(f, g);
  MultiPoly r = f.vars().empty() ? g : f;
  r.terms_.clear();
  for (const auto& [e, c] : f.terms()) r.add_term(e, c);
  for (const auto& [e, c] : g.terms()) r.add_term(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) {
  check_same_vars(f, g);
  MultiPoly r = f.vars().empty() ? g : f;
  r.terms_.clear();
  for (const auto& [e1, c1] : f.terms())
    for (const auto& [e2, c2] : g.terms()) {
      std::vector<int> e(e1.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

MultiPoly operator*(const Rat& c, const MultiPoly& f) {
  MultiPoly r(f.vars());
  for (const auto& [e, co] : f.terms()) r.add_term(e, c * co);
  return r;
}

bool operator==(const MultiPoly& f, const MultiPoly& g) { return f.terms() == g.terms(); }

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = MultiPoly::monomial(vars_, std::vector<int>(vars_.size(), 0), 1);
  MultiPoly b = *this;
  for (; e; e >>= 1) {
    if (e & 1) r = r * b;
    b = b * b;
  }
  return r;
}

MultiPoly MultiPoly::substitute_linear(const std::vector<std::vector<Rat>>& M) const {
  if (M.size() != vars_.size()) throw std::invalid_argument("substitute_linear: matrix rows mismatch");
  // Linear images of each variable.
  std::vector<MultiPoly> image;
  for (size_t i = 0; i < vars_.size(); ++i) {
    MultiPoly li(vars_);
    for (size_t j = 0; j < vars_.size(); ++j) {
      std::vector<int> e(vars_.size(), 0);
      e[j] = 1;
      li.add_term(e, M[i][j]);
    }
    image.push_back(std::move(li));
  }
  MultiPoly acc(vars_);
  for (const auto& [exps, coeff] : terms_) {
    MultiPoly term = MultiPoly::monomial(vars_, std::vector<int>(vars_.size(), 0), coeff);
    for (size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > 0) term = term * image[i].pow(static_cast<unsigned>(exps[i]));
    acc = acc + term;
  }
  return acc;
}

Rat MultiPoly::eval_rat(const std::vector<Rat>& point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("MultiPoly::eval_rat: arity mismatch");
  Rat acc = 0;
  for (const auto& [exps, coeff] : terms_) {
    Rat term = coeff;
    for (size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > 0) term *= pow_rat(point[i], static_cast<unsigned long>(exps[i]));
    acc += term;
  }
  return acc;
}

QuadElem MultiPoly::eval_quad(const std::vector<QuadElem>& point) const {
  return eval<QuadElem>(point);
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [exps, coeff] : terms_) {
    if (!first) os << (coeff > 0 ? " + " : " - ");
    if (first && coeff < 0) os << "-";
    Rat ac = abs(coeff);
    bool printed = false;
    if (ac != 1) {
      os << ac.get_str();
      printed = true;
    }
    for (size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (printed) os << "*";
      os << vars_[i];
      if (exps[i] > 1) os << "^" << exps[i];
      printed = true;
    }
    if (!printed) os << ac.get_str();
    first = false;
  }
  return os.str();
}

}  // namespace qp
