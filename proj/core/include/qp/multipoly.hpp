#pragma once

#include <map>
#include <string>
#include <vector>

#include "qp/poly.hpp"
#include "qp/quadfield.hpp"
#include "qp/rational.hpp"

namespace qp {

/// Multivariate polynomial over Q with a fixed ordered variable list.
/// Exponent vectors are dense; zero coefficients are never stored.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly monomial(std::vector<std::string> vars, std::vector<int> exps, const Rat& coeff);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<std::vector<int>, Rat>& terms() const { return terms_; }
  size_t nvars() const { return vars_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<int>& exps, const Rat& coeff);

  int total_degree() const;  // -1 for the zero polynomial
  int weighted_degree(const std::vector<int>& weights) const;
  bool is_homogeneous(int* degree_out = nullptr) const;
  bool is_weighted_homogeneous(const std::vector<int>& weights, int* degree_out = nullptr) const;

  friend MultiPoly operator+(const MultiPoly& f, const MultiPoly& g);
  friend MultiPoly operator-(const MultiPoly& f, const MultiPoly& g);
  friend MultiPoly operator*(const MultiPoly& f, const MultiPoly& g);
  friend MultiPoly operator*(const Rat& c, const MultiPoly& f);
  friend bool operator==(const MultiPoly& f, const MultiPoly& g);
  MultiPoly pow(unsigned e) const;

  /// f(M x'): substitute variable i by the linear form sum_j M[i][j] x'_j.
  MultiPoly substitute_linear(const std::vector<std::vector<Rat>>& M) const;

  template <class T>
  T eval(const std::vector<T>& point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("MultiPoly::eval: arity mismatch");
    T acc(0);
    for (const auto& [exps, coeff] : terms_) {
      T term(coeff);
      for (size_t i = 0; i < exps.size(); ++i)
        for (int e = 0; e < exps[i]; ++e) term = term * point[i];
      acc = acc + term;
    }
    return acc;
  }

  Rat eval_rat(const std::vector<Rat>& point) const;
  QuadElem eval_quad(const std::vector<QuadElem>& point) const;

  std::string str() const;

 private:
  std::vector<std::string> vars_;
  std::map<std::vector<int>, Rat> terms_;
};

}  // namespace qp
