#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "irrkit/projective_points.hpp"
#include "irrkit/rational.hpp"

namespace irrkit {

/// Homogeneous form of a fixed degree in N+1 variables. Coefficients are indexed by the
/// graded-lex MonomialBasis of (N, degree). A plane form is a Form with N = 2.
class Form {
 public:
  Form() = default;

  Form(std::size_t ambient_dim, unsigned degree, IntVector coefficients)
      : ambient_dim_(ambient_dim), degree_(degree), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != binomial_size(ambient_dim + degree, degree))
      throw InputError("form of degree " + std::to_string(degree) + " in " + std::to_string(ambient_dim + 1) +
                       " variables needs " + std::to_string(binomial_size(ambient_dim + degree, degree)) +
                       " coefficients, got " + std::to_string(coeffs_.size()));
  }

  /// Infers the degree from the number of coefficients.
  static Form from_coefficients(std::size_t ambient_dim, IntVector coefficients) {
    for (unsigned d = 0;; ++d) {
      std::size_t n = binomial_size(ambient_dim + d, d);
      if (n == coefficients.size()) return Form(ambient_dim, d, std::move(coefficients));
      if (n > coefficients.size())
        throw InputError(std::to_string(coefficients.size()) + " coefficients do not match any degree in P^" +
                         std::to_string(ambient_dim));
    }
  }

  /// The linear form sum c_i x_i.
  static Form linear(IntVector c) {
    if (c.empty()) throw InputError("empty linear form");
    std::size_t n = c.size() - 1;
    return Form(n, 1, std::move(c));
  }

  static Form constant(std::size_t ambient_dim, Integer c) { return Form(ambient_dim, 0, IntVector{std::move(c)}); }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  unsigned degree() const noexcept { return degree_; }
  const IntVector& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  Integer evaluate(const ProjPoint& p) const {
    if (p.ambient_dim() != ambient_dim_) throw AmbientDimError("point and form live in different spaces");
    MonomialBasis basis(ambient_dim_, degree_);
    Integer v = 0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
      if (coeffs_[j] != 0) v += coeffs_[j] * basis.evaluate(j, p.coords());
    return v;
  }

  bool vanishes_at(const ProjPoint& p) const { return evaluate(p) == 0; }

  /// Primitive, first nonzero coefficient positive. Defines the same hypersurface.
  Form normalized() const {
    Form f = *this;
    make_primitive(f.coeffs_);
    return f;
  }

  friend Form operator*(const Form& a, const Form& b) {
    if (a.ambient_dim_ != b.ambient_dim_) throw AmbientDimError("cannot multiply forms in different spaces");
    MonomialBasis ba(a.ambient_dim_, a.degree_), bb(b.ambient_dim_, b.degree_);
    MonomialBasis out(a.ambient_dim_, a.degree_ + b.degree_);
    IntVector c(out.size());
    MonomialBasis::Exponents e(a.ambient_dim_ + 1);
    for (std::size_t i = 0; i < ba.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < bb.size(); ++j) {
        if (b.coeffs_[j] == 0) continue;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ba[i][k] + bb[j][k];
        c[out.index_of(e)] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Form(a.ambient_dim_, a.degree_ + b.degree_, std::move(c));
  }

  /// Human-readable rendering with variables x, y, z (x0, x1, ... beyond three variables).
  std::string to_string() const {
    MonomialBasis basis(ambient_dim_, degree_);
    auto var = [&](std::size_t k) {
      if (ambient_dim_ <= 2) return std::string(1, "xyz"[k]);
      return "x" + std::to_string(k);
    };
    std::string s;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      const Integer& c = coeffs_[j];
      if (c == 0) continue;
      std::string mono;
      for (std::size_t k = 0; k < basis[j].size(); ++k) {
        unsigned p = basis[j][k];
        if (p == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += var(k);
        if (p > 1) mono += "^" + std::to_string(p);
      }
      Integer mag = abs(c);
      std::string term;
      if (mono.empty()) {
        term = mag.get_str();
      } else {
        term = (mag == 1 ? std::string() : mag.get_str() + "*") + mono;
      }
      if (s.empty()) {
        s = (c < 0 ? "-" : "") + term;
      } else {
        s += (c < 0 ? " - " : " + ") + term;
      }
    }
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const Form&, const Form&) = default;

 private:
  std::size_t ambient_dim_ = 2;
  unsigned degree_ = 0;
  IntVector coeffs_{Integer(0)};
};

/// Product of linear forms, e.g. prod (x - i z) for grid constructions.
inline Form product(const std::vector<Form>& factors) {
  if (factors.empty()) throw InputError("empty product");
  Form out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = out * factors[i];
  return out;
}

}  // namespace irrkit
