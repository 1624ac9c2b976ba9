#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "irrkit/forms.hpp"
#include "irrkit/rational.hpp"

// GCD of ternary forms. A form not divisible by z is determined by its dehomogenization
// f(x, y) = F(x, y, 1), so gcd(F, G) = z^min(k_F, k_G) * homogenize(gcd(f, g)) where z^k
// is the largest power of z dividing each form. The bivariate gcd runs over Q[y][x] with
// content extraction and a primitive pseudo-remainder sequence.

namespace irrkit::polygcd {

/// Univariate polynomial over Q, coefficients from degree 0 upward, no trailing zeros.
struct UPoly {
  std::vector<Rational> c;

  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }
  static UPoly constant(Rational v) { return UPoly(std::vector<Rational>{std::move(v)}); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  const Rational& lead() const { return c.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly&, const UPoly&) = default;
};

/// Quotient and remainder over Q.
inline std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  std::vector<Rational> rem = a.c;
  if (a.degree() < b.degree()) return {UPoly{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  for (long k = a.degree() - b.degree(); k >= 0; --k) {
    Rational f = rem[static_cast<std::size_t>(k + b.degree())] / b.lead();
    quo[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= f * b.c[j];
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

inline UPoly monic(UPoly a) {
  if (a.is_zero()) return a;
  Rational l = a.lead();
  for (auto& x : a.c) x /= l;
  return a;
}

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

/// Polynomial in x whose coefficients are polynomials in y.
struct BPoly {
  std::vector<UPoly> c;

  BPoly() = default;
  explicit BPoly(std::vector<UPoly> coeffs) : c(std::move(coeffs)) { trim(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree_x() const { return static_cast<long>(c.size()) - 1; }
  const UPoly& lead() const { return c.back(); }
};

inline UPoly content(const BPoly& a) {
  UPoly g;
  for (const auto& u : a.c) g = gcd(g, u);
  return g;
}

inline BPoly scale(const BPoly& a, const UPoly& s) {
  std::vector<UPoly> r;
  r.reserve(a.c.size());
  for (const auto& u : a.c) r.push_back(u * s);
  return BPoly(std::move(r));
}

inline BPoly primitive_part(const BPoly& a) {
  if (a.is_zero()) return a;
  UPoly g = content(a);
  std::vector<UPoly> r;
  r.reserve(a.c.size());
  for (const auto& u : a.c) {
    auto [q, rem] = divmod(u, g);
    r.push_back(std::move(q));
  }
  return BPoly(std::move(r));
}

/// lc(b)^k * a reduced modulo b in x, without divisions in Q[y].
inline BPoly pseudo_remainder(BPoly a, const BPoly& b) {
  const long db = b.degree_x();
  while (!a.is_zero() && a.degree_x() >= db) {
    const long shift = a.degree_x() - db;
    UPoly la = a.lead();
    a = scale(a, b.lead());
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      auto& slot = a.c[static_cast<std::size_t>(shift) + j];
      slot = slot - la * b.c[j];
    }
    a.trim();
  }
  return a;
}

inline BPoly gcd(BPoly a, BPoly b) {
  if (a.is_zero()) return b.is_zero() ? b : scale(primitive_part(b), content(b));
  if (b.is_zero()) return scale(primitive_part(a), content(a));
  UPoly cont = gcd(content(a), content(b));
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree_x() < b.degree_x()) std::swap(a, b);
  while (!b.is_zero()) {
    BPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  return scale(primitive_part(a), cont);
}

/// Power of z dividing the form and the dehomogenized quotient f(x, y).
inline std::pair<unsigned, BPoly> dehomogenize(const Form& f) {
  MonomialBasis basis(2, f.degree());
  unsigned zpow = f.degree();
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (f.coefficients()[j] != 0) zpow = std::min(zpow, basis[j][2]);
  std::vector<UPoly> xs(f.degree() + 1);
  std::vector<std::vector<Rational>> raw(f.degree() + 1, std::vector<Rational>(f.degree() + 1));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& e = basis[j];
    raw[e[0]][e[1]] += f.coefficients()[j];
  }
  for (unsigned i = 0; i <= f.degree(); ++i) xs[i] = UPoly(raw[i]);
  return {zpow, BPoly(std::move(xs))};
}

/// Total degree of a bivariate polynomial.
inline long total_degree(const BPoly& p) {
  long d = -1;
  for (std::size_t i = 0; i < p.c.size(); ++i)
    if (!p.c[i].is_zero()) d = std::max(d, static_cast<long>(i) + p.c[i].degree());
  return d;
}

inline Form homogenize(const BPoly& p, unsigned zpow) {
  const long d = total_degree(p);
  if (d < 0) throw InputError("cannot homogenize the zero polynomial");
  const unsigned deg = static_cast<unsigned>(d) + zpow;
  MonomialBasis basis(2, deg);
  std::vector<Rational> q(basis.size());
  for (std::size_t i = 0; i < p.c.size(); ++i)
    for (std::size_t k = 0; k < p.c[i].c.size(); ++k) {
      if (p.c[i].c[k] == 0) continue;
      const unsigned ex = static_cast<unsigned>(i), ey = static_cast<unsigned>(k);
      q[basis.index_of({ex, ey, deg - ex - ey})] += p.c[i].c[k];
    }
  Integer l = 1;
  for (const auto& v : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntVector coeffs;
  coeffs.reserve(q.size());
  for (const auto& v : q) coeffs.push_back(Integer(l / v.get_den()) * v.get_num());
  return Form(2, deg, std::move(coeffs)).normalized();
}

}  // namespace irrkit::polygcd

namespace irrkit {

/// Normalized gcd of two ternary forms (a constant gcd is returned as the degree-0 form 1).
inline Form form_gcd(const Form& a, const Form& b) {
  if (a.ambient_dim() != 2 || b.ambient_dim() != 2) throw AmbientDimError("form gcd is implemented for plane forms");
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  auto [za, fa] = polygcd::dehomogenize(a);
  auto [zb, fb] = polygcd::dehomogenize(b);
  return polygcd::homogenize(polygcd::gcd(fa, fb), std::min(za, zb));
}

}  // namespace irrkit
