#pragma once

// Neron-Severi lattice models: a Gram matrix, classes as rational coordinate vectors, and the
// E x E specifics (graph classes, the SL2(Z) action).

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "irrkit/errors.hpp"
#include "irrkit/rational.hpp"

namespace irrkit {

struct NSLattice {
  std::vector<std::string> labels;
  std::vector<IntVector> gram;

  NSLattice(std::vector<std::string> l, std::vector<IntVector> g) : labels(std::move(l)), gram(std::move(g)) {
    const std::size_t n = gram.size();
    if (n == 0) throw InputError("lattice of rank 0");
    if (labels.size() != n) throw InputError("lattice needs one label per basis element");
    for (const auto& row : gram)
      if (row.size() != n) throw InputError("gram matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram[i][j] != gram[j][i]) throw InputError("gram matrix is not symmetric");
  }

  std::size_t rank() const { return gram.size(); }
  bool operator==(const NSLattice&) const = default;

  /// Basis (f1, f2, Delta) of NS(E x E) for E without complex multiplication.
  static std::shared_ptr<const NSLattice> exe() {
    static const auto l = std::make_shared<const NSLattice>(
        std::vector<std::string>{"f1", "f2", "Delta"}, std::vector<IntVector>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    return l;
  }
  /// Rank one, generated by H with H^2 = h2.
  static std::shared_ptr<const NSLattice> rank_one(const Integer& h2) {
    return std::make_shared<const NSLattice>(std::vector<std::string>{"H"}, std::vector<IntVector>{{h2}});
  }
  /// NS(C1 x C2) = Z f1 + Z f2 for curves without common isogeny factors.
  static std::shared_ptr<const NSLattice> product() {
    return std::make_shared<const NSLattice>(std::vector<std::string>{"f1", "f2"},
                                             std::vector<IntVector>{{0, 1}, {1, 0}});
  }
};

using LatticePtr = std::shared_ptr<const NSLattice>;

struct DivisorClass {
  LatticePtr lattice;
  std::vector<Rational> coords;

  DivisorClass(LatticePtr l, std::vector<Rational> c) : lattice(std::move(l)), coords(std::move(c)) {
    if (!lattice) throw InputError("divisor class without a lattice");
    if (coords.size() != lattice->rank())
      throw InputError("class has " + std::to_string(coords.size()) + " coordinates in a rank " +
                       std::to_string(lattice->rank()) + " lattice");
  }
  DivisorClass(LatticePtr l, const IntVector& c) : DivisorClass(std::move(l), std::vector<Rational>(c.begin(), c.end())) {}

  std::size_t rank() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }

  bool is_integral() const {
    for (const auto& q : coords)
      if (q.get_den() != 1) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& q : coords)
      if (q != 0) return false;
    return true;
  }
  IntVector integral_coords() const {
    IntVector v;
    for (const auto& q : coords) {
      if (q.get_den() != 1) throw InputError("class " + to_string() + " is not integral");
      v.push_back(q.get_num());
    }
    return v;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + coords[i].get_str();
    return s + ")";
  }

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
    return a.coords == b.coords && *a.lattice == *b.lattice;
  }
  friend bool operator<(const DivisorClass& a, const DivisorClass& b) { return a.coords < b.coords; }
};

inline void require_same_lattice(const DivisorClass& a, const DivisorClass& b) {
  if (a.lattice != b.lattice && !(*a.lattice == *b.lattice))
    throw LatticeMismatch("classes live in different lattices");
}

inline DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  require_same_lattice(a, b);
  std::vector<Rational> c(a.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return {a.lattice, c};
}

inline DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
  require_same_lattice(a, b);
  std::vector<Rational> c(a.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return {a.lattice, c};
}

inline DivisorClass operator*(const Rational& t, const DivisorClass& a) {
  std::vector<Rational> c(a.rank());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = t * a[i];
  return {a.lattice, c};
}

/// Intersection number d1^T G d2.
inline Rational pair(const DivisorClass& d1, const DivisorClass& d2) {
  require_same_lattice(d1, d2);
  Rational s = 0;
  const auto& g = d1.lattice->gram;
  for (std::size_t i = 0; i < d1.rank(); ++i) {
    if (d1[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < d2.rank(); ++j) row += g[i][j] * d2[j];
    s += d1[i] * row;
  }
  return s;
}

inline Rational self_intersection(const DivisorClass& d) { return pair(d, d); }

namespace exe {

inline DivisorClass make(const Rational& a, const Rational& b, const Rational& c) {
  return {NSLattice::exe(), std::vector<Rational>{a, b, c}};
}
inline DivisorClass f1() { return make(1, 0, 0); }
inline DivisorClass f2() { return make(0, 1, 0); }
inline DivisorClass diagonal() { return make(0, 0, 1); }
inline DivisorClass h0() { return make(1, 1, 1); }

/// Graph of multiplication by n: (n^2 - n) f1 + (1 - n) f2 + n Delta.
inline DivisorClass graph_class(long n) {
  const Integer m(n);
  return make(Rational(m * m - m), Rational(1 - m), Rational(m));
}

using Matrix2 = std::array<std::array<Integer, 2>, 2>;

inline void require_exe(const DivisorClass& d) {
  if (!(*d.lattice == *NSLattice::exe())) throw LatticeMismatch("the SL2 action is defined on the E x E lattice only");
}

/// (a,b,c) <-> M = [[a+c, -c], [-c, b+c]]; det M = (ab+bc+ca) = P^2 / 2. Acts by M -> g^T M g.
inline DivisorClass sl2_apply(const Matrix2& g, const DivisorClass& d) {
  require_exe(d);
  if (g[0][0] * g[1][1] - g[0][1] * g[1][0] != 1) throw NotUnimodular("matrix does not have determinant 1");
  const Rational m00 = d[0] + d[2], m01 = -d[2], m11 = d[1] + d[2];
  // (g^T M g)_{ij} = sum_{k,l} g_{ki} M_{kl} g_{lj}
  auto entry = [&](std::size_t i, std::size_t j) {
    const Rational a0(g[0][i]), a1(g[1][i]), b0(g[0][j]), b1(g[1][j]);
    return Rational(a0 * m00 * b0 + a0 * m01 * b1 + a1 * m01 * b0 + a1 * m11 * b1);
  };
  const Rational n00 = entry(0, 0), n01 = entry(0, 1), n11 = entry(1, 1);
  const Rational c = -n01;
  return make(n00 - c, n11 - c, c);
}

inline Matrix2 matrix2(long a, long b, long c, long d) { return {{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}}}; }

}  // namespace exe

}  // namespace irrkit
