#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrkit/exact_linalg.hpp"
#include "irrkit/random.hpp"
#include "irrkit/rational.hpp"

namespace irrkit {

/// A point of P^N with integer homogeneous coordinates, stored in canonical form:
/// primitive (gcd of coordinates is 1) and first nonzero coordinate positive.
/// Two ProjPoints are the same projective point iff their coordinate vectors are equal.
class ProjPoint {
 public:
  ProjPoint() = default;

  explicit ProjPoint(IntVector coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InputError("a projective point needs at least one coordinate");
    if (std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; }))
      throw InputError("all coordinates are zero");
    make_primitive(coords_);
  }

  /// Clears denominators first.
  static ProjPoint from_rationals(const std::vector<Rational>& coords) {
    Integer l = 1;
    for (const auto& q : coords) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntVector v;
    v.reserve(coords.size());
    for (const auto& q : coords) {
      Integer z = l / q.get_den();
      v.push_back(z * q.get_num());
    }
    return ProjPoint(std::move(v));
  }

  std::size_t ambient_dim() const noexcept { return coords_.size() - 1; }
  const IntVector& coords() const noexcept { return coords_; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ":";
      s += coords_[i].get_str();
    }
    return s + "]";
  }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.coords_ < b.coords_; }

 private:
  IntVector coords_;
};

/// Finite set of pairwise distinct points in a common P^N. Order is preserved; it fixes which
/// failing point a CB report names.
class PointSet {
 public:
  explicit PointSet(std::size_t ambient_dim = 2) : ambient_dim_(ambient_dim) {}

  PointSet(std::size_t ambient_dim, std::vector<ProjPoint> points) : ambient_dim_(ambient_dim) {
    points_.reserve(points.size());
    for (auto& p : points) add(std::move(p));
  }

  /// Throws InputError on a duplicate or a dimension mismatch.
  void add(ProjPoint p) {
    if (p.ambient_dim() != ambient_dim_)
      throw InputError("point " + p.to_string() + " is not in P^" + std::to_string(ambient_dim_));
    if (contains(p)) throw InputError("duplicate point " + p.to_string());
    points_.push_back(std::move(p));
  }

  bool contains(const ProjPoint& p) const { return std::find(points_.begin(), points_.end(), p) != points_.end(); }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<ProjPoint>& points() const noexcept { return points_; }
  const ProjPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  PointSet without(std::size_t index) const {
    PointSet out(ambient_dim_);
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (i != index) out.points_.push_back(points_[i]);
    return out;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t ambient_dim_;
  std::vector<ProjPoint> points_;
};

/// Monomials of degree r in N+1 variables, graded-lexicographic with x_0 > x_1 > ... > x_N.
/// Within a single degree this is plain lexicographic order on exponent vectors, descending.
class MonomialBasis {
 public:
  using Exponents = std::vector<unsigned>;

  MonomialBasis(std::size_t ambient_dim, unsigned degree) : ambient_dim_(ambient_dim), degree_(degree) {
    Exponents e(ambient_dim + 1, 0);
    fill(e, 0, degree);
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
  }

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  unsigned degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const Exponents& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Exponents>& monomials() const noexcept { return monomials_; }

  std::size_t index_of(const Exponents& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw InputError("exponent vector not in basis");
    return it->second;
  }

  Integer evaluate(std::size_t i, const IntVector& coords) const {
    Integer v = 1, t;
    const auto& e = monomials_[i];
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      mpz_pow_ui(t.get_mpz_t(), coords[k].get_mpz_t(), e[k]);
      v *= t;
    }
    return v;
  }

 private:
  void fill(Exponents& e, std::size_t var, unsigned remaining) {
    if (var == e.size() - 1) {
      e[var] = remaining;
      monomials_.push_back(e);
      return;
    }
    for (unsigned k = remaining + 1; k-- > 0;) {
      e[var] = k;
      fill(e, var + 1, remaining - k);
    }
    e[var] = 0;
  }

  std::size_t ambient_dim_;
  unsigned degree_;
  std::vector<Exponents> monomials_;
  std::map<Exponents, std::size_t> index_;
};

/// Row i = all degree-r monomials evaluated at point i (canonical integer coordinates).
inline RationalMatrix evaluation_matrix(const PointSet& g, int r) {
  if (r < 0) throw InputError("degree must be nonnegative");
  MonomialBasis basis(g.ambient_dim(), static_cast<unsigned>(r));
  RationalMatrix m(g.size(), basis.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) m(i, j) = basis.evaluate(j, g[i].coords());
  return m;
}

/// Dimension of the space of degree-r forms vanishing on g.
inline std::size_t vanishing_dimension(const PointSet& g, int r) {
  if (r < 0) throw InputError("degree must be nonnegative");
  const std::size_t n = binomial_size(g.ambient_dim() + static_cast<std::size_t>(r), static_cast<std::size_t>(r));
  if (g.empty()) return n;
  return n - rank(evaluation_matrix(g, r));
}

struct ProjectionOptions {
  std::int64_t coefficient_bound = 10;  // coefficients drawn from [-B, B]
  unsigned max_retries = 64;
};

/// Integer (m+1) x (N+1) matrix applied to homogeneous coordinates.
struct LinearProjection {
  std::vector<IntVector> rows;

  std::optional<ProjPoint> apply(const ProjPoint& p) const {
    IntVector img(rows.size());
    bool nonzero = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) img[i] += rows[i][j] * p[j];
      nonzero = nonzero || img[i] != 0;
    }
    if (!nonzero) return std::nullopt;  // p lies in the center
    return ProjPoint(std::move(img));
  }
};

/// Image of g under a seeded pseudorandom linear projection P^N -> P^m. Redraws the
/// projection until no point lies in the center and the images are pairwise distinct.
inline PointSet generic_projection(const PointSet& g, std::size_t target_dim, std::uint64_t seed,
                                   const ProjectionOptions& opts = {}) {
  if (target_dim >= g.ambient_dim())
    throw InputError("projection target dimension must be below the ambient dimension");
  Rng rng(seed);
  for (unsigned attempt = 0; attempt < opts.max_retries; ++attempt) {
    LinearProjection proj;
    proj.rows.assign(target_dim + 1, IntVector(g.ambient_dim() + 1));
    for (auto& row : proj.rows)
      for (auto& c : row) c = Integer(static_cast<long>(rng.uniform(-opts.coefficient_bound, opts.coefficient_bound)));
    std::vector<ProjPoint> images;
    images.reserve(g.size());
    bool ok = true;
    for (const auto& p : g) {
      auto img = proj.apply(p);
      if (!img || std::find(images.begin(), images.end(), *img) != images.end()) {
        ok = false;
        break;
      }
      images.push_back(std::move(*img));
    }
    if (ok) return PointSet(target_dim, std::move(images));
  }
  throw DegenerateProjection("no injective projection found after " + std::to_string(opts.max_retries) +
                             " attempts");
}

/// Applies an invertible integer change of coordinates to every point.
inline PointSet transform_points(const PointSet& g, const std::vector<IntVector>& matrix) {
  LinearProjection map{matrix};
  PointSet out(g.ambient_dim());
  for (const auto& p : g) {
    auto img = map.apply(p);
    if (!img) throw InputError("coordinate change is singular on the point set");
    out.add(std::move(*img));
  }
  return out;
}

}  // namespace irrkit
