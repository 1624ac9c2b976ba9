#pragma once

// Piecewise-linear picture of mfd on the E x E positive cone: the slice h0.alpha = 2 (that is
// a + b + c = 1) cut into the regions where one enumerated fiber class minimizes alpha.C.
// Geometry is exact in the affine chart (a, b); floats appear only when writing SVG.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrkit/mfd_cone.hpp"

namespace irrkit {

struct SlicePoint {
  Rational a, b;  // c = 1 - a - b
  bool operator==(const SlicePoint&) const = default;
};

struct Region {
  IntVector label;                   // minimizing fiber class
  std::vector<SlicePoint> polygon;  // convex, counter-clockwise in (a, b)
  Rational area;                     // in the (a, b) chart
};

struct CrossSection {
  Rational cap;
  std::size_t resolution = 0;
  std::vector<IntVector> classes;        // enumerated against h0 within the cap
  std::vector<SlicePoint> boundary;      // inscribed polygon of the conic, counter-clockwise
  std::vector<Region> regions;           // positive area only, sorted by label
  std::vector<SlicePoint> fundamental;   // images of f1, f1+f2+Delta, f1+f2+Gamma_{-1}
};

namespace slice {

/// Projects a class with a + b + c > 0 to the slice.
inline SlicePoint of(const Rational& a, const Rational& b, const Rational& c) {
  const Rational s = a + b + c;
  if (s <= 0) throw InputError("class does not meet the slice");
  return {a / s, b / s};
}

inline SlicePoint of(const IntVector& v) { return of(Rational(v[0]), Rational(v[1]), Rational(v[2])); }

/// alpha.D on the slice as k0 + k1 a + k2 b, with alpha = (a, b, 1 - a - b).
struct Affine {
  Rational k0, k1, k2;
  Rational operator()(const SlicePoint& p) const { return k0 + k1 * p.a + k2 * p.b; }
};

inline Affine functional(const IntVector& d) {
  // Gram rows: alpha.D = a (d2 + d3) + b (d1 + d3) + c (d1 + d2).
  const Rational g1 = d[1] + d[2], g2 = d[0] + d[2], g3 = d[0] + d[1];
  return {g3, g1 - g3, g2 - g3};
}

inline Rational signed_area(const std::vector<SlicePoint>& poly) {
  Rational s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    s += p.a * q.b - q.a * p.b;
  }
  return s / 2;
}

/// Keeps the part of a convex polygon where f >= 0 (Sutherland-Hodgman against one half-plane).
inline std::vector<SlicePoint> clip(const std::vector<SlicePoint>& poly, const Affine& f) {
  std::vector<SlicePoint> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const SlicePoint& p = poly[i];
    const SlicePoint& q = poly[(i + 1) % n];
    const Rational fp = f(p), fq = f(q);
    if (fp >= 0) out.push_back(p);
    if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
      const Rational t = fp / (fp - fq);
      out.push_back({p.a + t * (q.a - p.a), p.b + t * (q.b - p.b)});
    }
  }
  std::vector<SlicePoint> dedup;
  for (const auto& p : out)
    if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

/// Conic point of the isotropic class (p^2 + pq, q^2 + pq, -pq) as a parameter t = p/q on the
/// projective line; nullopt stands for t = infinity (the class f1).
inline std::optional<Rational> conic_parameter(const IntVector& v) {
  if (v[2] == 0) {
    if (v[1] == 0) return std::nullopt;  // f1
    return Rational(0);                  // f2
  }
  return Rational(-Rational(v[0]) / Rational(v[2]) - 1);
}

inline IntVector conic_class(const Integer& p, const Integer& q) {
  IntVector v{p * p + p * q, q * q + p * q, -p * q};
  make_primitive(v);
  if (v[0] + v[1] + v[2] < 0)
    for (auto& x : v) x = -x;
  return v;
}

}  // namespace slice

/// Exact region decomposition of the slice for the classes C with h0.C <= cap. The disc is
/// replaced by an inscribed polygon with at least `resolution` vertices, symmetric under the
/// cyclic permutation of (f1, f2, Delta), and through every enumerated class's conic point.
inline CrossSection cross_section_regions(const FiberClassModel& m, const Rational& cap, std::size_t resolution) {
  if (m.kind != ModelKind::ExeIsotropic) throw InputError("cross sections need the E x E model");
  if (resolution < 16) throw InputError("resolution must be at least 16");
  CrossSection cs;
  cs.cap = cap;
  cs.resolution = resolution;
  cs.classes = class_coords(enumerate_fiber_classes(m, exe::h0(), cap).classes);

  // One 120 degree arc from f2 (t = 0) to f1 (t = infinity), then its two cyclic images.
  const long k = static_cast<long>((resolution + 2) / 3);
  std::vector<IntVector> verts;
  for (long i = 0; i < k; ++i) {
    IntVector v = slice::conic_class(Integer(i), Integer(k - i));
    verts.push_back(v);
    verts.push_back(IntVector{v[1], v[2], v[0]});
    verts.push_back(IntVector{v[2], v[0], v[1]});
  }
  for (const auto& c : cs.classes) {
    IntVector v = c;
    const Integer g = gcd_of(v);
    for (auto& x : v) x /= g;
    verts.push_back(v);
  }
  // Order by t with infinity last; this walks the conic once.
  auto key_less = [](const IntVector& x, const IntVector& y) {
    const auto tx = slice::conic_parameter(x), ty = slice::conic_parameter(y);
    if (!tx) return false;
    if (!ty) return true;
    return *tx < *ty;
  };
  std::sort(verts.begin(), verts.end(), key_less);
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (const auto& v : verts) cs.boundary.push_back(slice::of(v));
  if (slice::signed_area(cs.boundary) < 0) std::reverse(cs.boundary.begin(), cs.boundary.end());

  for (const auto& c : cs.classes) {
    std::vector<SlicePoint> poly = cs.boundary;
    const auto fc = slice::functional(c);
    for (const auto& other : cs.classes) {
      if (other == c || poly.size() < 3) continue;
      const auto fo = slice::functional(other);
      poly = slice::clip(poly, {fo.k0 - fc.k0, fo.k1 - fc.k1, fo.k2 - fc.k2});
    }
    if (poly.size() < 3) continue;
    const Rational area = slice::signed_area(poly);
    if (area > 0) cs.regions.push_back({c, poly, area});
  }
  std::sort(cs.regions.begin(), cs.regions.end(), [](const Region& x, const Region& y) { return x.label < y.label; });
  cs.fundamental = {slice::of(IntVector{1, 0, 0}), slice::of(IntVector{1, 1, 1}), slice::of(IntVector{3, 3, -1})};
  return cs;
}

namespace detail {

/// Orthonormal picture coordinates: X = (a - b)/sqrt 2, Y = (a + b - 2c)/sqrt 6, scaled to pixels.
inline std::pair<double, double> to_pixels(const SlicePoint& p) {
  const double a = p.a.get_d(), b = p.b.get_d(), c = 1.0 - a - b;
  const double x = (a - b) / std::sqrt(2.0), y = (a + b - 2 * c) / std::sqrt(6.0);
  return {240.0 + 260.0 * x, 250.0 - 260.0 * y};
}

inline std::string svg_path(const std::vector<SlicePoint>& poly) {
  std::string d;
  char buf[64];
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto [x, y] = to_pixels(poly[i]);
    std::snprintf(buf, sizeof buf, "%s%.3f,%.3f ", i ? "L" : "M", x, y);
    d += buf;
  }
  return d + "Z";
}

inline std::string class_label(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

}  // namespace detail

/// Standalone SVG: one filled path per region, a legend, and the fundamental triangle.
inline std::string render_svg(const CrossSection& cs) {
  if (cs.regions.empty()) throw InputError("nothing to render");
  static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                  "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  const std::size_t legend_h = 20 * cs.regions.size();
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"%zu\" viewBox=\"0 0 720 %zu\">\n",
                std::max<std::size_t>(500, 60 + legend_h), std::max<std::size_t>(500, 60 + legend_h));
  out += buf;
  out += "<title>mfd on the slice h0.alpha = 2, cap " + cs.cap.get_str() + "</title>\n";
  out += "<path class=\"disc\" d=\"" + detail::svg_path(cs.boundary) + "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  for (std::size_t i = 0; i < cs.regions.size(); ++i) {
    const auto& r = cs.regions[i];
    out += "<path class=\"region\" data-class=\"" + detail::class_label(r.label) + "\" d=\"" + detail::svg_path(r.polygon) +
           "\" fill=\"" + palette[i % 10] + "\" stroke=\"#222\" stroke-width=\"0.6\"/>\n";
  }
  out += "<path class=\"fundamental-domain\" d=\"" + detail::svg_path(cs.fundamental) +
         "\" fill=\"#000\" fill-opacity=\"0.25\" stroke=\"#000\" stroke-width=\"1.2\"/>\n";
  out += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < cs.regions.size(); ++i) {
    const double y = 30.0 + 20.0 * static_cast<double>(i);
    std::snprintf(buf, sizeof buf, "<rect x=\"520\" y=\"%.1f\" width=\"14\" height=\"14\" fill=\"%s\"/>\n", y - 11, palette[i % 10]);
    out += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"540\" y=\"%.1f\">", y);
    out += buf;
    out += "C = " + detail::class_label(cs.regions[i].label) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

inline json cross_section_json(const CrossSection& cs) {
  json regions = json::array();
  for (const auto& r : cs.regions) {
    json poly = json::array();
    for (const auto& p : r.polygon) poly.push_back({json_rational(p.a), json_rational(p.b)});
    regions.push_back({{"class", int_vector_json(r.label)}, {"area", json_rational(r.area)}, {"polygon", poly}});
  }
  json classes = json::array();
  for (const auto& c : cs.classes) classes.push_back(int_vector_json(c));
  return json{{"cap", json_rational(cs.cap)},
              {"resolution", cs.resolution},
              {"chart", "(a, b) with c = 1 - a - b on h0.alpha = 2"},
              {"classes", classes},
              {"regions", regions}};
}

}  // namespace irrkit
