#pragma once

// Minimal fibering degree over lattice models of fiber classes: mfd(H) = min H.C over the
// model's classes C, with minimizer sets, cap certificates and the standard properties.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "irrkit/io.hpp"
#include "irrkit/lattice.hpp"

namespace irrkit {

enum class ModelKind { Explicit, PicardRankOne, ProductOfCurves, ExeIsotropic };

struct EnumerationLimits {
  /// Largest h0.P box scanned before CapError (the scan is quadratic in the box).
  long max_box = 10000;
  /// Box used when H is on the boundary of the positive cone and no finite certificate exists.
  long truncation_box = 40;
};

struct FiberClassModel {
  LatticePtr lattice;
  ModelKind kind = ModelKind::Explicit;
  std::vector<IntVector> classes;  // explicit
  Integer a = 1;                   // picard_rank_one: pencils are multiples k*a*H
  Integer delta1 = 1, delta2 = 1;  // product_of_curves: gonalities
  EnumerationLimits limits;

  static FiberClassModel exe_isotropic() {
    FiberClassModel m;
    m.lattice = NSLattice::exe();
    m.kind = ModelKind::ExeIsotropic;
    return m;
  }
  static FiberClassModel picard_rank_one(const Integer& h2, const Integer& a) {
    if (h2 <= 0) throw InputError("H^2 must be positive");
    if (a < 1) throw InputError("a must be at least 1");
    FiberClassModel m;
    m.lattice = NSLattice::rank_one(h2);
    m.kind = ModelKind::PicardRankOne;
    m.a = a;
    return m;
  }
  static FiberClassModel product_of_curves(const Integer& d1, const Integer& d2) {
    if (d1 < 1 || d2 < 1) throw InputError("gonalities must be positive");
    FiberClassModel m;
    m.lattice = NSLattice::product();
    m.kind = ModelKind::ProductOfCurves;
    m.delta1 = d1;
    m.delta2 = d2;
    return m;
  }
  static FiberClassModel explicit_list(LatticePtr lattice, std::vector<IntVector> classes) {
    if (classes.empty()) throw InputError("explicit fiber class list is empty");
    for (const auto& c : classes)
      if (c.size() != lattice->rank()) throw InputError("explicit class has the wrong rank");
    FiberClassModel m;
    m.lattice = std::move(lattice);
    m.kind = ModelKind::Explicit;
    m.classes = std::move(classes);
    return m;
  }

  DivisorClass make(const IntVector& v) const { return DivisorClass(lattice, v); }
  DivisorClass make(std::vector<Rational> v) const { return DivisorClass(lattice, std::move(v)); }
};

struct Enumeration {
  std::vector<DivisorClass> classes;  // sorted
  /// Every model class with H.C <= cap is listed.
  bool complete = true;
  /// h0.P box that was scanned (exe model only).
  Integer box = 0;
};

namespace detail {

inline void require_model_lattice(const FiberClassModel& m, const DivisorClass& h) {
  if (!(*h.lattice == *m.lattice)) throw LatticeMismatch("class and model use different lattices");
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

/// Closed positive cone of E x E: H^2 >= 0 and H.h0 > 0.
inline void require_exe_cone(const DivisorClass& h) {
  if (self_intersection(h) < 0 || pair(h, exe::h0()) <= 0)
    throw InputError("class " + h.to_string() + " is not in the closed positive cone (need H^2 >= 0, H.h0 > 0)");
}

/// Smallest positive integral multiple of a rational class, made primitive.
inline IntVector primitive_direction(const DivisorClass& h) {
  Integer den = 1;
  for (const auto& q : h.coords) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  IntVector v;
  for (const auto& q : h.coords) v.push_back(Integer(q * den));
  const Integer g = gcd_of(v);
  for (auto& x : v) x /= g;
  return v;
}

// Every exe fiber class C has nonnegative pairings u = f1.C, v = f2.C, w = Delta.C (f1, f2, Delta
// are nef) and u + v + w = h0.C. Three nonnegative numbers summing to s are each <= s, so a bound
// on h0.C gives a finite box. Isotropy C^2 = 0 reads (u + v - w)^2 = 4uv, so w = u + v +- 2 sqrt(uv).
inline std::vector<IntVector> exe_classes_in_box(long s) {
  std::vector<IntVector> out;
  for (long u = 0; u <= s; ++u)
    for (long v = 0; u + v <= s; ++v) {
      const auto prod = static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(v);
      const auto r = static_cast<long>(isqrt(prod));
      if (static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(r) != prod) continue;
      const std::vector<long> ws = r == 0 ? std::vector<long>{u + v} : std::vector<long>{u + v - 2 * r, u + v + 2 * r};
      for (long w : ws) {
        if (w < 0 || u + v + w > s || u + v + w == 0) continue;
        if ((v + w - u) % 2 != 0) continue;
        IntVector c{Integer((v + w - u) / 2), Integer((u + w - v) / 2), Integer((u + v - w) / 2)};
        if (gcd_of(c) >= 2) out.push_back(std::move(c));  // multiples a P with a >= 2
      }
    }
  return out;
}

}  // namespace detail

/// Lists every model class C with H.C <= cap (or a truncated list when no finite certificate exists).
inline Enumeration enumerate_fiber_classes(const FiberClassModel& m, const DivisorClass& h, const Rational& cap) {
  detail::require_model_lattice(m, h);
  if (cap < 0) throw InputError("cap must be nonnegative");
  Enumeration out;
  auto keep = [&](const IntVector& v) {
    DivisorClass c = m.make(v);
    if (pair(h, c) <= cap) out.classes.push_back(std::move(c));
  };
  switch (m.kind) {
    case ModelKind::Explicit:
      for (const auto& v : m.classes) keep(v);
      break;
    case ModelKind::PicardRankOne: {
      if (h[0] <= 0) throw InputError("H must be a positive multiple of the generator");
      const Rational per = pair(h, m.make(IntVector{m.a}));
      const Integer kmax = detail::floor_of(cap / per);
      for (Integer k = 1; k <= kmax; ++k) keep(IntVector{k * m.a});
      break;
    }
    case ModelKind::ProductOfCurves: {
      if (h[0] < 0 || h[1] < 0 || h.is_zero()) throw InputError("H must be a nonzero nonnegative combination of f1, f2");
      // H.C = h1 a2 + h2 a1; a coefficient of H equal to 0 leaves the other side unbounded.
      Integer max1 = m.limits.truncation_box, max2 = m.limits.truncation_box;
      if (h[1] > 0)
        max1 = detail::floor_of(cap / h[1]);
      else
        out.complete = false;
      if (h[0] > 0)
        max2 = detail::floor_of(cap / h[0]);
      else
        out.complete = false;
      if (max1 > m.limits.max_box || max2 > m.limits.max_box) throw CapError("cap too large for the enumeration box");
      for (Integer a1 = 0; a1 <= max1; ++a1) {
        if (a1 != 0 && a1 < m.delta1) continue;
        for (Integer a2 = 0; a2 <= max2; ++a2) {
          if (a2 != 0 && a2 < m.delta2) continue;
          if (a1 == 0 && a2 == 0) continue;
          keep(IntVector{a1, a2});
        }
      }
      break;
    }
    case ModelKind::ExeIsotropic: {
      detail::require_exe_cone(h);
      const Rational h2 = self_intersection(h);
      const Rational hh0 = pair(h, exe::h0());
      Integer s;
      if (h2 > 0) {
        // lambda = H^2 / (2 H.h0): H - lambda h0 has square lambda^2 h0^2 >= 0 and pairs with h0 to
        // H.h0 - 3 H^2 / H.h0 >= 0 (reverse Cauchy-Schwarz), so it is in the closed cone and pairs
        // nonnegatively with every isotropic class there. Hence H.C >= lambda h0.C.
        s = detail::floor_of(2 * cap * hh0 / h2);
      } else {
        // Boundary: the multiples of the isotropic direction of H all have H.C = 0.
        const DivisorClass p0 = m.make(detail::primitive_direction(h));
        s = std::max<Integer>(m.limits.truncation_box, 2 * Integer(pair(exe::h0(), p0)));
        out.complete = false;
      }
      if (s > m.limits.max_box)
        throw CapError("cap " + cap.get_str() + " needs an h0-box of " + s.get_str() + " (limit " +
                       std::to_string(m.limits.max_box) + ")");
      out.box = s;
      for (const auto& v : detail::exe_classes_in_box(s.get_si())) keep(v);
      break;
    }
  }
  std::sort(out.classes.begin(), out.classes.end());
  return out;
}

/// Cap that certainly admits a class: the smallest H.C over a few known model classes.
inline Rational auto_cap(const FiberClassModel& m, const DivisorClass& h) {
  detail::require_model_lattice(m, h);
  std::vector<IntVector> probes;
  switch (m.kind) {
    case ModelKind::Explicit:
      probes = m.classes;
      break;
    case ModelKind::PicardRankOne:
      probes = {IntVector{m.a}};
      break;
    case ModelKind::ProductOfCurves:
      probes = {IntVector{m.delta1, 0}, IntVector{0, m.delta2}};
      break;
    case ModelKind::ExeIsotropic:
      probes = {IntVector{2, 0, 0}, IntVector{0, 2, 0}, IntVector{0, 0, 2}};
      break;
  }
  std::optional<Rational> best;
  for (const auto& v : probes) {
    const Rational x = pair(h, m.make(v));
    if (!best || x < *best) best = x;
  }
  return std::max<Rational>(0, *best);
}

enum class MfdStatus { Value, UnknownAtCap };

struct MfdResult {
  MfdStatus status = MfdStatus::UnknownAtCap;
  Rational value = 0;
  std::vector<DivisorClass> mfc;
  /// The minimizer list may be incomplete (H on the cone boundary: infinite families).
  bool truncated = false;
  /// No class outside the cap can beat the value.
  bool stable = false;
  Rational cap = 0;
  Integer box = 0;
};

/// mfd(H) = min H.C over model classes, allowing the value 0.
inline MfdResult mfd_eval(const FiberClassModel& m, const DivisorClass& h, const std::optional<Rational>& cap = std::nullopt) {
  MfdResult res;
  res.cap = cap ? *cap : auto_cap(m, h);
  const Enumeration en = enumerate_fiber_classes(m, h, res.cap);
  res.box = en.box;
  if (en.classes.empty()) return res;
  res.status = MfdStatus::Value;
  res.value = pair(h, en.classes.front());
  for (const auto& c : en.classes) res.value = std::min(res.value, pair(h, c));
  for (const auto& c : en.classes)
    if (pair(h, c) == res.value) res.mfc.push_back(c);
  res.truncated = !en.complete;
  // With H in the closed cone every class pairs to >= 0, so a value of 0 is final even when truncated.
  res.stable = en.complete || res.value == 0;
  return res;
}

inline std::vector<IntVector> class_coords(const std::vector<DivisorClass>& cs) {
  std::vector<IntVector> out;
  for (const auto& c : cs) out.push_back(c.integral_coords());
  return out;
}

inline bool is_subset(const std::vector<DivisorClass>& a, const std::vector<DivisorClass>& b) {
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

struct PerturbationReport {
  Integer d_min = 1;
  bool verified = false;
  std::vector<DivisorClass> mfc_h;
  std::vector<DivisorClass> mfc_perturbed;
};

/// Smallest d with d > E.C for every C in MFC(H), then a direct check that MFC(H + E/d) is inside MFC(H).
inline PerturbationReport mfc_perturbation_threshold(const FiberClassModel& m, const DivisorClass& h, const DivisorClass& e) {
  require_same_lattice(h, e);
  PerturbationReport rep;
  const MfdResult base = mfd_eval(m, h);
  if (base.status != MfdStatus::Value) throw InputError("mfd(H) unknown at the automatic cap");
  rep.mfc_h = base.mfc;
  std::optional<Rational> worst;
  for (const auto& c : base.mfc) {
    const Rational x = pair(e, c);
    if (!worst || x > *worst) worst = x;
  }
  rep.d_min = std::max<Integer>(1, detail::floor_of(*worst) + 1);
  const DivisorClass hd = h + Rational(1) / Rational(rep.d_min) * e;
  const MfdResult pert = mfd_eval(m, hd);
  rep.mfc_perturbed = pert.mfc;
  rep.verified = pert.status == MfdStatus::Value && is_subset(pert.mfc, base.mfc);
  return rep;
}

struct HullReport {
  bool pass = false;
  DivisorClass combination;
  std::vector<DivisorClass> common_mfc;
  std::vector<DivisorClass> combination_mfc;
  Rational value = 0;     // mfd of the combination
  Rational expected = 0;  // combination . C for C in the common MFC
};

/// On a region where the MFC sets share a class C, mfd is the linear function H -> H.C.
inline HullReport hull_linearity_check(const FiberClassModel& m, const std::vector<DivisorClass>& hs,
                                       const std::vector<Rational>& weights) {
  if (hs.empty() || hs.size() != weights.size()) throw InputError("need one positive weight per class");
  for (const auto& w : weights)
    if (w <= 0) throw InputError("weights must be positive");
  std::vector<DivisorClass> common;
  DivisorClass sum = Rational(0) * hs[0];
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const MfdResult r = mfd_eval(m, hs[i]);
    if (r.status != MfdStatus::Value) throw InputError("mfd unknown for " + hs[i].to_string());
    if (i == 0) {
      common = r.mfc;
    } else {
      std::vector<DivisorClass> keep;
      for (const auto& c : common)
        if (std::find(r.mfc.begin(), r.mfc.end(), c) != r.mfc.end()) keep.push_back(c);
      common = std::move(keep);
    }
    sum = sum + weights[i] * hs[i];
  }
  if (common.empty()) throw EmptyIntersection("the minimal fiber class sets have no common member");
  HullReport rep{false, sum, common, {}, 0, pair(sum, common.front())};
  const MfdResult r = mfd_eval(m, sum);
  rep.combination_mfc = r.mfc;
  rep.value = r.value;
  rep.pass = r.status == MfdStatus::Value && r.value == rep.expected && r.mfc == common;
  return rep;
}

/// User-supplied mfd_l values must be nondecreasing in l. Returns the first l that breaks it.
inline std::optional<long> mfd_chain_violation(const std::map<long, Rational>& table) {
  const Rational* prev = nullptr;
  for (const auto& [l, v] : table) {
    if (prev && v < *prev) return l;
    prev = &v;
  }
  return std::nullopt;
}

// Model files: {"rank", "labels", "gram", "model": {"kind": ..., ...}}.

inline json divisor_json(const DivisorClass& d) {
  json a = json::array();
  for (const auto& q : d.coords) a.push_back(json_rational(q));
  return a;
}

inline json mfd_result_json(const MfdResult& r) {
  json mfc = json::array();
  for (const auto& c : r.mfc) mfc.push_back(divisor_json(c));
  json j{{"status", r.status == MfdStatus::Value ? "value" : "unknown_at_cap"},
         {"cap", json_rational(r.cap)},
         {"mfc", mfc},
         {"truncated", r.truncated},
         {"stable", r.stable}};
  j["value"] = r.status == MfdStatus::Value ? json_rational(r.value) : json(nullptr);
  return j;
}

inline FiberClassModel model_from_json(const json& j) {
  try {
    const auto& mj = j.at("model");
    const std::string kind = mj.at("kind").get<std::string>();
    if (kind == "exe_isotropic") return FiberClassModel::exe_isotropic();
    if (kind == "picard_rank_one") {
      const Integer h2 = integer_from_json(j.at("gram").at(0).at(0));
      return FiberClassModel::picard_rank_one(h2, integer_from_json(mj.at("a")));
    }
    if (kind == "product_of_curves")
      return FiberClassModel::product_of_curves(integer_from_json(mj.at("delta1")), integer_from_json(mj.at("delta2")));
    if (kind == "explicit") {
      std::vector<IntVector> gram;
      for (const auto& row : j.at("gram")) gram.push_back(int_vector_from_json(row));
      std::vector<std::string> labels;
      if (j.contains("labels"))
        labels = j.at("labels").get<std::vector<std::string>>();
      else
        for (std::size_t i = 0; i < gram.size(); ++i) labels.push_back("e" + std::to_string(i + 1));
      if (j.contains("rank") && j.at("rank").get<std::size_t>() != gram.size())
        throw InputError("'rank' does not match the gram matrix");
      std::vector<IntVector> classes;
      for (const auto& c : mj.at("classes")) classes.push_back(int_vector_from_json(c));
      return FiberClassModel::explicit_list(std::make_shared<const NSLattice>(labels, gram), std::move(classes));
    }
    throw InputError("unknown model kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  }
}

/// "exe" names the built-in E x E model; anything else is a model file path.
inline FiberClassModel load_model(const std::string& name_or_path) {
  if (name_or_path == "exe") return FiberClassModel::exe_isotropic();
  return model_from_json(parse_json_text(read_file(name_or_path), name_or_path));
}

inline DivisorClass parse_class(const FiberClassModel& m, const std::string& csv) {
  std::vector<Rational> v;
  std::string item;
  std::stringstream ss(csv);
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  return m.make(std::move(v));
}

}  // namespace irrkit
