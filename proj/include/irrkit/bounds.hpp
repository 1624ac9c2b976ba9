#pragma once

// Explicit degree-of-irrationality constants and inequalities. The geometric constants zeta, ell
// and M are inputs; G and H are either the conjectural Picoco values or user tables.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "irrkit/errors.hpp"
#include "irrkit/io.hpp"
#include "irrkit/rational.hpp"

namespace irrkit::bounds {

struct InterpolationFunctions {
  enum class Mode { Picoco, Table };
  Mode mode = Mode::Picoco;
  std::map<long, Integer> g_table, h_table;

  static InterpolationFunctions picoco() { return {}; }
  static InterpolationFunctions table(std::map<long, Integer> g, std::map<long, Integer> h) {
    InterpolationFunctions f{Mode::Table, std::move(g), std::move(h)};
    f.validate();
    return f;
  }

  void validate() const {
    for (const auto* t : {&g_table, &h_table}) {
      const Integer* prev = nullptr;
      for (const auto& [e, v] : *t) {
        if (prev && v < *prev) throw InputError("interpolation table decreases at e = " + std::to_string(e));
        prev = &v;
      }
    }
  }

  Integer G(long e) const {
    if (mode == Mode::Picoco) return 0;
    auto it = g_table.find(e);
    if (it == g_table.end()) throw UndefinedInterpolation("G(" + std::to_string(e) + ") is not in the table");
    return it->second;
  }
  /// Picoco mode evaluates e^2 - e - 1 literally, so H(0) = H(1) = -1.
  Integer H(long e) const {
    if (mode == Mode::Picoco) return Integer(e) * e - e - 1;
    auto it = h_table.find(e);
    if (it == h_table.end()) throw UndefinedInterpolation("H(" + std::to_string(e) + ") is not in the table");
    return it->second;
  }
};

struct GeometryConstants {
  long e = 1;     // mfd value
  long zeta = 0;  // omega_Y(mH + E) globally generated for m >= zeta
  long ell = 0;   // least m with mH >= E
  long M = 1;     // Y cut out set-theoretically in degree <= M
  long d = 1;     // X in |dH + E|

  void validate() const {
    if (e < 1) throw InputError("e must be at least 1");
    if (M < 1) throw InputError("M must be at least 1");
    if (ell < 0) throw InputError("ell must be nonnegative");
    if (d < 1) throw InputError("d must be at least 1");
  }
};

struct Term {
  std::string expression;
  Integer value;
};

struct MaxOfTerms {
  std::vector<Term> terms;
  Integer value;
};

inline MaxOfTerms max_of(std::vector<Term> terms) {
  MaxOfTerms m{std::move(terms), 0};
  m.value = m.terms.front().value;
  for (const auto& t : m.terms)
    if (t.value > m.value) m.value = t.value;
  return m;
}

/// Threshold above which every map computing irr(X) factors through a minimal fibration.
inline MaxOfTerms d0(const GeometryConstants& gc, const InterpolationFunctions& fns) {
  gc.validate();
  const Integer e = gc.e, z = gc.zeta, l = gc.ell, m = gc.M;
  const Integer He = fns.H(gc.e), He1 = fns.H(gc.e - 1), Ge = fns.G(gc.e);
  return max_of({{"G(e)+zeta", Ge + z},
                 {"(e+1)zeta+e*ell+H(e)", (e + 1) * z + e * l + He},
                 {"zeta+e-1", z + e - 1},
                 {"e+zeta+M*e-1", e + z + m * e - 1},
                 {"e^2+e+zeta-1", e * e + e + z - 1},
                 {"2(ell+zeta+H(e-1))", 2 * (l + z + He1)},
                 {"2zeta+ell+H(e-1)-1", 2 * z + l + He1 - 1},
                 {"(e+1)zeta+e*ell+H(e-1)-1", (e + 1) * z + e * l + He1 - 1}});
}

/// The same threshold when the Picoco question has a positive answer in degree e.
inline MaxOfTerms d0_picoco(const GeometryConstants& gc) {
  const Integer e = gc.e, z = gc.zeta, l = gc.ell, m = gc.M;
  return max_of({{"zeta+M*e-1", z + m * e - 1},
                 {"(e+1)(zeta+ell)+2(e^2-e-1)", (e + 1) * (z + l) + 2 * (e * e - e - 1)},
                 {"zeta+(e+3)ell+2e^2", z + (e + 3) * l + 2 * e * e}});
}

struct IrrBounds {
  Integer lower_exclusive;  // irr(X) > lower_exclusive
  Integer upper;            // irr(X) <= upper
  Integer d0;
  std::vector<std::string> warnings;
};

inline IrrBounds irr_bounds(const GeometryConstants& gc, const InterpolationFunctions& fns) {
  gc.validate();
  const Integer e = gc.e, d = gc.d;
  IrrBounds b{d * e - Integer(gc.zeta) * e - fns.H(gc.e - 1), d * e + Integer(gc.ell) * e, d0(gc, fns).value, {}};
  if (d < b.d0) b.warnings.push_back("d = " + d.get_str() + " is below the threshold d0 = " + b.d0.get_str() + "; the bounds are not asserted");
  if (b.lower_exclusive >= b.upper)
    b.warnings.push_back("inconsistent pair: lower bound " + b.lower_exclusive.get_str() + " is not below upper bound " +
                         b.upper.get_str());
  return b;
}

/// |Gamma| >= (d - zeta) f - H(f - 1) for a fiber meeting X in Gamma.
inline Integer gamma_lower_bound(long d, long zeta, long f, const InterpolationFunctions& fns) {
  return Integer(d - zeta) * f - fns.H(f - 1);
}

struct CardinalityBounds {
  Integer banerjee;  // (e+1) r - H(e)
  Integer picoco;    // (e+1) r - (e^2 - e - 1)
  std::vector<std::string> warnings;
};

inline CardinalityBounds cardinality_bounds(long e, long r, const InterpolationFunctions& fns) {
  const Integer er = Integer(e + 1) * r;
  CardinalityBounds c{er - fns.H(e), er - (Integer(e) * e - e - 1), {}};
  if (r == 0) c.warnings.push_back("r = 0: the bound reduces to -H(e)");
  return c;
}

struct QuarticQuintic {
  Integer value;
  bool valid = false;
  Integer threshold;  // 2a^2 - 5a + 7
};

/// irr of a smooth X in |dH| on a general quartic or quintic threefold Y.
inline QuarticQuintic quartic_quintic_irr(long a, long d, bool contains_line) {
  if (a != 4 && a != 5) throw BadDegree("the formula covers a = 4 and a = 5 only");
  const Integer threshold = Integer(2 * a * a - 5 * a + 7);
  return {Integer(contains_line ? d - 1 : d) * (a - 1), d >= threshold, threshold};
}

/// Constants for Y a general quartic or quintic threefold: e = a-1, zeta = 5-a, ell = 0, M = a.
inline GeometryConstants preset(long a, long d) {
  if (a != 4 && a != 5) throw BadDegree("presets exist for a = 4 and a = 5 only");
  return {a - 1, 5 - a, 0, a, d};
}

struct ProductBounds {
  Rational lower;
  Integer upper;
  std::string caveat;
};

inline ProductBounds ci_product_bounds(const std::vector<long>& degrees, const Rational& epsilon) {
  if (degrees.empty()) throw InputError("need at least one degree");
  if (epsilon <= 0 || epsilon >= 1) throw InputError("epsilon must lie strictly between 0 and 1");
  Integer prod = 1;
  for (long d : degrees) {
    if (d < 1) throw InputError("degrees must be positive");
    prod *= d;
  }
  return {(1 - epsilon) * prod, prod,
          "the lower bound holds only for sufficiently unbalanced degrees d1 << d2 << ... (depending on epsilon); "
          "no explicit threshold is known"};
}

inline json terms_json(const MaxOfTerms& m) {
  json t = json::array();
  for (const auto& term : m.terms) t.push_back({{"expression", term.expression}, {"value", json_integer(term.value)}});
  return json{{"terms", t}, {"value", json_integer(m.value)}};
}

inline json warnings_json(const std::vector<std::string>& w) { return json(w); }

inline InterpolationFunctions table_from_json(const json& j) {
  auto read = [&](const char* key) {
    std::map<long, Integer> out;
    if (!j.contains(key)) return out;
    for (const auto& [k, v] : j.at(key).items()) out[std::stol(k)] = integer_from_json(v);
    return out;
  };
  try {
    return InterpolationFunctions::table(read("G"), read("H"));
  } catch (const std::logic_error& e) {
    throw InputError(std::string("malformed interpolation table: ") + e.what());
  }
}

}  // namespace irrkit::bounds
