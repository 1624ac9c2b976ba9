#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "irrkit/exact_linalg.hpp"
#include "irrkit/forms.hpp"
#include "irrkit/projective_points.hpp"

namespace irrkit {

/// Outcome of a CB(r) test. holds == !failing_point.has_value().
struct CBReport {
  bool holds = true;
  int r = 0;
  std::optional<ProjPoint> failing_point;
  std::optional<std::size_t> failing_index;
  /// Degree-r form vanishing on every other point but not at failing_point.
  std::optional<Form> witness_form;
};

/// Does g satisfy the Cayley-Bacharach condition for degree-r forms on P^N?
///
/// CB(r) holds iff dropping any single point does not change the rank of the evaluation matrix,
/// i.e. iff every row is in the span of the others. That is checked in one pass: a row is
/// redundant iff some vector of the left kernel is nonzero at it.
///
/// For r < 0 there are no forms; by convention only the empty set satisfies CB(r).
inline CBReport satisfies_cb(const PointSet& g, int r) {
  CBReport rep;
  rep.r = r;
  if (g.empty()) return rep;
  if (r < 0) {
    rep.holds = false;
    rep.failing_point = g[0];
    rep.failing_index = 0;
    return rep;
  }
  const RationalMatrix m = evaluation_matrix(g, r);
  const auto dependencies = nullspace_basis(m.transpose());
  std::optional<std::size_t> first_failing;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (const auto& dep : dependencies) {
      if (dep[i] != 0) {
        redundant = true;
        break;
      }
    }
    if (!redundant) {
      first_failing = i;
      break;
    }
  }
  if (!first_failing) return rep;

  const std::size_t i = *first_failing;
  rep.holds = false;
  rep.failing_index = i;
  rep.failing_point = g[i];
  const PointSet rest = g.without(i);
  std::vector<IntVector> forms;
  if (rest.empty()) {
    forms = nullspace_basis(RationalMatrix(0, m.cols()));
  } else {
    forms = nullspace_basis(evaluation_matrix(rest, r));
  }
  for (auto& coeffs : forms) {
    Form f(g.ambient_dim(), static_cast<unsigned>(r), std::move(coeffs));
    if (!f.vanishes_at(g[i])) {
      rep.witness_form = std::move(f);
      break;
    }
  }
  return rep;
}

/// Points of g where the form does not vanish.
inline PointSet residual_set(const PointSet& g, const Form& form) {
  if (form.ambient_dim() != g.ambient_dim()) throw AmbientDimError("form and point set live in different spaces");
  if (form.is_zero()) throw InputError("residual by the zero form");
  PointSet out(g.ambient_dim());
  for (const auto& p : g)
    if (!form.vanishes_at(p)) out.add(p);
  return out;
}

/// The a x b grid {[i : j : 1]} in P^2, 0 <= i < a, 0 <= j < b. It is the complete intersection
/// of prod (x - i z) and prod (y - j z), so it satisfies CB(a + b - 3).
inline PointSet grid_generator(int a, int b) {
  if (a < 1 || b < 1 || a + b < 3) throw InputError("grid needs a, b >= 1 and a + b >= 3");
  PointSet out(2);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) out.add(ProjPoint(IntVector{Integer(i), Integer(j), Integer(1)}));
  return out;
}

/// Line x - c z.
inline Form vertical_line(long c) { return Form::linear({Integer(1), Integer(0), Integer(-c)}); }

/// Line y - c z.
inline Form horizontal_line(long c) { return Form::linear({Integer(0), Integer(1), Integer(-c)}); }

/// Concatenation of two disjoint point sets.
inline PointSet union_generator(const PointSet& g1, const PointSet& g2) {
  if (g1.ambient_dim() != g2.ambient_dim()) throw InputError("point sets live in different spaces");
  PointSet out = g1;
  for (const auto& p : g2) {
    if (g1.contains(p)) throw OverlapError("point " + p.to_string() + " is in both sets");
    out.add(p);
  }
  return out;
}

struct ComponentCount {
  unsigned degree = 0;        // f_i
  std::size_t exclusive = 0;  // |Gamma_i|: points on this component and no other
  long bound = 0;             // r + f_i - f + 2
  bool passes = true;         // vacuous when exclusive == 0
};

struct ComponentBoundReport {
  int r = 0;
  unsigned total_degree = 0;  // f
  std::vector<ComponentCount> components;
  bool passes = true;
};

/// For each component curve, counts the points lying on it and on no other component, and
/// compares each nonempty count with r + f_i - f + 2 (f = sum of the f_i). The caller decides
/// what a failure means; a set that is not CB(r) may well fail.
inline ComponentBoundReport component_bound_check(const PointSet& g, const std::vector<Form>& components, int r) {
  if (g.ambient_dim() != 2) throw AmbientDimError("component bound check needs a point set in P^2");
  ComponentBoundReport rep;
  rep.r = r;
  for (const auto& c : components) {
    if (c.ambient_dim() != 2) throw AmbientDimError("component forms must be plane forms");
    if (c.is_zero() || c.degree() == 0) throw InputError("components must be curves of degree >= 1");
    rep.total_degree += c.degree();
  }
  rep.components.resize(components.size());
  for (const auto& p : g) {
    std::vector<std::size_t> on;
    for (std::size_t k = 0; k < components.size(); ++k)
      if (components[k].vanishes_at(p)) on.push_back(k);
    if (on.empty()) throw UncoveredPoint("point " + p.to_string() + " lies on no component");
    if (on.size() == 1) ++rep.components[on[0]].exclusive;
  }
  for (std::size_t k = 0; k < components.size(); ++k) {
    auto& c = rep.components[k];
    c.degree = components[k].degree();
    c.bound = static_cast<long>(r) + c.degree - static_cast<long>(rep.total_degree) + 2;
    c.passes = c.exclusive == 0 || static_cast<long>(c.exclusive) >= c.bound;
    rep.passes = rep.passes && c.passes;
  }
  return rep;
}

}  // namespace irrkit
