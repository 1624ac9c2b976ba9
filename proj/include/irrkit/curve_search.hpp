#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "irrkit/exact_linalg.hpp"
#include "irrkit/forms.hpp"
#include "irrkit/poly_gcd.hpp"
#include "irrkit/projective_points.hpp"

namespace irrkit {

/// Basis of degree-e plane forms vanishing on g, each normalized. Any nonzero form defines a
/// curve, so g lies on a degree-e curve iff the result is nonempty.
inline std::vector<Form> curves_through(const PointSet& g, int e) {
  if (g.ambient_dim() != 2) throw AmbientDimError("curves_through needs a point set in P^2");
  if (e < 1) throw InputError("curve degree must be at least 1");
  std::vector<IntVector> kernel;
  if (g.empty()) {
    kernel = nullspace_basis(RationalMatrix(0, binomial_size(2 + static_cast<std::size_t>(e), static_cast<std::size_t>(e))));
  } else {
    kernel = nullspace_basis(evaluation_matrix(g, e));
  }
  std::vector<Form> out;
  out.reserve(kernel.size());
  for (auto& v : kernel) out.emplace_back(2, static_cast<unsigned>(e), std::move(v));
  return out;
}

struct InterpolationResult {
  int degree = 0;
  Form witness;
  /// Exactly one curve of this degree passes through the points.
  bool unique = false;
};

/// Smallest e <= e_max such that a degree-e plane curve passes through g.
inline std::optional<InterpolationResult> min_interpolating_degree(const PointSet& g, int e_max) {
  if (g.ambient_dim() != 2) throw AmbientDimError("min_interpolating_degree needs a point set in P^2");
  for (int e = 1; e <= e_max; ++e) {
    auto forms = curves_through(g, e);
    if (!forms.empty()) return InterpolationResult{e, forms.front(), forms.size() == 1};
  }
  return std::nullopt;
}

struct ProjectedVerdict {
  bool pass = true;
  /// PASS only says every sampled projection lies on a degree-e plane curve; FAIL is conclusive.
  bool one_sided = true;
  std::optional<std::size_t> failing_trial;
  std::size_t trials = 0;
};

/// Tests a point set in P^N (N >= 3) for lying on a degree-e curve through generic projections to
/// P^2. If g lies on a degree-e curve C, every projection lies on the image of C, which has degree at
/// most e; so one projection with no degree-e curve through it proves g is on no such curve.
/// Trial t uses the projection seeded with seed + t.
inline ProjectedVerdict projected_curve_test(const PointSet& g, int e, std::size_t trials, std::uint64_t seed,
                                             const ProjectionOptions& opts = {}) {
  if (g.ambient_dim() < 3) throw InputError("projected_curve_test needs N >= 3; use curves_through in P^2");
  if (trials < 1) throw InputError("at least one trial is required");
  if (e < 1) throw InputError("curve degree must be at least 1");
  ProjectedVerdict v;
  v.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    PointSet image = generic_projection(g, 2, seed + t, opts);
    if (vanishing_dimension(image, e) == 0) {
      v.pass = false;
      v.failing_trial = t;
      return v;
    }
  }
  return v;
}

/// Common curve component of two plane curves, or nullopt if the forms are coprime.
inline std::optional<Form> shared_component_check(const Form& c1, const Form& c2) {
  Form g = form_gcd(c1, c2);
  if (g.degree() == 0) return std::nullopt;
  return g;
}

}  // namespace irrkit
