// Exact polyhedral computations by the double description method: extreme
// rays of pointed cones, convex and conic hulls (V to H), vertex and ray
// enumeration (H to V), recession cones and LP membership.
//
// Conventions: an inequality is normal . x >= offset; an equation is
// normal . x = rhs. Canonical form reduces inequality normals modulo the
// reduced row echelon form of the equations (zero at equation pivot
// columns), then scales to a primitive integer normal by a positive factor.
// Equations are canonical rows of that echelon form (positive pivot).

#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"
#include "thmc/exactla.hpp"

namespace thmc::polytope {

struct Inequality {
  IntVector normal;
  Rational offset;
  bool operator==(const Inequality&) const = default;
  bool operator<(const Inequality& o) const { return normal != o.normal ? normal < o.normal : offset < o.offset; }
};

struct Equation {
  IntVector normal;
  Rational rhs;
  bool operator==(const Equation&) const = default;
  bool operator<(const Equation& o) const { return normal != o.normal ? normal < o.normal : rhs < o.rhs; }
};

struct HPolyhedron {
  std::size_t dim = 0;
  std::vector<Equation> equations;
  std::vector<Inequality> inequalities;

  bool contains(const RationalVector& x) const;
};

struct VPolyhedron {
  std::size_t dim = 0;
  std::vector<RationalVector> vertices;
  std::vector<IntVector> rays;  // primitive, pairwise non-parallel
};

/// Statistics of the last double description run on this thread.
struct DdStats {
  std::size_t constraints = 0;
  std::size_t max_intermediate_rays = 0;
  std::size_t adjacency_tests = 0;
};
const DdStats& last_dd_stats();

/// How two rays are judged adjacent. Both are exact; the combinatorial
/// (zero-set inclusion) test is the fast default, the rank test is kept as
/// an independent cross-check.
enum class Adjacency { Combinatorial, Rank };

/// Extreme rays of the pointed cone {y : A y >= 0, E y = 0}, as sorted
/// primitive integer vectors. Throws std::domain_error if the cone has a
/// lineality space. The zero cone yields an empty list.
std::vector<IntVector> extreme_rays(const std::vector<IntVector>& inequalities,
                                    const std::vector<IntVector>& equations, std::size_t dim,
                                    Adjacency adjacency = Adjacency::Combinatorial);

/// Brings a system into canonical form: equations as echelon rows, and
/// inequalities reduced, scaled and deduplicated, sorted.
HPolyhedron canonicalize(HPolyhedron h);
Inequality canonical_inequality(const Inequality& ineq, const std::vector<Equation>& canonical_equations);

/// Facets and affine hull of conv(points). Duplicates are removed first.
/// Throws std::invalid_argument on an empty input.
HPolyhedron convex_hull(const std::vector<RationalVector>& points);
/// Facets (offset 0) and linear hull of the cone over the generators.
HPolyhedron conic_hull(const std::vector<RationalVector>& generators);

/// Vertices and extreme rays. Throws std::domain_error when the system is
/// infeasible or the polyhedron is not pointed.
VPolyhedron vertex_enumeration(const HPolyhedron& h);

/// Extreme rays of {x : normal . x >= 0, equations homogeneous}.
std::vector<IntVector> recession_rays(const HPolyhedron& h);

/// x = convex combination of vertices + non-negative combination of rays.
bool membership(const RationalVector& x, const VPolyhedron& v);

/// n h = {n x : x in h} for n > 0: offsets and right-hand sides times n.
HPolyhedron dilate(const HPolyhedron& h, const Rational& n);

/// Integer points x >= 0 with sum(x) = total inside h, lexicographic.
/// Throws std::length_error when the candidate count exceeds `cap`.
std::vector<IntVector> nonnegative_integer_points(const HPolyhedron& h, std::int64_t total,
                                                  std::uint64_t cap = 10'000'000);

nlohmann::json to_json(const HPolyhedron& h);
nlohmann::json to_json(const VPolyhedron& v);
HPolyhedron hpolyhedron_from_json(const nlohmann::json& j);
VPolyhedron vpolyhedron_from_json(const nlohmann::json& j);

}  // namespace thmc::polytope
