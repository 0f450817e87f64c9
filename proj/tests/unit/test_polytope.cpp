#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "thmc/design.hpp"
#include "thmc/polytope.hpp"

using namespace thmc;
using namespace thmc::polytope;

namespace {

RationalVector rv(std::initializer_list<long> v) {
  RationalVector r;
  for (long x : v) r.emplace_back(x);
  return r;
}

IntVector iv(std::initializer_list<long> v) {
  IntVector r;
  for (long x : v) r.emplace_back(x);
  return r;
}

// Extreme points by LP: a point is extreme iff it is not a convex
// combination of the other (distinct) points.
std::set<RationalVector> extreme_points_oracle(const std::vector<RationalVector>& pts) {
  std::set<RationalVector> uniq(pts.begin(), pts.end());
  std::set<RationalVector> out;
  for (const auto& p : uniq) {
    std::vector<RationalVector> others;
    for (const auto& q : uniq) {
      if (q != p) others.push_back(q);
    }
    if (others.empty() || !exactla::nonnegative_combination(others, p, true)) out.insert(p);
  }
  return out;
}

std::vector<RationalVector> column_points(std::size_t T) {
  std::vector<RationalVector> pts;
  for (const auto& c : distinct_columns(3, T)) pts.push_back(to_rational_vector(c.counts()));
  return pts;
}

HPolyhedron cube3() {
  HPolyhedron h;
  h.dim = 3;
  for (std::size_t i = 0; i < 3; ++i) {
    IntVector e(3, 0);
    e[i] = 1;
    h.inequalities.push_back({e, Rational(0)});
    IntVector f(3, 0);
    f[i] = -1;
    h.inequalities.push_back({f, Rational(-1)});
  }
  return h;
}

}  // namespace

TEST_CASE("unit simplex in the plane x+y+z=1") {
  auto h = convex_hull({rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  CHECK(h.inequalities.size() == 3);
  REQUIRE(h.equations.size() == 1);
  CHECK(h.equations[0].normal == iv({1, 1, 1}));
  CHECK(h.equations[0].rhs == 1);
}

TEST_CASE("hull of a single point and of a segment") {
  auto p = convex_hull({rv({2, 3})});
  CHECK(p.inequalities.empty());
  CHECK(p.equations.size() == 2);
  auto s = convex_hull({rv({0, 0}), rv({2, 2}), rv({1, 1})});
  CHECK(s.inequalities.size() == 2);
  CHECK(s.equations.size() == 1);
  CHECK_THROWS(convex_hull({}));
}

TEST_CASE("cube vertex enumeration") {
  auto v = vertex_enumeration(cube3());
  CHECK(v.vertices.size() == 8);
  CHECK(v.rays.empty());
  CHECK(recession_rays(cube3()).empty());
}

TEST_CASE("half-line recession ray") {
  HPolyhedron h;
  h.dim = 1;
  h.inequalities.push_back({iv({1}), Rational(0)});
  auto rays = recession_rays(h);
  REQUIRE(rays.size() == 1);
  CHECK(rays[0] == iv({1}));
  auto v = vertex_enumeration(h);
  CHECK(v.vertices == std::vector<RationalVector>{rv({0})});
  CHECK(v.rays == std::vector<IntVector>{iv({1})});
}

TEST_CASE("infeasible and non-pointed systems are rejected") {
  HPolyhedron empty;
  empty.dim = 1;
  empty.inequalities = {{iv({1}), Rational(1)}, {iv({-1}), Rational(0)}};
  CHECK_THROWS_AS(vertex_enumeration(empty), std::domain_error);
  HPolyhedron slab;
  slab.dim = 2;
  slab.inequalities = {{iv({1, 0}), Rational(0)}, {iv({-1, 0}), Rational(-1)}};
  CHECK_THROWS_AS(vertex_enumeration(slab), std::domain_error);
  CHECK_THROWS_AS(extreme_rays({iv({1, 0})}, {}, 2), std::domain_error);
}

TEST_CASE("membership in a V-polyhedron") {
  VPolyhedron v;
  v.dim = 2;
  v.vertices = {rv({0, 0}), rv({2, 0})};
  v.rays = {iv({0, 1})};
  CHECK(membership(rv({0, 0}), v));
  CHECK(membership(rv({1, 0}), v));
  CHECK(membership(rv({1, 5}), v));
  // vertex minus ray leaves the polyhedron
  CHECK_FALSE(membership(rv({0, -1}), v));
  CHECK_FALSE(membership(rv({3, 1}), v));
}

TEST_CASE("canonical form") {
  std::vector<Equation> eqs{{iv({1, 1, 1}), Rational(4)}};
  auto c = canonical_inequality({iv({2, 2, 4}), Rational(6)}, eqs);
  // 2x+2y+4z >= 6 on x+y+z=4  <=>  2z >= -2  <=>  z >= -1
  CHECK(c.normal == iv({0, 0, 1}));
  CHECK(c.offset == -1);
  HPolyhedron h;
  h.dim = 2;
  h.inequalities = {{iv({2, 4}), Rational(1)}, {iv({1, 2}), Rational(1)}, {iv({3, 6}), Rational(0)}};
  auto k = canonicalize(h);
  REQUIRE(k.inequalities.size() == 1);
  CHECK(k.inequalities[0].normal == iv({1, 2}));
  CHECK(k.inequalities[0].offset == 1);
}

TEST_CASE("random hull round trips against an LP extreme-point oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coord(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + rng() % 3;
    std::vector<RationalVector> pts;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      RationalVector p;
      for (std::size_t j = 0; j < d; ++j) p.emplace_back(coord(rng), 1 + static_cast<long>(rng() % 2));
      for (auto& x : p) x.canonicalize();
      pts.push_back(p);
    }
    auto h = convex_hull(pts);
    for (const auto& p : pts) CHECK(h.contains(p));
    auto v = vertex_enumeration(h);
    CHECK(v.rays.empty());
    std::set<RationalVector> got(v.vertices.begin(), v.vertices.end());
    CHECK(got == extreme_points_oracle(pts));
    // membership agrees with the H-description on random probes
    for (int probe = 0; probe < 10; ++probe) {
      RationalVector x;
      for (std::size_t j = 0; j < d; ++j) x.emplace_back(coord(rng), 2);
      for (auto& y : x) y.canonicalize();
      CHECK(membership(x, v) == h.contains(x));
    }
  }
}

TEST_CASE("rank and combinatorial adjacency agree") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> coord(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 3 + rng() % 2;
    std::vector<IntVector> gens;
    for (int i = 0; i < 9; ++i) {
      IntVector g;
      for (std::size_t j = 0; j + 1 < d; ++j) g.emplace_back(coord(rng));
      g.emplace_back(1 + static_cast<long>(rng() % 3));
      gens.push_back(g);
    }
    CHECK(extreme_rays(gens, {}, d, Adjacency::Combinatorial) == extreme_rays(gens, {}, d, Adjacency::Rank));
  }
  for (std::size_t T : {4u, 6u, 8u}) {
    std::vector<IntVector> q;
    for (const auto& c : distinct_columns(3, T)) q.push_back(to_int_vector(c.counts()));
    CHECK(extreme_rays(q, {}, 6, Adjacency::Combinatorial) == extreme_rays(q, {}, 6, Adjacency::Rank));
  }
}

TEST_CASE("design polytope facets are tight on five affinely independent columns") {
  for (std::size_t T = 3; T <= 10; ++T) {
    auto pts = column_points(T);
    auto h = convex_hull(pts);
    CHECK(h.inequalities.size() == (T <= 4 ? 12u : 24u));
    REQUIRE(h.equations.size() == 1);
    CHECK(h.equations[0].normal == iv({1, 1, 1, 1, 1, 1}));
    CHECK(h.equations[0].rhs == static_cast<long>(T - 1));
    for (const auto& f : h.inequalities) {
      std::vector<IntVector> tight;
      for (const auto& p : pts) {
        const Rational v = dot(f.normal, p);
        CHECK(v >= f.offset);
        if (v == f.offset) {
          IntVector q;
          for (const auto& x : p) q.push_back(x.get_num());
          q.emplace_back(1);
          tight.push_back(q);
        }
      }
      CHECK(exactla::rank(tight) == 5);
    }
  }
}

TEST_CASE("vertices of the design polytope are extreme columns") {
  for (std::size_t T = 3; T <= 8; ++T) {
    auto pts = column_points(T);
    auto v = vertex_enumeration(convex_hull(pts));
    std::set<RationalVector> got(v.vertices.begin(), v.vertices.end());
    CHECK(got == extreme_points_oracle(pts));
  }
}

TEST_CASE("conic hull of the columns is full dimensional") {
  auto h = conic_hull(column_points(7));
  CHECK(h.equations.empty());
  CHECK(h.inequalities.size() == 24);
  for (const auto& f : h.inequalities) CHECK(f.offset == 0);
}

TEST_CASE("json round trip") {
  auto h = convex_hull(column_points(5));
  auto j = to_json(h);
  CHECK(j["inequalities"].size() == 24);
  CHECK(j["inequalities"][0]["offset"].is_string());
  auto back = hpolyhedron_from_json(j);
  CHECK(back.inequalities == h.inequalities);
  CHECK(back.equations == h.equations);
  auto v = vertex_enumeration(cube3());
  auto vb = vpolyhedron_from_json(to_json(v));
  CHECK(vb.vertices == v.vertices);
  CHECK(vb.rays == v.rays);
}

TEST_CASE("nonnegative integer points and dilation") {
  const auto tri = convex_hull({rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  CHECK(nonnegative_integer_points(tri, 1).size() == 3);
  CHECK(nonnegative_integer_points(tri, 2).empty());
  // 2 * simplex holds the 6 points of sum 2.
  CHECK(nonnegative_integer_points(dilate(tri, 2), 2).size() == 6);
  CHECK(nonnegative_integer_points(dilate(tri, 2), 2) ==
        std::vector<IntVector>{iv({0, 0, 2}), iv({0, 1, 1}), iv({0, 2, 0}), iv({1, 0, 1}), iv({1, 1, 0}), iv({2, 0, 0})});
  CHECK_THROWS_AS(nonnegative_integer_points(tri, 5000, 1000), std::length_error);
  CHECK_THROWS_AS(dilate(tri, 0), std::invalid_argument);
}

TEST_CASE("integer points of the design polytope are exactly its columns") {
  for (std::size_t T = 3; T <= 10; ++T) {
    CAPTURE(T);
    const auto h = convex_hull(column_points(T));
    const auto pts = nonnegative_integer_points(h, static_cast<std::int64_t>(T - 1));
    std::set<IntVector> cols;
    for (const auto& c : distinct_columns(3, T)) cols.insert(to_int_vector(c.counts()));
    const std::set<IntVector> got(pts.begin(), pts.end());
    // Stated for T >= 4; it holds at T = 3 as well.
    CHECK(got == cols);
  }
}

TEST_CASE("n P^T and the cone agree on the hyperplane of degree n") {
  for (std::size_t T = 5; T <= 8; ++T) {
    const auto pts = column_points(T);
    const auto poly = convex_hull(pts);
    const auto cone = conic_hull(pts);
    for (long n : {2L, 3L}) {
      CAPTURE(T);
      CAPTURE(n);
      const auto total = n * static_cast<long>(T - 1);
      CHECK(nonnegative_integer_points(dilate(poly, n), total) == nonnegative_integer_points(cone, total));
    }
  }
}
