#include <random>

#include "doctest.h"
#include "thmc/exactla.hpp"

using namespace thmc;
using namespace thmc::exactla;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  }
  return m;
}

LinearConstraint constraint(std::initializer_list<std::int64_t> coeffs, Relation rel, std::int64_t rhs) {
  LinearConstraint c;
  for (auto v : coeffs) c.coefficients.emplace_back(static_cast<long>(v));
  c.relation = rel;
  c.rhs = static_cast<long>(rhs);
  return c;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("11/5") == Rational(11, 5));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("primitive scaling") {
  CHECK(primitive(IntVector{4, -6, 0}) == IntVector{2, -3, 0});
  CHECK(primitive(IntVector{0, 0}) == IntVector{0, 0});
  CHECK(primitive_integer(RationalVector{Rational(1, 2), Rational(-1, 3)}) == IntVector{3, -2});
}

TEST_CASE("rank examples") {
  CHECK(rank(IntegerMatrix::identity(6)) == 6);
  CHECK(rank(IntegerMatrix(4, 6)) == 0);
  const long k = 2;
  auto m = IntegerMatrix::from_rows({{k, 0, k, 0, 0, 0},
                                     {0, 0, 0, k, 0, k},
                                     {k - 1, 1, k, 0, 0, 0},
                                     {0, 1, 0, k - 1, 0, k},
                                     {k, 0, k - 1, 0, 1, 0}});
  CHECK(rank(m) == 5);
  auto q = RationalMatrix::from_rows({{1, 2}, {2, 4}});
  CHECK(rank(q) == 1);
}

TEST_CASE("rank is invariant under transpose") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 6;
    const std::size_t c = 1 + rng() % 6;
    // Low-rank products exercise the degenerate paths.
    auto a = random_matrix(rng, r, 1 + rng() % 3, -3, 3);
    auto b = random_matrix(rng, a.cols(), c, -3, 3);
    auto m = a * b;
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(IntegerMatrix::from_rows({{2, 1}, {7, 4}})) == 1);
  CHECK(determinant(IntegerMatrix::from_rows({{1, 2}, {2, 4}})) == 0);
  CHECK(determinant(IntegerMatrix::from_rows({{0, 1}, {1, 0}})) == -1);
}

TEST_CASE("nullspace vectors are annihilated") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 6, -4, 4);
    auto basis = nullspace(m);
    CHECK(basis.size() + rank(m) == m.cols());
    for (const auto& y : basis) {
      for (std::size_t i = 0; i < m.rows(); ++i) CHECK(dot(m.row(i), y) == 0);
    }
  }
}

TEST_CASE("Hermite normal form examples") {
  auto f = hermite_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(f.h == IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
  auto g = hermite_normal_form(IntegerMatrix::from_rows({{2, 4}}));
  CHECK(g.h == IntegerMatrix::from_rows({{2, 0}}));
  CHECK(g.rank == 1);
}

TEST_CASE("Hermite normal form properties") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 7, -6, 6);
    auto f = hermite_normal_form(m);
    CHECK(m * f.u == f.h);
    CHECK(abs(determinant(f.u)) == 1);
    CHECK(f.rank == rank(m));
    // Lattice test: every column and integer combination is found; a
    // half-column of an odd entry is not.
    for (std::size_t c = 0; c < m.cols(); ++c) {
      auto coords = lattice_coordinates(f, m.column(c));
      REQUIRE(coords.has_value());
    }
  }
}

TEST_CASE("lattice membership for a sublattice") {
  auto f = hermite_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(lattice_coordinates(f, IntVector{4, 9}).has_value());
  CHECK_FALSE(lattice_coordinates(f, IntVector{1, 0}).has_value());
  CHECK_FALSE(lattice_coordinates(f, IntVector{0, 2}).has_value());
  auto g = hermite_normal_form(IntegerMatrix::from_rows({{1, 1}, {1, 1}}));
  CHECK(lattice_coordinates(g, IntVector{5, 5}).has_value());
  CHECK_FALSE(lattice_coordinates(g, IntVector{5, 4}).has_value());
}

TEST_CASE("lp feasibility examples") {
  std::vector<LinearConstraint> box{constraint({1}, Relation::GreaterEqual, 0),
                                    constraint({1}, Relation::LessEqual, 1)};
  auto w = lp_feasible(box, 1);
  REQUIRE(w.has_value());
  CHECK((*w)[0] == 0);
  std::vector<LinearConstraint> empty{constraint({1}, Relation::GreaterEqual, 1),
                                      constraint({1}, Relation::LessEqual, 0)};
  CHECK_FALSE(lp_feasible(empty, 1).has_value());
}

TEST_CASE("lp optimum and unboundedness") {
  LinearProgram p;
  p.num_vars = 2;
  p.nonnegative = {true, true};
  p.constraints = {constraint({1, 2}, Relation::LessEqual, 4), constraint({3, 1}, Relation::LessEqual, 6)};
  p.objective = {Rational(1), Rational(1)};
  auto s = lp_maximize(p);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.value == Rational(14, 5));
  p.constraints.pop_back();
  p.constraints.pop_back();
  CHECK(lp_maximize(p).status == LpStatus::Unbounded);
}

TEST_CASE("lp witnesses satisfy random systems exactly") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-5, 5);
  int feasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<LinearConstraint> cs;
    const std::size_t m = 1 + rng() % 6;
    for (std::size_t i = 0; i < m; ++i) {
      LinearConstraint c;
      for (std::size_t j = 0; j < n; ++j) c.coefficients.emplace_back(coef(rng));
      c.relation = static_cast<Relation>(rng() % 3);
      c.rhs = coef(rng);
      cs.push_back(c);
    }
    auto w = lp_feasible(cs, n);
    if (w) {
      ++feasible;
      for (const auto& c : cs) CHECK(satisfies(c, *w));
    }
  }
  CHECK(feasible > 0);
}

TEST_CASE("convex and conic combinations") {
  std::vector<RationalVector> gens{{Rational(0), Rational(0)}, {Rational(2), Rational(0)}, {Rational(0), Rational(2)}};
  auto in = nonnegative_combination(gens, {Rational(1, 2), Rational(1, 2)}, true);
  REQUIRE(in.has_value());
  Rational total = 0;
  for (const auto& l : *in) {
    CHECK(l >= 0);
    total += l;
  }
  CHECK(total == 1);
  CHECK_FALSE(nonnegative_combination(gens, {Rational(2), Rational(2)}, true).has_value());
  CHECK(nonnegative_combination(gens, {Rational(5), Rational(7)}, false).has_value());
  CHECK_FALSE(nonnegative_combination(gens, {Rational(-1), Rational(0)}, false).has_value());
}
