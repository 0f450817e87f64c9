#include <algorithm>
#include <set>

#include "doctest.h"
#include "thmc/facets.hpp"
#include "thmc/simd.hpp"

using namespace thmc;
using namespace thmc::facets;

namespace {

IntVector iv(std::initializer_list<long> v) {
  IntVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

RationalVector rv(std::initializer_list<long> v) {
  RationalVector out;
  for (long x : v) out.emplace_back(x);
  return out;
}

bool contains(const std::vector<FacetForm>& forms, const IntVector& c) {
  return std::any_of(forms.begin(), forms.end(), [&](const FacetForm& f) { return f.c == c; });
}

long dot6(const IntVector& c, const std::vector<std::int64_t>& x) {
  long s = 0;
  for (std::size_t i = 0; i < 6; ++i) s += c[i].get_si() * x[i];
  return s;
}

// Homogeneous rows written straight from their closed forms in T.
std::vector<IntVector> closed_form_rows(long T) {
  std::vector<IntVector> out = {iv({1, 0, 0, 0, 0, 0}), iv({T, T, -(T - 2), 1, -(T - 2), 1})};
  if (T % 2) out.push_back(iv({1, 1, -1, -1, 1, 1}));
  else out.push_back(iv({3 * T / 2 - 1, T / 2, -T / 2 + 1, -T / 2 + 1, -T / 2 + 1, T / 2}));
  if (T % 3 == 1) out.push_back(iv({2, -1, -1, -1, 2, 2}));
  if (T % 3 == 2) {
    const long k = (T - 2) / 3;
    out.push_back(iv({2 * k + 1, -k, -k, -k, 2 * k + 1, 2 * k + 1}));
  }
  if (T % 6 == 3) {
    const long k = (T - 3) / 6;
    out.push_back(iv({5 * k + 2, 2 * k + 1, -4 * k - 1, -k, -k, 2 * k + 1}));
  }
  if (T % 6 == 0) {
    const long k = T / 6;
    out.push_back(iv({10 * k - 1, 4 * k, -8 * k + 2, -2 * k + 1, -2 * k + 1, 4 * k}));
  }
  return out;
}

Word relabel(const Word& w, const std::array<int, 3>& s) {
  std::vector<State> out;
  for (State a : w.states()) out.push_back(static_cast<State>(s[a]));
  return Word(out, 3);
}

}  // namespace

TEST_CASE("table1_vectors examples") {
  CHECK(contains(table1_vectors(7), iv({2, -1, -1, -1, 2, 2})));
  CHECK(contains(table1_vectors(8), iv({11, 4, -3, -3, -3, 4})));
  CHECK(contains(table1_vectors(9), iv({7, 3, -5, -1, -1, 3})));
  CHECK_THROWS_AS(table1_vectors(4), std::invalid_argument);
  for (std::size_t T = 5; T <= 30; ++T) {
    const auto rows = table1_vectors(T);
    CHECK(rows.size() == 4);
    std::vector<IntVector> got;
    for (const auto& f : rows) got.push_back(f.c);
    CHECK(got == closed_form_rows(static_cast<long>(T)));
  }
}

TEST_CASE("symmetry_orbit examples") {
  const auto unit = symmetry_orbit(iv({1, 0, 0, 0, 0, 0}), false);
  CHECK(unit.size() == 6);
  const IntVector row = iv({7, 7, -5, 1, -5, 1});
  CHECK(symmetry_orbit(row, false).size() == 3);
  CHECK(symmetry_orbit(row, true).size() == 6);
}

TEST_CASE("label and reversal actions match relabelled and reversed words") {
  const IntVector c = iv({5, 2, -4, -1, -1, 2});
  for (const auto& w : enumerate_words(3, 6)) {
    const auto x = transition_counts(w, 3).counts();
    for (const auto& s : label_permutations()) {
      CHECK(dot6(permute_labels(c, s), x) == dot6(c, transition_counts(relabel(w, s), 3).counts()));
    }
    CHECK(dot6(reverse_pairs(c), x) == dot6(c, transition_counts(reverse(w), 3).counts()));
  }
}

TEST_CASE("certify_facet examples") {
  const auto a = certify_facet(iv({1, 0, 0, 0, 0, 0}), 6);
  CHECK(a.min_value == 0);
  CHECK(a.tight_rank == 5);
  CHECK(a.valid());

  const DesignMatrix A5(3, 5);
  const auto b = certify_facet(iv({1, 1, -1, -1, 1, 1}), A5);
  CHECK(b.min_value == 0);
  const auto k = *A5.index_of(Word::parse("12121", 3));
  CHECK(A5.column(k).counts == TransitionVector(3, {2, 0, 2, 0, 0, 0}));
  CHECK(std::find(b.tight_columns.begin(), b.tight_columns.end(), k) != b.tight_columns.end());

  const auto c = certify_facet(iv({1, 1, 1, 1, 1, 1}), A5);
  CHECK(c.min_value == 4);
  CHECK(c.tight_rank == 0);
  CHECK(!c.valid());
}

TEST_CASE("certificates agree with a direct scan") {
  for (std::size_t T = 5; T <= 10; ++T) {
    const DesignMatrix A(3, T);
    for (const auto& f : table1_vectors(T)) {
      long lo = 1L << 40;
      for (const auto& col : A.columns()) lo = std::min(lo, dot6(f.c, col.counts.counts()));
      std::vector<IntVector> tight;
      for (const auto& col : A.columns()) {
        if (dot6(f.c, col.counts.counts()) == lo) tight.push_back(to_int_vector(col.counts.counts()));
      }
      const auto cert = certify_facet(f.c, A, 1);
      CHECK(cert.min_value == lo);
      CHECK(cert.tight_count == tight.size());
      CHECK(lo == 0);
      CHECK(exactla::rank(tight) == 5);
      CHECK(cert.valid());
    }
  }
}

TEST_CASE("certificates do not depend on thread count or kernel") {
  const DesignMatrix A(3, 11);
  for (const auto& f : table1_vectors(11)) {
    const auto one = certify_facet(f.c, A, 1);
    const auto many = certify_facet(f.c, A, 4);
    CHECK(one.min_value == many.min_value);
    CHECK(one.tight_columns == many.tight_columns);
    CHECK(one.tight_rank == many.tight_rank);
  }
  if (simd::isa_supported(simd::Isa::Avx2)) {
    const auto before = simd::active_isa();
    const auto fast = certify_facet(iv({5, 2, -4, -1, -1, 2}), A);
    simd::force_isa(simd::Isa::Scalar);
    const auto slow = certify_facet(iv({5, 2, -4, -1, -1, 2}), A);
    simd::force_isa(before);
    CHECK(fast.tight_columns == slow.tight_columns);
    CHECK(fast.min_value == slow.min_value);
  }
}

TEST_CASE("odd-T tight family") {
  const IntVector c = iv({1, 1, -1, -1, 1, 1});
  for (std::size_t T = 5; T <= 13; T += 2) {
    const std::size_t k = (T - 1) / 2;
    auto rep = [](const char* unit, std::size_t times) {
      std::string s;
      for (std::size_t r = 0; r < times; ++r) s += unit;
      return s;
    };
    auto counts = [&](const std::string& s) {
      const Word w = Word::parse(s, 3);
      REQUIRE(w.length() == T);
      return transition_counts(w, 3).counts();
    };
    // 121..121, 232..232 and 2121..213 are tight. The shapes 1323..232 and
    // 3121..212 are not: both sit at c.x = 2.
    const std::vector<std::string> tight_words = {rep("12", k) + "1", rep("23", k) + "2", rep("21", k) + "3",
                                                  rep("12", k) + "3", rep("21", k - 1) + "231"};
    CHECK(dot6(c, counts("1" + rep("32", k))) == 2);
    CHECK(dot6(c, counts("3" + rep("12", k))) == 2);
    std::vector<IntVector> tight;
    for (const auto& s : tight_words) {
      CHECK(dot6(c, counts(s)) == 0);
      tight.push_back(to_int_vector(counts(s)));
    }
    CHECK(exactla::rank(tight) == 5);
  }
}

TEST_CASE("inhomogenize reproduces the published forms") {
  const auto& fams = families();
  const auto& table = inhomogeneous_table();
  REQUIRE(fams.size() == table.size());
  for (std::size_t T = 5; T <= 40; ++T) {
    for (std::size_t i = 0; i < fams.size(); ++i) {
      if (!applies(fams[i].when, T)) {
        CHECK_THROWS_AS(inhomogenize(fams[i], T), std::invalid_argument);
        continue;
      }
      const auto f = inhomogenize(fams[i], T);
      CHECK(f.c == table[i].c);
      CHECK(f.offset == table[i].offset);
    }
  }
  CHECK(inhomogenize(fams[1], 9).c == iv({1, 1, -1, 0, -1, 0}));
  CHECK(inhomogenize(fams[1], 9).offset == -1);
}

TEST_CASE("homogeneous and inhomogeneous rows have the same tight columns") {
  for (std::size_t T = 5; T <= 10; ++T) {
    const DesignMatrix A(3, T);
    for (std::size_t i = 0; i < families().size(); ++i) {
      if (!applies(families()[i].when, T)) continue;
      const IntVector c = families()[i].instantiate(T);
      const auto f = inhomogenize(families()[i], T);
      for (const auto& col : A.columns()) {
        const auto& x = col.counts.counts();
        CHECK(dot6(f.c, x) >= f.offset.get_si());
        CHECK((dot6(c, x) == 0) == (dot6(f.c, x) == f.offset.get_si()));
      }
    }
  }
}

TEST_CASE("q_polyhedron") {
  const std::set<IntVector> loops = {iv({1, 0, 1, 0, 0, 0}), iv({0, 1, 0, 0, 1, 0}), iv({0, 0, 0, 1, 0, 1}),
                                     iv({1, 0, 0, 1, 1, 0}), iv({0, 1, 1, 0, 0, 1})};
  CHECK(std::set<IntVector>(loop_rays().begin(), loop_rays().end()) == loops);
  for (int r = 0; r < 6; ++r) {
    const auto h = q_polyhedron(r);
    CHECK(h.inequalities.size() == 24);
    const auto rays = polytope::recession_rays(h);
    CHECK(std::set<IntVector>(rays.begin(), rays.end()) == loops);
  }
  const auto v1 = polytope::vertex_enumeration(q_polyhedron(1));
  CHECK(std::find(v1.vertices.begin(), v1.vertices.end(), rv({0, 0, 0, 0, 0, 0})) != v1.vertices.end());
  CHECK_THROWS_AS(q_polyhedron(6), std::invalid_argument);
}

TEST_CASE("appendix comparison") {
  CHECK(to_canonical(rv({1, 2, 3, 4, 5, 6}), IndexConvention::Printed) == rv({1, 3, 2, 5, 4, 6}));
  for (int r = 0; r < 6; ++r) {
    const auto res = verify_appendix_vertices(r);
    CAPTURE(r);
    // Vertices of the published system: always feasible with rank-6 tight sets.
    CHECK(res.report.items()[0].pass);
    CHECK(res.report.items()[1].pass);
    CHECK(res.report.items()[2].pass);
    // The printed lists describe the system with the even and 3k+2 offsets
    // negated; for r = 1 and 3 those rows are absent and the lists agree.
    CHECK(res.flipped_offsets_match);
    CHECK(res.matching.has_value() == (r == 1 || r == 3));
    if (res.matching) CHECK(*res.matching == "printed order, permutations");
    if (r == 2) CHECK(res.flipped_max_l1 == 17);
    CHECK(res.max_l1 <= 9);
  }
}

TEST_CASE("vertex_ray_extension") {
  CHECK(vertex_ray_extension(rv({0, 0, 0, 0, 0, 0}), iv({1, 0, 1, 0, 0, 0}), 7) == rv({3, 0, 3, 0, 0, 0}));
  const RationalVector v = rv({0, 3, 4, 3, 0, 7});
  CHECK(vertex_ray_extension(v, iv({1, 0, 0, 1, 1, 0}), 18) == v);
  const RationalVector half = {Rational(1, 2), 0, Rational(1, 2), 0, 0, 0};
  for (const auto& e : loop_rays()) {
    const auto p = vertex_ray_extension(half, e, 9);
    Rational s = 0;
    for (const auto& x : p) s += x;
    CHECK(s == 8);
  }
  CHECK_THROWS_AS(vertex_ray_extension(v, iv({1, -1, 0, 0, 0, 0}), 18), std::invalid_argument);
  CHECK_THROWS_AS(vertex_ray_extension(v, iv({1, 0, 1, 0, 0, 0}), 10), std::invalid_argument);
}

TEST_CASE("verify_24_facets") {
  for (std::size_t T : {5, 7, 8}) {
    const auto res = verify_24_facets(T);
    CAPTURE(T);
    CHECK(res.report.all_pass());
    CHECK(res.hull_facets == 24);
    CHECK(res.hull_equals_orbit);
    CHECK(res.hull_equals_q);
    CHECK(res.q_rays == 5);
    for (const auto& e : res.extensions) {
      if (!e.witness) continue;
      CHECK(e.witness->length() == T);
      CHECK(e.lifted->length() == T + 6);
    }
  }
  CHECK_THROWS_AS(verify_24_facets(4), std::invalid_argument);
}

TEST_CASE("window lemmas") {
  const auto rep = verify_window_lemmas(2);
  CHECK(rep.all_pass());
  bool saw_eq = false, saw_refuted = false;
  for (const auto& item : rep.items()) {
    if (item.name == "3-step weighted equality set (i,j,t)=(1,2,3)") {
      saw_eq = true;
      CHECK(item.detail == "2121 2131 2321");
    }
    if (item.name == "6-step difference 1 endpoints as stated (i,j,t)=(1,2,3)") {
      saw_refuted = true;
      CHECK(!item.pass);
      CHECK(!item.gating);
      CHECK(item.detail == "counterexample 1321321");
    }
  }
  CHECK(saw_eq);
  CHECK(saw_refuted);

  // Direct check of one instance: length 8 paths ending at 2.
  for (const auto& w : enumerate_words(3, 8)) {
    if (w.back() != 1) continue;
    const auto x = transition_counts(w, 3);
    CHECK(2 * x.at(0, 1) + x.at(0, 2) + x.at(2, 1) >= 4);
  }
}
