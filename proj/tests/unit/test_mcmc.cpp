#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "thmc/mcmc.hpp"

using namespace thmc;
using namespace thmc::mcmc;
using markov::Multiset;

namespace {

std::uint32_t idx(const DesignMatrix& A, const char* w) {
  return static_cast<std::uint32_t>(*A.index_of(Word::parse(w, A.states())));
}

Table table_of(const DesignMatrix& A, std::initializer_list<const char*> words) {
  Table u(A.cols(), 0);
  for (auto w : words) ++u[idx(A, w)];
  return u;
}

// A one-word table alone in its fiber.
Table lonely_table(const DesignMatrix& A) {
  for (std::uint32_t k = 0; k < A.cols(); ++k) {
    Table u(A.cols(), 0);
    u[k] = 1;
    if (markov::fiber_enumerate({marginal(u, A), 1}, A).members.size() == 1) return u;
  }
  throw std::logic_error("no single-table fiber");
}

// Pearson X^2 straight from the word strings, with exact rationals for the
// transition frequencies and long double for the rest.
long double pearson_oracle(const std::vector<std::string>& data, std::size_t T) {
  std::map<std::pair<char, char>, long> n;
  std::map<char, long> out;
  for (const auto& w : data)
    for (std::size_t t = 0; t + 1 < w.size(); ++t) {
      ++n[{w[t], w[t + 1]}];
      ++out[w[t]];
    }
  const auto words = enumerate_words(3, T);
  std::vector<long double> weight;
  long double Z = 0;
  for (const auto& w : words) {
    const auto s = w.str();
    Rational p = 1;
    for (std::size_t t = 0; t + 1 < s.size(); ++t) {
      const long c = n.count({s[t], s[t + 1]}) ? n[{s[t], s[t + 1]}] : 0;
      if (c == 0) {
        p = 0;
        break;
      }
      Rational f(c, out[s[t]]);
      f.canonicalize();
      p *= f;
    }
    weight.push_back(static_cast<long double>(p.get_d()));
    Z += weight.back();
  }
  long double x = 0;
  const long double N = static_cast<long double>(data.size());
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (weight[k] == 0) continue;
    const long double e = N * weight[k] / Z;
    long double u = 0;
    for (const auto& d : data) u += d == words[k].str();
    x += (u - e) * (u - e) / e;
  }
  return x;
}

}  // namespace

TEST_CASE("walk config") {
  WalkConfig cfg{1, 100, 10, 3};
  CHECK(cfg.sample_count() == 30);
  CHECK_THROWS_AS((WalkConfig{1, 10, 10, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((WalkConfig{1, 10, 0, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((WalkConfig{1, 0, 0, 1}.validate()), std::invalid_argument);
}

TEST_CASE("chi-square statistic") {
  const DesignMatrix A(3, 5);
  SUBCASE("one word: finite and non-negative") {
    const auto u = table_of(A, {"12121"});
    const double x = chi_square_statistic(u, A);
    CHECK(std::isfinite(x));
    CHECK(x >= 0);
    CHECK(g2_statistic(u, A) >= 0);
  }
  SUBCASE("exact fit gives zero") {
    // Every word once: all p_ij = 1/2, so every word has the same weight.
    const DesignMatrix B(3, 3);
    Table u(B.cols(), 1);
    CHECK(chi_square_statistic(u, B) == doctest::Approx(0).epsilon(1e-12));
    CHECK(g2_statistic(u, B) == doctest::Approx(0).epsilon(1e-12));
  }
  SUBCASE("worked pair against an independent evaluation") {
    const auto u = table_of(A, {"12132", "12321"});
    const double x = chi_square_statistic(u, A);
    const auto oracle = pearson_oracle({"12132", "12321"}, 5);
    CHECK(x == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-12));
    CHECK(x > 0);
    // Fiber-mates share the expectation vector.
    const auto v = table_of(A, {"13212", "21232"});
    CHECK(expected_counts(u, A) == expected_counts(v, A));
  }
  SUBCASE("expectations sum to N and vanish off the support") {
    const auto u = table_of(A, {"12121", "21213", "32121"});
    const auto e = expected_counts(u, A);
    double total = 0;
    for (auto v : e) total += v;
    CHECK(total == doctest::Approx(3));
    CHECK(e[idx(A, "23232")] == 0);
  }
  CHECK_THROWS_AS(chi_square_statistic(Table(A.cols(), 0), A), std::invalid_argument);
  CHECK_THROWS_AS(statistic_by_name("kolmogorov"), std::invalid_argument);
}

TEST_CASE("walk guards and trivial fibers") {
  const DesignMatrix A(3, 5);
  const auto u = table_of(A, {"12132", "12321"});
  CHECK_THROWS_AS(FiberWalk(u, {}, 1), std::invalid_argument);
  Table neg = u;
  neg[0] = -1;
  CHECK_THROWS_AS(FiberWalk(neg, markov::enumerate_moves(A, 1), 1), std::invalid_argument);

  const auto single = lonely_table(A);
  std::size_t emitted = 0;
  walk(single, markov::enumerate_moves(A, 2), {3, 500, 0, 1}, [&](std::uint64_t, const Table& t) {
    ++emitted;
    CHECK(t == single);
  });
  CHECK(emitted == 500);
}

TEST_CASE("walk reaches the companion table and stays in the fiber") {
  const DesignMatrix A(3, 5);
  const auto u0 = table_of(A, {"12132", "12321"});
  const auto target = table_of(A, {"13212", "21232"});
  const auto moves = markov::enumerate_moves(A, 2);
  const auto b = marginal(u0, A);
  bool seen = false;
  std::uint64_t last = 0;
  walk(u0, moves, {11, 20'000, 0, 1}, [&](std::uint64_t t, const Table& u) {
    CHECK(t == last + 1);
    last = t;
    seen = seen || u == target;
    for (auto v : u) REQUIRE(v >= 0);
    REQUIRE(marginal(u, A) == b);
  });
  CHECK(seen);
}

TEST_CASE("identical seeds give identical streams") {
  const DesignMatrix A(3, 5);
  const auto u0 = table_of(A, {"12131", "23132", "23132"});
  const auto moves = markov::enumerate_moves(A, 2);
  auto run = [&](std::uint64_t seed) {
    std::vector<Table> out;
    walk(u0, moves, {seed, 200'000, 100, 7}, [&](std::uint64_t, const Table& u) { out.push_back(u); });
    return out;
  };
  const auto a = run(5);
  CHECK(a.size() == WalkConfig{5, 200'000, 100, 7}.sample_count());
  CHECK(a == run(5));
  CHECK(a != run(6));
}

TEST_CASE("visit frequencies approach uniform on an enumerated fiber") {
  const DesignMatrix A(3, 5);
  const auto u0 = table_of(A, {"12132", "23131"});
  const auto fiber = markov::fiber_enumerate({marginal(u0, A), 2}, A);
  REQUIRE(fiber.members.size() == 37);
  std::map<Multiset, std::uint64_t> visits;
  std::uint64_t total = 0;
  // Most of the ~4500 proposals do not apply here (acceptance is well under
  // 1%), so the chain needs many steps.
  walk(u0, markov::enumerate_moves(A, 2), {2024, 20'000'000, 100'000, 20}, [&](std::uint64_t, const Table& u) {
    ++visits[to_multiset(u)];
    ++total;
  });
  CHECK(visits.size() == fiber.members.size());
  double tv = 0;
  for (const auto& m : fiber.members) {
    const double f = static_cast<double>(visits[m]) / static_cast<double>(total);
    tv += std::abs(f - 1.0 / static_cast<double>(fiber.members.size()));
  }
  tv /= 2;
  CHECK(tv <= 0.05);
}

TEST_CASE("exact test p-values against the enumerated fiber") {
  const DesignMatrix A(3, 5);
  const auto u0 = table_of(A, {"12132", "23131"});
  const auto fiber = markov::fiber_enumerate({marginal(u0, A), 2}, A);
  const auto moves = markov::enumerate_moves(A, 2);
  const auto e = expected_counts(u0, A);
  std::vector<double> values;
  for (const auto& m : fiber.members) values.push_back(pearson(to_table(m, A), e));
  const auto hi = std::max_element(values.begin(), values.end()) - values.begin();
  const auto lo = std::min_element(values.begin(), values.end()) - values.begin();
  std::size_t at_max = 0;
  for (auto v : values) at_max += std::abs(v - values[static_cast<std::size_t>(hi)]) <= 1e-9 * values[hi];

  const WalkConfig cfg{99, 10'000'000, 100'000, 20};
  const auto low = exact_test(to_table(fiber.members[static_cast<std::size_t>(lo)], A), A, moves, cfg);
  CHECK(low.p_value == 1.0);
  const auto high = exact_test(to_table(fiber.members[static_cast<std::size_t>(hi)], A), A, moves, cfg);
  const double exact = static_cast<double>(at_max) / static_cast<double>(fiber.members.size());
  CHECK(std::abs(high.p_value - exact) <= 0.02);
  CHECK(high.samples == cfg.sample_count());
  CHECK(high.p_value >= 0);
  CHECK(high.p_value <= 1);
  CHECK(high.std_error > 0);
}

TEST_CASE("single-table fiber has p-value 1") {
  const DesignMatrix A(3, 5);
  const auto u = lonely_table(A);
  for (const char* s : {"pearson", "g2"}) {
    TestOptions opt;
    opt.statistic = s;
    const auto r = exact_test(u, A, markov::enumerate_moves(A, 2), {1, 1'000, 0, 1}, opt);
    CHECK(r.p_value == 1.0);
    CHECK(r.std_error == 0.0);
  }
}

TEST_CASE("chains pool deterministically regardless of threads") {
  const DesignMatrix A(3, 5);
  const auto u = table_of(A, {"12132", "12321"});
  const auto moves = markov::enumerate_moves(A, 2);
  TestOptions one;
  one.chains = 4;
  one.threads = 1;
  one.keep_trace = true;
  TestOptions many = one;
  many.threads = 4;
  const WalkConfig cfg{7, 100'000, 500, 30};
  const auto a = exact_test(u, A, moves, cfg, one);
  const auto b = exact_test(u, A, moves, cfg, many);
  CHECK(a.trace == b.trace);
  CHECK(a.p_value == b.p_value);
  CHECK(a.samples == 4 * cfg.sample_count());
  REQUIRE(a.trace.size() == 4);
  CHECK(a.trace[0] != a.trace[1]);

  std::ostringstream csv;
  write_trace_csv(csv, a);
  std::size_t lines = 0;
  for (char c : csv.str()) lines += c == '\n';
  CHECK(lines == 1 + a.samples);
  const auto j = to_json(a);
  CHECK(j["samples"] == a.samples);
  CHECK(j["statistic"] == "pearson");
}
