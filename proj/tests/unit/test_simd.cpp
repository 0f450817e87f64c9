#include <random>

#include "doctest.h"
#include "thmc/simd.hpp"

using namespace thmc::simd;

namespace {

std::vector<std::int32_t> random_rows(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::int64_t> dist(-kMaxMagnitude, kMaxMagnitude);
  std::vector<std::int32_t> rows(n * kLanes);
  for (auto& x : rows) x = static_cast<std::int32_t>(dist(rng));
  return rows;
}

}  // namespace

TEST_CASE("scalar reference values") {
  std::int32_t rows[16] = {1, 2, 3, 4, 5, 6, 0, 0, -1, 0, 0, 0, 0, 0, 0, 7};
  std::int32_t v[8] = {1, 1, 1, 1, 1, 1, 1, 2};
  std::int64_t out[2];
  scalar::dot_rows(rows, 2, v, out);
  CHECK(out[0] == 21);
  CHECK(out[1] == 13);
  std::int64_t vals[5] = {3, -2, 0, 0, 9};
  CHECK(scalar::reduce_min(vals, 5) == -2);
  CHECK(scalar::sign_counts(vals, 5) == SignCounts{1, 2, 2});
  CHECK(scalar::count_equal(vals, 5, 0) == 2);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!isa_supported(Isa::Avx2)) {
    MESSAGE("AVX2 unavailable; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(99);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 64u, 1001u}) {
    auto rows = random_rows(rng, n);
    std::vector<std::int32_t> v(kLanes);
    std::uniform_int_distribution<std::int64_t> dist(-kMaxMagnitude, kMaxMagnitude);
    for (auto& x : v) x = static_cast<std::int32_t>(dist(rng));
    std::vector<std::int64_t> a(n), b(n);
    if (n > 0) {
      scalar::dot_rows(rows.data(), n, v.data(), a.data());
      avx2::dot_rows(rows.data(), n, v.data(), b.data());
    }
    CHECK(a == b);
    if (n == 0) continue;
    // Small-valued copies give many zeros and ties.
    std::vector<std::int64_t> small(n);
    for (std::size_t i = 0; i < n; ++i) small[i] = static_cast<std::int64_t>(rng() % 5) - 2;
    for (const auto* data : {&a, &small}) {
      CHECK(scalar::reduce_min(data->data(), n) == avx2::reduce_min(data->data(), n));
      CHECK(scalar::sign_counts(data->data(), n) == avx2::sign_counts(data->data(), n));
      CHECK(scalar::count_equal(data->data(), n, 0) == avx2::count_equal(data->data(), n, 0));
      CHECK(scalar::count_equal(data->data(), n, (*data)[n / 2]) ==
            avx2::count_equal(data->data(), n, (*data)[n / 2]));
    }
  }
  // Extreme magnitudes in every lane.
  std::vector<std::int32_t> rows(4 * kLanes, static_cast<std::int32_t>(-kMaxMagnitude));
  std::vector<std::int32_t> v(kLanes, static_cast<std::int32_t>(kMaxMagnitude));
  std::vector<std::int64_t> a(4), b(4);
  scalar::dot_rows(rows.data(), 4, v.data(), a.data());
  avx2::dot_rows(rows.data(), 4, v.data(), b.data());
  CHECK(a == b);
  CHECK(a[0] == -8 * kMaxMagnitude * kMaxMagnitude);
}

TEST_CASE("dispatch and packed rows") {
  const Isa original = active_isa();
  PackedRows rows(6);
  rows.push_back(std::vector<std::int64_t>{1, 0, 0, 0, 0, 0});
  rows.push_back(std::vector<std::int64_t>{2, 1, -1, 0, -1, 1});
  CHECK_THROWS(rows.push_back(std::vector<std::int64_t>{kMaxMagnitude + 1, 0, 0, 0, 0, 0}));
  CHECK_THROWS(rows.push_back(std::vector<std::int64_t>{1, 2}));
  std::vector<std::int64_t> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2}) {
    if (!isa_supported(isa)) continue;
    force_isa(isa);
    rows.evaluate(std::vector<std::int64_t>{3, 1, 1, 1, 1, 1}, out);
    CHECK(out == std::vector<std::int64_t>{3, 6});
    CHECK(reduce_min(out) == 3);
  }
  CHECK_THROWS(reduce_min(std::span<const std::int64_t>{}));
  force_isa(original);
}
