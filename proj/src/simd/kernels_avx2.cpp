// Compiled with -mavx2; only reached after a runtime CPU check.

#include "thmc/simd.hpp"

#include <immintrin.h>

#include <algorithm>
#include <bit>

namespace thmc::simd::avx2 {

namespace {

// Four int64 partial sums of one packed row times v.
inline __m256i row_partials(const std::int32_t* row, __m256i v_even, __m256i v_odd) {
  const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row));
  const __m256i even = _mm256_mul_epi32(r, v_even);
  const __m256i odd = _mm256_mul_epi32(_mm256_srli_epi64(r, 32), v_odd);
  return _mm256_add_epi64(even, odd);
}

inline std::int64_t horizontal_sum(__m256i s) {
  const __m128i lo = _mm256_castsi256_si128(s);
  const __m128i hi = _mm256_extracti128_si256(s, 1);
  const __m128i sum = _mm_add_epi64(lo, hi);
  return _mm_cvtsi128_si64(sum) + _mm_extract_epi64(sum, 1);
}

inline std::size_t lane_count(__m256i mask) {
  return static_cast<std::size_t>(std::popcount(
      static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(mask)))));
}

}  // namespace

void dot_rows(const std::int32_t* rows, std::size_t n, const std::int32_t* v, std::int64_t* out) {
  const __m256i vv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v));
  const __m256i v_odd = _mm256_srli_epi64(vv, 32);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i s0 = row_partials(rows + (i + 0) * kLanes, vv, v_odd);
    const __m256i s1 = row_partials(rows + (i + 1) * kLanes, vv, v_odd);
    const __m256i s2 = row_partials(rows + (i + 2) * kLanes, vv, v_odd);
    const __m256i s3 = row_partials(rows + (i + 3) * kLanes, vv, v_odd);
    // [s0a+s0b, s1a+s1b, s0c+s0d, s1c+s1d]
    const __m256i t01 = _mm256_add_epi64(_mm256_unpacklo_epi64(s0, s1), _mm256_unpackhi_epi64(s0, s1));
    const __m256i t23 = _mm256_add_epi64(_mm256_unpacklo_epi64(s2, s3), _mm256_unpackhi_epi64(s2, s3));
    const __m256i sums = _mm256_add_epi64(_mm256_permute2x128_si256(t01, t23, 0x20),
                                          _mm256_permute2x128_si256(t01, t23, 0x31));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), sums);
  }
  for (; i < n; ++i) out[i] = horizontal_sum(row_partials(rows + i * kLanes, vv, v_odd));
}

std::int64_t reduce_min(const std::int64_t* values, std::size_t n) {
  std::size_t i = 0;
  std::int64_t best = values[0];
  if (n >= 4) {
    __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values));
    for (i = 4; i + 4 <= n; i += 4) {
      const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
      m = _mm256_blendv_epi8(m, x, _mm256_cmpgt_epi64(m, x));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), m);
    best = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  }
  for (; i < n; ++i) best = std::min(best, values[i]);
  return best;
}

SignCounts sign_counts(const std::int64_t* values, std::size_t n) {
  SignCounts c;
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
    c.negative += lane_count(_mm256_cmpgt_epi64(zero, x));
    c.positive += lane_count(_mm256_cmpgt_epi64(x, zero));
  }
  c.zero = i - c.negative - c.positive;
  for (; i < n; ++i) {
    if (values[i] < 0) {
      ++c.negative;
    } else if (values[i] == 0) {
      ++c.zero;
    } else {
      ++c.positive;
    }
  }
  return c;
}

std::size_t count_equal(const std::int64_t* values, std::size_t n, std::int64_t target) {
  const __m256i t = _mm256_set1_epi64x(target);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
    count += lane_count(_mm256_cmpeq_epi64(x, t));
  }
  for (; i < n; ++i) count += values[i] == target ? 1 : 0;
  return count;
}

}  // namespace thmc::simd::avx2
