#include "thmc/simd.hpp"

#include <algorithm>

namespace thmc::simd::scalar {

void dot_rows(const std::int32_t* rows, std::size_t n, const std::int32_t* v, std::int64_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t* r = rows + i * kLanes;
    std::int64_t s = 0;
    for (std::size_t k = 0; k < kLanes; ++k) s += std::int64_t{r[k]} * v[k];
    out[i] = s;
  }
}

std::int64_t reduce_min(const std::int64_t* values, std::size_t n) {
  return *std::min_element(values, values + n);
}

SignCounts sign_counts(const std::int64_t* values, std::size_t n) {
  SignCounts c;
  for (std::size_t i = 0; i < n; ++i) {
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
  return static_cast<std::size_t>(std::count(values, values + n, target));
}

}  // namespace thmc::simd::scalar
