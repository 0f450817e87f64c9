// Integer kernels for the data-parallel inner loops (facet evaluation over
// design-matrix columns, sign classification in the double description
// method, saturation filtering). Every kernel has a scalar reference in
// `scalar::` and an AVX2 variant in `avx2::`; the public entry points dispatch
// at runtime. Results are bit-identical across variants.
//
// Packed rows: each row is kLanes int32 values, zero padded. Inputs must stay
// within +/-kMaxMagnitude so an 8-term dot product cannot overflow int64.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace thmc::simd {

inline constexpr std::size_t kLanes = 8;
inline constexpr std::int64_t kMaxMagnitude = (std::int64_t{1} << 28) - 1;

enum class Isa { Scalar, Avx2 };

struct SignCounts {
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t positive = 0;
  bool operator==(const SignCounts&) const = default;
};

bool isa_supported(Isa isa) noexcept;
Isa active_isa() noexcept;
const char* isa_name(Isa isa) noexcept;
/// Overrides the runtime choice (tests, THMC_SIMD=scalar). Throws when the
/// CPU or the build lacks the requested ISA.
void force_isa(Isa isa);

/// out[i] = rows[i*kLanes .. +kLanes) . v
void dot_rows(std::span<const std::int32_t> rows, std::span<const std::int32_t, kLanes> v,
              std::span<std::int64_t> out);
/// Minimum of a non-empty range.
std::int64_t reduce_min(std::span<const std::int64_t> values);
SignCounts sign_counts(std::span<const std::int64_t> values);
std::size_t count_equal(std::span<const std::int64_t> values, std::int64_t target);

namespace scalar {
void dot_rows(const std::int32_t* rows, std::size_t n, const std::int32_t* v, std::int64_t* out);
std::int64_t reduce_min(const std::int64_t* values, std::size_t n);
SignCounts sign_counts(const std::int64_t* values, std::size_t n);
std::size_t count_equal(const std::int64_t* values, std::size_t n, std::int64_t target);
}  // namespace scalar

namespace avx2 {
void dot_rows(const std::int32_t* rows, std::size_t n, const std::int32_t* v, std::int64_t* out);
std::int64_t reduce_min(const std::int64_t* values, std::size_t n);
SignCounts sign_counts(const std::int64_t* values, std::size_t n);
std::size_t count_equal(const std::int64_t* values, std::size_t n, std::int64_t target);
}  // namespace avx2

/// Row-major int32 storage in the packed layout.
class PackedRows {
 public:
  explicit PackedRows(std::size_t dim = kLanes);

  /// True when every entry fits the kernel magnitude bound.
  static bool fits(std::span<const std::int64_t> values) noexcept;

  /// Appends a row; throws std::out_of_range if an entry is too large.
  void push_back(std::span<const std::int64_t> values);
  void clear() noexcept { data_.clear(); }

  std::size_t size() const noexcept { return data_.size() / kLanes; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const std::int32_t> data() const noexcept { return data_; }
  std::span<const std::int32_t> row(std::size_t i) const noexcept {
    return std::span<const std::int32_t>(data_).subspan(i * kLanes, kLanes);
  }

  /// out[i] = row(i) . v  (v has dim() entries)
  void evaluate(std::span<const std::int64_t> v, std::vector<std::int64_t>& out) const;

 private:
  std::size_t dim_;
  std::vector<std::int32_t> data_;
};

}  // namespace thmc::simd
