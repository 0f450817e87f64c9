#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "thmc/simd.hpp"

namespace thmc::simd {

namespace {

struct KernelTable {
  Isa isa;
  void (*dot_rows)(const std::int32_t*, std::size_t, const std::int32_t*, std::int64_t*);
  std::int64_t (*reduce_min)(const std::int64_t*, std::size_t);
  SignCounts (*sign_counts)(const std::int64_t*, std::size_t);
  std::size_t (*count_equal)(const std::int64_t*, std::size_t, std::int64_t);
};

constexpr KernelTable kScalar{Isa::Scalar, scalar::dot_rows, scalar::reduce_min, scalar::sign_counts,
                              scalar::count_equal};
#ifdef THMC_HAVE_AVX2
constexpr KernelTable kAvx2{Isa::Avx2, avx2::dot_rows, avx2::reduce_min, avx2::sign_counts,
                            avx2::count_equal};
#endif

const KernelTable* table_for(Isa isa) {
#ifdef THMC_HAVE_AVX2
  if (isa == Isa::Avx2) return &kAvx2;
#endif
  (void)isa;
  return &kScalar;
}

const KernelTable* detect() {
  if (const char* env = std::getenv("THMC_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
    return &kScalar;
  }
  return isa_supported(Isa::Avx2) ? table_for(Isa::Avx2) : &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

const KernelTable& kernels() { return *current().load(std::memory_order_relaxed); }

}  // namespace

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(THMC_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return kernels().isa; }

const char* isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error(std::string("ISA not available: ") + isa_name(isa));
  current().store(table_for(isa), std::memory_order_relaxed);
}

void dot_rows(std::span<const std::int32_t> rows, std::span<const std::int32_t, kLanes> v,
              std::span<std::int64_t> out) {
  const std::size_t n = rows.size() / kLanes;
  if (out.size() < n) throw std::invalid_argument("dot_rows: output too small");
  if (n == 0) return;
  kernels().dot_rows(rows.data(), n, v.data(), out.data());
}

std::int64_t reduce_min(std::span<const std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("reduce_min of an empty range");
  return kernels().reduce_min(values.data(), values.size());
}

SignCounts sign_counts(std::span<const std::int64_t> values) {
  return kernels().sign_counts(values.data(), values.size());
}

std::size_t count_equal(std::span<const std::int64_t> values, std::int64_t target) {
  return kernels().count_equal(values.data(), values.size(), target);
}

PackedRows::PackedRows(std::size_t dim) : dim_(dim) {
  if (dim > kLanes) throw std::invalid_argument("PackedRows: dimension exceeds lane count");
}

bool PackedRows::fits(std::span<const std::int64_t> values) noexcept {
  for (auto v : values) {
    if (v > kMaxMagnitude || v < -kMaxMagnitude) return false;
  }
  return true;
}

void PackedRows::push_back(std::span<const std::int64_t> values) {
  if (values.size() != dim_) throw std::invalid_argument("PackedRows: row has the wrong dimension");
  if (!fits(values)) throw std::out_of_range("PackedRows: entry exceeds kernel magnitude bound");
  for (std::size_t k = 0; k < kLanes; ++k) {
    data_.push_back(k < dim_ ? static_cast<std::int32_t>(values[k]) : 0);
  }
}

void PackedRows::evaluate(std::span<const std::int64_t> v, std::vector<std::int64_t>& out) const {
  if (v.size() != dim_) throw std::invalid_argument("PackedRows::evaluate: dimension mismatch");
  if (!fits(v)) throw std::out_of_range("PackedRows::evaluate: entry exceeds kernel magnitude bound");
  std::int32_t packed[kLanes] = {};
  for (std::size_t k = 0; k < dim_; ++k) packed[k] = static_cast<std::int32_t>(v[k]);
  out.resize(size());
  dot_rows(data_, std::span<const std::int32_t, kLanes>(packed, kLanes), out);
}

}  // namespace thmc::simd
