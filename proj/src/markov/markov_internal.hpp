// Helpers shared by the markov sources.

#pragma once

#include <cstdint>
#include <vector>

#include "thmc/markov.hpp"

namespace thmc::markov::detail {

using Key = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

struct MultisetHash {
  std::size_t operator()(const Multiset& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

Multiset difference(const Multiset& a, const Multiset& b);
Multiset sum(const Multiset& a, const Multiset& b);
Multiset common(const Multiset& a, const Multiset& b);
bool includes(const Multiset& big, const Multiset& small);
bool disjoint(const Multiset& a, const Multiset& b);
std::uint64_t multiset_count(std::size_t m, std::size_t d, std::uint64_t cap);

/// Multisets of one degree sharing an image.
struct ImageGroup {
  Key b;
  std::vector<Multiset> members;  // lexicographic
};
using ImageGroups = std::vector<ImageGroup>;

/// All d-multisets grouped by image, groups sorted by image.
ImageGroups group_by_image(const DesignMatrix& A, std::size_t d, std::uint64_t cap);

}  // namespace thmc::markov::detail
