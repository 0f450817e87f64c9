// Double description method on a parametrized, pointed cone.

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <stdexcept>

#include "thmc/polytope.hpp"
#include "thmc/simd.hpp"

namespace thmc::polytope {

namespace {

thread_local DdStats g_stats;

using Bits = std::vector<std::uint64_t>;

struct Ray {
  IntVector z;
  Bits zero;  // processed constraints tight at this ray
};

bool subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) {
    if ((a[w] & ~b[w]) != 0) return false;
  }
  return true;
}

std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

// Inverse of a square integer matrix, columns returned as primitive integer
// vectors (each column is a positive multiple of the true inverse column).
std::vector<IntVector> inverse_columns(const std::vector<IntVector>& rows) {
  const std::size_t k = rows.size();
  std::vector<RationalVector> a(k, RationalVector(2 * k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = rows[i][j];
    a[i][k + i] = 1;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && a[p][c] == 0) ++p;
    if (p == k) throw std::logic_error("dd: singular initial basis");
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < k; ++j) {
    RationalVector col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = a[i][k + j];
    cols.push_back(primitive_integer(col));
  }
  return cols;
}

// Greedy choice of linearly independent rows.
std::vector<std::size_t> independent_rows(const std::vector<IntVector>& rows, std::size_t k) {
  std::vector<std::size_t> chosen;
  std::vector<RationalVector> basis;  // echelon rows
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < rows.size() && chosen.size() < k; ++i) {
    RationalVector v = to_rational_vector(rows[i]);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (v[pivots[b]] == 0) continue;
      const Rational f = v[pivots[b]] / basis[b][pivots[b]];
      for (std::size_t j = 0; j < k; ++j) v[j] -= f * basis[b][j];
    }
    std::size_t p = 0;
    while (p < k && v[p] == 0) ++p;
    if (p == k) continue;
    chosen.push_back(i);
    basis.push_back(std::move(v));
    pivots.push_back(p);
  }
  return chosen;
}

bool fits_kernel(const IntVector& v) {
  if (v.size() > simd::kLanes) return false;
  for (const auto& x : v) {
    if (!x.fits_slong_p() || x.get_si() > simd::kMaxMagnitude || x.get_si() < -simd::kMaxMagnitude) return false;
  }
  return true;
}

std::vector<std::int64_t> to_i64(const IntVector& v) {
  std::vector<std::int64_t> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_si();
  return r;
}

class DoubleDescription {
 public:
  DoubleDescription(std::vector<IntVector> constraints, std::size_t k, Adjacency adjacency)
      : b_(std::move(constraints)), k_(k), words_((b_.size() + 63) / 64), adjacency_(adjacency) {
    kernel_constraints_ = k_ <= simd::kLanes;
    for (const auto& row : b_) kernel_constraints_ = kernel_constraints_ && fits_kernel(row);
    if (kernel_constraints_) {
      for (const auto& row : b_) constraint_i64_.push_back(to_i64(row));
    }
  }

  std::vector<IntVector> run() {
    auto init = independent_rows(b_, k_);
    if (init.size() < k_) throw std::domain_error("cone is not pointed (has a lineality space)");
    std::vector<IntVector> basis_rows;
    for (auto i : init) basis_rows.push_back(b_[i]);
    auto cols = inverse_columns(basis_rows);
    for (std::size_t r = 0; r < k_; ++r) {
      Ray ray{cols[r], Bits(words_, 0)};
      for (std::size_t s = 0; s < k_; ++s) {
        if (s != r) set_bit(ray.zero, init[s]);
      }
      rays_.push_back(std::move(ray));
    }
    std::vector<bool> done(b_.size(), false);
    for (auto i : init) done[i] = true;
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < b_.size(); ++i) {
      if (!done[i]) remaining.push_back(i);
    }
    g_stats.max_intermediate_rays = rays_.size();
    while (!remaining.empty()) {
      // Insert the constraint cutting off the fewest current rays.
      std::size_t best = 0;
      std::size_t best_neg = std::numeric_limits<std::size_t>::max();
      pack_rays();
      for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
        const std::size_t neg = negative_count(remaining[idx]);
        if (neg < best_neg) {
          best_neg = neg;
          best = idx;
          if (neg == 0) break;
        }
      }
      const std::size_t c = remaining[best];
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
      insert(c);
      g_stats.max_intermediate_rays = std::max(g_stats.max_intermediate_rays, rays_.size());
    }
    std::vector<IntVector> out;
    for (auto& r : rays_) out.push_back(std::move(r.z));
    return out;
  }

 private:
  static void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

  void pack_rays() {
    kernel_rays_ = kernel_constraints_;
    if (!kernel_rays_) return;
    packed_ = simd::PackedRows(k_);
    for (const auto& r : rays_) {
      if (!fits_kernel(r.z)) {
        kernel_rays_ = false;
        return;
      }
      packed_.push_back(to_i64(r.z));
    }
  }

  // Values of constraint c on every current ray.
  void evaluate(std::size_t c, std::vector<std::int64_t>& out_small, std::vector<Integer>& out_big) {
    if (kernel_rays_) {
      packed_.evaluate(constraint_i64_[c], out_small);
      return;
    }
    out_big.resize(rays_.size());
    for (std::size_t r = 0; r < rays_.size(); ++r) out_big[r] = dot(b_[c], rays_[r].z);
  }

  std::size_t negative_count(std::size_t c) {
    if (kernel_rays_) {
      packed_.evaluate(constraint_i64_[c], scratch_);
      return simd::sign_counts(scratch_).negative;
    }
    std::size_t neg = 0;
    for (const auto& r : rays_) neg += dot(b_[c], r.z) < 0 ? 1 : 0;
    return neg;
  }

  bool adjacent(std::size_t p, std::size_t n, const Bits& common) {
    ++g_stats.adjacency_tests;
    if (popcount(common) + 2 < k_) return false;
    if (adjacency_ == Adjacency::Rank) {
      std::vector<IntVector> rows;
      for (std::size_t i = 0; i < b_.size(); ++i) {
        if ((common[i / 64] >> (i % 64)) & 1) rows.push_back(b_[i]);
      }
      return exactla::rank(rows) + 2 == k_;
    }
    for (std::size_t t = 0; t < rays_.size(); ++t) {
      if (t == p || t == n) continue;
      if (subset(common.data(), rays_[t].zero.data(), words_)) return false;
    }
    return true;
  }

  void insert(std::size_t c) {
    std::vector<std::int64_t> small;
    std::vector<Integer> big;
    evaluate(c, small, big);
    const bool use_small = kernel_rays_;
    auto sign = [&](std::size_t r) -> int {
      if (use_small) return (small[r] > 0) - (small[r] < 0);
      return sgn(big[r]);
    };
    auto value = [&](std::size_t r) -> Integer {
      if (use_small) return Integer(static_cast<long>(small[r]));
      return big[r];
    };
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      const int s = sign(r);
      if (s > 0) pos.push_back(r);
      if (s < 0) neg.push_back(r);
      if (s == 0) set_bit(rays_[r].zero, c);
    }
    if (neg.empty()) return;
    std::vector<Ray> fresh;
    Bits common(words_);
    for (auto p : pos) {
      for (auto n : neg) {
        for (std::size_t w = 0; w < words_; ++w) common[w] = rays_[p].zero[w] & rays_[n].zero[w];
        if (!adjacent(p, n, common)) continue;
        const Integer vp = value(p);
        const Integer vn = -value(n);
        IntVector z(k_);
        for (std::size_t j = 0; j < k_; ++j) z[j] = vp * rays_[n].z[j] + vn * rays_[p].z[j];
        Ray ray{primitive(std::move(z)), common};
        set_bit(ray.zero, c);
        fresh.push_back(std::move(ray));
      }
    }
    std::vector<Ray> kept;
    kept.reserve(rays_.size() - neg.size() + fresh.size());
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      if (sign(r) >= 0) kept.push_back(std::move(rays_[r]));
    }
    for (auto& f : fresh) kept.push_back(std::move(f));
    rays_ = std::move(kept);
  }

  std::vector<IntVector> b_;
  std::size_t k_;
  std::size_t words_;
  Adjacency adjacency_;
  std::vector<Ray> rays_;
  bool kernel_constraints_ = false;
  bool kernel_rays_ = false;
  std::vector<std::vector<std::int64_t>> constraint_i64_;
  simd::PackedRows packed_;
  std::vector<std::int64_t> scratch_;
};

}  // namespace

const DdStats& last_dd_stats() { return g_stats; }

std::vector<IntVector> extreme_rays(const std::vector<IntVector>& inequalities,
                                    const std::vector<IntVector>& equations, std::size_t dim,
                                    Adjacency adjacency) {
  g_stats = DdStats{};
  for (const auto& v : inequalities) {
    if (v.size() != dim) throw std::invalid_argument("extreme_rays: inequality has the wrong dimension");
  }
  for (const auto& v : equations) {
    if (v.size() != dim) throw std::invalid_argument("extreme_rays: equation has the wrong dimension");
  }
  // Parametrize the linear subspace E y = 0 by an integer basis N: y = N z.
  std::vector<IntVector> basis;
  if (equations.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim, 0);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
  } else {
    basis = exactla::nullspace(exactla::IntegerMatrix::from_rows(equations));
  }
  const std::size_t k = basis.size();
  if (k == 0) return {};
  std::set<IntVector> rows;
  for (const auto& a : inequalities) {
    IntVector b(k);
    for (std::size_t j = 0; j < k; ++j) b[j] = dot(a, basis[j]);
    b = primitive(std::move(b));
    if (std::any_of(b.begin(), b.end(), [](const Integer& x) { return x != 0; })) rows.insert(std::move(b));
  }
  std::vector<IntVector> b(rows.begin(), rows.end());
  g_stats.constraints = b.size();
  DoubleDescription dd(std::move(b), k, adjacency);
  auto zs = dd.run();
  std::vector<IntVector> out;
  out.reserve(zs.size());
  for (const auto& z : zs) {
    IntVector y(dim, 0);
    for (std::size_t j = 0; j < k; ++j) {
      if (z[j] == 0) continue;
      for (std::size_t i = 0; i < dim; ++i) y[i] += z[j] * basis[j][i];
    }
    y = primitive(std::move(y));
    for (const auto& a : inequalities) {
      if (dot(a, y) < 0) throw std::logic_error("extreme_rays: output violates an inequality");
    }
    for (const auto& e : equations) {
      if (dot(e, y) != 0) throw std::logic_error("extreme_rays: output violates an equation");
    }
    out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace thmc::polytope
