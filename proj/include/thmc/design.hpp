// Design matrix A^T: one column per word, holding its transition counts.
// Rows follow the lexicographic pair order ([12, 13, 21, 23, 31, 32] for
// S = 3). Duplicate columns are kept; point-set views deduplicate.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"
#include "thmc/exactla.hpp"
#include "thmc/words.hpp"

namespace thmc {

struct Column {
  Word word;
  TransitionVector counts;
};

class DesignMatrix {
 public:
  DesignMatrix() = default;
  DesignMatrix(int S, std::size_t T, std::uint64_t cap = kDefaultWordCap);

  int states() const noexcept { return S_; }
  std::size_t length() const noexcept { return T_; }
  std::size_t rows() const noexcept { return pair_count(S_); }
  std::size_t cols() const noexcept { return columns_.size(); }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& column(std::size_t k) const { return columns_[k]; }
  std::vector<std::string> row_labels() const { return pair_labels(S_); }

  /// Column position of a word (words are sorted); nullopt if absent.
  std::optional<std::size_t> index_of(const Word& w) const;

  /// Sorted, deduplicated column vectors.
  std::vector<TransitionVector> distinct_columns() const;

  /// A * u for a dense word-indexed vector u.
  TransitionVector multiply(const std::vector<std::int64_t>& u) const;

 private:
  int S_ = 3;
  std::size_t T_ = 0;
  std::vector<Column> columns_;
};

DesignMatrix build_design_matrix(int S, std::size_t T, std::uint64_t cap = kDefaultWordCap);

/// Distinct column vectors of A^T by dynamic programming over (last state,
/// counts); never enumerates words, so large T is cheap.
std::vector<TransitionVector> distinct_columns(int S, std::size_t T);

struct Marginal {
  TransitionVector b;
  std::int64_t n = 0;
};

/// b = A u, n = |W|. Throws std::invalid_argument on a shape mismatch.
Marginal sufficient_statistics(const WordMultiset& W, const DesignMatrix& A);

/// Membership in the integer lattice spanned by a column set (HNF based).
class LatticeOracle {
 public:
  explicit LatticeOracle(const std::vector<TransitionVector>& columns);
  bool contains(const TransitionVector& x) const;
  bool contains(const IntVector& x) const;
  std::size_t rank() const noexcept { return form_.rank; }

 private:
  exactla::HermiteForm form_;
};

bool lattice_membership(const TransitionVector& x, const DesignMatrix& A);

/// Membership in the cone over a column set. Answers by exact LP unless a
/// validated facet description has been installed.
class ConeOracle {
 public:
  explicit ConeOracle(std::vector<TransitionVector> columns);

  bool contains(const RationalVector& x) const;
  bool contains(const TransitionVector& x) const;
  /// LP answer regardless of any installed facets.
  bool contains_by_lp(const RationalVector& x) const;

  /// Installs facet normals c (c.x >= 0) as the membership test. Each normal
  /// is re-checked here (non-negative on every column, tight columns of
  /// rank dim-1); throws std::invalid_argument on failure. Completeness of
  /// the list is the caller's claim, backed by a hull comparison.
  void install_facets(const std::vector<IntVector>& normals);
  bool facets_installed() const noexcept { return !facets_.empty(); }

 private:
  std::vector<TransitionVector> columns_;
  std::vector<RationalVector> generators_;
  std::vector<IntVector> facets_;
};

bool cone_membership(const RationalVector& x, const DesignMatrix& A);

/// p_w = theta^{a_w} / sum_v theta^{a_v}, exact.
RationalVector model_probabilities(const RationalVector& theta, const DesignMatrix& A);

void write_csv(std::ostream& out, const DesignMatrix& A);
nlohmann::json to_json(const DesignMatrix& A);

}  // namespace thmc
