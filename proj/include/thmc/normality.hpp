// Saturation of the semigroup N A^T (integer points of Z A^T inside the cone
// over the columns), exhaustive normality checks by path decomposition, the
// loop-appending induction that lifts witnesses from T-6 to T, and the S = 4
// probe.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "thmc/design.hpp"
#include "thmc/exactla.hpp"
#include "thmc/report.hpp"
#include "thmc/words.hpp"

namespace thmc::normality {

struct SaturationPoint {
  TransitionVector x;
  std::int64_t degree = 0;  // sum(x) / (T-1)
  bool in_lattice = false;
  bool in_cone = false;
  /// Unset until a decomposition has been attempted.
  std::optional<bool> in_semigroup;
  std::optional<std::vector<Word>> witness;
};

struct SaturationOptions {
  /// Limit on the number of candidate vectors sum(x) = n(T-1), x >= 0.
  std::uint64_t cap = 50'000'000;
  unsigned threads = 0;
};

/// Lattice and cone membership for the columns of A^T. The cone test uses
/// the facets of the conic hull, computed once.
class SaturationOracle {
 public:
  SaturationOracle(int S, std::size_t T);

  int states() const noexcept { return S_; }
  std::size_t length() const noexcept { return T_; }
  const std::vector<TransitionVector>& columns() const noexcept { return columns_; }
  std::size_t facet_count() const noexcept { return facets_.size(); }

  bool in_lattice(const TransitionVector& x) const;
  bool in_cone(const TransitionVector& x) const;
  /// Degree when sum(x) is a multiple of T-1, else nullopt.
  std::optional<std::int64_t> degree(const TransitionVector& x) const;

 private:
  int S_;
  std::size_t T_;
  std::vector<TransitionVector> columns_;
  LatticeOracle lattice_;
  std::vector<std::vector<std::int64_t>> facets_;  // c . x >= 0
  std::vector<std::vector<std::int64_t>> equations_;
};

/// Every integer x >= 0 with sum(x) = n(T-1) in the lattice and the cone,
/// sorted lexicographically. S = 3 only. Throws CapExceeded past the cap.
std::vector<SaturationPoint> saturation_points(std::size_t T, std::int64_t n,
                                               const SaturationOptions& options = {});

struct NormalityFailure {
  TransitionVector x;
  std::int64_t degree = 0;
};

struct NormalityResult {
  std::size_t T = 0;
  std::int64_t n_max = 0;
  std::size_t points_checked = 0;
  std::vector<std::size_t> points_per_degree;  // index n-1
  std::vector<NormalityFailure> failures;
  /// Filled when witnesses were requested: every checked point with its words.
  std::vector<SaturationPoint> witnesses;
  std::string witnesses_file;
  Report report;
};

struct NormalityOptions {
  SaturationOptions saturation;
  bool keep_witnesses = false;
};

/// Decomposes every saturation point of degree 1..n_max into paths.
NormalityResult check_normality(std::size_t T, std::int64_t n_max, const NormalityOptions& options = {});
/// {T, n_max, points_checked, failures, witnesses_file} plus per-degree counts.
nlohmann::json to_json(const NormalityResult& result);
/// "# x=[..] n=.." header then the words, per point.
void write_witnesses(std::ostream& out, const NormalityResult& result);

/// Raised when no set of paths is found for a point claimed to be saturated.
class DecompositionNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One lifting step of the induction: at length T the loop block of the
/// given loop word was peeled off (3n copies of a two-loop, 2n of a
/// three-loop) and re-appended to each word of the T-6 witness.
struct InductionStep {
  std::size_t T = 0;
  std::size_t loop = 0;  // index into facets::loop_words()
  Rational alpha;        // maximal Minkowski coefficient found by LP
  std::size_t appended_end = 0;
  std::size_t appended_front = 0;
  std::size_t rotated = 0;
};

struct InductionOptions {
  /// Lengths below this are solved by direct search.
  std::size_t base_T = 9;
};

/// n words of length T with counts x, built by peeling loop blocks while a
/// Minkowski coefficient clears its threshold and searching directly below.
/// S = 3. Throws DecompositionNotFound when x has no decomposition.
std::vector<Word> witness_by_induction(const TransitionVector& x, std::size_t T,
                                       std::vector<InductionStep>* trace = nullptr,
                                       const InductionOptions& options = {});
std::vector<Word> witness_by_induction(const SaturationPoint& p, std::size_t T,
                                       std::vector<InductionStep>* trace = nullptr,
                                       const InductionOptions& options = {});

/// Appends 6 transitions of `loop` (a two-loop iji or a three-cycle ijki) to
/// w: at the end if possible, else at the front, else after rotating the
/// closed word w. Returns the placement used: "end", "front" or "rotated".
std::string append_loop_block(Word& w, const Word& loop);

/// Counts of a word list as one vector.
TransitionVector total_counts(const std::vector<Word>& words, int S);
/// Each word has length T and no self-loop, and the counts sum to x.
bool is_witness(const std::vector<Word>& words, const TransitionVector& x, std::size_t T);

struct S4ProbeOptions {
  std::int64_t max_degree = 2;
  std::uint64_t cap = 50'000'000;
  unsigned threads = 0;
};

struct S4ProbeResult {
  std::size_t T = 0;
  /// (a_{1212..} + a_{3434..}) / 2 with words of length T.
  RationalVector half_sum;
  bool half_sum_integral = false;
  bool half_sum_in_lattice = false;
  bool half_sum_in_cone = false;
  bool half_sum_in_semigroup = false;
  std::optional<TransitionVector> witness;  // lattice and cone, not semigroup
  std::int64_t witness_degree = 0;
  std::size_t candidates_checked = 0;
  bool search_exhausted = false;
  Report report;
};

/// Evaluates the printed S = 4 combination and searches degrees
/// 1..max_degree in lexicographic order for a point of the saturation that
/// is not a sum of columns.
S4ProbeResult s4_nonnormality_probe(std::size_t T, const S4ProbeOptions& options = {});
nlohmann::json to_json(const S4ProbeResult& result);

}  // namespace thmc::normality
