// Self-loop-free words over S states, their transition counts and the
// multigraph view used for Eulerian trails and path decompositions.
//
// States are stored 0-based and printed 1-based ("12132").

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace thmc {

using State = std::uint8_t;

inline constexpr std::uint64_t kDefaultWordCap = std::uint64_t{1} << 20;

/// Raised when an enumeration would exceed its configured limit.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Number of ordered pairs (i, j), i != j.
constexpr std::size_t pair_count(int S) { return static_cast<std::size_t>(S) * (S - 1); }

/// Position of pair (i, j) (0-based states) in lexicographic pair order;
/// for S = 3 this is [12, 13, 21, 23, 31, 32].
constexpr std::size_t pair_index(int S, int i, int j) {
  return static_cast<std::size_t>(i * (S - 1) + (j < i ? j : j - 1));
}

struct StatePair {
  int from;
  int to;
};
StatePair pair_at(int S, std::size_t index);
/// "12", "13", ... in pair order.
std::vector<std::string> pair_labels(int S);

class Word {
 public:
  Word() = default;
  /// Throws std::invalid_argument on a self-loop or a label outside [0, S).
  Word(std::vector<State> states, int S);
  /// Parses 1-based digits, e.g. "12132".
  static Word parse(std::string_view text, int S);

  std::size_t length() const noexcept { return states_.size(); }
  State operator[](std::size_t i) const { return states_[i]; }
  const std::vector<State>& states() const noexcept { return states_; }
  State front() const { return states_.front(); }
  State back() const { return states_.back(); }

  std::string str() const;

  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<State> states_;
};

/// Counts indexed by ordered state pairs, flat in pair order.
class TransitionVector {
 public:
  TransitionVector() = default;
  explicit TransitionVector(int S) : S_(S), x_(pair_count(S), 0) {}
  TransitionVector(int S, std::vector<std::int64_t> counts);

  int states() const noexcept { return S_; }
  std::size_t size() const noexcept { return x_.size(); }
  std::int64_t& operator[](std::size_t k) { return x_[k]; }
  std::int64_t operator[](std::size_t k) const { return x_[k]; }
  std::int64_t& at(int i, int j) { return x_[pair_index(S_, i, j)]; }
  std::int64_t at(int i, int j) const { return x_[pair_index(S_, i, j)]; }
  const std::vector<std::int64_t>& counts() const noexcept { return x_; }

  std::int64_t total() const noexcept;
  std::int64_t out_degree(int i) const;  // x_{i+}
  std::int64_t in_degree(int i) const;   // x_{+i}

  TransitionVector& operator+=(const TransitionVector& rhs);
  TransitionVector& operator-=(const TransitionVector& rhs);
  TransitionVector scaled(std::int64_t factor) const;

  auto operator<=>(const TransitionVector&) const = default;
  bool operator==(const TransitionVector&) const = default;

 private:
  int S_ = 3;
  std::vector<std::int64_t> x_;
};

TransitionVector operator+(TransitionVector a, const TransitionVector& b);
TransitionVector operator-(TransitionVector a, const TransitionVector& b);
/// Swaps x_{ij} and x_{ji}.
TransitionVector transpose(const TransitionVector& x);

/// Multiset of words of one shape (S, T).
class WordMultiset {
 public:
  WordMultiset() = default;
  WordMultiset(int S, std::size_t T) : S_(S), T_(T) {}

  /// Throws std::invalid_argument on a length mismatch.
  void add(const Word& w, std::int64_t multiplicity = 1);
  int states() const noexcept { return S_; }
  std::size_t length() const noexcept { return T_; }
  std::int64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  const std::map<Word, std::int64_t>& entries() const noexcept { return entries_; }

  bool operator==(const WordMultiset&) const = default;

 private:
  int S_ = 3;
  std::size_t T_ = 0;
  std::map<Word, std::int64_t> entries_;
  std::int64_t total_ = 0;
};

/// S * (S-1)^(T-1), throwing CapExceeded past `cap`.
std::uint64_t word_count(int S, std::size_t T, std::uint64_t cap = kDefaultWordCap);
std::vector<Word> enumerate_words(int S, std::size_t T, std::uint64_t cap = kDefaultWordCap);

TransitionVector transition_counts(const Word& w, int S);
Word reverse(const Word& w);
TransitionVector state_graph(const WordMultiset& W);

bool has_eulerian_path(const TransitionVector& x);
/// Hierholzer on the support; the result has counts exactly x.
std::optional<Word> eulerian_path(const TransitionVector& x);

/// Splices `copies` traversals of the closed walk `cycle` (front == back,
/// e.g. 121) into w at the first state they share. The counts grow by
/// copies * counts(cycle). Throws std::invalid_argument if cycle is not
/// closed or shares no state with w.
Word insert_cycle(const Word& w, const Word& cycle, std::size_t copies = 1);

/// Exhaustive search for n words of length T whose counts sum to x. The
/// failure memo is kept across calls, so reuse one instance per (S, T). Not
/// safe for concurrent use; give each thread its own.
class PathDecomposer {
 public:
  PathDecomposer(int S, std::size_t T, std::size_t memo_limit = 4'000'000);

  /// Throws std::invalid_argument unless total(x) == n (T-1).
  std::optional<std::vector<Word>> decompose(const TransitionVector& x, std::int64_t n);

  std::size_t memo_size() const noexcept { return failed_.size(); }

 private:
  bool search(std::int64_t steps_left, std::int64_t paths_left);
  std::string key(std::int64_t steps_left, std::int64_t paths_left) const;
  bool prune(std::int64_t steps_left, std::int64_t paths_left) const;

  int S_;
  std::size_t T_;
  std::size_t memo_limit_;
  std::vector<std::int64_t> x_;
  std::vector<State> path_;  // concatenated states of the words built so far
  int current_ = -1;
  std::unordered_set<std::string> failed_;
};

std::optional<std::vector<Word>> decompose_into_paths(const TransitionVector& x, std::int64_t n,
                                                      std::size_t T);

/// One word per line; blank lines and '#' comments are skipped. Every word
/// must have the same length.
WordMultiset read_words(std::istream& in, int S);
void write_words(std::ostream& out, const WordMultiset& W);
void write_words(std::ostream& out, const std::vector<Word>& words);

}  // namespace thmc

template <>
struct std::hash<thmc::Word> {
  std::size_t operator()(const thmc::Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto s : w.states()) h = (h ^ s) * 1099511628211ull;
    return h;
  }
};
