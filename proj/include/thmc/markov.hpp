// Moves (integer kernel vectors of the design matrix), fibers, bounded
// Markov-basis connectivity checks, greedy minimal bases and a truncated
// binomial Groebner completion.
//
// Tables and move parts are multisets of column indices of a DesignMatrix,
// stored as sorted index lists; a table of degree n lists n words.
//
// Connectivity is only ever checked on fibers of degree <= n_max. That is
// evidence about the toric ideal, not a proof that a set generates it.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "thmc/design.hpp"
#include "thmc/report.hpp"

namespace thmc::markov {

using Multiset = std::vector<std::uint32_t>;  // sorted column indices

/// z = e(plus) - e(minus). Canonical moves have disjoint parts and the
/// nonzero entry at the largest word index positive.
struct Move {
  Multiset plus;
  Multiset minus;

  std::size_t degree() const noexcept { return plus.size(); }
  /// Dense z over the m columns.
  std::vector<std::int64_t> dense(std::size_t m) const;
  Move negated() const { return {minus, plus}; }

  auto operator<=>(const Move&) const = default;
  bool operator==(const Move&) const = default;
};

/// Cancels common words, then fixes the sign. Throws std::invalid_argument
/// if the result is zero or the parts have different sizes.
Move canonical_move(Multiset plus, Multiset minus);

/// A z == 0 and the parts balance.
bool is_move(const Move& z, const DesignMatrix& A);

/// A times a multiset.
TransitionVector image(const Multiset& u, const DesignMatrix& A);

struct MoveOptions {
  /// Limit on the number of multisets of one degree.
  std::uint64_t multiset_cap = std::uint64_t{1} << 23;
  std::uint64_t move_cap = std::uint64_t{1} << 22;
  unsigned threads = 0;
};

/// All canonical moves of degree <= max_degree with disjoint parts: for each
/// degree, multisets grouped by image, differences of disjoint members.
/// Sorted by degree, then lexicographically. Throws CapExceeded.
std::vector<Move> enumerate_moves(const DesignMatrix& A, std::size_t max_degree, const MoveOptions& options = {});

struct Fiber {
  Marginal b;
  std::vector<Multiset> members;  // sorted
};

/// Every multiset of b.n words with image b.b, by backtracking. Empty when
/// the total is not n(T-1). Throws CapExceeded past `cap` members.
Fiber fiber_enumerate(const Marginal& b, const DesignMatrix& A, std::uint64_t cap = 100'000);

struct Disconnected {
  Marginal b;
  std::size_t fiber_size = 0;
  std::size_t components = 0;
  Multiset u;  // members of two different components
  Multiset v;
};

struct MarkovCheck {
  bool connected = true;
  std::optional<Disconnected> counterexample;
  std::size_t fibers_checked = 0;   // fibers with at least two members
  std::size_t largest_fiber = 0;
  std::int64_t n_max = 0;
  /// Moves of degree above n_max cannot act on these fibers.
  std::size_t inapplicable_moves = 0;
};

struct CheckOptions {
  std::uint64_t multiset_cap = std::uint64_t{1} << 23;
  unsigned threads = 0;
};

/// Connectivity of every fiber of degree 1..n_max under u -> u + z,
/// z in +-moves, u + z >= 0. Reports the first disconnected fiber in
/// (degree, marginal) order.
MarkovCheck is_markov_basis(const std::vector<Move>& moves, const DesignMatrix& A, std::int64_t n_max,
                            const CheckOptions& options = {});

/// Greedy inclusion-minimal subset of enumerate_moves(A, max_degree) that
/// still connects every fiber of degree <= n_max. Moves are tried for
/// removal in decreasing degree, ties lexicographically.
std::vector<Move> minimal_markov_basis(const DesignMatrix& A, std::size_t max_degree, std::int64_t n_max,
                                       const MoveOptions& options = {});

std::size_t max_degree(const std::vector<Move>& moves);

struct GroebnerProbe {
  std::size_t max_degree = 0;  // truncation degree
  std::size_t generators = 0;  // input moves
  std::size_t basis_size = 0;  // reduced truncated basis
  std::vector<std::size_t> degree_histogram;  // index = degree
  std::size_t basis_max_degree = 0;
  std::size_t pairs_processed = 0;
  std::size_t pairs_beyond_cap = 0;
  bool aborted = false;
  bool self_reduced = false;
  bool closed_under_pairs = false;
  std::vector<Move> basis;  // plus = leading term
  Report report;
};

struct GroebnerOptions {
  std::size_t pair_cap = 2'000'000;
  MoveOptions moves;
};

/// Binomial Buchberger completion from all moves of degree <= max_degree,
/// keeping only critical pairs whose lcm has degree <= max_degree. Term
/// order: graded reverse lexicographic, with words ordered so that the
/// first word is the largest variable.
GroebnerProbe groebner_degree_probe(const DesignMatrix& A, std::size_t max_degree,
                                    const GroebnerOptions& options = {});

/// Graded reverse lexicographic comparison of equal-degree monomials:
/// negative, zero or positive as a < b, a == b, a > b.
int grevlex_compare(const Multiset& a, const Multiset& b);

// Files: one move per line, "+w1 +w2 ... | -v1 -v2 ..." with repeats for
// multiplicity. '#' comments and blank lines are skipped.
void write_moves(std::ostream& out, const std::vector<Move>& moves, const DesignMatrix& A);
std::vector<Move> read_moves(std::istream& in, const DesignMatrix& A);
nlohmann::json moves_to_json(const std::vector<Move>& moves, const DesignMatrix& A);
nlohmann::json to_json(const MarkovCheck& check, const DesignMatrix& A);
nlohmann::json to_json(const GroebnerProbe& probe, const DesignMatrix& A);

}  // namespace thmc::markov
