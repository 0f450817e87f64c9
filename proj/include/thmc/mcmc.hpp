// Conditional goodness-of-fit testing for time homogeneity: a random walk
// on a fiber driven by a move set, a test statistic, and a Monte Carlo
// p-value.
//
// Tables are dense count vectors indexed by the columns of a DesignMatrix.
// States and moves stay exact integers; only statistic values are doubles.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "thmc/design.hpp"
#include "thmc/markov.hpp"

namespace thmc::mcmc {

using Table = std::vector<std::int64_t>;

struct WalkConfig {
  std::uint64_t seed = 1;
  std::uint64_t steps = 10'000;
  std::uint64_t burn_in = 1'000;
  std::uint64_t thinning = 1;

  /// Throws std::invalid_argument unless steps > burn_in and thinning > 0.
  void validate() const;
  /// (steps - burn_in) / thinning.
  std::uint64_t sample_count() const;
};

/// Dense table of a word multiset. Throws std::invalid_argument on a shape
/// mismatch.
Table to_table(const WordMultiset& W, const DesignMatrix& A);
Table to_table(const markov::Multiset& u, const DesignMatrix& A);
markov::Multiset to_multiset(const Table& u);

/// A * u.
TransitionVector marginal(const Table& u, const DesignMatrix& A);

/// Expected counts N p_w under the time-homogeneous fit: p_ij = n_ij / n_i+
/// from the pooled transitions, p_w proportional to the product over the
/// transitions of w, normalized over all words. Constant on a fiber.
std::vector<double> expected_counts(const Table& u, const DesignMatrix& A);

/// Pearson X^2 over words with positive expectation. Throws
/// std::invalid_argument on empty data.
double chi_square_statistic(const Table& u, const DesignMatrix& A);
/// Likelihood ratio G^2 = 2 sum u_w log(u_w / e_w).
double g2_statistic(const Table& u, const DesignMatrix& A);

/// Statistic of a table given the fiber's expected counts.
using Statistic = std::function<double(const Table& u, const std::vector<double>& expected)>;
double pearson(const Table& u, const std::vector<double>& expected);
double g2(const Table& u, const std::vector<double>& expected);
/// "pearson" or "g2"; throws std::invalid_argument otherwise.
Statistic statistic_by_name(const std::string& name);

/// Symmetric walk: each step draws a move uniformly from +-moves and takes
/// it when the result stays non-negative.
class FiberWalk {
 public:
  /// Throws std::invalid_argument on an empty move set, a negative entry or
  /// a move index outside the table.
  FiberWalk(Table u0, std::vector<markov::Move> moves, std::uint64_t seed);

  /// True if the proposal was accepted.
  bool step();
  const Table& state() const noexcept { return u_; }
  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t accepted() const noexcept { return accepted_; }

 private:
  Table u_;
  std::vector<markov::Move> moves_;
  std::mt19937_64 rng_;
  std::uint64_t steps_ = 0;
  std::uint64_t accepted_ = 0;
};

/// Runs cfg.steps steps and calls emit(step, table) after steps
/// burn_in + k * thinning, k = 1 .. sample_count().
void walk(const Table& u0, const std::vector<markov::Move>& moves, const WalkConfig& cfg,
          const std::function<void(std::uint64_t, const Table&)>& emit);

struct TestOptions {
  std::string statistic = "pearson";
  /// Independent chains with seeds seed, seed + 1, ...; samples are pooled.
  unsigned chains = 1;
  unsigned threads = 0;
  bool keep_trace = false;
  /// Sampled values within this relative distance of the observed one
  /// count as ties (i.e. as at least as extreme).
  double tie_tolerance = 1e-9;
};

struct TestResult {
  std::string statistic;
  double observed = 0;
  std::uint64_t samples = 0;
  std::uint64_t at_least = 0;  // sampled values >= observed
  double p_value = 1;          // (1 + at_least) / (1 + samples)
  double std_error = 0;        // sqrt(p (1 - p) / samples), i.i.d. approximation
  double mean = 0;
  double min = 0;
  double max = 0;
  double acceptance = 0;
  unsigned chains = 1;
  WalkConfig config;
  /// Per chain, in chain order, when keep_trace is set.
  std::vector<std::vector<double>> trace;
};

TestResult exact_test(const Table& u_obs, const DesignMatrix& A, const std::vector<markov::Move>& moves,
                      const WalkConfig& cfg, const TestOptions& options = {});

nlohmann::json to_json(const TestResult& r);
/// "chain,sample,statistic" rows.
void write_trace_csv(std::ostream& out, const TestResult& r);

}  // namespace thmc::mcmc
