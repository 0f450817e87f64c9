// Subcommands of the thmc tool. Each one writes its outputs under
// Common::out_dir, registers them in the manifest and returns an exit code.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "manifest.hpp"

namespace thmc::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kError = 3 };

struct Common {
  std::filesystem::path out_dir = "thmc-out";
  unsigned threads = 0;  // 0: THMC_THREADS, else hardware
  bool quiet = false;
};

struct GenMatrixArgs {
  int S = 3;
  std::size_t T = 4;
  std::string format = "csv";  // csv, json or both
  std::uint64_t word_cap = std::uint64_t{1} << 20;
};

struct StatsArgs {
  std::filesystem::path data;
  int S = 3;
};

struct FacetsArgs {
  std::string action;  // certify, hull, verify24, appendix, lemmas
  std::size_t T = 7;
  std::optional<int> r;
  int max_k = 2;
};

struct HullArgs {
  int S = 3;
  std::size_t T = 4;
  bool cone = false;
};

struct NormalityArgs {
  std::size_t T = 6;
  std::int64_t n_max = 2;
  bool witnesses = true;
  std::uint64_t cap = 50'000'000;
  bool s4 = false;
  std::int64_t s4_max_degree = 2;
};

struct MarkovArgs {
  int S = 3;
  std::size_t T = 4;
  std::size_t max_degree = 6;
  std::int64_t n_max = 3;
  std::optional<std::size_t> groebner_degree;
  std::uint64_t multiset_cap = std::uint64_t{1} << 23;
};

struct WalkArgs {
  std::filesystem::path data;
  int S = 3;
  std::optional<std::filesystem::path> moves_file;
  std::size_t move_degree = 2;
  std::uint64_t seed = 1;
  std::uint64_t steps = 100'000;
  std::uint64_t burn_in = 1'000;
  std::uint64_t thinning = 1;
  std::string statistic = "pearson";
  unsigned chains = 1;
  std::optional<std::filesystem::path> trace_csv;
};

int cmd_gen_matrix(const Common& c, const GenMatrixArgs& a, Manifest& m);
int cmd_stats(const Common& c, const StatsArgs& a, Manifest& m);
int cmd_facets(const Common& c, const FacetsArgs& a, Manifest& m);
int cmd_hull(const Common& c, const HullArgs& a, Manifest& m);
int cmd_normality(const Common& c, const NormalityArgs& a, Manifest& m);
int cmd_markov(const Common& c, const MarkovArgs& a, Manifest& m);
int cmd_walk(const Common& c, const WalkArgs& a, Manifest& m);
int cmd_test_fit(const Common& c, const WalkArgs& a, Manifest& m);
int cmd_lemmas(const Common& c, int max_k, Manifest& m);

}  // namespace thmc::cli
