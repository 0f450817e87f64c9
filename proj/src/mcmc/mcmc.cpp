#include "thmc/mcmc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "thmc/parallel.hpp"

namespace thmc::mcmc {

void WalkConfig::validate() const {
  if (steps == 0) throw std::invalid_argument("walk: steps must be positive");
  if (thinning == 0) throw std::invalid_argument("walk: thinning must be positive");
  if (steps <= burn_in) throw std::invalid_argument("walk: steps must exceed burn_in");
}

std::uint64_t WalkConfig::sample_count() const {
  validate();
  return (steps - burn_in) / thinning;
}

Table to_table(const WordMultiset& W, const DesignMatrix& A) {
  if (W.states() != A.states() || (!W.empty() && W.length() != A.length())) {
    throw std::invalid_argument("to_table: word shape does not match the design matrix");
  }
  Table u(A.cols(), 0);
  for (const auto& [w, k] : W.entries()) {
    const auto i = A.index_of(w);
    if (!i) throw std::invalid_argument("to_table: " + w.str() + " is not a column");
    u[*i] += k;
  }
  return u;
}

Table to_table(const markov::Multiset& u, const DesignMatrix& A) {
  Table t(A.cols(), 0);
  for (auto k : u) ++t.at(k);
  return t;
}

markov::Multiset to_multiset(const Table& u) {
  markov::Multiset out;
  for (std::size_t k = 0; k < u.size(); ++k)
    for (std::int64_t c = 0; c < u[k]; ++c) out.push_back(static_cast<std::uint32_t>(k));
  return out;
}

TransitionVector marginal(const Table& u, const DesignMatrix& A) { return A.multiply(u); }

std::vector<double> expected_counts(const Table& u, const DesignMatrix& A) {
  if (u.size() != A.cols()) throw std::invalid_argument("expected_counts: table size mismatch");
  std::int64_t N = 0;
  for (auto v : u) {
    if (v < 0) throw std::invalid_argument("expected_counts: negative count");
    N += v;
  }
  if (N == 0) throw std::invalid_argument("expected_counts: empty data");
  const int S = A.states();
  const auto b = marginal(u, A);
  std::vector<double> logp(b.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < b.size(); ++r) {
    if (b[r] == 0) continue;
    const auto [i, j] = pair_at(S, r);
    (void)j;
    logp[r] = std::log(static_cast<double>(b[r]) / static_cast<double>(b.out_degree(i)));
  }
  // Log-weights, then normalize with the max subtracted.
  std::vector<double> lw(A.cols(), -std::numeric_limits<double>::infinity());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < A.cols(); ++k) {
    const auto& c = A.column(k).counts;
    double s = 0;
    bool possible = true;
    for (std::size_t r = 0; r < c.size() && possible; ++r) {
      if (c[r] == 0) continue;
      if (b[r] == 0) possible = false;
      else s += static_cast<double>(c[r]) * logp[r];
    }
    if (!possible) continue;
    lw[k] = s;
    top = std::max(top, s);
  }
  double Z = 0;
  for (auto v : lw)
    if (std::isfinite(v)) Z += std::exp(v - top);
  std::vector<double> e(A.cols(), 0);
  for (std::size_t k = 0; k < A.cols(); ++k)
    if (std::isfinite(lw[k])) e[k] = static_cast<double>(N) * std::exp(lw[k] - top) / Z;
  return e;
}

double pearson(const Table& u, const std::vector<double>& expected) {
  double x = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (expected[k] <= 0) continue;
    const double d = static_cast<double>(u[k]) - expected[k];
    x += d * d / expected[k];
  }
  return x;
}

double g2(const Table& u, const std::vector<double>& expected) {
  double g = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] == 0 || expected[k] <= 0) continue;
    const double v = static_cast<double>(u[k]);
    g += v * std::log(v / expected[k]);
  }
  // Rounding can leave a tiny negative value at a perfect fit.
  return std::max(0.0, 2 * g);
}

double chi_square_statistic(const Table& u, const DesignMatrix& A) { return pearson(u, expected_counts(u, A)); }

double g2_statistic(const Table& u, const DesignMatrix& A) { return g2(u, expected_counts(u, A)); }

Statistic statistic_by_name(const std::string& name) {
  if (name == "pearson") return pearson;
  if (name == "g2") return g2;
  throw std::invalid_argument("unknown statistic '" + name + "' (expected pearson or g2)");
}

FiberWalk::FiberWalk(Table u0, std::vector<markov::Move> moves, std::uint64_t seed)
    : u_(std::move(u0)), moves_(std::move(moves)), rng_(seed) {
  if (moves_.empty()) throw std::invalid_argument("walk: empty move set");
  for (auto v : u_)
    if (v < 0) throw std::invalid_argument("walk: negative starting table");
  for (const auto& z : moves_) {
    if (z.plus.size() != z.minus.size()) throw std::invalid_argument("walk: unbalanced move");
    for (auto k : z.plus)
      if (k >= u_.size()) throw std::invalid_argument("walk: move index outside the table");
    for (auto k : z.minus)
      if (k >= u_.size()) throw std::invalid_argument("walk: move index outside the table");
  }
}

bool FiberWalk::step() {
  ++steps_;
  // Uniform draw from [0, 2m) by rejection, so the stream depends only on
  // the standardized mt19937_64 output.
  const std::uint64_t range = 2 * moves_.size();
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t r;
  do r = rng_();
  while (r >= limit);
  r %= range;
  const auto& z = moves_[r / 2];
  const auto& add = (r % 2 == 0) ? z.plus : z.minus;
  const auto& sub = (r % 2 == 0) ? z.minus : z.plus;
  // Parts are sorted, so runs give multiplicities.
  for (std::size_t i = 0; i < sub.size();) {
    std::size_t j = i;
    while (j < sub.size() && sub[j] == sub[i]) ++j;
    if (u_[sub[i]] < static_cast<std::int64_t>(j - i)) return false;
    i = j;
  }
  for (auto k : sub) --u_[k];
  for (auto k : add) ++u_[k];
  ++accepted_;
  return true;
}

void walk(const Table& u0, const std::vector<markov::Move>& moves, const WalkConfig& cfg,
          const std::function<void(std::uint64_t, const Table&)>& emit) {
  cfg.validate();
  FiberWalk w(u0, moves, cfg.seed);
  for (std::uint64_t t = 1; t <= cfg.steps; ++t) {
    w.step();
    if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.thinning == 0) emit(t, w.state());
  }
}

namespace {

struct ChainSummary {
  std::uint64_t samples = 0;
  std::uint64_t at_least = 0;
  double sum = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::uint64_t accepted = 0;
  std::vector<double> trace;
};

}  // namespace

TestResult exact_test(const Table& u_obs, const DesignMatrix& A, const std::vector<markov::Move>& moves,
                      const WalkConfig& cfg, const TestOptions& options) {
  cfg.validate();
  if (options.chains == 0) throw std::invalid_argument("exact_test: chains must be positive");
  const auto stat = statistic_by_name(options.statistic);
  const auto expected = expected_counts(u_obs, A);
  const double observed = stat(u_obs, expected);
  const double threshold = observed - options.tie_tolerance * std::max(1.0, std::abs(observed));

#ifndef NDEBUG
  const auto b0 = marginal(u_obs, A);
#endif
  std::vector<ChainSummary> chains(options.chains);
  parallel_blocks(options.chains, resolve_threads(options.threads), [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c) {
      WalkConfig own = cfg;
      own.seed = cfg.seed + c;
      auto& s = chains[c];
      FiberWalk w(u_obs, moves, own.seed);
      for (std::uint64_t t = 1; t <= own.steps; ++t) {
        s.accepted += w.step();
#ifndef NDEBUG
        assert(marginal(w.state(), A) == b0);
#endif
        if (t <= own.burn_in || (t - own.burn_in) % own.thinning != 0) continue;
        const double v = stat(w.state(), expected);
        ++s.samples;
        s.at_least += v >= threshold;
        s.sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
        if (options.keep_trace) s.trace.push_back(v);
      }
    }
  });

  TestResult r;
  r.statistic = options.statistic;
  r.observed = observed;
  r.chains = options.chains;
  r.config = cfg;
  r.min = std::numeric_limits<double>::infinity();
  r.max = -std::numeric_limits<double>::infinity();
  double sum = 0;
  std::uint64_t accepted = 0;
  for (auto& s : chains) {
    r.samples += s.samples;
    r.at_least += s.at_least;
    sum += s.sum;
    r.min = std::min(r.min, s.min);
    r.max = std::max(r.max, s.max);
    accepted += s.accepted;
    if (options.keep_trace) r.trace.push_back(std::move(s.trace));
  }
  r.p_value = static_cast<double>(1 + r.at_least) / static_cast<double>(1 + r.samples);
  if (r.samples > 0) {
    r.mean = sum / static_cast<double>(r.samples);
    r.std_error = std::sqrt(r.p_value * (1 - r.p_value) / static_cast<double>(r.samples));
  } else {
    r.min = r.max = observed;
  }
  r.acceptance = static_cast<double>(accepted) / static_cast<double>(cfg.steps * options.chains);
  return r;
}

nlohmann::json to_json(const TestResult& r) {
  return {{"statistic", r.statistic},
          {"observed", r.observed},
          {"samples", r.samples},
          {"at_least_observed", r.at_least},
          {"p_value", r.p_value},
          {"std_error", r.std_error},
          {"std_error_note", "i.i.d. approximation; ignores autocorrelation"},
          {"sampled", {{"mean", r.mean}, {"min", r.min}, {"max", r.max}}},
          {"acceptance_rate", r.acceptance},
          {"chains", r.chains},
          {"config",
           {{"seed", r.config.seed},
            {"steps", r.config.steps},
            {"burn_in", r.config.burn_in},
            {"thinning", r.config.thinning}}}};
}

void write_trace_csv(std::ostream& out, const TestResult& r) {
  out << "chain,sample,statistic\n";
  const auto old = out.precision(17);
  for (std::size_t c = 0; c < r.trace.size(); ++c)
    for (std::size_t k = 0; k < r.trace[c].size(); ++k) out << c << ',' << k + 1 << ',' << r.trace[c][k] << '\n';
  out.precision(old);
}

}  // namespace thmc::mcmc
