#include <algorithm>
#include <atomic>
#include <unordered_set>

#include "thmc/normality.hpp"
#include "thmc/parallel.hpp"

namespace thmc::normality {

namespace {

constexpr int kS = 4;

// Counts pack into 5 bits each, 12 pairs.
std::uint64_t pack(const std::vector<std::int64_t>& x) {
  std::uint64_t k = 0;
  for (auto v : x) k = (k << 5) | static_cast<std::uint64_t>(v);
  return k;
}

// Keys of all sums of d columns.
std::unordered_set<std::uint64_t> sumset(const std::vector<TransitionVector>& cols, std::int64_t d) {
  std::vector<std::vector<std::int64_t>> layer{std::vector<std::int64_t>(pair_count(kS), 0)};
  std::unordered_set<std::uint64_t> keys{pack(layer.front())};
  for (std::int64_t step = 0; step < d; ++step) {
    std::vector<std::vector<std::int64_t>> next;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& base : layer) {
      for (const auto& c : cols) {
        auto s = base;
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += c[k];
        if (seen.insert(pack(s)).second) next.push_back(std::move(s));
      }
    }
    layer = std::move(next);
    keys = std::move(seen);
  }
  return keys;
}

// Valid on every column (|out_i - in_i| <= 1, total surplus <= 1), hence on
// degree-d points of the cone with bound d.
bool balance_ok(const std::vector<std::int64_t>& x, std::int64_t d) {
  std::int64_t surplus = 0;
  for (int i = 0; i < kS; ++i) {
    std::int64_t diff = 0;
    for (int j = 0; j < kS; ++j) {
      if (j == i) continue;
      diff += x[pair_index(kS, i, j)] - x[pair_index(kS, j, i)];
    }
    if (diff > d || diff < -d) return false;
    if (diff > 0) surplus += diff;
  }
  return surplus <= d;
}

// Cone membership by LP over the columns whose support lies inside supp(x);
// no other column can carry positive weight in a representation of x >= 0.
bool in_cone_by_support(const std::vector<TransitionVector>& cols, const RationalVector& x) {
  std::vector<RationalVector> gens;
  for (const auto& c : cols) {
    bool inside = true;
    for (std::size_t k = 0; k < x.size() && inside; ++k)
      if (c[k] > 0 && sgn(x[k]) == 0) inside = false;
    if (inside) gens.push_back(to_rational_vector(c.counts()));
  }
  if (gens.empty()) return std::all_of(x.begin(), x.end(), [](const Rational& v) { return sgn(v) == 0; });
  return exactla::nonnegative_combination(gens, x, false).has_value();
}

Word alternating(State a, State b, std::size_t T) {
  std::vector<State> s;
  for (std::size_t k = 0; k < T; ++k) s.push_back(k % 2 == 0 ? a : b);
  return Word(std::move(s), kS);
}

std::string vec_str(const std::vector<std::int64_t>& x) {
  std::string s = "[";
  for (std::size_t k = 0; k < x.size(); ++k) s += (k ? "," : "") + std::to_string(x[k]);
  return s + "]";
}

}  // namespace

S4ProbeResult s4_nonnormality_probe(std::size_t T, const S4ProbeOptions& options) {
  if (T < 3) throw std::invalid_argument("s4_nonnormality_probe: T must be at least 3");
  S4ProbeResult res;
  res.T = T;
  const auto cols = distinct_columns(kS, T);
  const LatticeOracle lattice(cols);
  const std::int64_t step = static_cast<std::int64_t>(T - 1);

  // The printed combination (a_{1212..} + a_{3434..}) / 2.
  {
    const auto a = transition_counts(alternating(0, 1, T), kS);
    const auto b = transition_counts(alternating(2, 3, T), kS);
    for (std::size_t k = 0; k < a.size(); ++k) {
      Rational v(a[k] + b[k], 2);
      v.canonicalize();
      res.half_sum.push_back(v);
    }
    res.half_sum_integral =
        std::all_of(res.half_sum.begin(), res.half_sum.end(), [](const Rational& v) { return v.get_den() == 1; });
    res.half_sum_in_cone = in_cone_by_support(cols, res.half_sum);
    std::string text = "[";
    for (std::size_t k = 0; k < res.half_sum.size(); ++k) text += (k ? "," : "") + to_string(res.half_sum[k]);
    text += "]";
    if (res.half_sum_integral) {
      std::vector<std::int64_t> xi;
      for (const auto& v : res.half_sum) xi.push_back(v.get_num().get_si());
      const TransitionVector x(kS, xi);
      res.half_sum_in_lattice = lattice.contains(x);
      if (x.total() % step == 0) res.half_sum_in_semigroup = decompose_into_paths(x, x.total() / step, T).has_value();
    }
    res.report.note("printed half-sum is integral", res.half_sum_integral, text);
    res.report.note("printed half-sum lies in the lattice", res.half_sum_in_lattice);
    res.report.add("printed half-sum lies in the cone", res.half_sum_in_cone);
    res.report.note("printed half-sum is not a sum of paths", !res.half_sum_in_semigroup);
  }

  const unsigned threads = resolve_threads(options.threads);
  for (std::int64_t d = 1; d <= options.max_degree && !res.witness; ++d) {
    const std::int64_t N = d * step;
    if (N >= 32) throw CapExceeded("s4_nonnormality_probe: d(T-1) must stay below 32");
    Integer total = 1;
    for (std::size_t k = 1; k < pair_count(kS); ++k) total = total * (N + static_cast<long>(k)) / static_cast<long>(k);
    if (total > options.cap) throw CapExceeded("s4_nonnormality_probe: candidate count exceeds the cap");

    // Cheap filters first, in lexicographic order.
    const auto semigroup = sumset(cols, d);
    std::vector<std::vector<std::int64_t>> candidates;
    std::vector<std::int64_t> x(pair_count(kS), 0);
    auto rec = [&](auto&& self, std::size_t k, std::int64_t left) -> void {
      if (k + 1 == x.size()) {
        x[k] = left;
        if (!balance_ok(x, d) || semigroup.count(pack(x)) != 0) return;
        if (!lattice.contains(TransitionVector(kS, x))) return;
        candidates.push_back(x);
        return;
      }
      for (std::int64_t v = 0; v <= left; ++v) {
        x[k] = v;
        self(self, k + 1, left - v);
      }
    };
    rec(rec, 0, N);

    // Cone tests in chunks so the first hit in order ends the search.
    constexpr std::size_t kChunk = 256;
    for (std::size_t start = 0; start < candidates.size() && !res.witness; start += kChunk) {
      const std::size_t len = std::min(kChunk, candidates.size() - start);
      std::vector<char> hit(len, 0);
      parallel_blocks(len, threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k)
          hit[k] = in_cone_by_support(cols, to_rational_vector(candidates[start + k])) ? 1 : 0;
      });
      for (std::size_t k = 0; k < len; ++k) {
        ++res.candidates_checked;
        if (hit[k]) {
          res.witness = TransitionVector(kS, candidates[start + k]);
          res.witness_degree = d;
          break;
        }
      }
    }
  }

  res.search_exhausted = !res.witness;
  if (res.witness) {
    const auto& w = *res.witness;
    const std::string detail = "x=" + vec_str(w.counts()) + " n=" + std::to_string(res.witness_degree);
    res.report.add("witness lies in the lattice", lattice.contains(w), detail);
    res.report.add("witness lies in the cone", in_cone_by_support(cols, to_rational_vector(w.counts())), detail);
    res.report.add("witness is not a sum of paths (exhaustive search)",
                   !decompose_into_paths(w, res.witness_degree, T).has_value(), detail);
  } else {
    res.report.add("bounded search exhausted", true,
                   "no witness up to degree " + std::to_string(options.max_degree) + " at T=" + std::to_string(T));
  }
  return res;
}

nlohmann::json to_json(const S4ProbeResult& result) {
  nlohmann::json j;
  j["S"] = "4";
  j["T"] = std::to_string(result.T);
  nlohmann::json half = nlohmann::json::array();
  for (const auto& v : result.half_sum) half.push_back(to_string(v));
  j["half_sum"] = half;
  j["half_sum_integral"] = result.half_sum_integral;
  j["half_sum_in_lattice"] = result.half_sum_in_lattice;
  j["half_sum_in_cone"] = result.half_sum_in_cone;
  j["half_sum_in_semigroup"] = result.half_sum_in_semigroup;
  if (result.witness) {
    nlohmann::json w = nlohmann::json::array();
    for (auto v : result.witness->counts()) w.push_back(std::to_string(v));
    j["witness"] = {{"x", w}, {"n", std::to_string(result.witness_degree)}};
  } else {
    j["witness"] = nullptr;
  }
  j["candidates_checked"] = std::to_string(result.candidates_checked);
  j["search_exhausted"] = result.search_exhausted;
  j["pass"] = result.report.all_pass();
  j["report"] = result.report.to_json();
  return j;
}

}  // namespace thmc::normality
