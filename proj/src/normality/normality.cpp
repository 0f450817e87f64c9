#include "thmc/normality.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>

#include "thmc/facets.hpp"
#include "thmc/parallel.hpp"
#include "thmc/polytope.hpp"

namespace thmc::normality {

namespace {

std::vector<std::int64_t> to_int64(const IntVector& v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.fits_slong_p()) throw std::overflow_error("facet coefficient exceeds 64 bits");
    out.push_back(e.get_si());
  }
  return out;
}

std::int64_t dot64(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Number of x >= 0 in Z^parts with sum N, saturating at cap + 1.
std::uint64_t composition_count(std::int64_t N, std::size_t parts, std::uint64_t cap) {
  // C(N + parts - 1, parts - 1)
  Integer c = 1;
  for (std::size_t k = 1; k < parts; ++k) {
    c *= N + static_cast<std::int64_t>(k);
    c /= static_cast<unsigned long>(k);
  }
  return c > cap ? cap + 1 : c.get_ui();
}

// Calls visit(x) for every x >= 0 with sum N and x[0] == first, in
// lexicographic order.
template <typename Visit>
void for_each_composition(std::int64_t N, std::size_t parts, std::int64_t first, Visit&& visit) {
  std::vector<std::int64_t> x(parts, 0);
  x[0] = first;
  auto rec = [&](auto&& self, std::size_t k, std::int64_t left) -> void {
    if (k + 1 == parts) {
      x[k] = left;
      visit(x);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      x[k] = v;
      self(self, k + 1, left - v);
    }
  };
  if (parts == 1) {
    if (first == N) visit(x);
    return;
  }
  rec(rec, 1, N - first);
}

const polytope::VPolyhedron& q_vertices(int r) {
  static std::mutex mu;
  static std::map<int, polytope::VPolyhedron> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(r);
  if (it == cache.end()) it = cache.emplace(r, polytope::vertex_enumeration(facets::q_polyhedron(r))).first;
  return it->second;
}

const SaturationOracle& oracle_for(std::size_t T) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<SaturationOracle>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[T];
  if (!slot) slot = std::make_unique<SaturationOracle>(3, T);
  return *slot;
}

std::string vec_str(const std::vector<std::int64_t>& x) {
  std::string s = "[";
  for (std::size_t k = 0; k < x.size(); ++k) s += (k ? "," : "") + std::to_string(x[k]);
  return s + "]";
}

nlohmann::json counts_json(const TransitionVector& x) {
  nlohmann::json j = nlohmann::json::array();
  for (auto v : x.counts()) j.push_back(std::to_string(v));
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// Oracle

SaturationOracle::SaturationOracle(int S, std::size_t T)
    : S_(S), T_(T), columns_(distinct_columns(S, T)), lattice_(columns_) {
  std::vector<RationalVector> gens;
  gens.reserve(columns_.size());
  for (const auto& c : columns_) gens.push_back(to_rational_vector(c.counts()));
  const auto h = polytope::conic_hull(gens);
  for (const auto& f : h.inequalities) facets_.push_back(to_int64(f.normal));
  for (const auto& e : h.equations) equations_.push_back(to_int64(e.normal));
}

bool SaturationOracle::in_lattice(const TransitionVector& x) const { return lattice_.contains(x); }

bool SaturationOracle::in_cone(const TransitionVector& x) const {
  for (const auto& e : equations_)
    if (dot64(e, x.counts()) != 0) return false;
  for (const auto& f : facets_)
    if (dot64(f, x.counts()) < 0) return false;
  return true;
}

std::optional<std::int64_t> SaturationOracle::degree(const TransitionVector& x) const {
  const auto t = x.total();
  const auto step = static_cast<std::int64_t>(T_ - 1);
  if (step == 0 || t % step != 0) return std::nullopt;
  return t / step;
}

// ---------------------------------------------------------------------------
// Saturation

std::vector<SaturationPoint> saturation_points(std::size_t T, std::int64_t n, const SaturationOptions& options) {
  if (T < 2) throw std::invalid_argument("saturation_points: T must be at least 2");
  if (n < 1) throw std::invalid_argument("saturation_points: n must be positive");
  const std::size_t dim = pair_count(3);
  const std::int64_t N = n * static_cast<std::int64_t>(T - 1);
  if (composition_count(N, dim, options.cap) > options.cap) {
    throw CapExceeded("saturation_points: " + std::to_string(N) + " into 6 parts exceeds the cap");
  }
  const SaturationOracle& oracle = oracle_for(T);

  const auto firsts = static_cast<std::size_t>(N + 1);
  std::vector<std::vector<SaturationPoint>> per(firsts);
  parallel_blocks(firsts, resolve_threads(options.threads), [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t f = b; f < e; ++f) {
      for_each_composition(N, dim, static_cast<std::int64_t>(f), [&](const std::vector<std::int64_t>& x) {
        TransitionVector tv(3, x);
        if (!oracle.in_cone(tv) || !oracle.in_lattice(tv)) return;
        SaturationPoint p;
        p.x = std::move(tv);
        p.degree = n;
        p.in_lattice = true;
        p.in_cone = true;
        per[f].push_back(std::move(p));
      });
    }
  });
  std::vector<SaturationPoint> out;
  for (auto& v : per)
    for (auto& p : v) out.push_back(std::move(p));
  return out;
}

// ---------------------------------------------------------------------------
// Normality

NormalityResult check_normality(std::size_t T, std::int64_t n_max, const NormalityOptions& options) {
  NormalityResult res;
  res.T = T;
  res.n_max = n_max;
  const unsigned threads = resolve_threads(options.saturation.threads);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto points = saturation_points(T, n, options.saturation);
    const std::size_t blocks = block_count(points.size(), threads);
    std::vector<std::vector<std::size_t>> failed(blocks);
    parallel_blocks(points.size(), threads, [&](std::size_t blk, std::size_t b, std::size_t e) {
      PathDecomposer dec(3, T);
      for (std::size_t k = b; k < e; ++k) {
        auto words = dec.decompose(points[k].x, n);
        points[k].in_semigroup = words.has_value() && is_witness(*words, points[k].x, T);
        if (!*points[k].in_semigroup) failed[blk].push_back(k);
        if (words && options.keep_witnesses) points[k].witness = std::move(words);
      }
    });
    std::size_t bad = 0;
    for (const auto& f : failed) {
      for (auto k : f) res.failures.push_back({points[k].x, n});
      bad += f.size();
    }
    res.points_checked += points.size();
    res.points_per_degree.push_back(points.size());
    res.report.add("degree " + std::to_string(n) + " saturation decomposes", bad == 0,
                   std::to_string(points.size()) + " points, " + std::to_string(bad) + " without paths");
    if (options.keep_witnesses)
      for (auto& p : points) res.witnesses.push_back(std::move(p));
  }
  return res;
}

nlohmann::json to_json(const NormalityResult& result) {
  nlohmann::json j;
  j["T"] = std::to_string(result.T);
  j["n_max"] = std::to_string(result.n_max);
  j["points_checked"] = std::to_string(result.points_checked);
  nlohmann::json per = nlohmann::json::array();
  for (auto c : result.points_per_degree) per.push_back(std::to_string(c));
  j["points_per_degree"] = per;
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : result.failures) fails.push_back({{"x", counts_json(f.x)}, {"n", std::to_string(f.degree)}});
  j["failures"] = fails;
  j["witnesses_file"] = result.witnesses_file.empty() ? nlohmann::json(nullptr) : nlohmann::json(result.witnesses_file);
  j["pass"] = result.failures.empty() && result.report.all_pass();
  j["report"] = result.report.to_json();
  return j;
}

void write_witnesses(std::ostream& out, const NormalityResult& result) {
  for (const auto& p : result.witnesses) {
    out << "# x=" << vec_str(p.x.counts()) << " n=" << p.degree << "\n";
    if (p.witness) write_words(out, *p.witness);
  }
}

// ---------------------------------------------------------------------------
// Witness helpers

TransitionVector total_counts(const std::vector<Word>& words, int S) {
  TransitionVector x(S);
  for (const auto& w : words) x += transition_counts(w, S);
  return x;
}

bool is_witness(const std::vector<Word>& words, const TransitionVector& x, std::size_t T) {
  for (const auto& w : words) {
    if (w.length() != T) return false;
    for (std::size_t k = 0; k + 1 < w.length(); ++k)
      if (w[k] == w[k + 1] || w[k] >= x.states()) return false;
  }
  if (T > 1 && static_cast<std::int64_t>(words.size()) * static_cast<std::int64_t>(T - 1) != x.total()) return false;
  return total_counts(words, x.states()) == x;
}

std::string append_loop_block(Word& w, const Word& loop) {
  if (loop.length() < 3 || loop.front() != loop.back()) {
    throw std::invalid_argument("append_loop_block: loop must be closed");
  }
  const std::vector<State> cyc(loop.states().begin(), loop.states().end() - 1);
  const std::size_t m = cyc.size();
  if (6 % m != 0) throw std::invalid_argument("append_loop_block: loop length must divide 6");
  const int states = 1 + static_cast<int>(std::max(*std::max_element(w.states().begin(), w.states().end()),
                                                    *std::max_element(cyc.begin(), cyc.end())));
  auto pos = [&](State s) { return std::find(cyc.begin(), cyc.end(), s); };

  if (auto it = pos(w.back()); it != cyc.end()) {
    const auto p = static_cast<std::size_t>(it - cyc.begin());
    auto s = w.states();
    for (std::size_t t = 1; t <= 6; ++t) s.push_back(cyc[(p + t) % m]);
    w = Word(std::move(s), states);
    return "end";
  }
  auto prepend = [&](const std::vector<State>& body) {
    const auto p = static_cast<std::size_t>(pos(body.front()) - cyc.begin());
    std::vector<State> s;
    for (std::size_t t = 0; t < 6; ++t) s.push_back(cyc[(p + t) % m]);
    s.insert(s.end(), body.begin(), body.end());
    return Word(std::move(s), states);
  };
  if (pos(w.front()) != cyc.end()) {
    w = prepend(w.states());
    return "front";
  }
  // A closed word s1 s2 .. s1 rotates to s2 .. s1 s2; the counts are the same
  // and s2 differs from s1, so with three states it lies on a two-loop.
  if (w.length() >= 3 && w.front() == w.back()) {
    std::vector<State> r(w.states().begin() + 1, w.states().end());
    r.push_back(w[1]);
    if (pos(r.front()) != cyc.end()) {
      w = prepend(r);
      return "rotated";
    }
  }
  throw std::invalid_argument("append_loop_block: word " + w.str() + " cannot take loop " + loop.str());
}

// ---------------------------------------------------------------------------
// Induction

namespace {

// max alpha_k subject to x = sum lambda_v v + sum alpha_i e_i, sum lambda = n.
std::optional<Rational> max_loop_coefficient(const TransitionVector& x, std::int64_t n, std::size_t T,
                                             std::size_t k) {
  const auto& V = q_vertices(static_cast<int>(T % 6));
  const auto& rays = facets::loop_rays();
  const std::size_t nv = V.vertices.size();
  const std::size_t nr = rays.size();
  exactla::LinearProgram lp;
  lp.num_vars = nv + nr;
  lp.nonnegative.assign(lp.num_vars, true);
  for (std::size_t c = 0; c < facets::kDim; ++c) {
    exactla::LinearConstraint row;
    row.coefficients.assign(lp.num_vars, Rational(0));
    for (std::size_t v = 0; v < nv; ++v) row.coefficients[v] = V.vertices[v][c];
    for (std::size_t r = 0; r < nr; ++r) row.coefficients[nv + r] = Rational(rays[r][c]);
    row.relation = exactla::Relation::Equal;
    row.rhs = Rational(x[c]);
    lp.constraints.push_back(std::move(row));
  }
  exactla::LinearConstraint sum;
  sum.coefficients.assign(lp.num_vars, Rational(0));
  for (std::size_t v = 0; v < nv; ++v) sum.coefficients[v] = 1;
  sum.relation = exactla::Relation::Equal;
  sum.rhs = Rational(n);
  lp.constraints.push_back(std::move(sum));
  lp.objective.assign(lp.num_vars, Rational(0));
  lp.objective[nv + k] = 1;
  const auto sol = exactla::lp_maximize(lp);
  if (sol.status != exactla::LpStatus::Optimal) return std::nullopt;
  return sol.value;
}

std::vector<Word> induct(const TransitionVector& x, std::size_t T, std::int64_t n, std::vector<InductionStep>* trace,
                         const InductionOptions& options) {
  if (n == 0) return {};
  // Q^r describes the cone slice from T = 5 on, and T-6 must stay >= 3.
  if (T >= std::max<std::size_t>(options.base_T, 9)) {
    const auto& loops = facets::loop_words();
    for (std::size_t k = 0; k < loops.size(); ++k) {
      // A two-loop block is 3 traversals, a three-cycle block 2.
      const std::int64_t copies = 6 / static_cast<std::int64_t>(loops[k].length() - 1);
      // alpha e_k <= x componentwise, so small counts rule the loop out early.
      const auto& e = facets::loop_rays()[k];
      bool room = true;
      for (std::size_t c = 0; c < facets::kDim; ++c)
        if (e[c] > 0 && x[c] < copies * n) room = false;
      if (!room) continue;
      const auto alpha = max_loop_coefficient(x, n, T, k);
      if (!alpha || *alpha < Rational(copies * n)) continue;
      TransitionVector reduced = x - transition_counts(loops[k], 3).scaled(copies * n);
      const auto& lower = oracle_for(T - 6);
      if (!lower.in_cone(reduced) || !lower.in_lattice(reduced)) continue;
      auto words = induct(reduced, T - 6, n, trace, options);
      InductionStep step{T, k, *alpha, 0, 0, 0};
      for (auto& w : words) {
        const auto where = append_loop_block(w, loops[k]);
        if (where == "end") ++step.appended_end;
        else if (where == "front") ++step.appended_front;
        else ++step.rotated;
      }
      std::sort(words.begin(), words.end());
      if (trace) trace->push_back(step);
      return words;
    }
  }
  auto words = decompose_into_paths(x, n, T);
  if (!words) throw DecompositionNotFound("no paths of length " + std::to_string(T) + " for " + vec_str(x.counts()));
  return *words;
}

}  // namespace

std::vector<Word> witness_by_induction(const TransitionVector& x, std::size_t T, std::vector<InductionStep>* trace,
                                       const InductionOptions& options) {
  if (x.states() != 3) throw std::invalid_argument("witness_by_induction: S = 3 only");
  if (T < 3) throw std::invalid_argument("witness_by_induction: T must be at least 3");
  const auto total = x.total();
  const auto step = static_cast<std::int64_t>(T - 1);
  if (total % step != 0) throw DecompositionNotFound("sum(x) is not a multiple of T-1");
  for (auto v : x.counts())
    if (v < 0) throw DecompositionNotFound("negative count");
  if (trace) trace->clear();
  auto words = induct(x, T, total / step, trace, options);
  // The trace lists steps from the smallest T upward; report top-down.
  if (trace) std::reverse(trace->begin(), trace->end());
  return words;
}

std::vector<Word> witness_by_induction(const SaturationPoint& p, std::size_t T, std::vector<InductionStep>* trace,
                                       const InductionOptions& options) {
  return witness_by_induction(p.x, T, trace, options);
}

}  // namespace thmc::normality
