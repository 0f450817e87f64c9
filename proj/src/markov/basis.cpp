#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "markov_internal.hpp"
#include "thmc/parallel.hpp"

namespace thmc::markov {

using namespace detail;

namespace {

struct FiberGraph {
  std::int64_t n = 0;
  Key b;
  std::vector<Multiset> members;
  std::unordered_map<Multiset, std::uint32_t, MultisetHash> index;
};

// Fibers with at least two members, in (degree, image) order.
std::vector<FiberGraph> collect_fibers(const DesignMatrix& A, std::int64_t n_max, std::uint64_t cap,
                                       std::size_t* largest) {
  std::vector<FiberGraph> out;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (auto& g : group_by_image(A, static_cast<std::size_t>(n), cap)) {
      if (largest) *largest = std::max(*largest, g.members.size());
      if (g.members.size() < 2) continue;
      FiberGraph f;
      f.n = n;
      f.b = std::move(g.b);
      f.members = std::move(g.members);
      for (std::uint32_t k = 0; k < f.members.size(); ++k) f.index.emplace(f.members[k], k);
      out.push_back(std::move(f));
    }
  }
  return out;
}

// Removed part -> parts that may replace it, for every +-move in the set.
class MoveIndex {
 public:
  void add(const Move& z) {
    by_removed_[z.minus].push_back(z.plus);
    by_removed_[z.plus].push_back(z.minus);
  }
  void remove(const Move& z) {
    erase_one(z.minus, z.plus);
    erase_one(z.plus, z.minus);
  }
  const std::vector<Multiset>* find(const Multiset& part) const {
    auto it = by_removed_.find(part);
    return it == by_removed_.end() || it->second.empty() ? nullptr : &it->second;
  }

 private:
  void erase_one(const Multiset& key, const Multiset& value) {
    auto& v = by_removed_[key];
    auto it = std::find(v.begin(), v.end(), value);
    if (it != v.end()) v.erase(it);
  }
  std::unordered_map<Multiset, std::vector<Multiset>, MultisetHash> by_removed_;
};

// Distinct sub-multisets of u (including u, excluding the empty one).
void for_each_submultiset(const Multiset& u, const std::function<void(const Multiset&)>& visit) {
  std::vector<std::pair<std::uint32_t, std::size_t>> runs;
  for (auto k : u) {
    if (!runs.empty() && runs.back().first == k) ++runs.back().second;
    else runs.push_back({k, 1});
  }
  Multiset s;
  auto rec = [&](auto&& self, std::size_t r) -> void {
    if (r == runs.size()) {
      if (!s.empty()) visit(s);
      return;
    }
    for (std::size_t c = 0; c <= runs[r].second; ++c) {
      self(self, r + 1);
      s.push_back(runs[r].first);
    }
    s.resize(s.size() - runs[r].second - 1);
  };
  rec(rec, 0);
}

struct Components {
  std::size_t count = 0;
  std::uint32_t other = 0;  // a member outside the component of member 0
};

Components components(const FiberGraph& f, const MoveIndex& moves) {
  std::vector<std::uint32_t> parent(f.members.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t count = f.members.size();
  for (std::uint32_t k = 0; k < f.members.size() && count > 1; ++k) {
    const auto& u = f.members[k];
    for_each_submultiset(u, [&](const Multiset& s) {
      const auto* targets = moves.find(s);
      if (!targets) return;
      const auto rest = difference(u, s);
      for (const auto& t : *targets) {
        auto it = f.index.find(sum(rest, t));
        if (it == f.index.end()) continue;
        const auto a = root(k), b = root(it->second);
        if (a != b) {
          parent[a] = b;
          --count;
        }
      }
    });
  }
  Components c{count, 0};
  if (count > 1) {
    const auto r0 = root(0);
    for (std::uint32_t k = 1; k < f.members.size(); ++k)
      if (root(k) != r0) {
        c.other = k;
        break;
      }
  }
  return c;
}

Marginal marginal_of(const FiberGraph& f, int S) { return {TransitionVector(S, f.b), f.n}; }

}  // namespace

MarkovCheck is_markov_basis(const std::vector<Move>& moves, const DesignMatrix& A, std::int64_t n_max,
                            const CheckOptions& options) {
  MarkovCheck res;
  res.n_max = n_max;
  MoveIndex index;
  for (const auto& z : moves) {
    if (static_cast<std::int64_t>(z.degree()) > n_max) ++res.inapplicable_moves;
    else index.add(z);
  }
  const auto fibers = collect_fibers(A, n_max, options.multiset_cap, &res.largest_fiber);
  res.fibers_checked = fibers.size();
  const unsigned threads = resolve_threads(options.threads);
  std::vector<Components> comp(fibers.size());
  parallel_blocks(fibers.size(), threads, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) comp[k] = components(fibers[k], index);
  });
  for (std::size_t k = 0; k < fibers.size(); ++k) {
    if (comp[k].count <= 1) continue;
    res.connected = false;
    res.counterexample = Disconnected{marginal_of(fibers[k], A.states()), fibers[k].members.size(), comp[k].count,
                                      fibers[k].members[0], fibers[k].members[comp[k].other]};
    break;
  }
  return res;
}

std::vector<Move> minimal_markov_basis(const DesignMatrix& A, std::size_t max_degree, std::int64_t n_max,
                                       const MoveOptions& options) {
  // Moves above n_max never act on the checked fibers, so they would all be
  // dropped; enumerating them is skipped.
  auto all = enumerate_moves(A, std::min<std::size_t>(max_degree, static_cast<std::size_t>(n_max)), options);
  auto fibers = collect_fibers(A, n_max, options.multiset_cap, nullptr);

  MoveIndex index;
  std::vector<char> keep(all.size(), 1);
  for (const auto& z : all) index.add(z);
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return all[a].degree() > all[b].degree(); });

  const unsigned threads = resolve_threads(options.threads);
  auto all_connected = [&] {
    std::vector<char> broken(fibers.size(), 0);
    parallel_blocks(fibers.size(), threads, [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) broken[i] = components(fibers[i], index).count > 1;
    });
    return std::none_of(broken.begin(), broken.end(), [](char c) { return c != 0; });
  };
  // If the set stays connected without every move of the current degree,
  // one-at-a-time removal would drop each of them too (every intermediate
  // set contains that connected one), so drop the whole degree at once.
  std::size_t batch_degree = 0;
  for (auto k : order) {
    if (!keep[k]) continue;
    if (all[k].degree() != batch_degree) {
      batch_degree = all[k].degree();
      for (const auto& z : all)
        if (z.degree() == batch_degree) index.remove(z);
      if (all_connected()) {
        for (std::size_t i = 0; i < all.size(); ++i)
          if (all[i].degree() == batch_degree) keep[i] = 0;
        continue;
      }
      for (const auto& z : all)
        if (z.degree() == batch_degree) index.add(z);
    }
    const Move& z = all[k];
    const auto img = image(z.plus, A).counts();
    // Only fibers that can contain z^+ or z^- are affected.
    std::vector<std::size_t> affected;
    for (std::size_t f = 0; f < fibers.size(); ++f) {
      if (fibers[f].n < static_cast<std::int64_t>(z.degree())) continue;
      bool fits = true;
      for (std::size_t r = 0; r < img.size() && fits; ++r) fits = img[r] <= fibers[f].b[r];
      if (fits) affected.push_back(f);
    }
    index.remove(z);
    std::vector<char> broken(affected.size(), 0);
    parallel_blocks(affected.size(), threads, [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) broken[i] = components(fibers[affected[i]], index).count > 1;
    });
    if (std::any_of(broken.begin(), broken.end(), [](char c) { return c != 0; })) index.add(z);
    else keep[k] = 0;
  }
  std::vector<Move> out;
  for (std::size_t k = 0; k < all.size(); ++k)
    if (keep[k]) out.push_back(all[k]);
  return out;
}

nlohmann::json to_json(const MarkovCheck& check, const DesignMatrix& A) {
  nlohmann::json j;
  j["S"] = std::to_string(A.states());
  j["T"] = std::to_string(A.length());
  j["connected"] = check.connected;
  j["n_max"] = std::to_string(check.n_max);
  j["fibers_checked"] = std::to_string(check.fibers_checked);
  j["largest_fiber"] = std::to_string(check.largest_fiber);
  j["inapplicable_moves"] = std::to_string(check.inapplicable_moves);
  j["caveat"] = "connectivity checked on fibers of degree <= n_max only";
  if (check.counterexample) {
    const auto& c = *check.counterexample;
    auto words = [&](const Multiset& u) {
      nlohmann::json w = nlohmann::json::array();
      for (auto k : u) w.push_back(A.column(k).word.str());
      return w;
    };
    nlohmann::json b = nlohmann::json::array();
    for (auto v : c.b.b.counts()) b.push_back(std::to_string(v));
    j["counterexample"] = {{"b", b},
                           {"n", std::to_string(c.b.n)},
                           {"fiber_size", std::to_string(c.fiber_size)},
                           {"components", std::to_string(c.components)},
                           {"u", words(c.u)},
                           {"v", words(c.v)}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

}  // namespace thmc::markov
