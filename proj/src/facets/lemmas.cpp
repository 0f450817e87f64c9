#include <functional>
#include <set>
#include <string>

#include "thmc/facets.hpp"

namespace thmc::facets {

namespace {

using Counts = std::array<int, 6>;
using Visit = std::function<void(const std::vector<int>& path, const Counts& x)>;

// All loop-free paths with the given number of transitions.
void for_each_path(int transitions, const Visit& visit) {
  std::vector<int> path;
  Counts x{};
  std::function<void()> rec = [&] {
    if (static_cast<int>(path.size()) == transitions + 1) {
      visit(path, x);
      return;
    }
    for (int s = 0; s < 3; ++s) {
      if (!path.empty() && path.back() == s) continue;
      const int idx = path.empty() ? -1 : static_cast<int>(pair_index(3, path.back(), s));
      if (idx >= 0) ++x[static_cast<std::size_t>(idx)];
      path.push_back(s);
      rec();
      path.pop_back();
      if (idx >= 0) --x[static_cast<std::size_t>(idx)];
    }
  };
  rec();
}

std::string path_str(const std::vector<int>& path) {
  std::string s;
  for (int v : path) s += static_cast<char>('1' + v);
  return s;
}

int at(const Counts& x, int a, int b) { return x[pair_index(3, a, b)]; }

std::string triple_str(const std::array<int, 3>& s) {
  return "(i,j,t)=(" + std::to_string(s[0] + 1) + "," + std::to_string(s[1] + 1) + "," + std::to_string(s[2] + 1) + ")";
}

}  // namespace

Report verify_window_lemmas(int max_k) {
  Report rep;
  for (const auto& s : label_permutations()) {
    const int i = s[0], j = s[1], t = s[2];
    const std::string tag = " " + triple_str(s);

    // Three transitions: x_ij + x_jt + x_it >= 1, attained.
    {
      int lo = 1 << 20;
      std::size_t paths = 0;
      std::string bad;
      for_each_path(3, [&](const std::vector<int>& p, const Counts& x) {
        ++paths;
        const int v = at(x, i, j) + at(x, j, t) + at(x, i, t);
        if (v < lo) lo = v;
        if (v < 1 && bad.empty()) bad = path_str(p);
      });
      rep.add("3-step sum" + tag, lo == 1 && paths == 24,
              "min " + std::to_string(lo) + " over " + std::to_string(paths) + " paths" +
                  (bad.empty() ? "" : ", counterexample " + bad));
    }

    // Three transitions: 2 x_ij + x_it + x_tj >= x_ji with the stated
    // equality set and end-point patterns for differences 1 and 2.
    {
      std::set<std::vector<int>> equal;
      std::string bad, bad1, bad2;
      for_each_path(3, [&](const std::vector<int>& p, const Counts& x) {
        const int d = 2 * at(x, i, j) + at(x, i, t) + at(x, t, j) - at(x, j, i);
        const int a = p.front(), b = p.back();
        if (d < 0 && bad.empty()) bad = path_str(p);
        if (d == 0) equal.insert(p);
        if (d == 1 && !(a == b || (a == j && b == t) || (a == t && b == i)) && bad1.empty()) bad1 = path_str(p);
        if (d == 2 && !(a == b || (a == t && b == j) || (a == i && b == t)) && bad2.empty()) bad2 = path_str(p);
      });
      const std::set<std::vector<int>> expected = {{j, i, j, i}, {j, t, j, i}, {j, i, t, i}};
      std::string eq;
      for (const auto& p : equal) eq += (eq.empty() ? "" : " ") + path_str(p);
      rep.add("3-step weighted inequality" + tag, bad.empty(), bad.empty() ? "" : "counterexample " + bad);
      rep.add("3-step weighted equality set" + tag, equal == expected, eq);
      rep.add("3-step weighted difference 1 endpoints" + tag, bad1.empty(), bad1.empty() ? "" : "counterexample " + bad1);
      rep.add("3-step weighted difference 2 endpoints" + tag, bad2.empty(), bad2.empty() ? "" : "counterexample " + bad2);
    }

    // Six transitions: 2 x_ij + x_it + x_tj >= x_ji + 1.
    {
      std::size_t paths = 0;
      std::string bad, bad0, bad1, bad1_loops;
      for_each_path(6, [&](const std::vector<int>& p, const Counts& x) {
        ++paths;
        const int d = 2 * at(x, i, j) + at(x, i, t) + at(x, t, j) - at(x, j, i) - 1;
        const int a = p.front(), b = p.back();
        if (d < 0 && bad.empty()) bad = path_str(p);
        if (d == 0 && !(a == j && b == i) && bad0.empty()) bad0 = path_str(p);
        const bool listed = (a == j && b == i) || (a == j && b == t) || (a == t && b == i);
        if (d == 1 && !listed && bad1.empty()) bad1 = path_str(p);
        if (d == 1 && !listed && a != b && bad1_loops.empty()) bad1_loops = path_str(p);
      });
      rep.add("6-step inequality" + tag, bad.empty() && paths == 192,
              std::to_string(paths) + " paths" + (bad.empty() ? "" : ", counterexample " + bad));
      rep.add("6-step equality starts at j and ends at i" + tag, bad0.empty(),
              bad0.empty() ? "" : "counterexample " + bad0);
      // As stated the list omits closed windows (e.g. 1321321 for i,j,t = 1,2,3);
      // the claim is not used by the 6k argument, so it is a finding only.
      rep.note("6-step difference 1 endpoints as stated" + tag, bad1.empty(),
               bad1.empty() ? "" : "counterexample " + bad1);
      rep.add("6-step difference 1 endpoints or closed" + tag, bad1_loops.empty(),
              bad1_loops.empty() ? "" : "counterexample " + bad1_loops);
    }

    // T = 6k+1: 2 x_ij + x_it + x_tj >= x_ji + 2k - 1, equality only ending at i.
    for (int k = 1; k <= max_k; ++k) {
      int lo = 1 << 20;
      std::string bad, bad_end;
      for_each_path(6 * k, [&](const std::vector<int>& p, const Counts& x) {
        const int d = 2 * at(x, i, j) + at(x, i, t) + at(x, t, j) - at(x, j, i) - (2 * k - 1);
        if (d < lo) lo = d;
        if (d < 0 && bad.empty()) bad = path_str(p);
        if (d == 0 && p.back() != i && bad_end.empty()) bad_end = path_str(p);
      });
      const std::string kt = " T=" + std::to_string(6 * k + 1) + tag;
      rep.add("6k inequality" + kt, bad.empty(),
              "min slack " + std::to_string(lo) + (bad.empty() ? "" : ", counterexample " + bad));
      rep.add("6k equality ends at i" + kt, bad_end.empty(), bad_end.empty() ? "" : "counterexample " + bad_end);
    }

    // Even T = 2k: 2 x_ij + x_it + x_tj >= k - 1, strict when ending at j.
    for (int k = 1; k <= 3 * max_k; ++k) {
      std::string bad, bad_strict;
      for_each_path(2 * k - 1, [&](const std::vector<int>& p, const Counts& x) {
        const int v = 2 * at(x, i, j) + at(x, i, t) + at(x, t, j);
        if (v < k - 1 && bad.empty()) bad = path_str(p);
        if (p.back() == j && v <= k - 1 && bad_strict.empty()) bad_strict = path_str(p);
      });
      const std::string kt = " T=" + std::to_string(2 * k) + tag;
      rep.add("even-T inequality" + kt, bad.empty(), bad.empty() ? "" : "counterexample " + bad);
      rep.add("even-T strict when ending at j" + kt, bad_strict.empty(),
              bad_strict.empty() ? "" : "counterexample " + bad_strict);
    }
  }
  return rep;
}

}  // namespace thmc::facets
