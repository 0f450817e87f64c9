#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "markov_internal.hpp"
#include "thmc/parallel.hpp"

namespace thmc::markov {

namespace detail {

Multiset difference(const Multiset& a, const Multiset& b) {
  Multiset out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Multiset sum(const Multiset& a, const Multiset& b) {
  Multiset out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Multiset common(const Multiset& a, const Multiset& b) {
  Multiset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool includes(const Multiset& big, const Multiset& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool disjoint(const Multiset& a, const Multiset& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i;
    else ++j;
  }
  return true;
}

std::uint64_t multiset_count(std::size_t m, std::size_t d, std::uint64_t cap) {
  // C(m + d - 1, d)
  Integer c = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    c *= static_cast<unsigned long>(m + k - 1);
    c /= static_cast<unsigned long>(k);
  }
  return c > cap ? cap + 1 : c.get_ui();
}

ImageGroups group_by_image(const DesignMatrix& A, std::size_t d, std::uint64_t cap) {
  const std::size_t m = A.cols();
  if (multiset_count(m, d, cap) > cap) {
    throw CapExceeded("multisets of " + std::to_string(d) + " out of " + std::to_string(m) + " words exceed the cap");
  }
  const std::size_t rows = A.rows();
  std::unordered_map<Key, std::size_t, KeyHash> where;
  ImageGroups groups;
  if (d == 0 || m == 0) return groups;
  Multiset u(d, 0);
  Key img(rows, 0);
  for (auto k : u)
    for (std::size_t r = 0; r < rows; ++r) img[r] += A.column(k).counts[r];
  for (;;) {
    auto [it, fresh] = where.try_emplace(img, groups.size());
    if (fresh) groups.push_back({img, {}});
    groups[it->second].members.push_back(u);
    // Next non-decreasing sequence.
    std::size_t pos = d;
    while (pos > 0 && u[pos - 1] + 1 == m) --pos;
    if (pos == 0) break;
    const std::uint32_t next = u[pos - 1] + 1;
    for (std::size_t k = pos - 1; k < d; ++k) {
      for (std::size_t r = 0; r < rows; ++r) img[r] += A.column(next).counts[r] - A.column(u[k]).counts[r];
      u[k] = next;
    }
  }
  std::sort(groups.begin(), groups.end(), [](const ImageGroup& a, const ImageGroup& b) { return a.b < b.b; });
  return groups;
}

}  // namespace detail

using namespace detail;

std::vector<std::int64_t> Move::dense(std::size_t m) const {
  std::vector<std::int64_t> z(m, 0);
  for (auto k : plus) ++z.at(k);
  for (auto k : minus) --z.at(k);
  return z;
}

Move canonical_move(Multiset plus, Multiset minus) {
  std::sort(plus.begin(), plus.end());
  std::sort(minus.begin(), minus.end());
  const auto both = common(plus, minus);
  plus = difference(plus, both);
  minus = difference(minus, both);
  if (plus.size() != minus.size()) throw std::invalid_argument("canonical_move: unbalanced parts");
  if (plus.empty()) throw std::invalid_argument("canonical_move: zero move");
  if (minus.back() > plus.back()) std::swap(plus, minus);
  return {std::move(plus), std::move(minus)};
}

TransitionVector image(const Multiset& u, const DesignMatrix& A) {
  TransitionVector x(A.states());
  for (auto k : u) x += A.column(k).counts;
  return x;
}

bool is_move(const Move& z, const DesignMatrix& A) {
  if (z.plus.size() != z.minus.size() || z.plus.empty()) return false;
  for (auto k : z.plus)
    if (k >= A.cols()) return false;
  for (auto k : z.minus)
    if (k >= A.cols()) return false;
  return image(z.plus, A) == image(z.minus, A);
}

std::size_t max_degree(const std::vector<Move>& moves) {
  std::size_t d = 0;
  for (const auto& z : moves) d = std::max(d, z.degree());
  return d;
}

std::vector<Move> enumerate_moves(const DesignMatrix& A, std::size_t max_degree, const MoveOptions& options) {
  std::vector<Move> out;
  const unsigned threads = resolve_threads(options.threads);
  for (std::size_t d = 1; d <= max_degree; ++d) {
    const auto groups = group_by_image(A, d, options.multiset_cap);
    const std::size_t blocks = block_count(groups.size(), threads);
    std::vector<std::vector<Move>> per(blocks);
    std::vector<std::uint64_t> counts(blocks, 0);
    parallel_blocks(groups.size(), threads, [&](std::size_t blk, std::size_t b, std::size_t e) {
      for (std::size_t g = b; g < e; ++g) {
        const auto& mem = groups[g].members;
        for (std::size_t i = 0; i < mem.size(); ++i) {
          for (std::size_t j = i + 1; j < mem.size(); ++j) {
            if (!disjoint(mem[i], mem[j])) continue;
            if (++counts[blk] > options.move_cap) throw CapExceeded("enumerate_moves: move count exceeds the cap");
            per[blk].push_back(canonical_move(mem[i], mem[j]));
          }
        }
      }
    });
    std::vector<Move> level;
    for (auto& v : per) level.insert(level.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    if (out.size() + level.size() > options.move_cap) throw CapExceeded("enumerate_moves: move count exceeds the cap");
    std::sort(level.begin(), level.end());
    out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
  }
  return out;
}

Fiber fiber_enumerate(const Marginal& b, const DesignMatrix& A, std::uint64_t cap) {
  Fiber f;
  f.b = b;
  const auto step = static_cast<std::int64_t>(A.length()) - 1;
  if (b.n < 0 || b.b.states() != A.states() || b.b.total() != b.n * step) return f;
  for (auto v : b.b.counts())
    if (v < 0) return f;
  std::vector<std::int64_t> rest = b.b.counts();
  Multiset u;
  auto rec = [&](auto&& self, std::uint32_t from) -> void {
    if (static_cast<std::int64_t>(u.size()) == b.n) {
      if (std::all_of(rest.begin(), rest.end(), [](std::int64_t v) { return v == 0; })) {
        if (f.members.size() >= cap) throw CapExceeded("fiber_enumerate: fiber exceeds the cap");
        f.members.push_back(u);
      }
      return;
    }
    for (std::uint32_t k = from; k < A.cols(); ++k) {
      const auto& c = A.column(k).counts;
      bool fits = true;
      for (std::size_t r = 0; r < rest.size() && fits; ++r) fits = c[r] <= rest[r];
      if (!fits) continue;
      for (std::size_t r = 0; r < rest.size(); ++r) rest[r] -= c[r];
      u.push_back(k);
      self(self, k);
      u.pop_back();
      for (std::size_t r = 0; r < rest.size(); ++r) rest[r] += c[r];
    }
  };
  if (b.n == 0) {
    f.members.push_back({});
    return f;
  }
  rec(rec, 0);
  return f;
}

// ---------------------------------------------------------------------------
// Files

namespace {

Word word_at(const DesignMatrix& A, std::uint32_t k) { return A.column(k).word; }

std::uint32_t index_of(const DesignMatrix& A, const std::string& text) {
  const auto k = A.index_of(Word::parse(text, A.states()));
  if (!k) throw std::invalid_argument("moves: word " + text + " is not a column");
  return static_cast<std::uint32_t>(*k);
}

}  // namespace

void write_moves(std::ostream& out, const std::vector<Move>& moves, const DesignMatrix& A) {
  for (const auto& z : moves) {
    for (std::size_t i = 0; i < z.plus.size(); ++i) out << (i ? " +" : "+") << word_at(A, z.plus[i]).str();
    out << " |";
    for (auto k : z.minus) out << " -" << word_at(A, k).str();
    out << "\n";
  }
}

std::vector<Move> read_moves(std::istream& in, const DesignMatrix& A) {
  std::vector<Move> moves;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::string tok;
    Multiset plus, minus;
    bool any = false;
    while (ss >> tok) {
      if (tok == "|") continue;
      any = true;
      if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-')) {
        throw std::invalid_argument("moves: line " + std::to_string(lineno) + ": bad token " + tok);
      }
      (tok[0] == '+' ? plus : minus).push_back(index_of(A, tok.substr(1)));
    }
    if (!any) continue;
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    Move z{plus, minus};
    if (!is_move(z, A)) throw std::invalid_argument("moves: line " + std::to_string(lineno) + " is not a move");
    moves.push_back(std::move(z));
  }
  return moves;
}

nlohmann::json moves_to_json(const std::vector<Move>& moves, const DesignMatrix& A) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : moves) {
    nlohmann::json p = nlohmann::json::array(), q = nlohmann::json::array();
    for (auto k : z.plus) p.push_back(word_at(A, k).str());
    for (auto k : z.minus) q.push_back(word_at(A, k).str());
    arr.push_back({{"degree", std::to_string(z.degree())}, {"plus", p}, {"minus", q}});
  }
  return {{"S", std::to_string(A.states())},
          {"T", std::to_string(A.length())},
          {"count", std::to_string(moves.size())},
          {"max_degree", std::to_string(max_degree(moves))},
          {"moves", arr}};
}

}  // namespace thmc::markov
