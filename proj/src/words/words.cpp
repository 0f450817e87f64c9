#include "thmc/words.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>

namespace thmc {

namespace {

void check_states(int S) {
  if (S < 2 || S > 9) throw std::invalid_argument("state count must lie in [2, 9]");
}

}  // namespace

StatePair pair_at(int S, std::size_t index) {
  const int i = static_cast<int>(index) / (S - 1);
  int j = static_cast<int>(index) % (S - 1);
  if (j >= i) ++j;
  return {i, j};
}

std::vector<std::string> pair_labels(int S) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < pair_count(S); ++k) {
    auto [i, j] = pair_at(S, k);
    labels.push_back(std::string{static_cast<char>('1' + i), static_cast<char>('1' + j)});
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Word

Word::Word(std::vector<State> states, int S) : states_(std::move(states)) {
  check_states(S);
  for (std::size_t t = 0; t < states_.size(); ++t) {
    if (states_[t] >= S) throw std::invalid_argument("word: state label out of range");
    if (t > 0 && states_[t] == states_[t - 1]) throw std::invalid_argument("word: self-loop");
  }
}

Word Word::parse(std::string_view text, int S) {
  std::vector<State> states;
  states.reserve(text.size());
  for (char c : text) {
    if (c < '1' || c > '9') throw std::invalid_argument("word: expected digits 1-9, got '" + std::string(text) + "'");
    states.push_back(static_cast<State>(c - '1'));
  }
  return Word(std::move(states), S);
}

std::string Word::str() const {
  std::string s;
  s.reserve(states_.size());
  for (auto st : states_) s.push_back(static_cast<char>('1' + st));
  return s;
}

// ---------------------------------------------------------------------------
// TransitionVector

TransitionVector::TransitionVector(int S, std::vector<std::int64_t> counts) : S_(S), x_(std::move(counts)) {
  if (x_.size() != pair_count(S)) throw std::invalid_argument("transition vector has the wrong length");
}

std::int64_t TransitionVector::total() const noexcept { return std::accumulate(x_.begin(), x_.end(), std::int64_t{0}); }

std::int64_t TransitionVector::out_degree(int i) const {
  std::int64_t s = 0;
  for (int j = 0; j < S_; ++j) {
    if (j != i) s += at(i, j);
  }
  return s;
}

std::int64_t TransitionVector::in_degree(int i) const {
  std::int64_t s = 0;
  for (int j = 0; j < S_; ++j) {
    if (j != i) s += at(j, i);
  }
  return s;
}

TransitionVector& TransitionVector::operator+=(const TransitionVector& rhs) {
  if (rhs.S_ != S_) throw std::invalid_argument("transition vectors of different shape");
  for (std::size_t k = 0; k < x_.size(); ++k) x_[k] += rhs.x_[k];
  return *this;
}

TransitionVector& TransitionVector::operator-=(const TransitionVector& rhs) {
  if (rhs.S_ != S_) throw std::invalid_argument("transition vectors of different shape");
  for (std::size_t k = 0; k < x_.size(); ++k) x_[k] -= rhs.x_[k];
  return *this;
}

TransitionVector TransitionVector::scaled(std::int64_t factor) const {
  TransitionVector r = *this;
  for (auto& v : r.x_) v *= factor;
  return r;
}

TransitionVector operator+(TransitionVector a, const TransitionVector& b) { return a += b; }
TransitionVector operator-(TransitionVector a, const TransitionVector& b) { return a -= b; }

TransitionVector transpose(const TransitionVector& x) {
  const int S = x.states();
  TransitionVector r(S);
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      if (i != j) r.at(i, j) = x.at(j, i);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// WordMultiset

void WordMultiset::add(const Word& w, std::int64_t multiplicity) {
  if (multiplicity < 0) throw std::invalid_argument("negative multiplicity");
  if (multiplicity == 0) return;
  if (total_ == 0 && entries_.empty() && T_ == 0) T_ = w.length();
  if (w.length() != T_) throw std::invalid_argument("word length differs from multiset shape");
  entries_[w] += multiplicity;
  total_ += multiplicity;
}

// ---------------------------------------------------------------------------
// Enumeration and counts

std::uint64_t word_count(int S, std::size_t T, std::uint64_t cap) {
  check_states(S);
  if (T < 1) throw std::invalid_argument("word length must be positive");
  std::uint64_t n = static_cast<std::uint64_t>(S);
  for (std::size_t t = 1; t < T; ++t) {
    if (n > cap / static_cast<std::uint64_t>(S - 1) + 1) throw CapExceeded("word count exceeds the configured cap");
    n *= static_cast<std::uint64_t>(S - 1);
  }
  if (n > cap) throw CapExceeded("word count " + std::to_string(n) + " exceeds the configured cap");
  return n;
}

std::vector<Word> enumerate_words(int S, std::size_t T, std::uint64_t cap) {
  const std::uint64_t n = word_count(S, T, cap);
  std::vector<Word> words;
  words.reserve(n);
  std::vector<State> buf(T);
  // Odometer over positions; each position skips its predecessor's label.
  auto fill_from = [&](std::size_t pos) {
    for (std::size_t t = pos; t < T; ++t) buf[t] = (t > 0 && buf[t - 1] == 0) ? 1 : 0;
  };
  fill_from(0);
  for (;;) {
    words.emplace_back(buf, S);
    std::size_t t = T;
    bool advanced = false;
    while (t-- > 0) {
      State next = static_cast<State>(buf[t] + 1);
      if (t > 0 && next == buf[t - 1]) ++next;
      if (next < S) {
        buf[t] = next;
        fill_from(t + 1);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return words;
}

TransitionVector transition_counts(const Word& w, int S) {
  TransitionVector x(S);
  for (std::size_t t = 0; t + 1 < w.length(); ++t) ++x.at(w[t], w[t + 1]);
  return x;
}

Word reverse(const Word& w) {
  std::vector<State> s(w.states().rbegin(), w.states().rend());
  return Word(std::move(s), 9);
}

Word insert_cycle(const Word& w, const Word& cycle, std::size_t copies) {
  if (cycle.length() < 3 || cycle.front() != cycle.back()) {
    throw std::invalid_argument("insert_cycle: not a closed walk");
  }
  const auto& c = cycle.states();
  for (std::size_t p = 0; p < w.length(); ++p) {
    const auto hit = std::find(c.begin(), c.end() - 1, w[p]);
    if (hit == c.end() - 1) continue;
    // Rotate the cycle so it starts at w[p], then splice after position p.
    std::vector<State> loop(hit, c.end() - 1);
    loop.insert(loop.end(), c.begin(), hit);
    std::vector<State> out(w.states().begin(), w.states().begin() + static_cast<std::ptrdiff_t>(p) + 1);
    for (std::size_t k = 0; k < copies; ++k) {
      out.insert(out.end(), loop.begin() + 1, loop.end());
      out.push_back(loop.front());
    }
    out.insert(out.end(), w.states().begin() + static_cast<std::ptrdiff_t>(p) + 1, w.states().end());
    return Word(std::move(out), 9);
  }
  throw std::invalid_argument("insert_cycle: no shared state");
}

TransitionVector state_graph(const WordMultiset& W) {
  TransitionVector x(W.states());
  for (const auto& [w, m] : W.entries()) x += transition_counts(w, W.states()).scaled(m);
  return x;
}

// ---------------------------------------------------------------------------
// Eulerian trails

bool has_eulerian_path(const TransitionVector& x) {
  const int S = x.states();
  std::int64_t edges = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] < 0) return false;
    edges += x[k];
  }
  if (edges == 0) return false;
  int plus = 0;
  int minus = 0;
  for (int i = 0; i < S; ++i) {
    const std::int64_t d = x.out_degree(i) - x.in_degree(i);
    if (d == 1) {
      ++plus;
    } else if (d == -1) {
      ++minus;
    } else if (d != 0) {
      return false;
    }
  }
  if (plus > 1 || minus > 1) return false;
  // Weak connectivity of the non-isolated vertices.
  std::vector<int> parent(S);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> used(S, false);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) continue;
    auto [i, j] = pair_at(S, k);
    used[i] = used[j] = true;
    parent[find(i)] = find(j);
  }
  int root = -1;
  for (int v = 0; v < S; ++v) {
    if (!used[v]) continue;
    if (root < 0) root = find(v);
    if (find(v) != root) return false;
  }
  return true;
}

std::optional<Word> eulerian_path(const TransitionVector& x) {
  const int S = x.states();
  std::int64_t edges = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] < 0) return std::nullopt;
    edges += x[k];
  }
  if (edges == 0) return std::nullopt;
  int start = -1;
  for (int i = 0; i < S; ++i) {
    const std::int64_t d = x.out_degree(i) - x.in_degree(i);
    if (d == 1) {
      if (start >= 0) return std::nullopt;
      start = i;
    } else if (d > 1) {
      return std::nullopt;
    }
  }
  if (start < 0) {
    for (int i = 0; i < S && start < 0; ++i) {
      if (x.out_degree(i) > 0) start = i;
    }
  }
  TransitionVector left = x;
  std::vector<State> stack{static_cast<State>(start)};
  std::vector<State> trail;
  while (!stack.empty()) {
    const int v = stack.back();
    int next = -1;
    for (int j = 0; j < S; ++j) {
      if (j != v && left.at(v, j) > 0) {
        next = j;
        break;
      }
    }
    if (next < 0) {
      trail.push_back(static_cast<State>(v));
      stack.pop_back();
    } else {
      --left.at(v, next);
      stack.push_back(static_cast<State>(next));
    }
  }
  if (static_cast<std::int64_t>(trail.size()) != edges + 1) return std::nullopt;
  std::reverse(trail.begin(), trail.end());
  Word w(std::move(trail), S);
  if (transition_counts(w, S) != x) return std::nullopt;
  return w;
}

// ---------------------------------------------------------------------------
// Path decomposition

PathDecomposer::PathDecomposer(int S, std::size_t T, std::size_t memo_limit)
    : S_(S), T_(T), memo_limit_(memo_limit) {
  check_states(S);
  if (T < 2) throw std::invalid_argument("path decomposition needs T >= 2");
}

std::string PathDecomposer::key(std::int64_t steps_left, std::int64_t paths_left) const {
  std::string k;
  k.resize((x_.size() + 3) * sizeof(std::int32_t));
  auto put = [&k](std::size_t slot, std::int64_t v) {
    const auto w = static_cast<std::int32_t>(v);
    std::memcpy(k.data() + slot * sizeof(std::int32_t), &w, sizeof w);
  };
  put(0, steps_left);
  put(1, paths_left);
  put(2, steps_left > 0 ? current_ : -1);
  for (std::size_t i = 0; i < x_.size(); ++i) put(3 + i, x_[i]);
  return k;
}

bool PathDecomposer::prune(std::int64_t steps_left, std::int64_t paths_left) const {
  // Each remaining trail removes at most one unit of positive out-in surplus.
  const std::int64_t trails = paths_left + (steps_left > 0 ? 1 : 0);
  std::int64_t surplus = 0;
  for (int i = 0; i < S_; ++i) {
    std::int64_t out = 0;
    std::int64_t in = 0;
    for (int j = 0; j < S_; ++j) {
      if (j == i) continue;
      out += x_[pair_index(S_, i, j)];
      in += x_[pair_index(S_, j, i)];
    }
    if (out > in) surplus += out - in;
    if (steps_left > 0 && i == current_ && out == 0) return true;
  }
  return surplus > trails;
}

bool PathDecomposer::search(std::int64_t steps_left, std::int64_t paths_left) {
  if (steps_left == 0 && paths_left == 0) return true;
  if (prune(steps_left, paths_left)) return false;
  std::string k = key(steps_left, paths_left);
  if (failed_.count(k) != 0) return false;

  if (steps_left == 0) {
    std::vector<std::pair<std::int64_t, int>> starts;
    for (int u = 0; u < S_; ++u) {
      std::int64_t out = 0;
      std::int64_t in = 0;
      for (int j = 0; j < S_; ++j) {
        if (j == u) continue;
        out += x_[pair_index(S_, u, j)];
        in += x_[pair_index(S_, j, u)];
      }
      if (out > 0) starts.emplace_back(-(out - in), u);
    }
    std::sort(starts.begin(), starts.end());
    for (auto [neg_surplus, u] : starts) {
      (void)neg_surplus;
      path_.push_back(static_cast<State>(u));
      current_ = u;
      if (search(static_cast<std::int64_t>(T_) - 1, paths_left - 1)) return true;
      path_.pop_back();
    }
  } else {
    const int v = current_;
    for (int j = 0; j < S_; ++j) {
      if (j == v) continue;
      auto& e = x_[pair_index(S_, v, j)];
      if (e == 0) continue;
      --e;
      path_.push_back(static_cast<State>(j));
      current_ = j;
      const bool ok = search(steps_left - 1, paths_left);
      if (ok) return true;
      path_.pop_back();
      current_ = v;
      ++e;
    }
  }
  if (failed_.size() >= memo_limit_) failed_.clear();
  failed_.insert(std::move(k));
  return false;
}

std::optional<std::vector<Word>> PathDecomposer::decompose(const TransitionVector& x, std::int64_t n) {
  if (x.states() != S_) throw std::invalid_argument("decompose: state count mismatch");
  if (n < 0 || x.total() != n * static_cast<std::int64_t>(T_ - 1)) {
    throw std::invalid_argument("decompose: total count must equal n(T-1)");
  }
  for (auto v : x.counts()) {
    if (v < 0) return std::nullopt;
  }
  x_ = x.counts();
  path_.clear();
  current_ = -1;
  if (!search(0, n)) return std::nullopt;
  std::vector<Word> words;
  for (std::int64_t p = 0; p < n; ++p) {
    auto first = path_.begin() + static_cast<std::ptrdiff_t>(p * T_);
    words.emplace_back(std::vector<State>(first, first + static_cast<std::ptrdiff_t>(T_)), S_);
  }
  std::sort(words.begin(), words.end());
  return words;
}

std::optional<std::vector<Word>> decompose_into_paths(const TransitionVector& x, std::int64_t n, std::size_t T) {
  PathDecomposer d(x.states(), T);
  return d.decompose(x, n);
}

// ---------------------------------------------------------------------------
// Text format

WordMultiset read_words(std::istream& in, int S) {
  WordMultiset W(S, 0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    try {
      W.add(Word::parse(std::string_view(line).substr(b, e - b + 1), S));
    } catch (const std::invalid_argument& err) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + err.what());
    }
  }
  return W;
}

void write_words(std::ostream& out, const WordMultiset& W) {
  for (const auto& [w, m] : W.entries()) {
    for (std::int64_t i = 0; i < m; ++i) out << w.str() << '\n';
  }
}

void write_words(std::ostream& out, const std::vector<Word>& words) {
  for (const auto& w : words) out << w.str() << '\n';
}

}  // namespace thmc
