#include <algorithm>
#include <queue>
#include <tuple>

#include "markov_internal.hpp"

namespace thmc::markov {

using namespace detail;

int grevlex_compare(const Multiset& a, const Multiset& b) {
  // Walk down from the largest index: the first variable where the
  // exponents differ decides, and the larger exponent there is smaller.
  auto i = a.rbegin();
  auto j = b.rbegin();
  while (i != a.rend() && j != b.rend()) {
    if (*i == *j) {
      ++i;
      ++j;
      continue;
    }
    return *i > *j ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() > b.size() ? 1 : -1;
  return 0;
}

namespace {

struct Binomial {
  Multiset lead;
  Multiset tail;
};

// x^a - x^b with the common factor removed (the ideal is prime and has no
// monomials), oriented so the lead is larger. Empty when a == b.
std::optional<Binomial> make_binomial(const Multiset& a, const Multiset& b) {
  const auto g = common(a, b);
  auto p = difference(a, g);
  auto q = difference(b, g);
  const int c = grevlex_compare(p, q);
  if (c == 0) return std::nullopt;
  if (c < 0) std::swap(p, q);
  return Binomial{std::move(p), std::move(q)};
}

class Basis {
 public:
  const std::vector<Binomial>& elements() const { return g_; }

  // Full reduction of x^a - x^b: both terms until no lead divides either.
  std::optional<Binomial> reduce(Multiset a, Multiset b) const {
    for (;;) {
      auto f = make_binomial(a, b);
      if (!f) return std::nullopt;
      a = std::move(f->lead);
      b = std::move(f->tail);
      bool changed = false;
      for (const auto& g : g_) {
        if (g.lead.size() <= a.size() && includes(a, g.lead)) {
          a = sum(difference(a, g.lead), g.tail);
          changed = true;
          break;
        }
        if (g.lead.size() <= b.size() && includes(b, g.lead)) {
          b = sum(difference(b, g.lead), g.tail);
          changed = true;
          break;
        }
      }
      if (!changed) return Binomial{std::move(a), std::move(b)};
    }
  }

  std::size_t add(Binomial f) {
    g_.push_back(std::move(f));
    return g_.size() - 1;
  }

  void replace(std::vector<Binomial> g) { g_ = std::move(g); }

 private:
  std::vector<Binomial> g_;
};

std::optional<Binomial> s_binomial(const Binomial& f, const Binomial& g) {
  const auto l = sum(difference(f.lead, common(f.lead, g.lead)), g.lead);  // lcm
  const auto a = sum(difference(l, f.lead), f.tail);
  const auto b = sum(difference(l, g.lead), g.tail);
  return make_binomial(a, b);
}

std::size_t lcm_degree(const Binomial& f, const Binomial& g) {
  return f.lead.size() + g.lead.size() - common(f.lead, g.lead).size();
}

Move as_move(const Binomial& b) { return {b.lead, b.tail}; }

}  // namespace

GroebnerProbe groebner_degree_probe(const DesignMatrix& A, std::size_t max_degree, const GroebnerOptions& options) {
  GroebnerProbe res;
  res.max_degree = max_degree;
  const auto gens = enumerate_moves(A, max_degree, options.moves);
  res.generators = gens.size();

  Basis basis;
  using Pair = std::tuple<std::size_t, std::size_t, std::size_t>;  // lcm degree, i, j
  std::priority_queue<Pair, std::vector<Pair>, std::greater<>> queue;
  auto insert = [&](Binomial f) {
    const std::size_t k = basis.add(std::move(f));
    const auto& els = basis.elements();
    for (std::size_t i = 0; i < k; ++i) {
      // Coprime leads reduce to zero.
      if (common(els[i].lead, els[k].lead).empty()) continue;
      const std::size_t d = lcm_degree(els[i], els[k]);
      if (d > max_degree) {
        ++res.pairs_beyond_cap;
        continue;
      }
      queue.emplace(d, i, k);
    }
  };

  // Homogeneous completion degree by degree: generators of degree d enter
  // after all pairs of lower degree are settled.
  std::size_t next_gen = 0;
  for (std::size_t d = 1; d <= max_degree && !res.aborted; ++d) {
    for (; next_gen < gens.size() && gens[next_gen].degree() == d; ++next_gen) {
      if (auto f = basis.reduce(gens[next_gen].plus, gens[next_gen].minus)) insert(std::move(*f));
    }
    while (!queue.empty() && std::get<0>(queue.top()) <= d) {
      if (queue.size() > options.pair_cap) {
        res.aborted = true;
        break;
      }
      const auto [deg, i, j] = queue.top();
      queue.pop();
      ++res.pairs_processed;
      const auto s = s_binomial(basis.elements()[i], basis.elements()[j]);
      if (!s) continue;
      if (auto f = basis.reduce(s->lead, s->tail)) insert(std::move(*f));
    }
  }

  // Interreduce: keep minimal leads, then reduce tails.
  {
    const auto& els = basis.elements();
    std::vector<Binomial> kept;
    for (std::size_t i = 0; i < els.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < els.size() && !redundant; ++j) {
        if (i == j || !includes(els[i].lead, els[j].lead)) continue;
        // Equal leads: keep the first.
        redundant = els[i].lead != els[j].lead || j < i;
      }
      if (!redundant) kept.push_back(els[i]);
    }
    std::vector<Binomial> reduced;
    for (const auto& f : kept) {
      Multiset t = f.tail;
      for (bool changed = true; changed;) {
        changed = false;
        for (const auto& g : kept) {
          if (includes(t, g.lead)) {
            t = sum(difference(t, g.lead), g.tail);
            changed = true;
            break;
          }
        }
      }
      if (auto b = make_binomial(f.lead, t)) reduced.push_back(std::move(*b));
    }
    basis.replace(std::move(reduced));
  }

  const auto& els = basis.elements();
  res.basis_size = els.size();
  res.degree_histogram.assign(max_degree + 1, 0);
  bool all_moves = true;
  for (const auto& f : els) {
    const std::size_t d = f.lead.size();
    if (d < res.degree_histogram.size()) ++res.degree_histogram[d];
    res.basis_max_degree = std::max(res.basis_max_degree, d);
    res.basis.push_back(as_move(f));
    all_moves = all_moves && image(f.lead, A) == image(f.tail, A) && grevlex_compare(f.lead, f.tail) > 0;
  }

  // Self-reduced: no lead divides a term of another element.
  res.self_reduced = true;
  for (std::size_t i = 0; i < els.size() && res.self_reduced; ++i)
    for (std::size_t j = 0; j < els.size() && res.self_reduced; ++j) {
      if (i == j) continue;
      if (includes(els[i].lead, els[j].lead) || includes(els[i].tail, els[j].lead)) res.self_reduced = false;
    }

  // Closed: every critical pair up to the cap reduces to zero.
  res.closed_under_pairs = !res.aborted;
  for (std::size_t i = 0; i < els.size() && res.closed_under_pairs; ++i)
    for (std::size_t j = i + 1; j < els.size() && res.closed_under_pairs; ++j) {
      if (common(els[i].lead, els[j].lead).empty() || lcm_degree(els[i], els[j]) > max_degree) continue;
      const auto s = s_binomial(els[i], els[j]);
      if (s && basis.reduce(s->lead, s->tail)) res.closed_under_pairs = false;
    }

  const std::string cap = std::to_string(max_degree);
  res.report.add("basis elements are moves with grevlex-leading first part", all_moves);
  res.report.add("completion finished within the pair cap", !res.aborted,
                 std::to_string(res.pairs_processed) + " pairs processed");
  res.report.add("self-reduced", res.self_reduced);
  res.report.add("closed under critical pairs up to degree " + cap, res.closed_under_pairs);
  std::size_t above3 = 0;
  for (std::size_t d = 4; d < res.degree_histogram.size(); ++d) above3 += res.degree_histogram[d];
  res.report.note("no element above degree 3 up to degree " + cap, above3 == 0,
                  "max degree " + std::to_string(res.basis_max_degree) + ", " + std::to_string(res.basis_size) +
                      " elements");
  return res;
}

nlohmann::json to_json(const GroebnerProbe& probe, const DesignMatrix& A) {
  nlohmann::json hist = nlohmann::json::object();
  for (std::size_t d = 1; d < probe.degree_histogram.size(); ++d)
    hist[std::to_string(d)] = std::to_string(probe.degree_histogram[d]);
  return {{"S", std::to_string(A.states())},
          {"T", std::to_string(A.length())},
          {"term_order", "grevlex, first word largest"},
          {"max_degree", std::to_string(probe.max_degree)},
          {"generators", std::to_string(probe.generators)},
          {"basis_size", std::to_string(probe.basis_size)},
          {"basis_max_degree", std::to_string(probe.basis_max_degree)},
          {"degree_histogram", hist},
          {"pairs_processed", std::to_string(probe.pairs_processed)},
          {"pairs_beyond_cap", std::to_string(probe.pairs_beyond_cap)},
          {"aborted", probe.aborted},
          {"self_reduced", probe.self_reduced},
          {"closed_under_pairs", probe.closed_under_pairs},
          {"caveat", "truncated at max_degree: evidence only"},
          {"basis", moves_to_json(probe.basis, A)["moves"]},
          {"report", probe.report.to_json()}};
}

}  // namespace thmc::markov
