#include <algorithm>
#include <stdexcept>

#include "thmc/facets.hpp"
#include "thmc/parallel.hpp"
#include "thmc/simd.hpp"

namespace thmc::facets {

namespace {

IntVector iv(std::initializer_list<long> values) {
  IntVector out;
  for (long v : values) out.emplace_back(v);
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

}  // namespace

bool applies(Applicability when, std::size_t T) noexcept {
  switch (when) {
    case Applicability::All: return true;
    case Applicability::Odd: return T % 2 == 1;
    case Applicability::Even: return T % 2 == 0;
    case Applicability::Mod3Is1: return T % 3 == 1;
    case Applicability::Mod3Is2: return T % 3 == 2;
    case Applicability::Mod6Is3: return T % 6 == 3;
    case Applicability::Mod6Is0: return T % 6 == 0;
  }
  return false;
}

const char* applicability_name(Applicability when) noexcept {
  switch (when) {
    case Applicability::All: return "all";
    case Applicability::Odd: return "odd";
    case Applicability::Even: return "even";
    case Applicability::Mod3Is1: return "3k+1";
    case Applicability::Mod3Is2: return "3k+2";
    case Applicability::Mod6Is3: return "6k+3";
    case Applicability::Mod6Is0: return "6k";
  }
  return "?";
}

IntVector FacetFamily::instantiate(std::size_t T) const {
  const long t = static_cast<long>(T);
  if ((t - residue) % period != 0) throw std::invalid_argument("family " + label + " does not apply at this T");
  const Integer k = (t - residue) / period;
  IntVector c(kDim);
  for (std::size_t i = 0; i < kDim; ++i) c[i] = k * slope[i] + intercept[i];
  return c;
}

const std::vector<FacetFamily>& families() {
  static const std::vector<FacetFamily> table = {
      {"all", Applicability::All, iv({0, 0, 0, 0, 0, 0}), iv({1, 0, 0, 0, 0, 0}), 1, 0},
      // [T, T, -(T-2), 1, -(T-2), 1]
      {"all", Applicability::All, iv({1, 1, -1, 0, -1, 0}), iv({0, 0, 2, 1, 2, 1}), 1, 0},
      {"odd", Applicability::Odd, iv({0, 0, 0, 0, 0, 0}), iv({1, 1, -1, -1, 1, 1}), 2, 1},
      // [3T/2 - 1, T/2, -T/2 + 1, -T/2 + 1, -T/2 + 1, T/2] with T = 2k
      {"even", Applicability::Even, iv({3, 1, -1, -1, -1, 1}), iv({-1, 0, 1, 1, 1, 0}), 2, 0},
      {"3k+1", Applicability::Mod3Is1, iv({0, 0, 0, 0, 0, 0}), iv({2, -1, -1, -1, 2, 2}), 3, 1},
      {"3k+2", Applicability::Mod3Is2, iv({2, -1, -1, -1, 2, 2}), iv({1, 0, 0, 0, 1, 1}), 3, 2},
      {"6k+3", Applicability::Mod6Is3, iv({5, 2, -4, -1, -1, 2}), iv({2, 1, -1, 0, 0, 1}), 6, 3},
      {"6k", Applicability::Mod6Is0, iv({10, 4, -8, -2, -2, 4}), iv({-1, 0, 2, 1, 1, 0}), 6, 0},
  };
  return table;
}

const std::vector<FacetForm>& inhomogeneous_table() {
  static const std::vector<FacetForm> table = {
      {iv({1, 0, 0, 0, 0, 0}), 0, Applicability::All, "all"},
      {iv({1, 1, -1, 0, -1, 0}), -1, Applicability::All, "all"},
      {iv({1, 1, -1, -1, 1, 1}), 0, Applicability::Odd, "odd"},
      {iv({3, 1, -1, -1, -1, 1}), -1, Applicability::Even, "even"},
      {iv({2, -1, -1, -1, 2, 2}), 0, Applicability::Mod3Is1, "3k+1"},
      {iv({2, -1, -1, -1, 2, 2}), -1, Applicability::Mod3Is2, "3k+2"},
      {iv({5, 2, -4, -1, -1, 2}), -2, Applicability::Mod6Is3, "6k+3"},
      {iv({5, 2, -4, -1, -1, 2}), -2, Applicability::Mod6Is0, "6k"},
  };
  return table;
}

std::vector<FacetForm> table1_vectors(std::size_t T) {
  if (T < 5) throw std::invalid_argument("table1_vectors: T must be at least 5");
  std::vector<FacetForm> out;
  for (const auto& f : families()) {
    if (!applies(f.when, T)) continue;
    out.push_back({f.instantiate(T), 0, f.when, f.label});
  }
  return out;
}

const std::array<std::array<int, 3>, 6>& label_permutations() {
  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  return perms;
}

namespace {

template <class V>
V permute_impl(const V& c, const std::array<int, 3>& s) {
  if (c.size() != kDim) throw std::invalid_argument("permute_labels: expected 6 coordinates");
  V out(kDim);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) out[pair_index(3, i, j)] = c[pair_index(3, s[i], s[j])];
    }
  }
  return out;
}

template <class V>
V reverse_impl(const V& c) {
  if (c.size() != kDim) throw std::invalid_argument("reverse_pairs: expected 6 coordinates");
  V out(kDim);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) out[pair_index(3, i, j)] = c[pair_index(3, j, i)];
    }
  }
  return out;
}

}  // namespace

IntVector permute_labels(const IntVector& c, const std::array<int, 3>& s) { return permute_impl(c, s); }
RationalVector permute_labels(const RationalVector& x, const std::array<int, 3>& s) { return permute_impl(x, s); }
IntVector reverse_pairs(const IntVector& c) { return reverse_impl(c); }
RationalVector reverse_pairs(const RationalVector& x) { return reverse_impl(x); }

std::set<IntVector> symmetry_orbit(const IntVector& c, bool include_reversal) {
  std::set<IntVector> out;
  for (const auto& s : label_permutations()) {
    const IntVector p = permute_labels(c, s);
    out.insert(primitive(p));
    if (include_reversal) out.insert(primitive(reverse_pairs(p)));
  }
  return out;
}

std::vector<FacetForm> symmetry_orbit(const FacetForm& form, bool include_reversal) {
  std::set<std::pair<IntVector, Integer>> seen;
  std::vector<FacetForm> out;
  auto push = [&](IntVector c) {
    if (seen.emplace(c, form.offset).second) out.push_back({std::move(c), form.offset, form.when, form.family});
  };
  for (const auto& s : label_permutations()) {
    IntVector p = permute_labels(form.c, s);
    if (include_reversal) push(reverse_pairs(p));
    push(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const FacetForm& a, const FacetForm& b) { return a.c < b.c; });
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

bool FacetCertificate::valid() const { return min_value == 0 && tight_rank == 5; }

FacetCertificate certify_facet(const IntVector& c, const DesignMatrix& A, unsigned threads) {
  if (A.states() != kStates || c.size() != kDim) {
    throw std::invalid_argument("certify_facet: expects S = 3 and a 6-vector");
  }
  std::array<std::int32_t, simd::kLanes> v{};
  for (std::size_t i = 0; i < kDim; ++i) {
    if (abs(c[i]) > simd::kMaxMagnitude) throw std::out_of_range("certify_facet: coefficient too large");
    v[i] = static_cast<std::int32_t>(c[i].get_si());
  }
  simd::PackedRows rows(kDim);
  for (const auto& col : A.columns()) rows.push_back(col.counts.counts());

  const std::size_t n = rows.size();
  std::vector<std::int64_t> values(n);
  parallel_blocks(n, resolve_threads(threads), [&](std::size_t, std::size_t begin, std::size_t end) {
    simd::dot_rows(rows.data().subspan(begin * simd::kLanes, (end - begin) * simd::kLanes), v,
                   std::span<std::int64_t>(values).subspan(begin, end - begin));
  });

  FacetCertificate cert;
  cert.facet = c;
  cert.T = A.length();
  const std::int64_t lo = n == 0 ? 0 : simd::reduce_min(values);
  cert.min_value = static_cast<long>(lo);
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] == lo) cert.tight_columns.push_back(k);
  }
  cert.tight_count = cert.tight_columns.size();
  for (std::size_t k = 0; k < cert.tight_columns.size() && k < 8; ++k) {
    cert.sample_tight_words.push_back(A.column(cert.tight_columns[k]).word);
  }
  if (lo == 0) {
    std::set<IntVector> distinct;
    for (std::size_t k : cert.tight_columns) {
      const auto& x = A.column(k).counts.counts();
      distinct.insert(to_int_vector(x));
    }
    cert.tight_rank = exactla::rank(std::vector<IntVector>(distinct.begin(), distinct.end()));
  }
  return cert;
}

FacetCertificate certify_facet(const IntVector& c, std::size_t T, unsigned threads) {
  return certify_facet(c, DesignMatrix(kStates, T), threads);
}

nlohmann::json to_json(const FacetCertificate& cert) {
  nlohmann::json facet = nlohmann::json::array();
  for (const auto& x : cert.facet) facet.push_back(to_string(x));
  nlohmann::json words = nlohmann::json::array();
  for (const auto& w : cert.sample_tight_words) words.push_back(w.str());
  return {{"facet", facet},
          {"T", cert.T},
          {"min_value", to_string(cert.min_value)},
          {"tight_count", cert.tight_count},
          {"tight_rank", cert.tight_rank},
          {"sample_tight_words", words},
          {"valid", cert.valid()}};
}

// ---------------------------------------------------------------------------
// Inhomogeneous forms

FacetForm inhomogenize(const FacetFamily& family, std::size_t T) {
  if (!applies(family.when, T)) throw std::invalid_argument("inhomogenize: family does not apply at this T");
  const IntVector c = family.instantiate(T);
  if (is_zero(family.slope)) return {primitive(c), 0, family.when, family.label};

  // Find lambda, mu with intercept + lambda * 1 = mu * slope. Then
  // c + lambda * 1 = (k + mu) * slope, and on sum(x) = n(T-1) the row reads
  // slope . x >= lambda (T-1) n / (k + mu).
  const auto& s = family.slope;
  const auto& b = family.intercept;
  std::optional<std::pair<Rational, Rational>> sol;
  for (std::size_t p = 0; p < kDim && !sol; ++p) {
    for (std::size_t q = p + 1; q < kDim && !sol; ++q) {
      if (s[p] == s[q]) continue;
      const Rational mu = Rational(b[p] - b[q]) / Rational(s[p] - s[q]);
      sol.emplace(mu * s[p] - b[p], mu);
    }
  }
  const auto& [lambda, mu] = *sol;
  for (std::size_t i = 0; i < kDim; ++i) {
    if (b[i] + lambda != mu * s[i]) throw std::logic_error("inhomogenize: row is not affine in the slope");
  }
  const Integer k = (static_cast<long>(T) - family.residue) / family.period;
  const Rational scale = k + mu;
  if (scale <= 0) throw std::logic_error("inhomogenize: non-positive scale");
  const Integer g = content(s);
  Rational a = lambda * Rational(static_cast<long>(T) - 1) / (scale * g);
  a.canonicalize();
  if (a.get_den() != 1) throw std::logic_error("inhomogenize: offset is not integral");
  IntVector ct(kDim);
  for (std::size_t i = 0; i < kDim; ++i) ct[i] = s[i] / g;
  return {ct, a.get_num(), family.when, family.label};
}

std::vector<FacetForm> q_forms(int r) {
  if (r < 0 || r > 5) throw std::invalid_argument("q_forms: residue must be in 0..5");
  const std::size_t T = static_cast<std::size_t>(r) + 6;
  std::vector<FacetForm> out;
  for (const auto& form : inhomogeneous_table()) {
    if (!applies(form.when, T)) continue;
    for (auto& f : symmetry_orbit(form, true)) out.push_back(std::move(f));
  }
  return out;
}

polytope::HPolyhedron q_polyhedron(int r) {
  polytope::HPolyhedron h;
  h.dim = kDim;
  for (const auto& f : q_forms(r)) h.inequalities.push_back({f.c, Rational(f.offset)});
  return h;
}

const std::vector<Word>& loop_words() {
  static const std::vector<Word> words = {Word::parse("121", 3), Word::parse("131", 3), Word::parse("232", 3),
                                          Word::parse("1231", 3), Word::parse("1321", 3)};
  return words;
}

const std::vector<IntVector>& loop_rays() {
  static const std::vector<IntVector> rays = [] {
    std::vector<IntVector> out;
    for (const auto& w : loop_words()) out.push_back(to_int_vector(transition_counts(w, 3).counts()));
    return out;
  }();
  return rays;
}

}  // namespace thmc::facets
