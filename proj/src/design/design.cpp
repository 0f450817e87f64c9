#include "thmc/design.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace thmc {

DesignMatrix::DesignMatrix(int S, std::size_t T, std::uint64_t cap) : S_(S), T_(T) {
  auto words = enumerate_words(S, T, cap);
  columns_.reserve(words.size());
  for (auto& w : words) {
    auto x = transition_counts(w, S);
    columns_.push_back({std::move(w), std::move(x)});
  }
}

std::optional<std::size_t> DesignMatrix::index_of(const Word& w) const {
  auto it = std::lower_bound(columns_.begin(), columns_.end(), w,
                             [](const Column& c, const Word& key) { return c.word < key; });
  if (it == columns_.end() || it->word != w) return std::nullopt;
  return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<TransitionVector> DesignMatrix::distinct_columns() const {
  std::set<TransitionVector> s;
  for (const auto& c : columns_) s.insert(c.counts);
  return {s.begin(), s.end()};
}

TransitionVector DesignMatrix::multiply(const std::vector<std::int64_t>& u) const {
  if (u.size() != columns_.size()) throw std::invalid_argument("multiply: vector length differs from column count");
  TransitionVector b(S_);
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] != 0) b += columns_[k].counts.scaled(u[k]);
  }
  return b;
}

DesignMatrix build_design_matrix(int S, std::size_t T, std::uint64_t cap) { return DesignMatrix(S, T, cap); }

std::vector<TransitionVector> distinct_columns(int S, std::size_t T) {
  if (T < 2) throw std::invalid_argument("distinct_columns needs T >= 2");
  std::set<std::pair<int, TransitionVector>> layer;
  for (int s = 0; s < S; ++s) layer.emplace(s, TransitionVector(S));
  for (std::size_t t = 1; t < T; ++t) {
    std::set<std::pair<int, TransitionVector>> next;
    for (const auto& [last, x] : layer) {
      for (int j = 0; j < S; ++j) {
        if (j == last) continue;
        TransitionVector y = x;
        ++y.at(last, j);
        next.emplace(j, std::move(y));
      }
    }
    layer = std::move(next);
  }
  std::set<TransitionVector> out;
  for (const auto& [last, x] : layer) out.insert(x);
  return {out.begin(), out.end()};
}

Marginal sufficient_statistics(const WordMultiset& W, const DesignMatrix& A) {
  Marginal m{TransitionVector(A.states()), W.total()};
  if (W.empty()) return m;
  if (W.states() != A.states() || W.length() != A.length()) {
    throw std::invalid_argument("sufficient_statistics: multiset shape differs from the design matrix");
  }
  for (const auto& [w, mult] : W.entries()) {
    auto k = A.index_of(w);
    if (!k) throw std::invalid_argument("sufficient_statistics: word not a column: " + w.str());
    m.b += A.column(*k).counts.scaled(mult);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Lattice

namespace {

exactla::IntegerMatrix column_matrix(const std::vector<TransitionVector>& columns) {
  if (columns.empty()) throw std::invalid_argument("empty column set");
  std::vector<IntVector> cols;
  cols.reserve(columns.size());
  for (const auto& c : columns) cols.push_back(to_int_vector(c.counts()));
  return exactla::IntegerMatrix::from_columns(cols);
}

}  // namespace

LatticeOracle::LatticeOracle(const std::vector<TransitionVector>& columns)
    : form_(exactla::hermite_normal_form(column_matrix(columns))) {}

bool LatticeOracle::contains(const IntVector& x) const { return exactla::lattice_coordinates(form_, x).has_value(); }

bool LatticeOracle::contains(const TransitionVector& x) const { return contains(to_int_vector(x.counts())); }

bool lattice_membership(const TransitionVector& x, const DesignMatrix& A) {
  return LatticeOracle(A.distinct_columns()).contains(x);
}

// ---------------------------------------------------------------------------
// Cone

ConeOracle::ConeOracle(std::vector<TransitionVector> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("ConeOracle: empty column set");
  for (const auto& c : columns_) generators_.push_back(to_rational_vector(c.counts()));
}

bool ConeOracle::contains_by_lp(const RationalVector& x) const {
  if (x.size() != generators_.front().size()) throw std::invalid_argument("ConeOracle: dimension mismatch");
  return exactla::nonnegative_combination(generators_, x, false).has_value();
}

bool ConeOracle::contains(const RationalVector& x) const {
  if (facets_.empty()) return contains_by_lp(x);
  if (x.size() != generators_.front().size()) throw std::invalid_argument("ConeOracle: dimension mismatch");
  for (const auto& c : facets_) {
    if (dot(c, x) < 0) return false;
  }
  return true;
}

bool ConeOracle::contains(const TransitionVector& x) const { return contains(to_rational_vector(x.counts())); }

void ConeOracle::install_facets(const std::vector<IntVector>& normals) {
  if (normals.empty()) throw std::invalid_argument("install_facets: empty facet list");
  std::vector<IntVector> cols;
  for (const auto& c : columns_) cols.push_back(to_int_vector(c.counts()));
  const std::size_t dim = exactla::rank(cols);
  for (const auto& c : normals) {
    std::vector<IntVector> tight;
    for (const auto& a : cols) {
      const Integer v = dot(c, a);
      if (v < 0) throw std::invalid_argument("install_facets: normal is negative on a column");
      if (v == 0) tight.push_back(a);
    }
    if (exactla::rank(tight) + 1 != dim) throw std::invalid_argument("install_facets: normal does not define a facet");
  }
  facets_ = normals;
}

bool cone_membership(const RationalVector& x, const DesignMatrix& A) {
  return ConeOracle(A.distinct_columns()).contains_by_lp(x);
}

// ---------------------------------------------------------------------------
// Probabilities

RationalVector model_probabilities(const RationalVector& theta, const DesignMatrix& A) {
  if (theta.size() != A.rows()) throw std::invalid_argument("model_probabilities: parameter count differs from rows");
  for (const auto& t : theta) {
    if (t <= 0) throw std::invalid_argument("model_probabilities: parameters must be positive");
  }
  RationalVector p(A.cols());
  Rational total = 0;
  for (std::size_t k = 0; k < A.cols(); ++k) {
    Rational m = 1;
    const auto& x = A.column(k).counts;
    for (std::size_t r = 0; r < x.size(); ++r) {
      for (std::int64_t e = 0; e < x[r]; ++e) m *= theta[r];
    }
    p[k] = m;
    total += m;
  }
  for (auto& v : p) v /= total;
  return p;
}

// ---------------------------------------------------------------------------
// Export

void write_csv(std::ostream& out, const DesignMatrix& A) {
  out << "pair";
  for (const auto& c : A.columns()) out << ',' << c.word.str();
  out << '\n';
  const auto labels = A.row_labels();
  for (std::size_t r = 0; r < A.rows(); ++r) {
    out << labels[r];
    for (const auto& c : A.columns()) out << ',' << c.counts[r];
    out << '\n';
  }
}

nlohmann::json to_json(const DesignMatrix& A) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : A.columns()) {
    nlohmann::json counts = nlohmann::json::array();
    for (auto v : c.counts.counts()) counts.push_back(std::to_string(v));
    cols.push_back({{"word", c.word.str()}, {"counts", counts}});
  }
  return {{"S", A.states()}, {"T", A.length()}, {"row_order", A.row_labels()}, {"columns", cols}};
}

}  // namespace thmc
