#include "thmc/exactla.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace thmc {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& value) { return value.get_str(); }
std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

IntVector to_int_vector(std::span<const std::int64_t> values) {
  IntVector out;
  out.reserve(values.size());
  for (auto v : values) out.emplace_back(static_cast<long>(v));
  return out;
}

RationalVector to_rational_vector(std::span<const std::int64_t> values) {
  RationalVector out;
  out.reserve(values.size());
  for (auto v : values) out.emplace_back(static_cast<long>(v));
  return out;
}

RationalVector to_rational_vector(const IntVector& values) {
  RationalVector out;
  out.reserve(values.size());
  for (const auto& v : values) out.emplace_back(v);
  return out;
}

IntVector primitive(IntVector v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return v;
}

IntVector primitive_integer(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x.get_num() * (l / x.get_den()));
  return primitive(std::move(out));
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

}  // namespace thmc

namespace thmc::exactla {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(
    std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<RationalVector> vs;
  for (const auto& r : rows) {
    std::vector<std::int64_t> tmp(r);
    vs.push_back(to_rational_vector(tmp));
  }
  return from_rows(vs);
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(
    std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<IntVector> vs;
  for (const auto& r : rows) {
    std::vector<std::int64_t> tmp(r);
    vs.push_back(to_int_vector(tmp));
  }
  return from_rows(vs);
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<IntVector>& columns) {
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  IntegerMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntVector IntegerMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntegerMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  IntegerMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

bool IntegerMatrix::operator==(const IntegerMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

namespace {

// Bareiss elimination in place; returns the rank. When `det` is non-null and
// the matrix is square, it receives the determinant.
std::size_t bareiss(IntegerMatrix& a, Integer* det) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  Integer prev = 1;
  std::size_t rank = 0;
  int sign = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(rank, j));
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a(rank, c) * a(i, j) - a(i, c) * a(rank, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
      a(i, c) = 0;
    }
    prev = a(rank, c);
    ++rank;
  }
  if (det != nullptr) {
    *det = (rank == rows && rows == cols) ? Integer(sign * prev) : Integer(0);
  }
  return rank;
}

}  // namespace

std::size_t rank(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  return bareiss(a, nullptr);
}

std::size_t rank(const std::vector<IntVector>& rows) {
  if (rows.empty()) return 0;
  return rank(IntegerMatrix::from_rows(rows));
}

std::size_t rank(const RationalMatrix& m) {
  IntegerMatrix a(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) a(r, c) = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  return bareiss(a, nullptr);
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  IntegerMatrix a = m;
  Integer det;
  bareiss(a, &det);
  return det;
}

std::vector<IntVector> row_echelon(const std::vector<IntVector>& rows,
                                   std::vector<std::size_t>* pivots) {
  if (rows.empty()) {
    if (pivots) pivots->clear();
    return {};
  }
  const std::size_t cols = rows.front().size();
  std::vector<RationalVector> a;
  a.reserve(rows.size());
  for (const auto& r : rows) a.push_back(to_rational_vector(r));

  std::vector<std::size_t> piv;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    const Rational inv = 1 / a[rank][c];
    for (auto& x : a[rank]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    piv.push_back(c);
    ++rank;
  }
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(primitive_integer(a[i]));
  if (pivots) *pivots = std::move(piv);
  return out;
}

std::vector<IntVector> nullspace(const IntegerMatrix& m) {
  const std::size_t cols = m.cols();
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  std::vector<std::size_t> piv;
  const auto ech = row_echelon(rows, &piv);

  std::vector<bool> is_pivot(cols, false);
  for (auto p : piv) is_pivot[p] = true;

  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector y(cols);
    y[f] = 1;
    for (std::size_t i = 0; i < ech.size(); ++i) {
      // row i: ech[i][piv[i]] * y_piv + sum_free ech[i][j] * y_j = 0
      y[piv[i]] = -Rational(ech[i][f]) / Rational(ech[i][piv[i]]);
    }
    basis.push_back(primitive_integer(y));
  }
  return basis;
}

}  // namespace thmc::exactla
