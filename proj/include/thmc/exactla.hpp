// Exact integer / rational linear algebra: rank, nullspaces, Hermite normal
// form and a dense simplex solver. Everything here is exact; there is no
// floating-point path.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace thmc {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

IntVector to_int_vector(std::span<const std::int64_t> values);
RationalVector to_rational_vector(std::span<const std::int64_t> values);
RationalVector to_rational_vector(const IntVector& values);

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
IntVector primitive(IntVector v);

/// Scales a rational vector by the smallest positive factor that makes it
/// integral and primitive.
IntVector primitive_integer(const RationalVector& v);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const IntVector& a, const RationalVector& b);

}  // namespace thmc

namespace thmc::exactla {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const;
  RationalMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<IntVector>& rows);
  static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  /// Builds the matrix whose columns are the given vectors.
  static IntegerMatrix from_columns(const std::vector<IntVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix& rhs) const;
  bool operator==(const IntegerMatrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Exact rank by fraction-free (Bareiss) elimination.
std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);
std::size_t rank(const std::vector<IntVector>& rows);

/// Determinant of a square integer matrix (Bareiss).
Integer determinant(const IntegerMatrix& m);

/// Basis of {y : m * y = 0} as primitive integer vectors, one per free column
/// of the reduced row echelon form.
std::vector<IntVector> nullspace(const IntegerMatrix& m);

/// Reduced row echelon form over the rationals, rows scaled to primitive
/// integers with a positive pivot. Zero rows are dropped. `pivots` receives
/// the pivot column of each returned row.
std::vector<IntVector> row_echelon(const std::vector<IntVector>& rows,
                                   std::vector<std::size_t>* pivots = nullptr);

/// Column-style Hermite normal form: h = m * u with u unimodular, h lower
/// column-echelon with positive pivots and the entries left of each pivot
/// reduced into [0, pivot).
struct HermiteForm {
  IntegerMatrix h;
  IntegerMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // pivot_rows[k] = row of the k-th pivot (column k)
};

HermiteForm hermite_normal_form(const IntegerMatrix& m);

/// Solves h * y = x for integral y using the echelon structure of `form`.
/// Returns nullopt when x is not in the lattice spanned by the columns.
std::optional<IntVector> lattice_coordinates(const HermiteForm& form, const IntVector& x);

// ---------------------------------------------------------------------------
// Linear programming

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  RationalVector coefficients;
  Relation relation = Relation::Equal;
  Rational rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LinearProgram {
  std::size_t num_vars = 0;
  /// Empty means every variable is free.
  std::vector<bool> nonnegative;
  std::vector<LinearConstraint> constraints;
  /// Maximized. Empty means pure feasibility.
  RationalVector objective;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;
  Rational value;
};

/// Two-phase dense simplex over the rationals with Bland's rule.
LpSolution lp_maximize(const LinearProgram& program);

/// Feasibility of a system over free variables; the witness satisfies every
/// constraint exactly.
std::optional<RationalVector> lp_feasible(std::span<const LinearConstraint> constraints,
                                          std::size_t num_vars);

/// Same, with a per-variable non-negativity mask.
std::optional<RationalVector> lp_feasible(const LinearProgram& program);

bool satisfies(const LinearConstraint& constraint, const RationalVector& x);

/// Finds lambda >= 0 with sum_j lambda_j * generators[j] = target. When
/// `convex` is set, additionally sum_j lambda_j = 1. Returns the weights.
std::optional<RationalVector> nonnegative_combination(const std::vector<RationalVector>& generators,
                                                      const RationalVector& target, bool convex);

}  // namespace thmc::exactla
