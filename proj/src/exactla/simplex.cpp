#include "thmc/exactla.hpp"

#include <stdexcept>
#include <utility>

namespace thmc::exactla {

namespace {

using Row = std::vector<Rational>;

// Dense tableau. Columns: structural | slack | artificial | rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : a_(rows, Row(cols + 1)), basis_(rows), z_(cols + 1) {}

  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return z_.size() - 1; }
  Rational& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Rational& rhs(std::size_t r) { return a_[r].back(); }
  std::size_t& basic(std::size_t r) { return basis_[r]; }

  // Loads the cost vector (maximized) and prices out the current basis.
  void set_objective(const Row& cost) {
    for (std::size_t j = 0; j < cols(); ++j) z_[j] = cost[j];
    z_.back() = 0;
    for (std::size_t r = 0; r < rows(); ++r) {
      const Rational cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols(); ++j) {
        if (a_[r][j] != 0) z_[j] -= cb * a_[r][j];
      }
    }
  }

  Rational objective_value() const { return -z_.back(); }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / a_[r][c];
    for (auto& x : a_[r]) {
      if (x != 0) x *= inv;
    }
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || a_[i][c] == 0) continue;
      eliminate(a_[i], a_[r], c);
    }
    if (z_[c] != 0) eliminate(z_, a_[r], c);
    basis_[r] = c;
  }

  // Bland's rule over columns [0, limit). Returns false when unbounded.
  bool optimize(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (z_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational ratio = a_[i].back() / a_[i][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          best = std::move(ratio);
          leave = i;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
    }
  }

  void erase_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  static void eliminate(Row& target, const Row& pivot_row, std::size_t c) {
    const Rational f = target[c];
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (pivot_row[j] != 0) target[j] -= f * pivot_row[j];
    }
  }

  std::vector<Row> a_;
  std::vector<std::size_t> basis_;
  Row z_;
};

}  // namespace

bool satisfies(const LinearConstraint& constraint, const RationalVector& x) {
  const Rational lhs = dot(constraint.coefficients, x);
  switch (constraint.relation) {
    case Relation::LessEqual:
      return lhs <= constraint.rhs;
    case Relation::GreaterEqual:
      return lhs >= constraint.rhs;
    case Relation::Equal:
      return lhs == constraint.rhs;
  }
  return false;
}

LpSolution lp_maximize(const LinearProgram& program) {
  const std::size_t n = program.num_vars;
  if (!program.nonnegative.empty() && program.nonnegative.size() != n) {
    throw std::invalid_argument("lp: nonnegativity mask has the wrong size");
  }
  if (!program.objective.empty() && program.objective.size() != n) {
    throw std::invalid_argument("lp: objective has the wrong size");
  }
  for (const auto& c : program.constraints) {
    if (c.coefficients.size() != n) throw std::invalid_argument("lp: constraint has the wrong size");
  }

  // Free variables split into a positive and a negative part.
  std::vector<std::size_t> plus(n), minus(n, SIZE_MAX);
  std::size_t structural = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus[j] = structural++;
    const bool nonneg = !program.nonnegative.empty() && program.nonnegative[j];
    if (!nonneg) minus[j] = structural++;
  }
  const std::size_t m = program.constraints.size();
  std::size_t slacks = 0;
  for (const auto& c : program.constraints) {
    if (c.relation != Relation::Equal) ++slacks;
  }
  const std::size_t first_art = structural + slacks;
  const std::size_t cols = first_art + m;

  Tableau tab(m, cols);
  std::size_t slack = structural;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = program.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (c.coefficients[j] == 0) continue;
      tab.at(i, plus[j]) = c.coefficients[j];
      if (minus[j] != SIZE_MAX) tab.at(i, minus[j]) = -c.coefficients[j];
    }
    if (c.relation == Relation::LessEqual) tab.at(i, slack++) = 1;
    if (c.relation == Relation::GreaterEqual) tab.at(i, slack++) = -1;
    tab.rhs(i) = c.rhs;
    if (c.rhs < 0) {
      for (std::size_t j = 0; j < first_art; ++j) tab.at(i, j) = -tab.at(i, j);
      tab.rhs(i) = -tab.rhs(i);
    }
    tab.at(i, first_art + i) = 1;
    tab.basic(i) = first_art + i;
  }

  // Phase I: maximize -(sum of artificials).
  Row cost(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) cost[first_art + i] = -1;
  tab.set_objective(cost);
  tab.optimize(cols);
  LpSolution sol;
  if (tab.objective_value() < 0) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  // Drive artificials out of the basis; rows with no structural support are redundant.
  for (std::size_t i = 0; i < tab.rows();) {
    if (tab.basic(i) < first_art) {
      ++i;
      continue;
    }
    std::size_t c = first_art;
    for (std::size_t j = 0; j < first_art; ++j) {
      if (tab.at(i, j) != 0) {
        c = j;
        break;
      }
    }
    if (c == first_art) {
      tab.erase_row(i);
    } else {
      tab.pivot(i, c);
      ++i;
    }
  }

  // Phase II over structural and slack columns only.
  std::fill(cost.begin(), cost.end(), Rational(0));
  for (std::size_t j = 0; j < program.objective.size(); ++j) {
    cost[plus[j]] = program.objective[j];
    if (minus[j] != SIZE_MAX) cost[minus[j]] = -program.objective[j];
  }
  tab.set_objective(cost);
  if (!tab.optimize(first_art)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  RationalVector values(cols, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) values[tab.basic(i)] = tab.rhs(i);
  sol.status = LpStatus::Optimal;
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = values[plus[j]];
    if (minus[j] != SIZE_MAX) sol.x[j] -= values[minus[j]];
  }
  sol.value = program.objective.empty() ? Rational(0) : dot(program.objective, sol.x);
  return sol;
}

std::optional<RationalVector> lp_feasible(const LinearProgram& program) {
  // The origin is the preferred witness when it already works.
  RationalVector origin(program.num_vars);
  bool origin_ok = true;
  for (const auto& c : program.constraints) origin_ok = origin_ok && satisfies(c, origin);
  if (origin_ok) return origin;
  LinearProgram p = program;
  p.objective.clear();
  auto sol = lp_maximize(p);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  for (const auto& c : program.constraints) {
    if (!satisfies(c, sol.x)) throw std::logic_error("lp: witness fails re-substitution");
  }
  return sol.x;
}

std::optional<RationalVector> lp_feasible(std::span<const LinearConstraint> constraints,
                                          std::size_t num_vars) {
  LinearProgram p;
  p.num_vars = num_vars;
  p.constraints.assign(constraints.begin(), constraints.end());
  return lp_feasible(p);
}

std::optional<RationalVector> nonnegative_combination(const std::vector<RationalVector>& generators,
                                                      const RationalVector& target, bool convex) {
  const std::size_t m = generators.size();
  LinearProgram p;
  p.num_vars = m;
  p.nonnegative.assign(m, true);
  for (std::size_t r = 0; r < target.size(); ++r) {
    LinearConstraint c;
    c.coefficients.resize(m);
    for (std::size_t j = 0; j < m; ++j) c.coefficients[j] = generators[j].at(r);
    c.relation = Relation::Equal;
    c.rhs = target[r];
    p.constraints.push_back(std::move(c));
  }
  if (convex) {
    LinearConstraint c;
    c.coefficients.assign(m, Rational(1));
    c.relation = Relation::Equal;
    c.rhs = 1;
    p.constraints.push_back(std::move(c));
  }
  return lp_feasible(p);
}

}  // namespace thmc::exactla
