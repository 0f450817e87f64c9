#include "thmc/exactla.hpp"

#include <stdexcept>
#include <utility>

namespace thmc::exactla {

namespace {

// col_a <- s*col_a + t*col_b ; col_b <- u*col_a + v*col_b  (old values)
void combine_columns(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& s,
                     const Integer& t, const Integer& u, const Integer& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer x = m(r, a);
    Integer y = m(r, b);
    m(r, a) = s * x + t * y;
    m(r, b) = u * x + v * y;
  }
}

void add_column_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
}

void negate_column(IntegerMatrix& m, std::size_t c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}

}  // namespace

HermiteForm hermite_normal_form(const IntegerMatrix& m) {
  HermiteForm out;
  out.h = m;
  out.u = IntegerMatrix::identity(m.cols());
  IntegerMatrix& h = out.h;
  IntegerMatrix& u = out.u;

  std::size_t k = 0;
  for (std::size_t i = 0; i < h.rows() && k < h.cols(); ++i) {
    for (std::size_t j = k + 1; j < h.cols(); ++j) {
      if (h(i, j) == 0) continue;
      const Integer a = h(i, k);
      const Integer b = h(i, j);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      // [[s, -b/g], [t, a/g]] has determinant 1.
      const Integer bg = -b / g;
      const Integer ag = a / g;
      combine_columns(h, k, j, s, t, bg, ag);
      combine_columns(u, k, j, s, t, bg, ag);
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) {
      negate_column(h, k);
      negate_column(u, k);
    }
    for (std::size_t l = 0; l < k; ++l) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, l).get_mpz_t(), h(i, k).get_mpz_t());
      add_column_multiple(h, l, k, q);
      add_column_multiple(u, l, k, q);
    }
    out.pivot_rows.push_back(i);
    ++k;
  }
  out.rank = k;
  return out;
}

std::optional<IntVector> lattice_coordinates(const HermiteForm& form, const IntVector& x) {
  const IntegerMatrix& h = form.h;
  if (x.size() != h.rows()) throw std::invalid_argument("lattice_coordinates: size mismatch");
  IntVector y(h.cols(), Integer(0));
  std::size_t next = 0;  // next pivot column
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Integer residual = x[i];
    for (std::size_t l = 0; l < next; ++l) residual -= h(i, l) * y[l];
    if (next < form.rank && form.pivot_rows[next] == i) {
      if (!mpz_divisible_p(residual.get_mpz_t(), h(i, next).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[next].get_mpz_t(), residual.get_mpz_t(), h(i, next).get_mpz_t());
      ++next;
    } else if (residual != 0) {
      return std::nullopt;
    }
  }
  return y;
}

}  // namespace thmc::exactla
